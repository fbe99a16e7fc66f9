// Copyright 2026 The kpell Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "kpell/ball.hpp"

#include <algorithm>
#include <cstdlib>
#include <string>

#include "kpell/error.hpp"

namespace kpell {

// ---------------------------------------------------------------- Float

Float::Float(mpfr_prec_t prec) {
  mpfr_init2(value_, prec);
  mpfr_set_zero(value_, 1);
}

Float::Float(const Float& other) {
  mpfr_init2(value_, other.prec());
  mpfr_set(value_, other.value_, MPFR_RNDN);
}

Float::Float(Float&& other) noexcept {
  mpfr_init2(value_, MPFR_PREC_MIN);
  mpfr_swap(value_, other.value_);
}

Float& Float::operator=(const Float& other) {
  if (this != &other) {
    mpfr_set_prec(value_, other.prec());
    mpfr_set(value_, other.value_, MPFR_RNDN);
  }
  return *this;
}

Float& Float::operator=(Float&& other) noexcept {
  mpfr_swap(value_, other.value_);
  return *this;
}

Float::~Float() { mpfr_clear(value_); }

namespace {

constexpr mpfr_prec_t kR = Ball::kRadiusPrec;

Float abs_up(const Float& x) {
  Float r(kR);
  mpfr_abs(r.get(), x.get(), MPFR_RNDU);
  return r;
}

Float abs_down(const Float& x) {
  Float r(kR);
  mpfr_abs(r.get(), x.get(), MPFR_RNDD);
  return r;
}

// Upper bound for one unit in the last place of `x`.
Float ulp_of(const Float& x) {
  Float r(kR);
  if (!mpfr_zero_p(x.get()) && mpfr_number_p(x.get())) {
    mpfr_set_ui_2exp(r.get(), 1, mpfr_get_exp(x.get()) - x.prec(), MPFR_RNDU);
  }
  return r;
}

mpfr_prec_t max_prec(const Ball& a, const Ball& b) { return std::max(a.prec(), b.prec()); }

std::string take_string(char* s) {
  std::string out = s ? s : "";
  mpfr_free_str(s);
  return out;
}

}  // namespace

// ---------------------------------------------------------------- Ball

Ball::Ball(mpfr_prec_t prec) : mid_(prec), rad_(kR) {}

Ball::Ball(long value, mpfr_prec_t prec) : mid_(prec), rad_(kR) {
  add_rounding_error(mpfr_set_si(mid_.get(), value, MPFR_RNDN));
}

Ball::Ball(const mpz_class& value, mpfr_prec_t prec) : mid_(prec), rad_(kR) {
  add_rounding_error(mpfr_set_z(mid_.get(), value.get_mpz_t(), MPFR_RNDN));
}

Ball Ball::from_double(double value, mpfr_prec_t prec) {
  Ball b(prec);
  b.add_rounding_error(mpfr_set_d(b.mid_.get(), value, MPFR_RNDN));
  return b;
}

Ball Ball::from_ratio(long p, long q, mpfr_prec_t prec) { return Ball(p, prec) / Ball(q, prec); }

Ball Ball::from_strings(std::string_view mid, std::string_view rad, mpfr_prec_t prec) {
  Ball b(prec);
  const std::string m(mid), r(rad);
  char* end = nullptr;
  const int t = mpfr_strtofr(b.mid_.get(), m.c_str(), &end, 10, MPFR_RNDN);
  if (end == m.c_str() || *end != '\0') throw Error("malformed decimal midpoint: " + m);
  char* rend = nullptr;
  mpfr_strtofr(b.rad_.get(), r.c_str(), &rend, 10, MPFR_RNDU);
  if (rend == r.c_str() || *rend != '\0' || mpfr_sgn(b.rad_.get()) < 0) {
    throw Error("malformed decimal radius: " + r);
  }
  b.add_rounding_error(t);
  return b;
}

Ball Ball::from_endpoints(const Float& lo, const Float& hi, mpfr_prec_t prec) {
  Ball b(prec);
  mpfr_add(b.mid_.get(), lo.get(), hi.get(), MPFR_RNDN);
  mpfr_div_2ui(b.mid_.get(), b.mid_.get(), 1, MPFR_RNDN);
  Float up(kR), down(kR);
  mpfr_sub(up.get(), hi.get(), b.mid_.get(), MPFR_RNDU);
  mpfr_sub(down.get(), b.mid_.get(), lo.get(), MPFR_RNDU);
  mpfr_max(b.rad_.get(), up.get(), down.get(), MPFR_RNDU);
  if (mpfr_sgn(b.rad_.get()) < 0) mpfr_set_zero(b.rad_.get(), 1);
  return b;
}

Ball Ball::from_mid_rad(const Float& mid, const Float& rad, mpfr_prec_t prec) {
  Ball b(prec);
  const int t = mpfr_set(b.mid_.get(), mid.get(), MPFR_RNDN);
  mpfr_abs(b.rad_.get(), rad.get(), MPFR_RNDU);
  b.add_rounding_error(t);
  return b;
}

Ball Ball::pi(mpfr_prec_t prec) {
  Ball b(prec);
  b.add_rounding_error(mpfr_const_pi(b.mid_.get(), MPFR_RNDN));
  return b;
}

void Ball::add_rounding_error(int ternary) {
  if (ternary != 0) {
    mpfr_add(rad_.get(), rad_.get(), ulp_of(mid_).get(), MPFR_RNDU);
  }
}

Float Ball::lower() const {
  Float r(prec());
  mpfr_sub(r.get(), mid_.get(), rad_.get(), MPFR_RNDD);
  return r;
}

Float Ball::upper() const {
  Float r(prec());
  mpfr_add(r.get(), mid_.get(), rad_.get(), MPFR_RNDU);
  return r;
}

Ball Ball::midpoint() const { return Ball(mid_, Float(kR)); }

void Ball::inflate(const Float& extra) {
  Float e = abs_up(extra);
  mpfr_add(rad_.get(), rad_.get(), e.get(), MPFR_RNDU);
}

Ball Ball::with_prec(mpfr_prec_t p) const {
  Ball b(p);
  const int t = mpfr_set(b.mid_.get(), mid_.get(), MPFR_RNDN);
  mpfr_set(b.rad_.get(), rad_.get(), MPFR_RNDU);
  b.add_rounding_error(t);
  return b;
}

bool Ball::contains_zero() const { return mpfr_cmpabs(mid_.get(), rad_.get()) <= 0; }

bool Ball::contains(const mpz_class& value) const {
  const mpfr_prec_t p = prec() + 64;
  Float lo(p), hi(p);
  mpfr_sub(lo.get(), mid_.get(), rad_.get(), MPFR_RNDD);
  mpfr_add(hi.get(), mid_.get(), rad_.get(), MPFR_RNDU);
  return mpfr_cmp_z(lo.get(), value.get_mpz_t()) <= 0 && mpfr_cmp_z(hi.get(), value.get_mpz_t()) >= 0;
}

bool Ball::contains(const Ball& other) const {
  const mpfr_prec_t p = std::max(prec(), other.prec()) + 64;
  Float lo(p), hi(p), olo(p), ohi(p);
  mpfr_sub(lo.get(), mid_.get(), rad_.get(), MPFR_RNDD);
  mpfr_add(hi.get(), mid_.get(), rad_.get(), MPFR_RNDU);
  mpfr_sub(olo.get(), other.mid_.get(), other.rad_.get(), MPFR_RNDU);
  mpfr_add(ohi.get(), other.mid_.get(), other.rad_.get(), MPFR_RNDD);
  return mpfr_lessequal_p(lo.get(), olo.get()) && mpfr_lessequal_p(ohi.get(), hi.get());
}

bool Ball::is_positive() const { return mpfr_cmp(mid_.get(), rad_.get()) > 0; }

bool Ball::is_negative() const {
  return mpfr_sgn(mid_.get()) < 0 && mpfr_cmpabs(mid_.get(), rad_.get()) > 0;
}

std::optional<mpz_class> Ball::unique_floor() const {
  mpz_class lo, hi;
  mpfr_get_z(lo.get_mpz_t(), lower().get(), MPFR_RNDD);
  mpfr_get_z(hi.get_mpz_t(), upper().get(), MPFR_RNDD);
  if (lo != hi) return std::nullopt;
  return lo;
}

mpz_class Ball::floor_of_upper() const {
  mpz_class z;
  mpfr_get_z(z.get_mpz_t(), upper().get(), MPFR_RNDD);
  return z;
}

mpz_class Ball::round_mid() const {
  mpz_class z;
  mpfr_get_z(z.get_mpz_t(), mid_.get(), MPFR_RNDN);
  return z;
}

std::string Ball::mid_string(int digits) const {
  if (digits <= 0) digits = static_cast<int>(static_cast<double>(prec()) * 0.30102999566398120) + 2;
  char* s = nullptr;
  mpfr_asprintf(&s, "%.*RNe", digits - 1, mid_.get());
  return take_string(s);
}

std::string Ball::rad_string() const {
  char* s = nullptr;
  mpfr_asprintf(&s, "%.6RUe", rad_.get());
  return take_string(s);
}

Ball Ball::operator-() const {
  Ball r = *this;
  mpfr_neg(r.mid_.get(), r.mid_.get(), MPFR_RNDN);
  return r;
}

Ball& Ball::operator+=(const Ball& rhs) { return *this = *this + rhs; }
Ball& Ball::operator-=(const Ball& rhs) { return *this = *this - rhs; }
Ball& Ball::operator*=(const Ball& rhs) { return *this = *this * rhs; }
Ball& Ball::operator/=(const Ball& rhs) { return *this = *this / rhs; }

Ball operator+(const Ball& a, const Ball& b) {
  Ball r(max_prec(a, b));
  const int t = mpfr_add(r.mid_.get(), a.mid_.get(), b.mid_.get(), MPFR_RNDN);
  mpfr_add(r.rad_.get(), a.rad_.get(), b.rad_.get(), MPFR_RNDU);
  r.add_rounding_error(t);
  return r;
}

Ball operator-(const Ball& a, const Ball& b) {
  Ball r(max_prec(a, b));
  const int t = mpfr_sub(r.mid_.get(), a.mid_.get(), b.mid_.get(), MPFR_RNDN);
  mpfr_add(r.rad_.get(), a.rad_.get(), b.rad_.get(), MPFR_RNDU);
  r.add_rounding_error(t);
  return r;
}

Ball operator*(const Ball& a, const Ball& b) {
  Ball r(max_prec(a, b));
  const int t = mpfr_mul(r.mid_.get(), a.mid_.get(), b.mid_.get(), MPFR_RNDN);
  if (!a.is_exact() || !b.is_exact()) {
    Float x(kR), y(kR);
    mpfr_mul(x.get(), abs_up(a.mid_).get(), b.rad_.get(), MPFR_RNDU);
    mpfr_mul(y.get(), abs_up(b.mid_).get(), a.rad_.get(), MPFR_RNDU);
    mpfr_add(r.rad_.get(), x.get(), y.get(), MPFR_RNDU);
    mpfr_mul(x.get(), a.rad_.get(), b.rad_.get(), MPFR_RNDU);
    mpfr_add(r.rad_.get(), r.rad_.get(), x.get(), MPFR_RNDU);
  }
  r.add_rounding_error(t);
  return r;
}

Ball operator/(const Ball& a, const Ball& b) {
  if (b.contains_zero()) throw IndeterminateError("division by a ball that contains zero");
  Ball r(max_prec(a, b));
  const int t = mpfr_div(r.mid_.get(), a.mid_.get(), b.mid_.get(), MPFR_RNDN);
  if (!a.is_exact() || !b.is_exact()) {
    // |a/b - ma/mb| <= (|ma| rb + |mb| ra) / (|mb| (|mb| - rb))
    Float num(kR), x(kR), den(kR), gap(kR);
    const Float mb_down = abs_down(b.mid_);
    mpfr_mul(num.get(), abs_up(a.mid_).get(), b.rad_.get(), MPFR_RNDU);
    mpfr_mul(x.get(), abs_up(b.mid_).get(), a.rad_.get(), MPFR_RNDU);
    mpfr_add(num.get(), num.get(), x.get(), MPFR_RNDU);
    mpfr_sub(gap.get(), mb_down.get(), b.rad_.get(), MPFR_RNDD);
    if (mpfr_sgn(gap.get()) <= 0) throw IndeterminateError("division by a ball too close to zero");
    mpfr_mul(den.get(), mb_down.get(), gap.get(), MPFR_RNDD);
    mpfr_div(r.rad_.get(), num.get(), den.get(), MPFR_RNDU);
  }
  r.add_rounding_error(t);
  return r;
}

Ball operator+(const Ball& a, long b) { return a + Ball(b, a.prec()); }
Ball operator-(const Ball& a, long b) { return a - Ball(b, a.prec()); }
Ball operator*(const Ball& a, long b) { return a * Ball(b, a.prec()); }
Ball operator/(const Ball& a, long b) { return a / Ball(b, a.prec()); }

Ball sqrt(const Ball& x) {
  const mpfr_prec_t p = x.prec();
  const Float lo = x.lower();
  if (mpfr_sgn(lo.get()) > 0) {
    Ball r(p);
    const int t = mpfr_sqrt(r.mid_.get(), x.mid_.get(), MPFR_RNDN);
    if (!x.is_exact()) {
      // |sqrt(y) - sqrt(m)| <= r / (2 sqrt(lo))
      Float s(kR);
      mpfr_sqrt(s.get(), lo.get(), MPFR_RNDD);
      mpfr_mul_2ui(s.get(), s.get(), 1, MPFR_RNDD);
      mpfr_div(r.rad_.get(), x.rad_.get(), s.get(), MPFR_RNDU);
    }
    r.add_rounding_error(t);
    return r;
  }
  const Float hi = x.upper();
  if (mpfr_sgn(hi.get()) < 0) throw DomainError("sqrt of a negative ball");
  // Ball straddles zero: enclose [0, sqrt(hi)].
  Float s(p);
  mpfr_sqrt(s.get(), hi.get(), MPFR_RNDU);
  Float zero(p);
  return Ball::from_endpoints(zero, s, p);
}

Ball log(const Ball& x) {
  const Float lo = x.lower();
  if (mpfr_sgn(lo.get()) <= 0) throw IndeterminateError("log of a ball that is not certainly positive");
  Ball r(x.prec());
  const int t = mpfr_log(r.mid_.get(), x.mid_.get(), MPFR_RNDN);
  if (!x.is_exact()) {
    Float l(kR);
    mpfr_set(l.get(), lo.get(), MPFR_RNDD);
    mpfr_div(r.rad_.get(), x.rad_.get(), l.get(), MPFR_RNDU);
  }
  r.add_rounding_error(t);
  return r;
}

Ball exp(const Ball& x) {
  Ball r(x.prec());
  const int t = mpfr_exp(r.mid_.get(), x.mid_.get(), MPFR_RNDN);
  if (!x.is_exact()) {
    // |e^y - e^m| <= e^m (e^r - 1)
    Float em(kR), e1(kR);
    mpfr_exp(em.get(), x.mid_.get(), MPFR_RNDU);
    mpfr_expm1(e1.get(), x.rad_.get(), MPFR_RNDU);
    mpfr_mul(r.rad_.get(), em.get(), e1.get(), MPFR_RNDU);
  }
  r.add_rounding_error(t);
  return r;
}

Ball abs(const Ball& x) {
  Ball r = x;
  mpfr_abs(r.mid_.get(), r.mid_.get(), MPFR_RNDN);
  return r;
}

Ball hypot(const Ball& x, const Ball& y) {
  Ball r(max_prec(x, y));
  const int t = mpfr_hypot(r.mid_.get(), x.mid_.get(), y.mid_.get(), MPFR_RNDN);
  mpfr_add(r.rad_.get(), x.rad_.get(), y.rad_.get(), MPFR_RNDU);
  r.add_rounding_error(t);
  return r;
}

Ball atan2(const Ball& y, const Ball& x) {
  const bool y0 = y.contains_zero();
  if (y0 && x.contains_zero()) throw IndeterminateError("argument of a ball containing the origin");
  if (y0 && !x.is_positive()) throw IndeterminateError("argument of a ball meeting the branch cut");
  Ball r(max_prec(x, y));
  const int t = mpfr_atan2(r.mid_.get(), y.mid_.get(), x.mid_.get(), MPFR_RNDN);
  if (!x.is_exact() || !y.is_exact()) {
    // The gradient of atan2 has norm 1/|z|; bound |z| from below on the box.
    Float a(kR), b(kR), rho(kR), num(kR);
    mpfr_sub(a.get(), abs_down(x.mid_).get(), x.rad_.get(), MPFR_RNDD);
    mpfr_sub(b.get(), abs_down(y.mid_).get(), y.rad_.get(), MPFR_RNDD);
    if (mpfr_sgn(a.get()) < 0) mpfr_set_zero(a.get(), 1);
    if (mpfr_sgn(b.get()) < 0) mpfr_set_zero(b.get(), 1);
    mpfr_hypot(rho.get(), a.get(), b.get(), MPFR_RNDD);
    if (mpfr_sgn(rho.get()) <= 0) throw IndeterminateError("argument of a ball too close to the origin");
    mpfr_add(num.get(), x.rad_.get(), y.rad_.get(), MPFR_RNDU);
    mpfr_div(r.rad_.get(), num.get(), rho.get(), MPFR_RNDU);
  }
  r.add_rounding_error(t);
  return r;
}

Ball sqr(const Ball& x) { return x * x; }

Ball pow(const Ball& x, long n) {
  if (n < 0) return Ball(1, x.prec()) / pow(x, -n);
  Ball result(1, x.prec());
  Ball base = x;
  unsigned long e = static_cast<unsigned long>(n);
  while (e != 0) {
    if (e & 1UL) result = result * base;
    e >>= 1;
    if (e != 0) base = base * base;
  }
  return result;
}

bool certainly_lt(const Ball& a, const Ball& b) { return mpfr_less_p(a.upper().get(), b.lower().get()) != 0; }
bool certainly_gt(const Ball& a, const Ball& b) { return certainly_lt(b, a); }
bool certainly_lt(const Ball& a, long b) { return certainly_lt(a, Ball(b, a.prec())); }
bool certainly_gt(const Ball& a, long b) { return certainly_gt(a, Ball(b, a.prec())); }
bool overlaps(const Ball& a, const Ball& b) { return !certainly_lt(a, b) && !certainly_lt(b, a); }

double log_upper(const Ball& x) { return log(x).upper().to_double(MPFR_RNDU); }

// --------------------------------------------------------- ComplexBall

ComplexBall operator+(const ComplexBall& a, const ComplexBall& b) { return {a.re + b.re, a.im + b.im}; }
ComplexBall operator-(const ComplexBall& a, const ComplexBall& b) { return {a.re - b.re, a.im - b.im}; }

ComplexBall operator*(const ComplexBall& a, const ComplexBall& b) {
  return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}

ComplexBall operator/(const ComplexBall& a, const ComplexBall& b) {
  const Ball d = norm(b);
  const ComplexBall n = a * b.conj();
  return {n.re / d, n.im / d};
}

ComplexBall operator+(const ComplexBall& a, long b) { return {a.re + b, a.im}; }
ComplexBall operator-(const ComplexBall& a, long b) { return {a.re - b, a.im}; }
ComplexBall operator*(const ComplexBall& a, long b) { return {a.re * b, a.im * b}; }
ComplexBall operator*(const ComplexBall& a, const Ball& b) { return {a.re * b, a.im * b}; }

Ball abs(const ComplexBall& z) { return hypot(z.re, z.im); }
Ball arg(const ComplexBall& z) { return atan2(z.im, z.re); }
Ball norm(const ComplexBall& z) { return sqr(z.re) + sqr(z.im); }
ComplexBall sqr(const ComplexBall& z) { return z * z; }

ComplexBall pow(const ComplexBall& z, long n) {
  const mpfr_prec_t p = z.prec();
  if (n < 0) return ComplexBall(Ball(1, p)) / pow(z, -n);
  ComplexBall result(Ball(1, p));
  ComplexBall base = z;
  unsigned long e = static_cast<unsigned long>(n);
  while (e != 0) {
    if (e & 1UL) result = result * base;
    e >>= 1;
    if (e != 0) base = base * base;
  }
  return result;
}

}  // namespace kpell
