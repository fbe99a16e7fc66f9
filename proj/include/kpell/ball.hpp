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

#pragma once

// Midpoint-radius ("ball") arithmetic over MPFR.
//
// A Ball [m +/- r] stands for every real x with |x - m| <= r. Every
// operation returns a ball that contains op(x, y) for all x, y in the
// operands: the propagated radius is evaluated with upward rounding at
// a short precision and the rounding error of the midpoint is added on
// top. Enclosures therefore never shrink below the true value set.

#include <gmpxx.h>
#include <mpfr.h>

#include <optional>
#include <string>
#include <string_view>

namespace kpell {

/// RAII holder for one mpfr_t.
class Float {
 public:
  explicit Float(mpfr_prec_t prec = 53);
  Float(const Float& other);
  Float(Float&& other) noexcept;
  Float& operator=(const Float& other);
  Float& operator=(Float&& other) noexcept;
  ~Float();

  mpfr_ptr get() { return value_; }
  mpfr_srcptr get() const { return value_; }
  mpfr_prec_t prec() const { return mpfr_get_prec(value_); }

  double to_double(mpfr_rnd_t rnd = MPFR_RNDN) const { return mpfr_get_d(value_, rnd); }

 private:
  mpfr_t value_;
};

class Ball {
 public:
  /// Precision of the radius; radii are always rounded upward.
  static constexpr mpfr_prec_t kRadiusPrec = 32;

  /// Exact zero.
  explicit Ball(mpfr_prec_t prec = 128);
  Ball(long value, mpfr_prec_t prec);
  Ball(const mpz_class& value, mpfr_prec_t prec);

  /// Exact binary value of a double.
  static Ball from_double(double value, mpfr_prec_t prec);
  /// Enclosure of p/q.
  static Ball from_ratio(long p, long q, mpfr_prec_t prec);
  /// Parses a decimal midpoint and radius; the parse error of the
  /// midpoint is added to the radius.
  static Ball from_strings(std::string_view mid, std::string_view rad, mpfr_prec_t prec);
  /// Exact ball [lo, hi] widened outward to the midpoint precision.
  static Ball from_endpoints(const Float& lo, const Float& hi, mpfr_prec_t prec);
  /// Exact ball with midpoint `mid` and radius `rad`.
  static Ball from_mid_rad(const Float& mid, const Float& rad, mpfr_prec_t prec);
  static Ball pi(mpfr_prec_t prec);

  mpfr_prec_t prec() const { return mid_.prec(); }
  const Float& mid() const { return mid_; }
  const Float& rad() const { return rad_; }

  double mid_double() const { return mid_.to_double(); }
  /// Radius rounded up to a double.
  double rad_double() const { return rad_.to_double(MPFR_RNDU); }

  /// Lower / upper endpoint, rounded outward at the midpoint precision.
  Float lower() const;
  Float upper() const;

  /// Drop the radius (keep only the midpoint as an exact value).
  Ball midpoint() const;
  /// Add `extra` to the radius.
  void inflate(const Float& extra);
  /// Re-round the midpoint to `prec` bits, keeping the enclosure.
  Ball with_prec(mpfr_prec_t prec) const;

  bool is_exact() const { return mpfr_zero_p(rad_.get()) != 0; }
  bool contains_zero() const;
  bool contains(const mpz_class& value) const;
  bool contains(const Ball& other) const;
  bool is_positive() const;  // certainly > 0
  bool is_negative() const;  // certainly < 0

  /// floor(x) when it is the same for every x in the ball.
  std::optional<mpz_class> unique_floor() const;
  /// floor of the upper endpoint; an upper bound on floor(x).
  mpz_class floor_of_upper() const;
  /// Nearest integer to the midpoint.
  mpz_class round_mid() const;

  /// Decimal rendering of the midpoint with `digits` significant digits
  /// (0 selects enough digits for the working precision).
  std::string mid_string(int digits = 0) const;
  /// Decimal rendering of the radius, rounded up.
  std::string rad_string() const;

  Ball operator-() const;
  Ball& operator+=(const Ball& rhs);
  Ball& operator-=(const Ball& rhs);
  Ball& operator*=(const Ball& rhs);
  Ball& operator/=(const Ball& rhs);

  friend Ball operator+(const Ball& a, const Ball& b);
  friend Ball operator-(const Ball& a, const Ball& b);
  friend Ball operator*(const Ball& a, const Ball& b);
  friend Ball operator/(const Ball& a, const Ball& b);
  friend Ball operator+(const Ball& a, long b);
  friend Ball operator-(const Ball& a, long b);
  friend Ball operator*(const Ball& a, long b);
  friend Ball operator/(const Ball& a, long b);
  friend Ball operator*(long a, const Ball& b) { return b * a; }
  friend Ball operator+(long a, const Ball& b) { return b + a; }
  friend Ball operator-(long a, const Ball& b) { return -(b - a); }

  friend Ball sqrt(const Ball& x);
  friend Ball log(const Ball& x);
  friend Ball exp(const Ball& x);
  friend Ball abs(const Ball& x);
  friend Ball atan2(const Ball& y, const Ball& x);
  friend Ball hypot(const Ball& x, const Ball& y);

 private:
  Ball(Float mid, Float rad) : mid_(std::move(mid)), rad_(std::move(rad)) {}
  void add_rounding_error(int ternary);

  Float mid_;
  Float rad_;
};

Ball sqrt(const Ball& x);
Ball log(const Ball& x);
Ball exp(const Ball& x);
Ball abs(const Ball& x);
Ball atan2(const Ball& y, const Ball& x);
Ball hypot(const Ball& x, const Ball& y);
Ball sqr(const Ball& x);
/// x^n for any integer n (x must exclude zero when n < 0).
Ball pow(const Ball& x, long n);

/// Certified comparisons: true only when every pair of representatives
/// satisfies the relation.
bool certainly_lt(const Ball& a, const Ball& b);
bool certainly_gt(const Ball& a, const Ball& b);
bool certainly_lt(const Ball& a, long b);
bool certainly_gt(const Ball& a, long b);
bool overlaps(const Ball& a, const Ball& b);

/// Rectangular complex ball.
struct ComplexBall {
  Ball re;
  Ball im;

  explicit ComplexBall(mpfr_prec_t prec = 128) : re(prec), im(prec) {}
  ComplexBall(Ball real, Ball imag) : re(std::move(real)), im(std::move(imag)) {}
  explicit ComplexBall(const Ball& real) : re(real), im(real.prec()) {}

  mpfr_prec_t prec() const { return re.prec() > im.prec() ? re.prec() : im.prec(); }
  bool contains_zero() const { return re.contains_zero() && im.contains_zero(); }
  ComplexBall conj() const { return {re, -im}; }
  ComplexBall midpoint() const { return {re.midpoint(), im.midpoint()}; }

  ComplexBall operator-() const { return {-re, -im}; }
  friend ComplexBall operator+(const ComplexBall& a, const ComplexBall& b);
  friend ComplexBall operator-(const ComplexBall& a, const ComplexBall& b);
  friend ComplexBall operator*(const ComplexBall& a, const ComplexBall& b);
  friend ComplexBall operator/(const ComplexBall& a, const ComplexBall& b);
  friend ComplexBall operator+(const ComplexBall& a, long b);
  friend ComplexBall operator-(const ComplexBall& a, long b);
  friend ComplexBall operator*(const ComplexBall& a, long b);
  friend ComplexBall operator*(const ComplexBall& a, const Ball& b);
};

Ball abs(const ComplexBall& z);
/// Principal argument in (-pi, pi]; throws IndeterminateError when the
/// ball meets the branch cut or the origin.
Ball arg(const ComplexBall& z);
Ball norm(const ComplexBall& z);  // re^2 + im^2
ComplexBall sqr(const ComplexBall& z);
ComplexBall pow(const ComplexBall& z, long n);

/// Natural logarithm of a positive ball, as a plain double upper bound.
double log_upper(const Ball& x);

}  // namespace kpell
