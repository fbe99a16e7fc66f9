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

#include "kpell/effbounds.hpp"

#include <cmath>
#include <cstdio>
#include <string>

#include "kpell/error.hpp"

namespace kpell {

Ball LogMagnitude::log10() const { return ln / log(Ball(10, ln.prec())); }

std::string LogMagnitude::log10_string(int digits) const { return log10().mid_string(digits); }

std::string LogMagnitude::display(int digits) const {
  const Ball l10 = log10();
  const mpfr_prec_t p = l10.prec();
  Float whole(p), frac(p), mant(p);
  mpfr_floor(whole.get(), l10.mid().get());
  mpfr_sub(frac.get(), l10.mid().get(), whole.get(), MPFR_RNDN);
  mpfr_exp10(mant.get(), frac.get(), MPFR_RNDN);
  long exponent = mpfr_get_si(whole.get(), MPFR_RNDN);
  double m = mpfr_get_d(mant.get(), MPFR_RNDN);
  const double scale = std::pow(10.0, digits - 1);
  if (std::round(m * scale) / scale >= 10.0) {
    m /= 10.0;
    ++exponent;
  }
  char buf[64];
  std::snprintf(buf, sizeof buf, "%s%.*fe%+03ld", negative ? "-" : "", digits - 1, m, exponent);
  return buf;
}

bool certainly_less(const LogMagnitude& a, const LogMagnitude& b) {
  if (a.negative != b.negative) return a.negative;
  return a.negative ? certainly_gt(a.ln, b.ln) : certainly_lt(a.ln, b.ln);
}

Ball height_rational(const mpz_class& p, const mpz_class& q, mpfr_prec_t prec) {
  if (q == 0) throw DomainError("height of a rational with zero denominator");
  mpz_class g;
  mpz_gcd(g.get_mpz_t(), p.get_mpz_t(), q.get_mpz_t());
  mpz_class num = abs(p) / g;
  mpz_class den = abs(q) / g;
  return log(Ball(num > den ? num : den, prec));
}

LogMagnitude matveev_lower_bound(const MatveevInstance& m) {
  if (m.t < 1 || m.d < 1 || m.B < 1) throw DomainError("Matveev parameters need t, d, B >= 1");
  if (static_cast<int>(m.A.size()) != m.t) throw DomainError("need exactly t height parameters");
  const mpfr_prec_t p = m.A.front().prec();
  const Ball floor_a = Ball::from_ratio(16, 100, p);
  for (const Ball& a : m.A) {
    if (certainly_lt(a, floor_a)) throw DomainError("height parameters must be at least 0.16");
  }
  const Ball t(m.t, p);
  const Ball d(m.d, p);
  Ball ln = log(Ball(3, p)) + log(Ball(30, p)) * (m.t + 4) + Ball::from_ratio(11, 2, p) * log(t + 1) +
            log(d) * 2 + log(log(d) + 1) + log(log(t * Ball(m.B, p)) + 1);
  for (const Ball& a : m.A) ln = ln + log(a);
  return LogMagnitude(ln, true);
}

MatveevInstance odd_case_matveev_instance(int k, const mpz_class& n, mpfr_prec_t prec) {
  MatveevInstance m;
  m.t = 2;
  m.d = static_cast<long>(k) * k;
  m.B = n + 1;
  const Ball kb(k, prec);
  m.A.push_back(Ball(10L * k * k, prec) * log(kb));
  m.A.push_back(Ball::from_ratio(18, 10, prec) * kb);
  return m;
}

LogMagnitude odd_case_simplified_bound(int k, const mpz_class& n, mpfr_prec_t prec) {
  const Ball kb(k, prec);
  const Ball lk = log(kb);
  const Ball ln = log(Ball::from_ratio(21, 1, prec)) + log(Ball(10, prec)) * 13 + lk * 7 +
                  log(log(Ball(mpz_class(n + 1), prec))) + log(lk) * 2;
  return LogMagnitude(ln, true);
}

LogMagnitude index_bound(int k, mpfr_prec_t prec) {
  if (k < 4) throw DomainError("closed-form index bound needs k >= 4");
  const Ball kb(k, prec);
  const Ball lk = log(kb);
  if (k % 2 == 0) {
    const Ball ln = log(Ball(2, prec)) + Ball(static_cast<long>(k) * k, prec) * lk +
                    log(log(Ball(16L * k * k, prec)));
    return LogMagnitude(ln);
  }
  const Ball ln = log(Ball::from_ratio(75, 10, prec)) + log(Ball(10, prec)) * 14 +
                  Ball(static_cast<long>(k) * k * k, prec) * log(Ball::from_ratio(159, 100, prec)) +
                  lk * 10 + log(lk) * 2;
  return LogMagnitude(ln);
}

double log_inversion_bound(int r, double H) {
  if (r < 1) throw DomainError("log inversion needs r >= 1");
  if (!(H > std::pow(4.0 * r * r, r))) throw DomainError("log inversion hypothesis H > (4r^2)^r fails");
  return std::pow(2.0, r) * H * std::pow(std::log(H), r);
}

LogMagnitude log_inversion_bound(int r, const LogMagnitude& H) {
  if (r < 1) throw DomainError("log inversion needs r >= 1");
  if (H.negative) throw DomainError("log inversion needs positive H");
  const mpfr_prec_t p = H.ln.prec();
  const Ball hyp = log(Ball(4L * r * r, p)) * r;
  if (!certainly_gt(H.ln, hyp)) throw DomainError("log inversion hypothesis H > (4r^2)^r fails");
  return LogMagnitude(log(Ball(2, p)) * r + H.ln + log(H.ln) * r);
}

namespace {

Ball tail_log_ratio(const RootSystem& rs) {
  const int k = rs.k;
  if (k % 2 != 0) throw DomainError("refined even bound needs even k");
  return log(rs.moduli[static_cast<std::size_t>(k - 2)] / rs.moduli[static_cast<std::size_t>(k - 1)]);
}

}  // namespace

long long refined_even_bound(const RootSystem& rs) {
  const int k = rs.k;
  const mpfr_prec_t p = rs.prec;
  const Ball x = log(Ball(16L * k * k, p)) / tail_log_ratio(rs);
  // largest integer u with u < x
  const auto f = x.unique_floor();
  if (!f) throw IndeterminateError("refined bound straddles an integer");
  if (mpfr_cmp_z(x.lower().get(), f->get_mpz_t()) <= 0) {
    throw IndeterminateError("refined bound may be an integer");
  }
  if (!f->fits_slong_p()) throw ResourceLimitError("refined bound exceeds the integer range");
  return f->get_si() + exponent_offset();
}

long long refined_even_bound(int k) {
  return with_certified_roots(k, kDefaultPrec, [](const RootSystem& rs) { return refined_even_bound(rs); });
}

bool even_chain_holds(const RootSystem& rs, long long n) {
  const int k = rs.k;
  const mpfr_prec_t p = rs.prec;
  const Ball lr = tail_log_ratio(rs);
  const Ball target = log(Ball(16L * k * k, p));
  const Ball lhs = lr * Ball(n - exponent_offset(), p);
  const bool head = certainly_lt(lhs, target);
  if (!head && !certainly_gt(lhs, target)) {
    if (overlaps(lhs, target)) throw IndeterminateError("chain comparison undecided");
  }
  const Ball link = Ball(2L * k * (5L * k + 2), p) / log(rs.roots[0].re);
  const bool tail = certainly_lt(link, Ball(16L * k * k, p));
  return head && tail;
}

}  // namespace kpell
