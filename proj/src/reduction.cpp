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

#include "kpell/reduction.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <string>

#include "kpell/error.hpp"

namespace kpell {

namespace {

// Expands as far as the enclosure allows, stopping once `want` convergents
// exceed q_target.
CFExpansion expand(const Ball& x, const mpz_class& q_target, int want) {
  CFExpansion cf;
  cf.source_prec = x.prec();
  mpz_class p1 = 1, q1 = 0, p2 = 0, q2 = 1;
  Ball y = x;
  int beyond = 0;
  for (;;) {
    const auto a = y.unique_floor();
    if (!a) break;
    if (!cf.partial_quotients.empty() && *a < 1) break;
    const mpz_class p = *a * p1 + p2;
    const mpz_class q = *a * q1 + q2;
    cf.partial_quotients.push_back(*a);
    cf.convergents.emplace_back(p, q);
    p2 = p1;
    q2 = q1;
    p1 = p;
    q1 = q;
    if (q > q_target && ++beyond >= want) break;
    const Ball frac = y - Ball(*a, y.prec());
    if (frac.contains_zero()) break;
    y = Ball(1, y.prec()) / frac;
  }
  cf.certified_len = cf.partial_quotients.size();
  return cf;
}

int count_beyond(const CFExpansion& cf, const mpz_class& q_target) {
  return static_cast<int>(std::count_if(cf.convergents.begin(), cf.convergents.end(),
                                        [&](const auto& c) { return c.second > q_target; }));
}

// Principal argument in (-pi, pi], stepping around the branch cut when
// the enclosure touches the negative real axis.
Ball principal_arg(const ComplexBall& z) {
  if (!(z.im.contains_zero() && z.re.is_negative())) return arg(z);
  const Ball t = arg(-z);
  const Ball pi = Ball::pi(z.prec());
  if (t.is_positive()) return t - pi;
  if (t.is_negative()) return t + pi;
  throw IndeterminateError("argument sits on the branch cut");
}

CheckResult range_check(const std::string& name, const Ball& x, const Ball& lo, const Ball& hi) {
  CheckResult c;
  c.name = name;
  c.passed = mpfr_greaterequal_p(x.lower().get(), lo.upper().get()) &&
             mpfr_lessequal_p(x.upper().get(), hi.lower().get());
  c.margin = std::min((x - lo).mid_double(), (hi - x).mid_double());
  c.detail = x.mid_string(12);
  return c;
}

CheckResult sign_check(const std::string& name, const Ball& gap) {
  CheckResult c;
  c.name = name;
  c.passed = gap.is_positive();
  c.margin = gap.mid_double();
  return c;
}

}  // namespace

CFExpansion cf_expand(const Ball& x, const mpz_class& q_target, int extra) {
  if (q_target < 1) throw DomainError("q_target must be positive");
  CFExpansion cf = expand(x, q_target, extra + 1);
  if (count_beyond(cf, q_target) < extra + 1) {
    throw PrecisionExhaustedError("enclosure too wide to certify enough partial quotients");
  }
  return cf;
}

CFExpansion cf_expand(const std::function<Ball(mpfr_prec_t)>& source, const mpz_class& q_target,
                      mpfr_prec_t start, int extra) {
  if (q_target < 1) throw DomainError("q_target must be positive");
  for (mpfr_prec_t p = start; p <= kPrecCeiling; p *= 2) {
    CFExpansion cf = expand(source(p), q_target, extra + 1);
    if (count_beyond(cf, q_target) >= extra + 1) return cf;
  }
  throw PrecisionExhaustedError("continued fraction not certified below the precision ceiling");
}

Ball nearest_int_distance(const Ball& x) {
  const mpfr_prec_t p = x.prec();
  const Ball half = Ball::from_ratio(1, 2, p);
  const Ball d = abs(x - Ball(x.round_mid(), p));
  if (certainly_lt(d, half)) return d;
  // near a half-integer: ||x|| = 1/2 - |x - n - 1/2| on [n, n + 1]
  Float f(p);
  mpfr_floor(f.get(), x.mid().get());
  mpz_class n;
  mpfr_get_z(n.get_mpz_t(), f.get(), MPFR_RNDN);
  const Ball y = x - Ball(n, p);
  if (mpfr_sgn(y.lower().get()) < 0 || mpfr_cmp_ui(y.upper().get(), 1) > 0) {
    throw IndeterminateError("enclosure meets an integer and a half-integer");
  }
  return half - abs(y - half);
}

namespace {

struct Attempt {
  bool done = false;
  bool undecided = false;
  ReductionOutcome out;
};

Attempt reduce_once(const ReductionInstance& inst, int max_attempts) {
  if (inst.M < 1) throw DomainError("M must be at least 1");
  if (!inst.A.is_positive()) throw DomainError("A must be positive");
  if (!certainly_gt(inst.B, 1)) throw DomainError("B must exceed 1");
  const mpz_class target = 6 * inst.M;
  const CFExpansion cf = expand(inst.tau, target, max_attempts);
  Attempt res;
  const mpfr_prec_t p = inst.tau.prec();
  const Ball Mb(inst.M, p);
  int tried = 0;
  for (std::size_t m = 0; m < cf.convergents.size() && tried < max_attempts; ++m) {
    const mpz_class& q = cf.convergents[m].second;
    if (q <= target) continue;
    ++tried;
    const Ball qb(q, p);
    try {
      const Ball eps = nearest_int_distance(inst.mu * qb) - Mb * nearest_int_distance(inst.tau * qb);
      if (eps.is_positive()) {
        const Ball bound = log(inst.A * qb / eps) / log(inst.B);
        const mpz_class R = bound.floor_of_upper();
        if (!R.fits_slong_p()) throw ResourceLimitError("reduced bound exceeds the integer range");
        res.done = true;
        res.out = ReductionOutcome{q, static_cast<int>(m), eps, std::max<long>(R.get_si(), 0), tried, p};
        return res;
      }
      if (!eps.is_negative()) res.undecided = true;
    } catch (const IndeterminateError&) {
      res.undecided = true;
    }
  }
  // Running out of certified quotients before the budget is also undecided.
  if (tried < max_attempts) res.undecided = true;
  res.out.attempts = tried;
  return res;
}

}  // namespace

ReductionOutcome davenport_reduce(const ReductionInstance& inst, int max_attempts) {
  const Attempt a = reduce_once(inst, max_attempts);
  if (a.done) return a.out;
  if (a.undecided) throw PrecisionExhaustedError("reduction undecided at the given precision");
  throw ReductionExhausted("no convergent with positive epsilon in " + std::to_string(max_attempts) + " attempts");
}

ReductionOutcome davenport_reduce(const InstanceSource& source, mpfr_prec_t start, int max_attempts) {
  for (mpfr_prec_t p = start; p <= kPrecCeiling; p *= 2) {
    Attempt a;
    try {
      a = reduce_once(source(p), max_attempts);
    } catch (const IndeterminateError&) {
      continue;
    }
    if (a.done) return a.out;
    if (!a.undecided) {
      throw ReductionExhausted("no convergent with positive epsilon in " + std::to_string(max_attempts) +
                               " attempts");
    }
  }
  throw PrecisionExhaustedError("reduction undecided below the precision ceiling");
}

mpz_class parse_exact_integer(std::string_view text) {
  std::string s(text);
  s.erase(std::remove_if(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c) || c == '_'; }),
          s.end());
  if (s.empty()) throw DomainError("empty integer literal");
  std::string mant = s;
  long exp10 = 0;
  const auto epos = s.find_first_of("eE");
  if (epos != std::string::npos) {
    mant = s.substr(0, epos);
    const std::string e = s.substr(epos + 1);
    std::size_t used = 0;
    try {
      exp10 = std::stol(e, &used);
    } catch (const std::exception&) {
      throw DomainError("malformed exponent in '" + s + "'");
    }
    if (used != e.size()) throw DomainError("malformed exponent in '" + s + "'");
  }
  std::string digits;
  long frac = 0;
  bool dot = false;
  for (char c : mant) {
    if (c == '.' && !dot) {
      dot = true;
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      digits.push_back(c);
      if (dot) ++frac;
    } else {
      throw DomainError("malformed integer literal '" + s + "'");
    }
  }
  if (digits.empty()) throw DomainError("malformed integer literal '" + s + "'");
  mpz_class v(digits, 10);
  const long shift = exp10 - frac;
  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(shift < 0 ? -shift : shift));
  if (shift >= 0) return v * scale;
  if (v % scale != 0) throw DomainError("literal '" + s + "' is not an integer");
  return v / scale;
}

mpfr_prec_t reduction_precision(const mpz_class& M) {
  const std::size_t digits = mpz_sizeinbase(M.get_mpz_t(), 10);
  const double bits = std::ceil(static_cast<double>(digits + 60) * 3.3219280948873623);
  return std::max<mpfr_prec_t>(kDefaultPrec, static_cast<mpfr_prec_t>(bits));
}

bool OddInstance::all_passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

OddInstance odd_instance(const RootSystem& rs, const mpz_class& M) {
  const int k = rs.k;
  if (k % 2 == 0 || k < 5) throw DomainError("odd reduction needs odd k >= 5");
  const mpfr_prec_t p = rs.prec;
  const Ball pi = Ball::pi(p);
  const Ball tau_lo = Ball::from_ratio(159, 100, p), tau_hi = Ball::from_ratio(199, 100, p);
  const Ball mu_lo = Ball::from_ratio(700657, 1000000, p), mu_hi = Ball::from_ratio(19927, 10000, p);

  OddInstance out;
  out.k = k;
  // smallest-modulus pair, lower half-plane member
  int idx = k - 1;
  Ball tau = -(principal_arg(rs.roots[static_cast<std::size_t>(idx)]) * 2) / pi;
  if (!(certainly_lt(tau_lo, tau) && certainly_lt(tau, tau_hi))) {
    const int other = rs.conjugate_of(idx);
    const Ball alt = -(principal_arg(rs.roots[static_cast<std::size_t>(other)]) * 2) / pi;
    if (certainly_lt(tau_lo, alt) && certainly_lt(alt, tau_hi)) {
      idx = other;
      tau = alt;
      out.switched = true;
    }
  }
  out.gamma_index = idx;
  const ComplexBall& gk = rs.roots[static_cast<std::size_t>(idx)];
  const ComplexBall g = eval_gk(k, gk);
  const Ball mu = principal_arg(g) * 2 / pi;
  const Ball absg = abs(g);
  const Ball A = Ball(1, p) / absg;
  const Ball& mod_k = rs.moduli[static_cast<std::size_t>(k - 1)];
  const Ball B = rs.moduli[static_cast<std::size_t>(k - 3)] / mod_k;
  out.inst = ReductionInstance{tau, mu, A, B, M};

  out.checks.push_back(range_check("tau_range", tau, tau_lo, tau_hi));
  out.checks.push_back(range_check("mu_range", mu, mu_lo, mu_hi));

  // Remaining weights: sum_{i <= k-2} |g(gamma_i)|.
  Ball wsum(p);
  for (int i = 0; i < k - 2; ++i) wsum = wsum + abs(eval_gk(k, rs.roots[static_cast<std::size_t>(i)]));
  // The cosine step bounds |u tau - v + mu| by (wsum / 2|g_k|) B^{-u}, so A
  // is a valid constant when wsum <= 2.
  out.checks.push_back(sign_check("weight_sum", Ball(2, p) - wsum));

  const long long u0 = static_cast<long long>(k) * k * k + 1 - exponent_offset();
  const Ball u(u0, p);
  const Ball lnB = log(B);
  // |Lambda| <= (wsum/|g_k|) B^{-u} < 1/2
  const Ball ln_lambda = log(wsum / absg) - u * lnB;
  out.checks.push_back(sign_check("lambda_half", log(Ball::from_ratio(1, 2, p)) - ln_lambda));
  // v <= 0 would need u tau < A B^{-u} + mu
  out.checks.push_back(sign_check("positive_v", u * tau - A * exp(-(u * lnB)) - mu));
  // constant in the lower bound on |g(gamma_k)|: A < 2k(5k+2)/log gamma
  out.checks.push_back(
      sign_check("weight_inverse_bound", Ball(2L * k * (5L * k + 2), p) / log(rs.roots[0].re) - A));
  return out;
}

OddReduction reduce_odd(int k, const mpz_class& M) {
  if (k % 2 == 0 || k < 5) throw DomainError("odd reduction needs odd k >= 5");
  const mpfr_prec_t start = reduction_precision(M);
  OddReduction res;
  res.instance = with_certified_roots(k, start, [&](const RootSystem& rs) { return odd_instance(rs, M); });
  res.outcome = davenport_reduce(
      [&](mpfr_prec_t p) {
        return with_certified_roots(k, p, [&](const RootSystem& rs) { return odd_instance(rs, M).inst; });
      },
      start);
  // Nonvanishing of Lambda at u = R.
  with_certified_roots(k, res.outcome.prec, [&](const RootSystem& rs) {
    const int i = res.instance.gamma_index;
    const int j = rs.conjugate_of(i);
    const ComplexBall& zk = rs.roots[static_cast<std::size_t>(i)];
    const ComplexBall& zj = rs.roots[static_cast<std::size_t>(j)];
    const ComplexBall lambda = ComplexBall(Ball(1, rs.prec)) +
                               eval_gk(k, zj) / eval_gk(k, zk) * pow(zk / zj, static_cast<long>(res.outcome.R));
    res.lambda_nonzero = !lambda.contains_zero();
    return 0;
  });
  return res;
}

}  // namespace kpell
