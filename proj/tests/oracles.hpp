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

// Reference implementations that share no code with the library. They are
// deliberately naive: O(k) work per term, plain doubles, exact rationals.

#include <gmpxx.h>
#include <mpfr.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <map>
#include <numbers>
#include <random>
#include <vector>

#include "kpell/ball.hpp"
#include "kpell/error.hpp"
#include "kpell/reduction.hpp"

namespace oracle {

/// P_lo..P_hi (lo <= 0 < hi allowed) straight from the recurrence, solving
/// for the oldest term when going down.
inline std::map<long long, mpz_class> pell_terms(int k, long long lo, long long hi) {
  std::map<long long, mpz_class> p;
  for (long long i = -(k - 2); i <= 0; ++i) p[i] = 0;
  p[1] = 1;
  for (long long n = 2; n <= hi; ++n) {
    mpz_class v = 2 * p[n - 1];
    for (int i = 2; i <= k; ++i) v += p[n - i];
    p[n] = v;
  }
  // P_{m-k} = P_m - 2 P_{m-1} - sum_{i=2}^{k-1} P_{m-i}
  for (long long m = 1; m - k >= lo; --m) {
    mpz_class v = p[m] - 2 * p[m - 1];
    for (int i = 2; i <= k - 1; ++i) v -= p[m - i];
    p[m - k] = v;
  }
  return p;
}

inline mpz_class pell(int k, long long n) { return pell_terms(k, std::min(n, 0LL), std::max(n, 1LL))[n]; }

inline std::vector<long long> zero_indices(int k, long long floor) {
  std::vector<long long> z;
  const auto p = pell_terms(k, floor, 1);
  for (long long n = 0; n >= floor; --n) {
    if (p.at(n) == 0) z.push_back(n);
  }
  return z;
}

/// Durand-Kerner on Psi_k in doubles; roots sorted by decreasing modulus.
inline std::vector<std::complex<double>> psi_roots(int k) {
  using cd = std::complex<double>;
  std::vector<double> c(static_cast<std::size_t>(k) + 1, -1.0);  // c[i] is the x^{k-i} coefficient
  c[0] = 1.0;
  c[1] = -2.0;
  auto eval = [&](cd x) {
    cd v = 0.0;
    for (double a : c) v = v * x + a;
    return v;
  };
  std::vector<cd> z(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) z[i] = std::polar(1.3, 0.4 + 2.0 * std::numbers::pi * i / k);
  for (int it = 0; it < 2000; ++it) {
    double moved = 0.0;
    for (int i = 0; i < k; ++i) {
      cd den = 1.0;
      for (int j = 0; j < k; ++j) {
        if (j != i) den *= z[i] - z[j];
      }
      const cd step = eval(z[i]) / den;
      z[i] -= step;
      moved = std::max(moved, std::abs(step));
    }
    if (moved < 1e-15) break;
  }
  std::sort(z.begin(), z.end(), [](cd a, cd b) { return std::abs(a) > std::abs(b); });
  return z;
}

/// Exact value of Psi_k at a rational.
inline mpq_class psi_exact(int k, const mpq_class& x) {
  mpq_class v = 1;
  v = v * x - 2;
  for (int i = 2; i <= k; ++i) v = v * x - 1;
  return v;
}

/// Bisection with exact rationals: [lo, hi] still brackets a sign change.
inline std::pair<mpq_class, mpq_class> bisect_root(int k, mpq_class lo, mpq_class hi, int steps) {
  const int slo = sgn(psi_exact(k, lo));
  for (int i = 0; i < steps; ++i) {
    mpq_class mid = (lo + hi) / 2;
    if (sgn(psi_exact(k, mid)) == slo) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return {lo, hi};
}

inline bool ball_meets(const kpell::Ball& b, const mpq_class& lo, const mpq_class& hi) {
  return mpfr_cmp_q(b.upper().get(), lo.get_mpq_t()) >= 0 && mpfr_cmp_q(b.lower().get(), hi.get_mpq_t()) <= 0;
}

// ---- planted reduction instances -----------------------------------------

struct Planted {
  kpell::ReductionInstance inst;
  long long planted_u = 0;
  long long planted_w = 0;
};

/// tau = sqrt(a) for a non-square a; mu is chosen so that u0 tau - v0 + mu
/// equals A B^{-w0} / 3, planting a solution with exponent w0.
inline Planted make_planted(std::mt19937_64& rng, mpfr_prec_t prec) {
  using kpell::Ball;
  auto pick = [&](long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng); };
  long a = pick(2, 200);
  while (static_cast<long>(std::lround(std::sqrt(double(a)))) * std::lround(std::sqrt(double(a))) == a) ++a;
  Planted p;
  p.inst.tau = kpell::sqrt(Ball(a, prec));
  p.inst.M = pick(50, 10000);
  p.inst.A = Ball::from_ratio(pick(10, 200), 10, prec);
  p.inst.B = Ball::from_ratio(pick(12, 40), 10, prec);
  p.planted_u = pick(1, p.inst.M.get_si());
  p.planted_w = pick(1, 25);
  const Ball ut = p.inst.tau * p.planted_u;
  const Ball v0(ut.round_mid() + pick(-2, 2), prec);
  p.inst.mu = v0 - ut + p.inst.A * kpell::pow(p.inst.B, -p.planted_w) / 3;
  return p;
}

/// Largest w (over u in [1, M] and every integer v) with
/// 0 < |u tau - v + mu| < A B^{-w}; overestimates by at most one when the
/// threshold is an exact integer. Returns -1 when no w >= 0 qualifies.
inline long long brute_force_max_w(const kpell::ReductionInstance& in) {
  using kpell::Ball;
  const long long M = in.M.get_si();
  const Ball lnB = log(in.B);
  long long best = -1;
  for (long long u = 1; u <= M; ++u) {
    const Ball x = in.tau * u + in.mu;
    const Ball d = abs(x - Ball(x.round_mid(), x.prec()));
    if (d.contains_zero()) throw kpell::IndeterminateError("oracle distance not separated from zero");
    // largest integer w with w < log(A/d)/log B
    const Ball t = log(in.A / d) / lnB;
    const long long w = t.floor_of_upper().get_si();
    best = std::max(best, w);
  }
  return best;
}

}  // namespace oracle
