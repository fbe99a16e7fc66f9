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

// Certified roots of the characteristic polynomial
//
//   Psi_k(x) = x^k - 2x^{k-1} - x^{k-2} - ... - x - 1,
//   (x - 1) Psi_k(x) = x^{k+1} - 3x^k + x^{k-1} + 1,
//
// and the weights g_k(x) = (x - 1) / (k(x^2 - 3x + 1) + x^2 - 1) that
// express P_n as a sum of root powers.

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "kpell/ball.hpp"
#include "kpell/error.hpp"

namespace kpell {

inline constexpr mpfr_prec_t kDefaultPrec = 128;
inline constexpr mpfr_prec_t kPrecCeiling = 1 << 20;

struct RootSystem {
  int k = 0;
  mpfr_prec_t prec = 0;
  /// Sorted by descending modulus; within a conjugate pair the root with
  /// positive imaginary part comes first.
  std::vector<ComplexBall> roots;
  std::vector<Ball> moduli;
  int dominant = 0;
  std::vector<std::pair<int, int>> conj_pairs;
  std::vector<int> real_roots;

  bool is_real(int i) const;
  /// Partner of i in a conjugate pair, or -1.
  int conjugate_of(int i) const;
};

/// All k roots with certified, pairwise disjoint enclosures. Precision
/// starts at `target_prec` and doubles until certification succeeds.
RootSystem solve_roots(int k, mpfr_prec_t target_prec = kDefaultPrec);

/// Rebuilds a RootSystem from stored midpoints and re-certifies it at
/// `prec` (used by the on-disk cache).
RootSystem certify_roots(int k, const std::vector<ComplexBall>& approx, mpfr_prec_t prec);

Ball psi_eval(int k, const Ball& x);
ComplexBall psi_eval(int k, const ComplexBall& x);

Ball eval_gk(int k, const Ball& x);
ComplexBall eval_gk(int k, const ComplexBall& x);

/// Calibrated offset o with P_n = sum_i g_k(gamma_i) gamma_i^{n + o}.
int exponent_offset();
inline long long binet_exponent(long long n) { return n + exponent_offset(); }

/// Sum of g_k(gamma_i) gamma_i^{e(n)}; contains the exact P_n.
Ball binet_reconstruct(int k, long long n, const RootSystem& rs);
/// Dominant term g_k(gamma) gamma^{e(n)}.
Ball binet_dominant(int k, long long n, const RootSystem& rs);

struct CheckResult {
  std::string name;
  bool passed = false;
  /// Certified gap to the failing side (midpoint); positive means pass.
  double margin = 0.0;
  std::string detail;
  /// Informational checks are reported but do not decide PASS/FAIL.
  bool required = true;
};

/// phi^2 (1 - phi^{-k}) < gamma < phi^2.
bool check_dominant_bounds(const RootSystem& rs);

/// Modulus ratio gap, dominant weight range, weight magnitudes, the
/// smallest-root bounds and the equal-modulus conjugacy property.
std::vector<CheckResult> check_root_properties(const RootSystem& rs);

/// |gamma_{k-1}| / |gamma_k| > 1 + k^{-k^2}; k must be even.
CheckResult check_even_tail_gap(const RootSystem& rs);

struct SeparationResult {
  int i = 0;
  int j = 0;
  std::string kind;  // "nonreal", "mixed" or "real"
  bool passed = false;
  /// log of the modulus gap minus log of the required separation.
  double log_margin = 0.0;
};

/// Modulus separation for every pair of roots with distinct moduli.
std::vector<SeparationResult> check_modulus_separation(const RootSystem& rs);

/// Product of the moduli exceeding one.
Ball mahler_measure(const RootSystem& rs);

/// (gamma_i / gamma_j)^m != 1 for all i != j and 1 <= m <= max_m.
bool check_no_root_of_unity_ratio(const RootSystem& rs, int max_m);

/// Absolute logarithmic height of g_k(gamma).
Ball weight_height(const RootSystem& rs);

/// Runs `f` on a RootSystem, doubling precision whenever `f` throws
/// IndeterminateError.
template <class F>
auto with_certified_roots(int k, mpfr_prec_t start, F&& f) {
  for (mpfr_prec_t prec = start;; prec *= 2) {
    const RootSystem rs = solve_roots(k, prec);
    try {
      return f(rs);
    } catch (const IndeterminateError&) {
      if (prec * 2 > kPrecCeiling) throw PrecisionExhaustedError("precision ceiling reached for k = " + std::to_string(k));
    }
  }
}

}  // namespace kpell
