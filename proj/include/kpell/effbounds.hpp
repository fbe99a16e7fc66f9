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

// Effective bounds evaluated in log space. Quantities such as k^{k^2}
// never exist as numbers here, only as enclosures of their logarithms.

#include <gmpxx.h>

#include <string>
#include <vector>

#include "kpell/ball.hpp"
#include "kpell/spectra.hpp"

namespace kpell {

/// A nonzero real of huge magnitude stored as sign and natural log of |x|.
struct LogMagnitude {
  Ball ln;
  bool negative = false;
  bool exact = false;

  explicit LogMagnitude(Ball log_abs, bool neg = false, bool is_exact = false)
      : ln(std::move(log_abs)), negative(neg), exact(is_exact) {}

  Ball log10() const;
  /// Decimal log10 of |x| with `digits` significant digits.
  std::string log10_string(int digits = 12) const;
  /// Scientific rendering of x, e.g. "4.7628e+10".
  std::string display(int digits = 5) const;
};

/// Certain comparison of the underlying signed values.
bool certainly_less(const LogMagnitude& a, const LogMagnitude& b);

/// log max(|p|, q) of p/q in lowest terms.
Ball height_rational(const mpz_class& p, const mpz_class& q, mpfr_prec_t prec = kDefaultPrec);

struct MatveevInstance {
  int t = 1;
  long d = 1;
  mpz_class B = 1;
  std::vector<Ball> A;
};

/// Lower bound -3 30^{t+4} (t+1)^{5.5} d^2 (1 + log d)(1 + log tB) prod A_j
/// on log |Lambda|, returned as a negative magnitude.
LogMagnitude matveev_lower_bound(const MatveevInstance& m);

/// t = 2, d = k^2, A = (10 k^2 log k, 1.8 k), B = n + 1.
MatveevInstance odd_case_matveev_instance(int k, const mpz_class& n, mpfr_prec_t prec = kDefaultPrec);

/// -2.1e14 k^7 log(n + 1) (log k)^2.
LogMagnitude odd_case_simplified_bound(int k, const mpz_class& n, mpfr_prec_t prec = kDefaultPrec);

/// Closed-form index bound: 2 k^{k^2} log(16k^2) for even k and
/// 7.5e14 1.59^{k^3} k^{10} (log k)^2 for odd k (k >= 4).
LogMagnitude index_bound(int k, mpfr_prec_t prec = kDefaultPrec);

/// 2^r H (log H)^r, valid when H > (4r^2)^r.
double log_inversion_bound(int r, double H);
LogMagnitude log_inversion_bound(int r, const LogMagnitude& H);

/// Largest n with (n - o) log(|gamma_{k-1}| / |gamma_k|) < log(16k^2),
/// o the calibrated exponent offset; k even.
long long refined_even_bound(const RootSystem& rs);
long long refined_even_bound(int k);

/// (|gamma_{k-1}| / |gamma_k|)^{n - o} < 16k^2, together with the constant
/// link 2k(5k+2)/log gamma < 16k^2.
bool even_chain_holds(const RootSystem& rs, long long n);

}  // namespace kpell
