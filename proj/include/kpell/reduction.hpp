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

// Continued fractions of certified reals and the Baker-Davenport style
// reduction: for a convergent p/q of tau with q > 6M and
//   eps = ||mu q|| - M ||tau q|| > 0,
// the inequality 0 < |u tau - v + mu| < A B^{-w} has no solution with
// u <= M and w >= log(A q / eps) / log B.

#include <gmpxx.h>

#include <functional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "kpell/ball.hpp"
#include "kpell/spectra.hpp"

namespace kpell {

struct CFExpansion {
  std::vector<mpz_class> partial_quotients;
  /// (p_m, q_m) for every certified partial quotient.
  std::vector<std::pair<mpz_class, mpz_class>> convergents;
  mpfr_prec_t source_prec = 0;
  std::size_t certified_len = 0;
};

/// Expands until `extra + 1` convergents have q > q_target, or throws
/// PrecisionExhaustedError when the enclosure runs out first.
CFExpansion cf_expand(const Ball& x, const mpz_class& q_target, int extra = 0);

/// Same, re-evaluating the real at doubled precision whenever needed.
CFExpansion cf_expand(const std::function<Ball(mpfr_prec_t)>& source, const mpz_class& q_target,
                      mpfr_prec_t start = kDefaultPrec, int extra = 0);

/// Distance to the nearest integer; throws IndeterminateError when the
/// enclosure straddles both an integer and a half-integer.
Ball nearest_int_distance(const Ball& x);

struct ReductionInstance {
  Ball tau;
  Ball mu;
  Ball A;
  Ball B;
  mpz_class M;
};

using InstanceSource = std::function<ReductionInstance(mpfr_prec_t)>;

struct ReductionOutcome {
  mpz_class q_used;
  int m_index = 0;
  Ball epsilon;
  long long R = 0;
  int attempts = 0;
  mpfr_prec_t prec = 0;
};

inline constexpr int kReductionAttempts = 40;

ReductionOutcome davenport_reduce(const ReductionInstance& inst, int max_attempts = kReductionAttempts);
/// Re-evaluates the instance at doubled precision when enclosures are too
/// wide to decide.
ReductionOutcome davenport_reduce(const InstanceSource& source, mpfr_prec_t start,
                                  int max_attempts = kReductionAttempts);

/// Parses a nonnegative integer given in decimal or as "<mantissa>e<exp>"
/// (e.g. "3e47", "2.5e3") exactly.
mpz_class parse_exact_integer(std::string_view text);

/// Bits needed for digits(M) + 60 decimal digits.
mpfr_prec_t reduction_precision(const mpz_class& M);

struct OddInstance {
  int k = 0;
  ReductionInstance inst;
  /// Index of the root used as gamma_k in the RootSystem.
  int gamma_index = 0;
  /// Whether the conjugate had to be taken to land tau in range.
  bool switched = false;
  std::vector<CheckResult> checks;

  bool all_passed() const;
};

/// tau = -2 arg(gamma_k)/pi, mu = 2 arg(g_k(gamma_k))/pi,
/// A = 1/|g_k(gamma_k)|, B = |gamma_{k-2}|/|gamma_k|, with range and side
/// condition checks at u = k^3 + 1 - o.
OddInstance odd_instance(const RootSystem& rs, const mpz_class& M);

struct OddReduction {
  OddInstance instance;
  ReductionOutcome outcome;
  /// Lambda = 1 + (g(gamma_{k-1})/g(gamma_k)) (gamma_k/gamma_{k-1})^u at u = R.
  bool lambda_nonzero = false;
};

OddReduction reduce_odd(int k, const mpz_class& M);

}  // namespace kpell
