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

// Exact evaluation of the k-generalized Pell sequence
//
//   P_n = 2 P_{n-1} + P_{n-2} + ... + P_{n-k},
//   P_{-(k-2)} = ... = P_0 = 0,  P_1 = 1,
//
// at every integer index. Indices below the window are reached by solving
// the recurrence for its oldest term, one index at a time.

#include <gmpxx.h>

#include <cstdint>
#include <functional>
#include <vector>

namespace kpell {

inline constexpr long long kDefaultMaxIndex = 10'000'000;

struct KContext {
  int k;
  /// Largest |n| any evaluation may touch.
  long long max_index;

  explicit KContext(int k, long long max_index = kDefaultMaxIndex);
};

struct ExactTerm {
  long long n;
  mpz_class value;
};

ExactTerm eval_term(const KContext& ctx, long long n);

/// Terms for every index in [n_lo, n_hi], ascending, from one linear sweep.
std::vector<ExactTerm> eval_range(const KContext& ctx, long long n_lo, long long n_hi);

/// Streams P_1, P_0, P_{-1}, ..., P_floor to `visit` without storing them.
/// Returning false from `visit` stops the sweep early.
void sweep_down(const KContext& ctx, long long floor,
                const std::function<bool(long long, const mpz_class&)>& visit);

/// Streams P_1, P_2, ..., P_ceil.
void sweep_up(const KContext& ctx, long long ceil,
              const std::function<bool(long long, const mpz_class&)>& visit);

/// The memo of single-term lookups can be switched off; results are
/// identical either way.
void set_term_cache_enabled(bool enabled);
bool term_cache_enabled();
void clear_term_cache();
std::size_t term_cache_size();

}  // namespace kpell
