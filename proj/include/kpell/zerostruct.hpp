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

#include <gmpxx.h>

#include <utility>
#include <vector>

namespace kpell {

/// Zero indices of P at n <= 0, listed from 0 downward.
struct ZeroSet {
  int k = 0;
  std::vector<long long> indices;
  long long search_floor = 0;

  long long deepest() const { return indices.empty() ? 0 : indices.back(); }
};

/// Closed interval [lo, hi] of sequence indices (lo <= hi <= 0).
struct Block {
  long long lo;
  long long hi;

  long long size() const { return hi - lo + 1; }
  bool operator==(const Block&) const = default;
};

struct IntervalStructure {
  int k = 0;
  int r = 0;
  /// Ordered from the block nearest to zero downward.
  std::vector<Block> blocks;
  long long chi = 0;
};

/// Exact scan of P_floor..P_0.
ZeroSet enumerate_zeros(int k, long long floor);

/// Predicted blocks I_j = [jk - (k-3) + (j-1), jk - (j-1)] read as
/// nonpositive indices; needs k >= 4.
IntervalStructure predicted_intervals(int k);

/// {0} together with the predicted blocks; the two smallest orders use
/// their tabulated sets {0} and {0, -3}.
std::vector<long long> predicted_zero_set(int k);

/// 1 for k = 2, 2 for k = 3, 1 + k(k-2)/4 for even k, 1 + (k-1)^2/4 for odd k.
long long chi(int k);

/// Maximal runs of consecutive indices in a zero set, nearest to zero first.
std::vector<Block> observed_blocks(const ZeroSet& zs);

/// Default scan depth k^2 + 4k.
long long default_floor(int k);

struct MirrorSequence {
  /// G_n = P_{shift - n}.
  long long shift = 0;
  std::vector<mpz_class> values;  // G_0 .. G_{n_hi}
};

/// Reflected sequence; verifies its forward recurrence and the four-term
/// identity G_n = 3G_{n-k} - G_{n-k+1} - G_{n-k-1} for every n in range.
MirrorSequence mirror_sequence(int k, long long n_hi);

struct StructureReport {
  int k = 0;
  long long bound = 0;
  ZeroSet zeros;
  std::vector<long long> predicted;
  std::vector<long long> missing;  // predicted but not observed
  std::vector<long long> extra;    // observed but not predicted
  long long chi_formula = 0;
  bool match = false;
  /// Distance from the scan floor to the deepest zero.
  long long margin = 0;
};

StructureReport compare_structure(int k, long long bound);

/// compare_structure that throws StructureMismatch on any difference.
StructureReport verify_structure(int k, long long bound);

}  // namespace kpell
