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

#include "kpell/zerostruct.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <string>

#include "kpell/bigseq.hpp"
#include "kpell/error.hpp"

namespace kpell {

ZeroSet enumerate_zeros(int k, long long floor) {
  if (floor >= 0) throw DomainError("scan floor must be negative");
  const KContext ctx(k, std::max(kDefaultMaxIndex, -floor));
  ZeroSet zs;
  zs.k = k;
  zs.search_floor = floor;
  sweep_down(ctx, floor, [&](long long n, const mpz_class& v) {
    if (n <= 0 && sgn(v) == 0) zs.indices.push_back(n);
    return true;
  });
  return zs;
}

IntervalStructure predicted_intervals(int k) {
  if (k < 4) throw DomainError("interval structure needs k >= 4");
  IntervalStructure s;
  s.k = k;
  s.r = k % 2 == 0 ? (k - 2) / 2 : (k - 1) / 2;
  s.chi = 1;
  for (long long j = 1; j <= s.r; ++j) {
    const long long near = j * k - (k - 3) + (j - 1);
    const long long far = j * k - (j - 1);
    s.blocks.push_back({-far, -near});
    s.chi += far - near + 1;
  }
  return s;
}

std::vector<long long> predicted_zero_set(int k) {
  if (k == 2) return {0};
  if (k == 3) return {0, -3};
  std::vector<long long> out{0};
  for (const Block& b : predicted_intervals(k).blocks) {
    for (long long n = b.hi; n >= b.lo; --n) out.push_back(n);
  }
  return out;
}

long long chi(int k) {
  if (k < 2) throw DomainError("order k must be at least 2");
  if (k == 2) return 1;
  if (k == 3) return 2;
  const long long kk = k;
  return kk % 2 == 0 ? 1 + kk * (kk - 2) / 4 : 1 + (kk - 1) * (kk - 1) / 4;
}

std::vector<Block> observed_blocks(const ZeroSet& zs) {
  std::vector<Block> out;
  for (long long n : zs.indices) {
    if (!out.empty() && out.back().lo == n + 1) {
      out.back().lo = n;
    } else {
      out.push_back({n, n});
    }
  }
  return out;
}

long long default_floor(int k) { return -(static_cast<long long>(k) * k + 4LL * k); }

MirrorSequence mirror_sequence(int k, long long n_hi) {
  if (k < 2) throw DomainError("order k must be at least 2");
  if (n_hi < k) throw DomainError("mirror sequence needs n_hi >= k");
  const KContext ctx(k);
  // Pick the reflection point whose first k-1 mirrored terms vanish.
  long long shift = 0;
  bool found = false;
  for (long long c = -k; c <= k && !found; ++c) {
    bool ok = true;
    for (long long i = 0; i <= k - 2 && ok; ++i) ok = sgn(eval_term(ctx, c - i).value) == 0;
    if (ok && sgn(eval_term(ctx, c - (k - 1)).value) != 0) {
      shift = c;
      found = true;
    }
  }
  if (!found) throw IdentityViolation("no reflection point gives a zero initial window");

  MirrorSequence ms;
  ms.shift = shift;
  for (auto& t : eval_range(ctx, shift - n_hi, shift)) ms.values.push_back(std::move(t.value));
  std::reverse(ms.values.begin(), ms.values.end());

  const auto& g = ms.values;
  auto at = [&](long long n) -> const mpz_class& { return g[static_cast<std::size_t>(n)]; };
  for (long long n = k; n <= n_hi; ++n) {
    // G_n = G_{n-k} - 2 G_{n-(k-1)} - sum_{i=1}^{k-2} G_{n-i}
    mpz_class rhs = at(n - k) - 2 * at(n - (k - 1));
    for (long long i = 1; i <= k - 2; ++i) rhs -= at(n - i);
    if (rhs != at(n)) {
      throw IdentityViolation("reflected recurrence fails at n = " + std::to_string(n));
    }
    if (n >= k + 1) {
      const mpz_class four = 3 * at(n - k) - at(n - k + 1) - at(n - k - 1);
      if (four != at(n)) throw IdentityViolation("four-term identity fails at n = " + std::to_string(n));
    }
  }
  return ms;
}

StructureReport compare_structure(int k, long long bound) {
  if (bound < 1) throw DomainError("bound must be positive");
  StructureReport rep;
  rep.k = k;
  rep.bound = bound;
  rep.predicted = predicted_zero_set(k);
  const long long deepest_predicted = rep.predicted.back();
  if (bound < -deepest_predicted) {
    throw DomainError("bound " + std::to_string(bound) + " is shallower than the deepest predicted zero");
  }
  rep.zeros = enumerate_zeros(k, -bound);
  rep.chi_formula = chi(k);
  const std::set<long long> obs(rep.zeros.indices.begin(), rep.zeros.indices.end());
  const std::set<long long> pred(rep.predicted.begin(), rep.predicted.end());
  for (long long n : pred) {
    if (!obs.count(n)) rep.missing.push_back(n);
  }
  for (long long n : obs) {
    if (!pred.count(n)) rep.extra.push_back(n);
  }
  std::sort(rep.missing.rbegin(), rep.missing.rend());
  std::sort(rep.extra.rbegin(), rep.extra.rend());
  rep.match = rep.missing.empty() && rep.extra.empty();
  rep.margin = rep.zeros.deepest() + bound;
  return rep;
}

StructureReport verify_structure(int k, long long bound) {
  StructureReport rep = compare_structure(k, bound);
  if (!rep.match) {
    std::ostringstream os;
    os << "zero set of k = " << k << " differs from the prediction; missing {";
    for (std::size_t i = 0; i < rep.missing.size(); ++i) os << (i ? ", " : "") << rep.missing[i];
    os << "}, extra {";
    for (std::size_t i = 0; i < rep.extra.size(); ++i) os << (i ? ", " : "") << rep.extra[i];
    os << "}";
    throw StructureMismatch(os.str());
  }
  return rep;
}

}  // namespace kpell
