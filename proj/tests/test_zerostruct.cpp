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


#include <doctest.h>

#include <set>

#include "kpell/bigseq.hpp"
#include "kpell/error.hpp"
#include "kpell/zerostruct.hpp"
#include "oracles.hpp"

using kpell::Block;

TEST_CASE("enumerated zeros equal a naive scan") {
  for (int k = 2; k <= 24; ++k) {
    const long long floor = kpell::default_floor(k);
    INFO("k = " << k);
    const auto zs = kpell::enumerate_zeros(k, floor);
    CHECK(zs.indices == oracle::zero_indices(k, floor));
    CHECK(zs.search_floor == floor);
  }
  CHECK(kpell::enumerate_zeros(2, -50).indices == std::vector<long long>{0});
  CHECK_THROWS_AS(kpell::enumerate_zeros(4, 0), kpell::DomainError);
}

TEST_CASE("observed blocks are the maximal runs") {
  kpell::ZeroSet zs;
  zs.indices = {0, -3, -4, -5, -9, -11, -12};
  const std::vector<Block> want{{0, 0}, {-5, -3}, {-9, -9}, {-12, -11}};
  CHECK(kpell::observed_blocks(zs) == want);
}

TEST_CASE("predicted intervals") {
  const auto s7 = kpell::predicted_intervals(7);
  CHECK(s7.blocks == std::vector<Block>{{-7, -3}, {-13, -11}, {-19, -19}});
  CHECK(s7.chi == 10);
  const auto s4 = kpell::predicted_intervals(4);
  CHECK(s4.blocks == std::vector<Block>{{-4, -3}});
  CHECK(s4.chi == 3);
  CHECK(kpell::predicted_intervals(10).chi == 21);
  CHECK_THROWS_AS(kpell::predicted_intervals(3), kpell::DomainError);
  for (int k = 4; k <= 200; ++k) {
    const auto s = kpell::predicted_intervals(k);
    INFO("k = " << k);
    CHECK(s.r == static_cast<int>(s.blocks.size()));
    long long total = 1;
    for (std::size_t j = 0; j < s.blocks.size(); ++j) {
      CHECK(s.blocks[j].size() == k - 2 * static_cast<long long>(j + 1));
      total += s.blocks[j].size();
      if (j > 0) CHECK(s.blocks[j - 1].lo - s.blocks[j].hi >= 2);
    }
    CHECK(total == s.chi);
    CHECK(kpell::chi(k) == s.chi);
  }
}

TEST_CASE("multiplicity formula") {
  CHECK(kpell::chi(2) == 1);
  CHECK(kpell::chi(3) == 2);
  CHECK(kpell::chi(4) == 3);
  CHECK(kpell::chi(9) == 17);
  CHECK(kpell::chi(500) == 1 + 500 * 498 / 4);
  CHECK(kpell::chi(500) == 62251);
  CHECK(kpell::predicted_zero_set(3) == std::vector<long long>{0, -3});
  CHECK(kpell::predicted_zero_set(4) == std::vector<long long>{0, -3, -4});
  CHECK(kpell::default_floor(5) == -45);
}

TEST_CASE("mirror sequence") {
  const auto m4 = kpell::mirror_sequence(4, 12);
  for (int i = 0; i <= 2; ++i) CHECK(m4.values[static_cast<std::size_t>(i)] == 0);

  const auto m5 = kpell::mirror_sequence(5, 15);
  const auto ref = oracle::pell_terms(5, m5.shift - 15, 1);
  for (long long n = 0; n <= 15; ++n) {
    CHECK(m5.values[static_cast<std::size_t>(n)] == ref.at(m5.shift - n));
    CHECK((sgn(m5.values[static_cast<std::size_t>(n)]) == 0) == (ref.at(m5.shift - n) == 0));
  }

  // direct substitution of the four-term identity
  const auto m6 = kpell::mirror_sequence(6, 40);
  const auto& g = m6.values;
  for (std::size_t n = 7; n <= 40; ++n) CHECK(g[n] == 3 * g[n - 6] - g[n - 5] - g[n - 7]);

  for (int k = 4; k <= 20; ++k) CHECK_NOTHROW(kpell::mirror_sequence(k, 6LL * k));
  CHECK_THROWS_AS(kpell::mirror_sequence(5, 3), kpell::DomainError);
}

TEST_CASE("structure comparison reports the exact symmetric difference") {
  for (int k : {5, 8, 12}) {
    const long long bound = k == 5 ? 40 : (k == 8 ? 100 : 200);
    const auto rep = kpell::compare_structure(k, bound);
    const auto obs = oracle::zero_indices(k, -bound);
    CHECK(rep.zeros.indices == obs);
    const std::set<long long> o(obs.begin(), obs.end());
    const auto pred = kpell::predicted_zero_set(k);
    const std::set<long long> p(pred.begin(), pred.end());
    std::vector<long long> missing, extra;
    for (long long n : p) {
      if (!o.count(n)) missing.push_back(n);
    }
    for (long long n : o) {
      if (!p.count(n)) extra.push_back(n);
    }
    std::sort(missing.rbegin(), missing.rend());
    std::sort(extra.rbegin(), extra.rend());
    CHECK(rep.missing == missing);
    CHECK(rep.extra == extra);
    CHECK(rep.match == (o == p));
    CHECK(rep.margin == obs.back() + bound);
    if (!rep.match) CHECK_THROWS_AS(kpell::verify_structure(k, bound), kpell::StructureMismatch);
  }
  CHECK_THROWS_AS(kpell::compare_structure(7, 10), kpell::DomainError);
}
