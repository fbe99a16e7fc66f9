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

#include <cmath>

#include "kpell/bigseq.hpp"
#include "kpell/error.hpp"
#include "kpell/spectra.hpp"
#include "oracles.hpp"

using kpell::Ball;
using kpell::ComplexBall;

namespace {

constexpr mpfr_prec_t P = 128;

Ball sqrt2() { return kpell::sqrt(Ball(2, P)); }

}  // namespace

TEST_CASE("order two is the quadratic x^2 - 2x - 1") {
  const auto rs = kpell::solve_roots(2);
  REQUIRE(rs.roots.size() == 2);
  CHECK(rs.roots[0].re.contains(sqrt2() + 1));
  CHECK(rs.roots[1].re.contains(1 - sqrt2()));
  CHECK(rs.is_real(0));
  CHECK(rs.is_real(1));
  CHECK(kpell::mahler_measure(rs).contains(sqrt2() + 1));
}

TEST_CASE("dominant root of order four against an exact bisection") {
  // Psi_4(5/2) < 0 < Psi_4(13/5)
  REQUIRE(sgn(oracle::psi_exact(4, mpq_class(5, 2))) < 0);
  REQUIRE(sgn(oracle::psi_exact(4, mpq_class(13, 5))) > 0);
  const auto [lo, hi] = oracle::bisect_root(4, mpq_class(5, 2), mpq_class(13, 5), 120);
  const auto rs = kpell::solve_roots(4);
  CHECK(oracle::ball_meets(rs.roots[0].re, lo, hi));
  CHECK(rs.roots[0].re.rad_double() < 1e-30);
}

TEST_CASE("all roots against an independent double-precision solver") {
  for (int k : {3, 5, 8, 13, 20}) {
    const auto ref = oracle::psi_roots(k);
    const auto rs = kpell::solve_roots(k);
    REQUIRE(rs.roots.size() == ref.size());
    for (std::size_t i = 0; i < ref.size(); ++i) {
      INFO("k = " << k << ", i = " << i);
      CHECK(std::abs(rs.moduli[i].mid_double() - std::abs(ref[i])) < 1e-9);
    }
    CHECK(rs.conj_pairs.size() * 2 + rs.real_roots.size() == static_cast<std::size_t>(k));
  }
}

TEST_CASE("polynomial and weight evaluation") {
  CHECK(kpell::psi_eval(3, Ball(0, P)).contains(mpz_class(-1)));
  CHECK(kpell::psi_eval(5, Ball(2, P)).contains(mpz_class(-15)));
  CHECK(kpell::psi_eval(2, sqrt2() + 1).contains_zero());
  CHECK(kpell::eval_gk(2, sqrt2() + 1).contains(sqrt2() / 4));
  CHECK(kpell::eval_gk(2, 1 - sqrt2()).contains(-(sqrt2() / 4)));
  const ComplexBall z(Ball(2, P), Ball(1, P));
  // Psi_3(2 + i) = (2 + 11i) - 2(3 + 4i) - (2 + i) - 1 = -7 + 2i
  const ComplexBall v = kpell::psi_eval(3, z);
  CHECK(v.re.contains(mpz_class(-7)));
  CHECK(v.im.contains(mpz_class(2)));
}

TEST_CASE("dominant weight stays in [0.276, 0.5] from order four on") {
  for (int k = 4; k <= 40; ++k) {
    const auto rs = kpell::solve_roots(k);
    const Ball g = kpell::eval_gk(k, rs.roots[0].re);
    INFO("k = " << k);
    CHECK(kpell::certainly_gt(g, Ball::from_ratio(276, 1000, P)));
    CHECK(kpell::certainly_lt(g, Ball::from_ratio(1, 2, P)));
  }
}

TEST_CASE("Binet reconstruction") {
  CHECK(kpell::exponent_offset() == 0);
  const auto r2 = kpell::solve_roots(2);
  CHECK(kpell::binet_reconstruct(2, 1, r2).contains(mpz_class(1)));
  CHECK(kpell::binet_reconstruct(2, 5, r2).contains(mpz_class(29)));
  for (int k = 2; k <= 8; ++k) {
    // gamma^100 has about 42 digits; 384 bits keep the sum well below 1/2
    const auto rs = kpell::solve_roots(k, 384);
    const auto ref = oracle::pell_terms(k, -5LL * k, 100);
    for (long long n = -5LL * k; n <= 100; ++n) {
      INFO("k = " << k << ", n = " << n);
      CHECK(kpell::binet_reconstruct(k, n, rs).contains(ref.at(n)));
    }
    for (long long n = 1; n <= 100; ++n) {
      INFO("k = " << k << ", n = " << n);
      const Ball err = kpell::abs(kpell::binet_dominant(k, n, rs) - Ball(ref.at(n), rs.prec));
      CHECK(kpell::certainly_lt(err, Ball::from_ratio(1, 2, P)));
    }
  }
}

TEST_CASE("root-system properties") {
  for (int k = 2; k <= 30; ++k) {
    const auto rs = kpell::solve_roots(k);
    INFO("k = " << k);
    CHECK(kpell::check_dominant_bounds(rs));
    for (const auto& c : kpell::check_root_properties(rs)) {
      INFO(c.name << ": " << c.detail);
      if (c.required) CHECK(c.passed);
    }
    if (k % 2 == 0) CHECK(kpell::check_even_tail_gap(rs).passed);
  }
  CHECK_THROWS_AS(kpell::check_even_tail_gap(kpell::solve_roots(3)), kpell::DomainError);
}

TEST_CASE("modulus separation for every distinct-modulus pair") {
  for (int k = 2; k <= 12; ++k) {
    for (const auto& s : kpell::check_modulus_separation(kpell::solve_roots(k))) {
      INFO("k = " << k << " pair " << s.i << "," << s.j << " " << s.kind);
      CHECK(s.passed);
    }
  }
}

TEST_CASE("Mahler measure, ratios and height") {
  for (int k : {7, 12}) {
    const auto rs = kpell::solve_roots(k);
    CHECK(kpell::overlaps(kpell::mahler_measure(rs), rs.roots[0].re));
  }
  for (int k = 2; k <= 8; ++k) CHECK(kpell::check_no_root_of_unity_ratio(kpell::solve_roots(k), 12));
  for (int k = 4; k <= 10; ++k) {
    const Ball h = kpell::weight_height(kpell::solve_roots(k));
    CHECK(kpell::certainly_lt(h, kpell::log(Ball(k, P)) * 5));
    CHECK(h.is_positive());
  }
}

TEST_CASE("re-certification from stored midpoints") {
  const auto rs = kpell::solve_roots(9);
  std::vector<ComplexBall> mids;
  for (const auto& z : rs.roots) mids.push_back(z.midpoint());
  const auto again = kpell::certify_roots(9, mids, rs.prec);
  REQUIRE(again.roots.size() == rs.roots.size());
  for (std::size_t i = 0; i < rs.roots.size(); ++i) CHECK(kpell::overlaps(again.moduli[i], rs.moduli[i]));
  CHECK_THROWS(kpell::solve_roots(1));
}
