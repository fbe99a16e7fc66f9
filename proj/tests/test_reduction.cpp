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
#include <complex>
#include <numbers>
#include <random>

#include "kpell/error.hpp"
#include "kpell/reduction.hpp"
#include "kpell/zerostruct.hpp"
#include "oracles.hpp"

using kpell::Ball;

namespace {

constexpr mpfr_prec_t P = 256;

}  // namespace

TEST_CASE("golden ratio expands into ones and Fibonacci denominators") {
  const Ball phi = (kpell::sqrt(Ball(5, P)) + 1) / 2;
  const auto cf = kpell::cf_expand(phi, 100);
  REQUIRE(!cf.partial_quotients.empty());
  for (const auto& a : cf.partial_quotients) CHECK(a == 1);
  mpz_class f0 = 1, f1 = 1;
  for (const auto& [p, q] : cf.convergents) {
    CHECK(q == f0);
    CHECK(p == f1);
    const mpz_class f2 = f0 + f1;
    f0 = f1;
    f1 = f2;
  }
  CHECK(cf.convergents.back().second == 144);
}

TEST_CASE("silver ratio expands into twos") {
  const Ball s = kpell::sqrt(Ball(2, P)) + 1;
  const auto cf = kpell::cf_expand(s, 1000000);
  CHECK(cf.convergents.back().second > 1000000);
  for (const auto& a : cf.partial_quotients) CHECK(a == 2);
}

TEST_CASE("expansion needs enough precision") {
  const Ball coarse = kpell::sqrt(Ball(2, 64));
  CHECK_THROWS_AS(kpell::cf_expand(coarse, mpz_class("1000000000000000000000000000000")), kpell::PrecisionExhaustedError);
  const auto cf = kpell::cf_expand([](mpfr_prec_t p) { return kpell::sqrt(Ball(2, p)); },
                                   mpz_class("1000000000000000000000000000000"), 64);
  CHECK(cf.source_prec > 64);
}

TEST_CASE("nearest-integer distance") {
  CHECK(kpell::nearest_int_distance(Ball::from_ratio(13, 4, P)).contains(Ball::from_ratio(1, 4, P)));
  CHECK(kpell::nearest_int_distance(Ball::from_ratio(-13, 4, P)).contains(Ball::from_ratio(1, 4, P)));
  CHECK(kpell::nearest_int_distance(Ball::from_ratio(5, 2, P)).contains(Ball::from_ratio(1, 2, P)));
  const Ball near_half = kpell::nearest_int_distance(Ball::from_strings("2.5", "1e-9", P));
  CHECK(near_half.contains(Ball::from_ratio(1, 2, P)));
  CHECK(kpell::certainly_lt(near_half, Ball::from_strings("0.50000001", "0", P)));
  CHECK(kpell::nearest_int_distance(Ball::from_strings("3", "1e-9", P)).contains(Ball(0, P)));
  CHECK_THROWS_AS(kpell::nearest_int_distance(Ball::from_strings("3", "0.7", P)), kpell::IndeterminateError);
}

TEST_CASE("exact integer literals") {
  mpz_class big;
  mpz_ui_pow_ui(big.get_mpz_t(), 10, 47);
  CHECK(kpell::parse_exact_integer("3e47") == 3 * big);
  CHECK(kpell::parse_exact_integer("2.5e3") == 2500);
  CHECK(kpell::parse_exact_integer("1_000") == 1000);
  CHECK_THROWS_AS(kpell::parse_exact_integer("1.5"), kpell::DomainError);
  CHECK_THROWS_AS(kpell::parse_exact_integer("abc"), kpell::DomainError);
  CHECK_THROWS_AS(kpell::parse_exact_integer("1e"), kpell::DomainError);
  // 48 digits + 60 guard digits
  CHECK(kpell::reduction_precision(3 * big) >= static_cast<mpfr_prec_t>(std::ceil(108 * std::log2(10.0))));
}

TEST_CASE("golden-ratio instance against brute force") {
  kpell::ReductionInstance in{(kpell::sqrt(Ball(5, P)) + 1) / 2, Ball::from_ratio(1, 2, P), Ball(10, P), Ball(2, P), 1000};
  const auto out = kpell::davenport_reduce(in);
  CHECK(out.q_used > 6000);
  CHECK(out.epsilon.is_positive());
  CHECK(oracle::brute_force_max_w(in) <= out.R);
}

TEST_CASE("rational tau leaves no convergent with positive epsilon") {
  kpell::ReductionInstance in{Ball::from_ratio(1, 2, P), Ball(0, P), Ball(10, P), Ball(2, P), 1000};
  CHECK_THROWS_AS(kpell::davenport_reduce(in), kpell::Error);
}

TEST_CASE("planted instances are never excluded") {
  std::mt19937_64 rng(7);
  int done = 0;
  for (int i = 0; i < 25; ++i) {
    const oracle::Planted pl = oracle::make_planted(rng, P);
    try {
      const auto out = kpell::davenport_reduce(pl.inst);
      const long long w = oracle::brute_force_max_w(pl.inst);
      INFO("instance " << i << ": planted w " << pl.planted_w << ", oracle " << w << ", R " << out.R);
      CHECK(w >= pl.planted_w);
      CHECK(w <= out.R);
      ++done;
    } catch (const kpell::ReductionExhausted&) {
    }
  }
  CHECK(done >= 20);
}

TEST_CASE("odd instance ingredients") {
  const auto rs = kpell::solve_roots(5, kpell::reduction_precision(kpell::parse_exact_integer("3e47")));
  const auto oi = kpell::odd_instance(rs, kpell::parse_exact_integer("3e47"));
  // tau from an independent double solver: smallest pair, lower half plane
  const auto ref = oracle::psi_roots(5);
  double tau_ref = 0;
  for (const auto& z : {ref[3], ref[4]}) {
    if (z.imag() < 0) tau_ref = -2 * std::arg(z) / std::numbers::pi;
  }
  CHECK(oi.inst.tau.mid_double() == doctest::Approx(tau_ref).epsilon(1e-10));
  for (const auto& c : oi.checks) {
    if (c.name == "weight_inverse_bound" || c.name == "weight_sum" || c.name == "lambda_half" || c.name == "positive_v") {
      INFO(c.name << ": " << c.detail);
      CHECK(c.passed);
    }
  }
  CHECK_THROWS_AS(kpell::odd_instance(kpell::solve_roots(4), 1000), kpell::DomainError);
}

TEST_CASE("order seven reduces below the scan depth that finds its zeros") {
  const auto r = kpell::reduce_odd(7, kpell::parse_exact_integer("3e47"));
  CHECK(r.lambda_nonzero);
  CHECK(r.outcome.epsilon.is_positive());
  CHECK(r.outcome.q_used > 6 * kpell::parse_exact_integer("3e47"));
  const auto zs = kpell::enumerate_zeros(7, -r.outcome.R);
  CHECK(zs.indices == oracle::zero_indices(7, -80));
  CHECK(r.outcome.R >= -zs.deepest());
  CHECK_THROWS_AS(kpell::reduce_odd(4, 1000), kpell::DomainError);
}
