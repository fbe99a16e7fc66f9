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
#include <gmpxx.h>
#include <mpfr.h>

#include <random>

#include "kpell/ball.hpp"
#include "kpell/error.hpp"

using kpell::Ball;

namespace {

constexpr mpfr_prec_t P = 128;
// references parsed well above the working precision
constexpr mpfr_prec_t R = 512;

// lower <= q <= upper, exactly
bool encloses(const Ball& b, const mpq_class& q) {
  return mpfr_cmp_q(b.lower().get(), q.get_mpq_t()) <= 0 && mpfr_cmp_q(b.upper().get(), q.get_mpq_t()) >= 0;
}

mpq_class exact(double d) { return mpq_class(d); }

}  // namespace

TEST_CASE("decimal constants sit inside their computed enclosures") {
  const Ball r2 = kpell::sqrt(Ball(2, P));
  CHECK(r2.contains(Ball::from_strings("1.41421356237309504880168872420969807856967187537694", "1e-50", R)));
  const Ball pi = Ball::pi(P);
  CHECK(pi.contains(Ball::from_strings("3.14159265358979323846264338327950288419716939937510", "1e-50", R)));
  CHECK((kpell::atan2(Ball(1, P), Ball(1, P)) * 4).contains(Ball::from_strings("3.14159265358979323846264338327950288419716939937510", "1e-50", R)));
  CHECK(kpell::exp(Ball(1, P)).contains(Ball::from_strings("2.71828182845904523536028747135266249775724709369995", "1e-50", R)));
  CHECK(kpell::log(Ball(10, P)).contains(Ball::from_strings("2.30258509299404568401799145468436420760110148862877", "1e-50", R)));
}

TEST_CASE("rational round trips contain the exact value") {
  const Ball third = Ball::from_ratio(1, 3, P);
  CHECK((third * 3).contains(mpz_class(1)));
  CHECK(encloses(third, mpq_class(1, 3)));
  CHECK((kpell::exp(kpell::log(Ball(7, P)))).contains(mpz_class(7)));
  CHECK(kpell::pow(Ball(3, P), 5).contains(mpz_class(243)));
  CHECK(encloses(kpell::pow(Ball(2, P), -3), mpq_class(1, 8)));
  CHECK(kpell::hypot(Ball(3, P), Ball(4, P)).contains(mpz_class(5)));
}

TEST_CASE("random arithmetic is enclosed against exact rationals") {
  std::mt19937_64 rng(20261016);
  std::uniform_real_distribution<double> dist(-1e6, 1e6);
  for (int i = 0; i < 2000; ++i) {
    const double a = dist(rng), b = dist(rng);
    const Ball A = Ball::from_double(a, 64), B = Ball::from_double(b, 64);
    CHECK(encloses(A + B, exact(a) + exact(b)));
    CHECK(encloses(A - B, exact(a) - exact(b)));
    CHECK(encloses(A * B, exact(a) * exact(b)));
    if (b != 0.0) CHECK(encloses(A / B, exact(a) / exact(b)));
    // compounded: radii must keep up
    CHECK(encloses((A * B + A) / (B * B + 1), (exact(a) * exact(b) + exact(a)) / (exact(b) * exact(b) + 1)));
  }
}

TEST_CASE("undecidable operations refuse to answer") {
  const Ball around_zero = Ball::from_strings("0", "1e-10", P);
  CHECK_THROWS_AS(Ball(1, P) / around_zero, kpell::IndeterminateError);
  CHECK_THROWS_AS(kpell::log(around_zero), kpell::IndeterminateError);
  CHECK_THROWS_AS(kpell::sqrt(Ball(-1, P)), kpell::DomainError);
  CHECK_THROWS_AS(kpell::atan2(Ball(0, P), Ball(-1, P)), kpell::IndeterminateError);
  CHECK_THROWS_AS(Ball::from_strings("1.2x", "0", P), kpell::Error);
  CHECK_THROWS_AS(Ball::from_strings("1", "abc", P), kpell::Error);
}

TEST_CASE("floors and comparisons are certified") {
  const Ball x = Ball::from_strings("2.5", "0.1", P);
  REQUIRE(x.unique_floor().has_value());
  CHECK(*x.unique_floor() == 2);
  CHECK_FALSE(Ball::from_strings("3", "0.1", P).unique_floor().has_value());
  CHECK(Ball::from_strings("3", "0.1", P).floor_of_upper() == 3);
  CHECK(kpell::certainly_lt(x, Ball(3, P)));
  CHECK_FALSE(kpell::certainly_lt(x, Ball::from_strings("2.55", "0", P)));
  CHECK(kpell::overlaps(x, Ball::from_strings("2.55", "0", P)));
  CHECK(x.is_positive());
  CHECK(kpell::abs(-x).contains(x));
  CHECK(Ball::from_strings("-7.5", "0", P).round_mid() == -8);  // ties away from zero or to even; both -8
}

TEST_CASE("complex balls") {
  const kpell::ComplexBall i(Ball(0, P), Ball(1, P));
  const kpell::ComplexBall m1 = i * i;
  CHECK(m1.re.contains(mpz_class(-1)));
  CHECK(m1.im.contains(mpz_class(0)));
  const kpell::ComplexBall z(Ball(3, P), Ball(4, P));
  CHECK(kpell::abs(z).contains(mpz_class(5)));
  CHECK(kpell::norm(z).contains(mpz_class(25)));
  const kpell::ComplexBall q = z / z;
  CHECK(q.re.contains(mpz_class(1)));
  CHECK(q.im.contains(mpz_class(0)));
  CHECK((kpell::arg(i) * 2).contains(Ball::pi(P)));
  CHECK(kpell::pow(z, 3).re.contains(mpz_class(-117)));
  CHECK(kpell::pow(z, 3).im.contains(mpz_class(44)));
}
