/*
 * Copyright 2026 ccdel authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <doctest.h>

#include <cmath>

#include "bits.hpp"
#include "core.hpp"
#include "rng.hpp"

using namespace ccdel;

TEST_CASE("binomial basics") {
  CHECK(binomial(4, 2) == 6);
  CHECK(binomial(3, 3) == 1);
  CHECK(binomial(2, 3) == 0);
  CHECK(binomial(0, 0) == 1);
  CHECK(binomial(64, 32) == 1832624140942590534ULL);
  CHECK_THROWS_AS(binomial(65, 1), Error);
}

TEST_CASE("binomial satisfies symmetry and Pascal's rule") {
  for (unsigned n = 0; n <= 20; ++n) {
    for (unsigned k = 0; k <= n; ++k) {
      CHECK(binomial(n, k) == binomial(n, n - k));
      if (n > 0 && k > 0)
        CHECK(binomial(n, k) == binomial(n - 1, k - 1) + binomial(n - 1, k));
    }
  }
}

TEST_CASE("rational parsing accepts integers, fractions and decimals") {
  CHECK(parse_rational("2") == Rational(2));
  CHECK(parse_rational("3/2") == Rational(3, 2));
  CHECK(parse_rational("1.5") == Rational(3, 2));
  CHECK(parse_rational("0.25") == Rational(1, 4));
  CHECK(parse_rational("-1/4") == Rational(-1, 4));
  CHECK(parse_rational("-0.75") == Rational(-3, 4));
  CHECK(parse_rational(" 7 / 8 ") == Rational(7, 8));
  CHECK_THROWS_AS(parse_rational(""), Error);
  CHECK_THROWS_AS(parse_rational("a"), Error);
  CHECK_THROWS_AS(parse_rational("1/0"), Error);
  CHECK_THROWS_AS(parse_rational("1.2.3"), Error);
}

TEST_CASE("rational round trip through text") {
  CHECK(rational_to_string(Rational(2)) == "2");
  CHECK(rational_to_string(Rational(3, 2)) == "3/2");
  CHECK(parse_rational(rational_to_string(Rational(-7, 3))) == Rational(-7, 3));
}

TEST_CASE("parameter validation computes exact t and q") {
  SystemParams p = validate_params(SystemParams::create(4, 4, Rational(2)),
                                   PlacementMode::centralized);
  CHECK(p.t == Rational(2));
  CHECK(p.q == Rational(1, 2));
  CHECK(p.t_int() == 2);

  SystemParams d = validate_params(SystemParams::create(2, 2, Rational(1)),
                                   PlacementMode::decentralized);
  CHECK(d.q == Rational(1, 2));
}

TEST_CASE("centralized placement rejects fractional t") {
  SystemParams p = SystemParams::create(4, 4, Rational(3, 2));
  CHECK_THROWS_AS(validate_params(p, PlacementMode::centralized), Error);
  // the same parameters are fine for randomized placement
  CHECK_NOTHROW(validate_params(p, PlacementMode::decentralized));
  try {
    validate_params(p, PlacementMode::centralized);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::non_integer_t);
  }
}

TEST_CASE("parameter range checks") {
  CHECK_THROWS_AS(validate_params(SystemParams::create(0, 4, Rational(1)),
                                  PlacementMode::decentralized),
                  Error);
  CHECK_THROWS_AS(validate_params(SystemParams::create(4, 3, Rational(1)),
                                  PlacementMode::decentralized),
                  Error);
  CHECK_THROWS_AS(validate_params(SystemParams::create(2, 2, Rational(-1)),
                                  PlacementMode::decentralized),
                  Error);
  CHECK_THROWS_AS(validate_params(SystemParams::create(2, 2, Rational(3)),
                                  PlacementMode::decentralized),
                  Error);
  // boundary cache sizes are allowed
  CHECK_NOTHROW(validate_params(SystemParams::create(2, 2, Rational(0)),
                                PlacementMode::centralized));
  CHECK_NOTHROW(validate_params(SystemParams::create(2, 2, Rational(2)),
                                PlacementMode::centralized));
}

TEST_CASE("channel state sorts gains and remembers the original order") {
  ChannelState st({3.0, 1.0, 2.0});
  CHECK(st.gains() == std::vector<double>{1.0, 2.0, 3.0});
  CHECK(st.original_order() == std::vector<std::uint32_t>{1, 2, 0});

  ChannelState sorted({1.0, 2.0, 3.0});
  CHECK(sorted.original_order() == std::vector<std::uint32_t>{0, 1, 2});

  CHECK_THROWS_AS(ChannelState({1.0, 0.0}), Error);
  CHECK_THROWS_AS(ChannelState({-1.0}), Error);
  CHECK_THROWS_AS(ChannelState(std::vector<double>{}), Error);
}

TEST_CASE("channel sorting is stable for ties") {
  ChannelState st({2.0, 2.0, 1.0});
  CHECK(st.original_order() == std::vector<std::uint32_t>{2, 0, 1});
}

TEST_CASE("request vectors") {
  SystemParams p = SystemParams::create(3, 4, Rational(1));
  RequestVector d = RequestVector::distinct(p);
  CHECK(d.d == std::vector<std::uint32_t>{1, 2, 3});
  CHECK_NOTHROW(RequestVector::from(p, {4, 4, 4}));
  CHECK_THROWS_AS(RequestVector::from(p, {1, 2}), Error);
  CHECK_THROWS_AS(RequestVector::from(p, {1, 2, 5}), Error);
  CHECK_THROWS_AS(RequestVector::from(p, {0, 1, 2}), Error);
}

TEST_CASE("load profiles accumulate and drop trailing zeros") {
  LoadProfile lp({0.5, 0.25, 0.0});
  CHECK(lp.group_count() == 2);
  CHECK(lp.load(0) == 0.5);
  CHECK(lp.cumulative(1) == doctest::Approx(0.75).epsilon(1e-15));
  CHECK(lp.total() == doctest::Approx(0.75).epsilon(1e-15));

  CHECK(LoadProfile(std::vector<double>{}).empty());
  CHECK(LoadProfile({0.0, 0.0}).empty());
  CHECK_THROWS_AS(LoadProfile({0.25, 0.5}), Error);      // increasing
  CHECK_THROWS_AS(LoadProfile({0.5, 0.0, 0.25}), Error); // interior zero
  CHECK_THROWS_AS(LoadProfile({-0.5}), Error);
}

TEST_CASE("deterministic rng is reproducible and unbiased at the edges") {
  DetRng a(42), b(42);
  for (int i = 0; i < 100; ++i) CHECK(a.next_u64() == b.next_u64());

  DetRng r(7);
  for (int i = 0; i < 1000; ++i) {
    std::uint64_t v = r.below(10);
    CHECK(v < 10);
    double u = r.unit_open();
    CHECK(u > 0.0);
    CHECK(u < 1.0);
    double g = r.unit_exponential();
    CHECK(g >= 1e-9);
  }
  CHECK(r.below(1) == 0);
}

TEST_CASE("seed mixing separates streams") {
  CHECK(mix_seed(1, 0) != mix_seed(1, 1));
  CHECK(mix_seed(1, 0) != mix_seed(2, 0));
  // identical inputs, identical stream
  CHECK(mix_seed(123, 456) == mix_seed(123, 456));
}

TEST_CASE("exponential draws have roughly unit mean") {
  DetRng r(2024);
  double sum = 0.0;
  const int n = 200000;
  for (int i = 0; i < n; ++i) sum += r.unit_exponential();
  CHECK(sum / n == doctest::Approx(1.0).epsilon(0.01));
}

TEST_CASE("bit vectors xor with zero padding") {
  BitVec a(3);
  a.set(0, true);
  a.set(2, true);
  BitVec b(5);
  b.set(2, true);
  b.set(4, true);
  a.xor_with(b);
  CHECK(a.size() == 5);
  CHECK(a.get(0));
  CHECK_FALSE(a.get(2));
  CHECK(a.get(4));

  BitVec again = a;
  again.xor_with(a);
  for (std::size_t i = 0; i < again.size(); ++i) CHECK_FALSE(again.get(i));
}

TEST_CASE("bit vector gather and slice") {
  BitVec v(8);
  for (std::size_t i = 0; i < 8; ++i) v.set(i, i % 3 == 0);
  BitVec g = v.gather({0, 3, 5});
  CHECK(g.size() == 3);
  CHECK(g.get(0));
  CHECK(g.get(1));
  CHECK_FALSE(g.get(2));
  BitVec s = v.slice(3, 4);
  CHECK(s.size() == 4);
  CHECK(s.get(0));       // position 3
  CHECK(s.get(3));       // position 6
  CHECK_FALSE(s.get(1)); // position 4
}
