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
#include <set>

#include "core.hpp"
#include "placement.hpp"

using namespace ccdel;

TEST_CASE("subset enumeration is lexicographic") {
  // 2-subsets of {1..4}: 12, 13, 14, 23, 24, 34
  std::vector<std::uint64_t> expected{0b0011, 0b0101, 0b1001, 0b0110, 0b1010, 0b1100};
  CHECK(subsets_lex(4, 2) == expected);
  CHECK(subsets_lex(3, 0) == std::vector<std::uint64_t>{0});
  CHECK(subsets_lex(3, 3) == std::vector<std::uint64_t>{0b111});
  CHECK(subsets_lex(2, 3).empty());
  for (unsigned n = 1; n <= 10; ++n)
    for (unsigned k = 0; k <= n; ++k)
      CHECK(subsets_lex(n, k).size() == binomial(n, k));
}

TEST_CASE("mask members are 1-based and ascending") {
  CHECK(mask_members(0b1011) == std::vector<std::uint32_t>{1, 2, 4});
  CHECK(mask_members(0).empty());
}

TEST_CASE("segment placement splits files by t-subsets") {
  SystemParams p = SystemParams::create(4, 4, Rational(2));
  PlacementState st = centralized_place(p, 60, 7);
  CHECK(st.segment_subsets.size() == 6);
  CHECK(st.segment_bits == 10);
  CHECK(st.files.size() == 4);
  CHECK(st.files[0].size() == 60);

  // User k holds exactly the segments whose subset contains k: C(3,1) = 3 of
  // 6 segments, i.e. M/N = 1/2 of every file.
  for (std::uint32_t k = 1; k <= 4; ++k)
    for (std::uint32_t n = 1; n <= 4; ++n)
      CHECK(st.cache_bits(k, n) == 30);

  // Spot checks: segment 0 = {1,2} is held by users 1 and 2 only.
  CHECK(st.user_caches(1, 1, 0));
  CHECK(st.user_caches(2, 1, 5));
  CHECK_FALSE(st.user_caches(3, 1, 9));
  CHECK_FALSE(st.user_caches(4, 1, 0));
  // segment 5 = {3,4}
  CHECK(st.user_caches(3, 2, 55));
  CHECK_FALSE(st.user_caches(1, 2, 55));
}

TEST_CASE("segment placement needs divisible file sizes") {
  SystemParams p = SystemParams::create(4, 4, Rational(2));
  CHECK_THROWS_AS(centralized_place(p, 61, 7), Error);
  try {
    centralized_place(p, 61, 7);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::divisibility);
  }
}

TEST_CASE("file contents are deterministic in the seed") {
  SystemParams p = SystemParams::create(2, 2, Rational(1));
  PlacementState a = decentralized_place(p, 64, 11);
  PlacementState b = decentralized_place(p, 64, 11);
  PlacementState c = decentralized_place(p, 64, 12);
  CHECK(a.files[0] == b.files[0]);
  CHECK(a.cached == b.cached);
  bool same_files = a.files[0] == c.files[0] && a.files[1] == c.files[1];
  bool same_cache = a.cached == c.cached;
  CHECK_FALSE((same_files && same_cache));
}

TEST_CASE("randomized placement fills the exact cache quota") {
  SystemParams p = SystemParams::create(3, 3, Rational(1));  // q = 1/3
  PlacementState st = decentralized_place(p, 99, 5);
  CHECK(st.warnings.empty());  // 99/3 = 33 exactly
  for (std::uint32_t k = 1; k <= 3; ++k) {
    for (std::uint32_t n = 1; n <= 3; ++n) {
      CHECK(st.cache_bits(k, n) == 33);
      // positions are distinct and in range
      const auto& pos = st.cached[k - 1][n - 1];
      std::set<std::uint64_t> unique(pos.begin(), pos.end());
      CHECK(unique.size() == pos.size());
      CHECK(*unique.rbegin() < 99);
    }
  }
}

TEST_CASE("fractional cache quotas round down with a warning") {
  SystemParams p = SystemParams::create(2, 2, Rational(1));  // q = 1/2
  PlacementState st = decentralized_place(p, 101, 5);
  CHECK(st.warnings.size() == 1);
  CHECK(st.cache_bits(1, 1) == 50);
}

TEST_CASE("holder classes partition every file") {
  SystemParams p = SystemParams::create(3, 3, Rational(1));
  PlacementState st = decentralized_place(p, 60, 17);
  for (std::uint32_t n = 0; n < 3; ++n) {
    std::set<std::uint64_t> seen;
    for (const auto& [mask, positions] : st.classes[n]) {
      CHECK(mask < 8);
      for (std::uint64_t pos : positions) {
        CHECK(seen.insert(pos).second);  // no position in two classes
        // class membership matches the per-user cache lists
        for (std::uint32_t k = 1; k <= 3; ++k)
          CHECK(st.user_caches(k, n + 1, pos) == (((mask >> (k - 1)) & 1u) != 0));
      }
    }
    CHECK(seen.size() == 60);
  }
}

TEST_CASE("boundary cache sizes") {
  // M = 0: a single segment cached by nobody.
  PlacementState none = centralized_place(SystemParams::create(2, 2, Rational(0)), 10, 1);
  CHECK(none.segment_subsets == std::vector<std::uint64_t>{0});
  CHECK(none.cache_bits(1, 1) == 0);
  // M = N: one segment cached by everybody.
  PlacementState all = centralized_place(SystemParams::create(2, 2, Rational(2)), 10, 1);
  CHECK(all.segment_subsets == std::vector<std::uint64_t>{0b11});
  CHECK(all.cache_bits(2, 1) == 10);
  // Randomized M = N caches every position.
  PlacementState rall = decentralized_place(SystemParams::create(2, 2, Rational(2)), 10, 1);
  CHECK(rall.cache_bits(1, 2) == 10);
}

TEST_CASE("group loads for the segment scheme") {
  // K=4, t=2: loads (C(3,2)/C(4,2), C(2,2)/C(4,2)) = (1/2, 1/6).
  LoadProfile lp = group_loads_centralized(SystemParams::create(4, 4, Rational(2)));
  CHECK(lp.group_count() == 2);
  CHECK(lp.load(0) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(lp.load(1) == doctest::Approx(1.0 / 6.0).epsilon(1e-15));

  // t = 0 degenerates to one whole file per user.
  LoadProfile unicast = group_loads_centralized(SystemParams::create(3, 3, Rational(0)));
  CHECK(unicast.group_count() == 3);
  CHECK(unicast.load(2) == 1.0);

  // t = K leaves nothing to send.
  CHECK(group_loads_centralized(SystemParams::create(3, 3, Rational(3))).empty());
}

TEST_CASE("group loads for the randomized scheme") {
  // K=2, q=1/2: (1/2, 1/4).
  LoadProfile lp = group_loads_decentralized(SystemParams::create(2, 2, Rational(1)));
  CHECK(lp.group_count() == 2);
  CHECK(lp.load(0) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(lp.load(1) == doctest::Approx(0.25).epsilon(1e-15));

  CHECK(group_loads_decentralized(SystemParams::create(2, 2, Rational(2))).empty());
  LoadProfile full = group_loads_decentralized(SystemParams::create(3, 3, Rational(0)));
  CHECK(full.group_count() == 3);
  CHECK(full.load(0) == 1.0);
}

TEST_CASE("segment loads never exceed randomized loads at equal cache size") {
  // Pointwise C(K-i,t)/C(K,t) <= (1-q)^i with q = t/K; this drives the
  // 1.5x completion-time bound.
  for (std::uint32_t users = 2; users <= 10; ++users) {
    for (std::uint32_t t = 0; t < users; ++t) {
      SystemParams p = SystemParams::create(
          users, users, Rational(static_cast<std::int64_t>(t)));
      LoadProfile cen = group_loads_centralized(p);
      LoadProfile dec = group_loads_decentralized(p);
      REQUIRE(cen.group_count() <= dec.group_count());
      for (std::size_t i = 0; i < cen.group_count(); ++i)
        CHECK(cen.load(i) <= dec.load(i) * (1.0 + 1e-12));
    }
  }
}

TEST_CASE("expected class fraction") {
  SystemParams p = SystemParams::create(2, 2, Rational(1));  // q = 1/2
  CHECK(expected_class_fraction(p, 0) == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(expected_class_fraction(p, 1) == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(expected_class_fraction(p, 2) == doctest::Approx(0.25).epsilon(1e-15));
  CHECK_THROWS_AS(expected_class_fraction(p, 3), Error);
}

TEST_CASE("realized class sizes track their expectation") {
  // K=4, q=1/2, F=2000: each exact-holder class of size s has expectation
  // F * q^s (1-q)^(K-s) = 125; verify within 5 standard deviations.
  SystemParams p = SystemParams::create(4, 4, Rational(2));
  PlacementState st = decentralized_place(p, 2000, 23);
  double expect = 2000.0 * expected_class_fraction(p, 2);
  double sigma = std::sqrt(2000.0 * expected_class_fraction(p, 2) *
                           (1.0 - expected_class_fraction(p, 2)));
  for (std::uint64_t mask : {0b0011ULL, 0b0101ULL, 0b1100ULL}) {
    auto it = st.classes[0].find(mask);
    REQUIRE(it != st.classes[0].end());
    CHECK(std::fabs(static_cast<double>(it->second.size()) - expect) < 5.0 * sigma);
  }
}
