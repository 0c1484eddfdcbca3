#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdint>
#include <set>

#include "waveharm/indexing.hpp"

using namespace waveharm;

TEST_CASE("rank follows the explicit enumeration") {
  CHECK(rank({0, 0}) == 0);
  CHECK(rank({1, 0}) == 1);
  CHECK(rank({1, -1}) == 2);
  CHECK(rank({1, 1}) == 3);
  CHECK(rank({2, 0}) == 4);
  CHECK(rank({2, -1}) == 5);
  CHECK(rank({2, 1}) == 6);
  CHECK(rank({2, -2}) == 7);
  CHECK(rank({2, 2}) == 8);
  CHECK(rank({3, 0}) == 9);
}

TEST_CASE("rank rejects invalid indices") {
  CHECK_THROWS(rank({1, 2}));
  CHECK_THROWS(rank({0, -1}));
  CHECK_THROWS(rank({-1, 0}));
}

TEST_CASE("unrank inverts rank up to 10000") {
  for (int n = 0; n <= 10000; ++n) {
    const AngularIndex idx = unrank(n);
    CHECK(std::abs(idx.m) <= idx.l);
    CHECK(rank(idx) == n);
  }
}

TEST_CASE("rank is strictly monotone w.r.t. the order") {
  for (int a = 0; a < 200; ++a)
    for (int b = 0; b < 200; ++b)
      if (a < b) CHECK(index_less(unrank(a), unrank(b)));
}

TEST_CASE("conjugate flips the order sign and is an involution") {
  CHECK(conjugate({2, 1}) == AngularIndex{2, -1});
  CHECK(conjugate({3, 0}) == AngularIndex{3, 0});
  CHECK(conjugate(conjugate({5, -4})) == AngularIndex{5, -4});
}

TEST_CASE("multinomial examples") {
  MultiIndex two_same;
  two_same.add({0, 0}, 2);
  CHECK(multinomial(two_same) == 1);

  MultiIndex pair;
  pair.add({0, 0});
  pair.add({1, 0});
  CHECK(multinomial(pair) == 2);

  MultiIndex triple;
  triple.add({0, 0});
  triple.add({1, 0});
  triple.add({1, 1});
  CHECK(triple.capacity() == 3);
  CHECK(multinomial(triple) == 6);  // 3!/1!1!1!
}

TEST_CASE("multinomial matches factorial evaluation on random small cases") {
  // Direct |d|!/prod d! with doubles as the independent route.
  std::uint32_t state = 12345;
  auto next = [&state] {
    state = state * 1664525u + 1013904223u;
    return state >> 24;
  };
  for (int trial = 0; trial < 200; ++trial) {
    MultiIndex d;
    double cap = 0;
    for (int s = 0; s < 4; ++s) {
      const int mult = static_cast<int>(next() % 4);
      if (mult > 0) {
        d.add(unrank(s), mult);
        cap += mult;
      }
    }
    if (d.empty()) continue;
    double expected = 1.0;
    for (int t = 2; t <= static_cast<int>(cap); ++t) expected *= t;
    for (const auto& [slot, count] : d.entries())
      for (int t = 2; t <= count; ++t) expected /= t;
    CHECK(static_cast<double>(multinomial(d)) == doctest::Approx(expected));
  }
}

TEST_CASE("multinomial overflow is detected") {
  MultiIndex worst;
  for (int s = 0; s < 40; ++s) worst.add(unrank(s), 2);
  CHECK_THROWS(multinomial(worst));
}

TEST_CASE("enumerate_multi_indices basic shapes") {
  const auto single = enumerate_multi_indices(1, {0, 0});
  REQUIRE(single.size() == 1);
  CHECK(single[0].multiplicity({0, 0}) == 1);

  const auto ten = enumerate_multi_indices(2, {1, 1});
  CHECK(ten.size() == 10);  // C(5,3)

  const auto four = enumerate_multi_indices(3, {1, 0});
  CHECK(four.size() == 4);
  for (const auto& d : four) CHECK(d.capacity() == 3);
}

TEST_CASE("enumeration count matches stars and bars, no duplicates") {
  for (int cap = 1; cap <= 5; ++cap) {
    for (int bound_rank = 0; bound_rank <= 8; ++bound_rank) {
      const AngularIndex bound = unrank(bound_rank);
      const auto all = enumerate_multi_indices(cap, bound);
      CHECK(all.size() == multi_index_count(cap, bound));
      std::set<std::string> keys;
      for (const auto& d : all) {
        CHECK(d.capacity() == cap);
        CHECK(rank(d.support()) <= bound_rank);
        keys.insert(d.key());
      }
      CHECK(keys.size() == all.size());
    }
  }
}

TEST_CASE("enumeration order is deterministic") {
  const auto a = enumerate_multi_indices(3, {1, 1});
  const auto b = enumerate_multi_indices(3, {1, 1});
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i] == b[i]);
}
