#include <algorithm>
#include <random>
#include <set>
#include <vector>

#include <catch2/catch_amalgamated.hpp>

#include "barred/matcher.hpp"
#include "barred/pattern.hpp"
#include "barred/permutation.hpp"
#include "oracles.hpp"

using barred::AvoidanceTester;
using barred::BarredPattern;
using barred::Occurrence;
using barred::Permutation;

namespace {

std::vector<int> random_perm_values(int n, std::mt19937& rng) {
  std::vector<int> v(static_cast<size_t>(n));
  for (int t = 0; t < n; ++t) v[static_cast<size_t>(t)] = t + 1;
  std::shuffle(v.begin(), v.end(), rng);
  return v;
}

}  // namespace

TEST_CASE("pattern parsing") {
  const BarredPattern p = BarredPattern::parse("~1 4 3 ~5 2");
  REQUIRE(p.size() == 5);
  REQUIRE(p.letters()[0] == barred::PatternLetter{1, true});
  REQUIRE(p.letters()[1] == barred::PatternLetter{4, false});
  REQUIRE(p.letters()[2] == barred::PatternLetter{3, false});
  REQUIRE(p.letters()[3] == barred::PatternLetter{5, true});
  REQUIRE(p.letters()[4] == barred::PatternLetter{2, false});
  REQUIRE(p.barred_slots() == std::vector<int>{1, 4});
  REQUIRE(p.unbarred_reduction() == Permutation::parse("3 2 1"));

  const BarredPattern single = BarredPattern::parse("1");
  REQUIRE(single.size() == 1);
  REQUIRE_FALSE(single.letters()[0].barred);

  REQUIRE_THROWS_AS(BarredPattern::parse("~1 ~2"), std::invalid_argument);
  REQUIRE_THROWS_AS(BarredPattern::parse(""), std::invalid_argument);
  REQUIRE_THROWS_AS(BarredPattern::parse("1 1 2"), std::invalid_argument);
  REQUIRE_THROWS_WITH(BarredPattern::parse("1 2x 3"),
                      Catch::Matchers::ContainsSubstring("2x"));
  REQUIRE_THROWS_WITH(BarredPattern::parse("0 1"),
                      Catch::Matchers::ContainsSubstring("0"));
}

TEST_CASE("patterns written with deleted-letter values standardize") {
  // the customary spelling of the 4-letter pattern left after removing 1
  const BarredPattern p = BarredPattern::parse("4 3 ~5 2");
  REQUIRE(p.str() == "3 2 ~4 1");
  REQUIRE(p.unbarred_reduction() == Permutation::parse("3 2 1"));
  REQUIRE(p.barred_slots() == std::vector<int>{3});
}

TEST_CASE("pattern format round-trips") {
  REQUIRE(BarredPattern::canonical().str() == "~1 4 3 ~5 2");
  std::mt19937 rng(20240811);
  for (int trial = 0; trial < 200; ++trial) {
    const int m = 1 + static_cast<int>(rng() % 6);
    std::vector<barred::PatternLetter> letters;
    const std::vector<int> values = random_perm_values(m, rng);
    int unbarred = 0;
    for (int t = 0; t < m; ++t) {
      const bool bar = (rng() % 2 == 0) && !(t == m - 1 && unbarred == 0);
      if (!bar) ++unbarred;
      letters.push_back({values[static_cast<size_t>(t)], bar});
    }
    const BarredPattern p = BarredPattern::from_letters(letters);
    REQUIRE(BarredPattern::parse(p.str()) == p);
  }
}

TEST_CASE("reduce standardizes distinct values") {
  REQUIRE(barred::reduce(std::vector<int>{16, 5, 9}) ==
          Permutation::parse("3 1 2"));
  REQUIRE(barred::reduce(std::vector<int>{1, 2, 3}) ==
          Permutation::parse("1 2 3"));
  REQUIRE(barred::reduce(std::vector<int>{4, 3, 2}) ==
          Permutation::parse("3 2 1"));
  REQUIRE(barred::reduce(std::vector<int>{}) == Permutation());
  REQUIRE_THROWS_AS(barred::reduce(std::vector<int>{2, 2}),
                    std::invalid_argument);

  std::mt19937 rng(7);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<int> vals;
    std::set<int> seen;
    const int len = static_cast<int>(rng() % 9);
    while (static_cast<int>(vals.size()) < len) {
      const int v = 1 + static_cast<int>(rng() % 1000);
      if (seen.insert(v).second) vals.push_back(v);
    }
    const Permutation once = barred::reduce(vals);
    REQUIRE(barred::reduce(once.values()) == once);  // idempotent
  }
}

TEST_CASE("occurrence streams") {
  const auto occs = barred::occurrences_of(Permutation::parse("4 3 2 1"),
                                           Permutation::parse("3 2 1"));
  REQUIRE(occs == std::vector<Occurrence>{{{1, 2, 3}},
                                          {{1, 2, 4}},
                                          {{1, 3, 4}},
                                          {{2, 3, 4}}});

  REQUIRE(barred::occurrences_of(Permutation::parse("1 2 3"),
                                 Permutation::parse("2 1"))
              .empty());

  // empty pattern: exactly one empty occurrence
  const auto empty_occs =
      barred::occurrences_of(Permutation::parse("2 1"), Permutation());
  REQUIRE(empty_occs.size() == 1);
  REQUIRE(empty_occs[0].positions.empty());
}

TEST_CASE("occurrences agree with the subset filter and come out sorted") {
  std::mt19937 rng(123);
  for (int trial = 0; trial < 120; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 8);
    const int m = 1 + static_cast<int>(rng() % 4);
    const Permutation host =
        Permutation::from_values(random_perm_values(n, rng));
    const Permutation pattern =
        Permutation::from_values(random_perm_values(m, rng));
    const auto got = barred::occurrences_of(host, pattern);
    const auto want = oracle::occurrences_by_subsets(host, pattern);
    REQUIRE(got.size() == want.size());
    for (size_t t = 0; t < got.size(); ++t)
      REQUIRE(got[t].positions == want[t]);
    REQUIRE(std::is_sorted(got.begin(), got.end()));
  }
}

TEST_CASE("extension of a partial occurrence") {
  const BarredPattern& pat = BarredPattern::canonical();

  const Permutation full_host = Permutation::parse("1 4 3 5 2");
  REQUIRE(barred::extends_to_full(full_host, Occurrence{{2, 3, 5}}, pat));

  // a bare decreasing triple leaves nothing to play the roles of 1 and 5
  REQUIRE_FALSE(
      barred::extends_to_full(Permutation::parse("3 2 1"), Occurrence{{1, 2, 3}}, pat));

  REQUIRE_FALSE(
      barred::extends_to_full(Permutation::parse("3 2 1 4"), Occurrence{{1, 2, 3}}, pat));

  // partial must witness the unbarred reduction
  REQUIRE_THROWS_AS(
      barred::extends_to_full(Permutation::parse("1 2 3 4 5"), Occurrence{{1, 2, 3}}, pat),
      std::invalid_argument);
  REQUIRE_THROWS_AS(
      barred::extends_to_full(full_host, Occurrence{{2, 3}}, pat),
      std::invalid_argument);
}

TEST_CASE("avoidance basics") {
  const BarredPattern& pat = BarredPattern::canonical();
  REQUIRE_FALSE(barred::avoids_barred(Permutation::parse("3 2 1"), pat));
  for (int n = 0; n <= 9; ++n)
    REQUIRE(barred::avoids_barred(Permutation::identity(n), pat));
  REQUIRE(barred::avoids_barred(Permutation::parse("1 4 3 5 2"), pat));
}

TEST_CASE("avoider count in S_5 is 43") {
  std::vector<int> v{1, 2, 3, 4, 5};
  AvoidanceTester tester(BarredPattern::canonical());
  int count = 0;
  do {
    if (tester.avoids(v)) ++count;
  } while (std::next_permutation(v.begin(), v.end()));
  REQUIRE(count == 43);
}

TEST_CASE("avoidance agrees with the covering oracle on all of S_n, n <= 6") {
  const BarredPattern& pat = BarredPattern::canonical();
  AvoidanceTester tester(pat);
  for (int n = 0; n <= 6; ++n) {
    std::vector<int> v(static_cast<size_t>(n));
    for (int t = 0; t < n; ++t) v[static_cast<size_t>(t)] = t + 1;
    do {
      const Permutation p = Permutation::from_values(v);
      REQUIRE(tester.avoids(p.span()) == oracle::avoids_barred_by_cover(p, pat));
    } while (std::next_permutation(v.begin(), v.end()));
  }
}

TEST_CASE("avoidance agrees with the covering oracle on random patterns") {
  std::mt19937 rng(99);
  for (int trial = 0; trial < 150; ++trial) {
    const int m = 2 + static_cast<int>(rng() % 3);  // pattern length 2..4
    std::vector<barred::PatternLetter> letters;
    const std::vector<int> values = random_perm_values(m, rng);
    int unbarred = 0;
    for (int t = 0; t < m; ++t) {
      const bool bar = (rng() % 3 == 0) && !(t == m - 1 && unbarred == 0);
      if (!bar) ++unbarred;
      letters.push_back({values[static_cast<size_t>(t)], bar});
    }
    const BarredPattern pat = BarredPattern::from_letters(letters);
    AvoidanceTester tester(pat);
    for (int inner = 0; inner < 20; ++inner) {
      const int n = static_cast<int>(rng() % 8);
      const Permutation host =
          Permutation::from_values(random_perm_values(n, rng));
      REQUIRE(tester.avoids(host.span()) ==
              oracle::avoids_barred_by_cover(host, pat));
    }
  }
}

TEST_CASE("a pattern with no bars is classical avoidance") {
  std::mt19937 rng(4242);
  const BarredPattern plain = BarredPattern::parse("3 2 1");
  for (int trial = 0; trial < 200; ++trial) {
    const int n = static_cast<int>(rng() % 8);
    const Permutation host =
        Permutation::from_values(random_perm_values(n, rng));
    const bool has_occurrence =
        !barred::occurrences_of(host, plain.full()).empty();
    REQUIRE(barred::avoids_barred(host, plain) == !has_occurrence);
  }
}

TEST_CASE("any decreasing triple in a short host is fatal") {
  // below length 5 nothing can supply the barred 1 and 5
  const BarredPattern& pat = BarredPattern::canonical();
  for (int n = 3; n <= 4; ++n) {
    std::vector<int> v(static_cast<size_t>(n));
    for (int t = 0; t < n; ++t) v[static_cast<size_t>(t)] = t + 1;
    do {
      const Permutation p = Permutation::from_values(v);
      const bool has_432 =
          !barred::occurrences_of(p, Permutation::parse("3 2 1")).empty();
      if (has_432) REQUIRE_FALSE(barred::avoids_barred(p, pat));
    } while (std::next_permutation(v.begin(), v.end()));
  }
}

TEST_CASE("first unextendable occurrence is the lexicographic least") {
  const auto witness = barred::first_unextendable(Permutation::parse("3 2 1"),
                                                  BarredPattern::canonical());
  REQUIRE(witness.has_value());
  REQUIRE(witness->positions == std::vector<int>{1, 2, 3});
  REQUIRE_FALSE(barred::first_unextendable(Permutation::parse("1 2 3"),
                                           BarredPattern::canonical())
                    .has_value());
}

TEST_CASE("permutation parsing and errors") {
  REQUIRE(Permutation::parse("5 3 4 1 2").at(1) == 5);
  REQUIRE(Permutation::parse("5 3 4 1 2").position_of(1) == 4);
  REQUIRE(Permutation::parse("").empty());
  REQUIRE_THROWS_WITH(Permutation::parse("1 2 x"),
                      Catch::Matchers::ContainsSubstring("x"));
  REQUIRE_THROWS_AS(Permutation::parse("1 3"), std::invalid_argument);
  REQUIRE_THROWS_AS(Permutation::parse("2 2"), std::invalid_argument);
}
