#include <algorithm>
#include <map>
#include <vector>

#include <catch2/catch_amalgamated.hpp>

#include "barred/enumerate.hpp"
#include "barred/formulas.hpp"

using barred::AvoiderStats;
using barred::BarredPattern;
using barred::BigInt;
using barred::EnumerationMode;
using barred::Permutation;

TEST_CASE("enumerate_avoiders basics") {
  auto all3 = barred::avoiders(3);
  REQUIRE(all3.size() == 5);
  REQUIRE(std::is_sorted(all3.begin(), all3.end()));
  for (const Permutation& p : all3) REQUIRE_FALSE(p == Permutation::parse("3 2 1"));

  auto none = barred::avoiders(0);
  REQUIRE(none.size() == 1);
  REQUIRE(none[0].empty());

  REQUIRE_THROWS_WITH(barred::avoiders(12),
                      Catch::Matchers::ContainsSubstring("11"));
  REQUIRE_NOTHROW(barred::avoiders(5, BarredPattern::canonical(),
                                   EnumerationMode::oracle, 5));
  REQUIRE_THROWS_AS(barred::avoiders(6, BarredPattern::canonical(),
                                     EnumerationMode::oracle, 5),
                    std::domain_error);
}

TEST_CASE("avoider counts match the closed form") {
  for (int n = 1; n <= 8; ++n)
    REQUIRE(BigInt(barred::avoiders(n).size()) == barred::theorem_count(n));
}

TEST_CASE("fast mode streams the same avoiders as the oracle") {
  for (int n = 0; n <= 7; ++n)
    REQUIRE(barred::avoiders(n, BarredPattern::canonical(),
                             EnumerationMode::fast) ==
            barred::avoiders(n, BarredPattern::canonical(),
                             EnumerationMode::oracle));
  const BarredPattern other = BarredPattern::parse("4 3 ~5 2");
  for (int n = 0; n <= 6; ++n)
    REQUIRE(barred::avoiders(n, other, EnumerationMode::fast) ==
            barred::avoiders(n, other, EnumerationMode::oracle));
}

TEST_CASE("early stop works") {
  int seen = 0;
  barred::enumerate_avoiders(
      6, BarredPattern::canonical(), EnumerationMode::oracle,
      [&](const Permutation&) { return ++seen < 10; });
  REQUIRE(seen == 10);
}

TEST_CASE("count_avoiders_brute") {
  REQUIRE(barred::count_avoiders_brute(0, BarredPattern::canonical()) == 1);
  REQUIRE(barred::count_avoiders_brute(6, BarredPattern::canonical()) == 145);
  REQUIRE(barred::count_avoiders_brute(5, BarredPattern::parse("4 3 ~5 2")) ==
          52);
  REQUIRE_THROWS_AS(
      barred::count_avoiders_brute(12, BarredPattern::canonical()),
      std::domain_error);
}

TEST_CASE("brute count is independent of the thread split") {
  const BarredPattern& pat = BarredPattern::canonical();
  const BigInt want = barred::count_avoiders_brute(7, pat, 11, 1);
  for (int threads : {2, 3, 5, 8})
    REQUIRE(barred::count_avoiders_brute(7, pat, 11, threads) == want);
}

TEST_CASE("stats of small permutations") {
  const AvoiderStats s = barred::stats_of(Permutation::parse("2 1 3"));
  REQUIRE(s.a == 2);
  REQUIRE(s.j == 2);
  REQUIRE(s.b == 2);
  REQUIRE(s.k == 1);
  REQUIRE_FALSE(s.i.has_value());
  REQUIRE(s.B == 0);

  const AvoiderStats id = barred::stats_of(Permutation::identity(6));
  REQUIRE(id.j == 1);
  REQUIRE(id.a == 1);
  REQUIRE_FALSE(id.b.has_value());
  REQUIRE_FALSE(id.i.has_value());
  REQUIRE(id.k == 5);

  const AvoiderStats t = barred::stats_of(Permutation::parse("2 4 1 3"));
  REQUIRE(t.a == 2);
  REQUIRE(t.b == 4);
  REQUIRE(t.j == 3);
  REQUIRE(t.k == 0);
  REQUIRE(t.B == 1);
  REQUIRE(t.i == 1);

  REQUIRE_THROWS_AS(barred::stats_of(Permutation()), std::invalid_argument);
}

TEST_CASE("stats of a wide avoider shaped like the running example") {
  // first entry 5, the value 1 in position 4, predecessor 16, and five
  // left-to-right maxima after the 1
  std::vector<int> v{5, 7, 16, 1};
  for (int x : {2, 3, 4, 6}) v.push_back(x);
  for (int x = 8; x <= 15; ++x) v.push_back(x);
  for (int x = 17; x <= 21; ++x) v.push_back(x);
  const Permutation p = Permutation::from_values(v);
  REQUIRE(barred::avoids_barred(p, BarredPattern::canonical()));

  const AvoiderStats s = barred::stats_of(p);
  REQUIRE(s.a == 5);
  REQUIRE(s.j == 4);
  REQUIRE(s.b == 16);
  REQUIRE(s.k == 5);
  REQUIRE(s.A == 3);
  REQUIRE(s.B == 9);
  REQUIRE(s.C == 5);
  REQUIRE(s.i == 1);
}

TEST_CASE("structure report bullets") {
  // decreasing prefix before the 1
  REQUIRE_FALSE(
      barred::check_structure(Permutation::parse("5 3 1 2 4")).prefix_increasing);

  // descent initiator 6 after the 1 is a left-to-right maximum
  const auto r = barred::check_structure(Permutation::parse("2 3 4 1 6 5 7"));
  REQUIRE(r.descent_initiators_are_lr_maxima);

  REQUIRE(barred::check_structure(Permutation::parse("2 3 4 1")).overall());

  // with a = 2 the reference entry a-1 is the 1 itself, so the third bullet
  // asks nothing beyond "right of 1"
  REQUIRE(barred::check_structure(Permutation::parse("2 5 1 3 4"))
              .strip_b_right_of_a_minus_1);

  // a genuine violation: a = 3, b = 5, the entry 4 right of 1 but left of 2
  const auto bad = barred::check_structure(Permutation::parse("3 5 1 4 2"));
  REQUIRE_FALSE(bad.strip_b_right_of_a_minus_1);
}

TEST_CASE("structure characterizes avoidance when 1 sits at position >= 3") {
  barred::AvoidanceTester tester(BarredPattern::canonical());
  for (int n = 3; n <= 7; ++n) {
    std::vector<int> v(static_cast<size_t>(n));
    for (int t = 0; t < n; ++t) v[static_cast<size_t>(t)] = t + 1;
    do {
      const Permutation p = Permutation::from_values(v);
      if (p.position_of(1) < 3) continue;
      REQUIRE(tester.avoids(p.span()) == barred::check_structure(p).overall());
    } while (std::next_permutation(v.begin(), v.end()));
  }
}

TEST_CASE("splitting the top strip at its maxima gives a canonical partition") {
  for (int n = 2; n <= 7; ++n) {
    for (const Permutation& p : barred::avoiders(n)) {
      const AvoiderStats s = barred::stats_of(p);
      if (!s.b) continue;
      // subsequence of values above b, in position order
      std::vector<int> top;
      for (int pos = 1; pos <= n; ++pos)
        if (p.at(pos) > *s.b) top.push_back(p.at(pos));
      // split before each running maximum
      std::vector<std::vector<int>> blocks;
      int best = 0;
      for (int v : top) {
        if (v > best) {
          best = v;
          blocks.emplace_back();
        }
        blocks.back().push_back(v);
      }
      int prev_first = 0;
      for (const auto& block : blocks) {
        REQUIRE(block.front() == *std::max_element(block.begin(), block.end()));
        REQUIRE(std::is_sorted(block.begin() + 1, block.end()));
        REQUIRE(block.front() > prev_first);
        prev_first = block.front();
      }
    }
  }
}

TEST_CASE("decomposition at n = 4, bucket by bucket") {
  const barred::Decomposition d = barred::decompose(4);
  REQUIRE(d.j1_count == 5);
  REQUIRE(d.j2_count == 5);
  const std::map<barred::Decomposition::Key, BigInt> want{
      {{2, 3, 3, 1, 0}, 1},
      {{2, 4, 3, 0, 1}, 1},
      {{2, 4, 4, 0, 0}, 1},
      {{3, 4, 3, 0, 0}, 1},
  };
  REQUIRE(d.j_ge3 == want);
  REQUIRE(d.total() == 14);
}

TEST_CASE("decomposition buckets equal their formula cells") {
  for (int n = 2; n <= 7; ++n) {
    const barred::Decomposition d = barred::decompose(n);
    REQUIRE(d.total() == barred::theorem_count(n));
    REQUIRE(d.j1_count == barred::bell(n - 1));
    REQUIRE(d.j2_count == barred::count_j2(n));
    BigInt jge3_total = 0;
    for (const auto& [key, count] : d.j_ge3) {
      const auto [a, b, j, k, i] = key;
      jge3_total += count;
      REQUIRE(count == barred::bucket_expected(
                           n, a, b, j, k,
                           i ? std::optional<int>(i) : std::nullopt));
    }
    REQUIRE(jge3_total == barred::count_j_ge3(n));
  }
}

TEST_CASE("class totals still match the formulas at n = 9") {
  const barred::Decomposition d = barred::decompose(9);
  REQUIRE(d.j1_count == barred::bell(8));
  REQUIRE(d.j2_count == barred::count_j2(9));
  BigInt jge3_total = 0;
  for (const auto& [key, count] : d.j_ge3) jge3_total += count;
  REQUIRE(jge3_total == barred::count_j_ge3(9));
  REQUIRE(d.total() == barred::theorem_count(9));
}

TEST_CASE("decomposition flattens to a count table") {
  const barred::CountTable t = barred::decompose(3).to_table();
  REQUIRE(t.total() == 5);
  REQUIRE(t.entries.at({1, 0, 0, 1, 0, 0}) == 2);
  REQUIRE(t.entries.at({2, 0, 0, 2, 0, 0}) == 2);
}
