#include <set>
#include <sstream>

#include "catch_amalgamated.hpp"
#include "lotalloc/core_model.hpp"
#include "support.hpp"

using namespace lotalloc;

TEST_CASE("ranking positions and validation") {
  Ranking r{4, 2, 5, 1, 3};
  CHECK(r.size() == 5);
  CHECK(r.rank_of(ObjectId{4}) == 1);
  CHECK(r.rank_of(ObjectId{3}) == 5);
  CHECK(r.at(2) == ObjectId{2});
  CHECK(r.prefers(ObjectId{5}, ObjectId{1}));
  CHECK(r.best_in(ObjectSet{ObjectId{1}, ObjectId{3}, ObjectId{5}}) == ObjectId{5});
  CHECK(rank_of(r, ObjectId{1}) == 4);

  CHECK_THROWS_AS((Ranking{1, 1, 2}), DomainError);
  CHECK_THROWS_AS((Ranking{1, 2, 4}), DomainError);
  CHECK_THROWS_AS(r.rank_of(ObjectId{6}), DomainError);
  CHECK_THROWS_AS(r.at(0), DomainError);
  CHECK_THROWS_AS(r.best_in(ObjectSet{}), DomainError);
}

TEST_CASE("ranking advance walks all permutations in order") {
  Ranking r = Ranking::identity(4);
  std::set<std::string> seen;
  std::string previous;
  int count = 0;
  do {
    std::string s = format_ranking(r);
    CHECK(s > previous);
    previous = s;
    seen.insert(s);
    ++count;
  } while (r.advance());
  CHECK(count == 24);
  CHECK(seen.size() == 24u);
  CHECK(r == Ranking::identity(4));
}

TEST_CASE("object sets") {
  ObjectSet a{ObjectId{1}, ObjectId{4}};
  ObjectSet b = ObjectSet::first(5);
  CHECK(a.size() == 2);
  CHECK(a.is_subset_of(b));
  CHECK((b - a).size() == 3);
  CHECK((b - a).smallest() == ObjectId{2});
  CHECK(format_set(a) == "{1,4}");
  CHECK(format_set(ObjectSet{}) == "{}");
  CHECK(ObjectSet::first(32).size() == 32);
}

TEST_CASE("profiles reject inconsistent rankings") {
  CHECK_THROWS_AS(Profile({Ranking{1, 2, 3}, Ranking{1, 2}}), DomainError);
  CHECK_THROWS_AS(Profile(std::vector<Ranking>{}), DomainError);
  Profile R = example_profile();
  CHECK(R.objects() == 5);
  CHECK(R.agents() == 3);
  CHECK_THROWS_AS(R.ranking(AgentId{4}), DomainError);
}

TEST_CASE("scoring functions") {
  CHECK(score(ScoringSpec::borda(), 1, 5) == Rational(5));
  CHECK(score(ScoringSpec::borda(), 5, 5) == Rational(1));
  CHECK(score(ScoringSpec::lexicographic(), 1, 5) == Rational(16));
  CHECK(score(ScoringSpec::lexicographic(), 5, 5) == Rational(1));
  CHECK(is_convex(ScoringSpec::borda(), 6));
  CHECK(is_convex(ScoringSpec::lexicographic(), 6));

  auto custom = ScoringSpec::custom({Rational(10), Rational(3), Rational(2), Rational(1)});
  CHECK(score(custom, 2, 4) == Rational(3));
  CHECK(is_convex(custom, 4));
  CHECK_FALSE(is_convex(ScoringSpec::custom({Rational(4), Rational(3), Rational(1)}), 3));
  CHECK_THROWS_AS(score(custom, 1, 5), DomainError);
  CHECK_THROWS_AS(ScoringSpec::custom({Rational(1), Rational(2)}), DomainError);
  CHECK_THROWS_AS(ScoringSpec::custom({Rational(1), Rational(0)}), DomainError);
  CHECK_THROWS_AS(score(ScoringSpec::borda(), 0, 3), DomainError);
}

TEST_CASE("profile stream sizes and weights") {
  ProfileStream full(3, 2, false);
  CHECK(full.size() == 36u);
  CHECK(full.weight() == 1);
  ProfileStream reduced(3, 3, true);
  CHECK(reduced.size() == 36u);
  CHECK(reduced.weight() == 6);
  CHECK(reduced.total_weight() == 216);
  CHECK(enumerate_profiles(5, 3, true).size() == 14400u);
}

TEST_CASE("profile stream matches an independent enumeration") {
  for (int m = 1; m <= 3; ++m) {
    for (int n = 1; n <= 3; ++n) {
      auto expected = oracle::all_profiles(m, n);
      ProfileStream stream(m, n, false);
      REQUIRE(stream.size() == expected.size());
      std::size_t k = 0;
      for (auto cur = stream.cursor(); !cur.done(); cur.next(), ++k) {
        CHECK(cur.profile() == to_profile(expected[k]));
        CHECK(stream.at(k) == to_profile(expected[k]));
      }
    }
  }
}

TEST_CASE("profile stream cursors resume from any index") {
  ProfileStream stream(4, 3, true);
  for (std::uint64_t begin : {0ull, 1ull, 23ull, 24ull, 300ull, 575ull}) {
    auto cur = stream.cursor(begin, stream.size());
    for (std::uint64_t k = begin; k < std::min<std::uint64_t>(begin + 30, stream.size()); ++k, cur.next()) {
      REQUIRE(!cur.done());
      CHECK(cur.profile() == stream.at(k));
    }
  }
  Profile first = stream.at(0);
  CHECK(first.ranking(AgentId{1}) == Ranking::identity(4));
}

TEST_CASE("profile parsing") {
  std::istringstream in("# example\n1 2 3 4 5\n\n4 2 5 1 3  # agent 2\n1 3 5 4 2\n");
  CHECK(parse_profile(in) == example_profile());

  std::istringstream bad("1 2 3\n1 x 3\n");
  try {
    parse_profile(bad);
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
  }

  std::istringstream repeated("1 2 3\n3 3 1\n");
  CHECK_THROWS_AS(parse_profile(repeated), ParseError);
  std::istringstream ragged("1 2 3\n1 2\n");
  CHECK_THROWS_AS(parse_profile(ragged), ParseError);
  std::istringstream empty("# nothing\n");
  CHECK_THROWS_AS(parse_profile(empty), ParseError);
  CHECK_THROWS_AS(parse_profile_file("/nonexistent/profile.txt"), ParseError);
}

TEST_CASE("scoring table parsing") {
  std::istringstream in("# weights\n10 5/2 1.5\n");
  auto g = parse_scoring_table(in);
  CHECK(score(g, 2, 3) == Rational(5, 2));
  CHECK(score(g, 3, 3) == Rational(3, 2));
  std::istringstream bad("1 2\n");
  CHECK_THROWS_AS(parse_scoring_table(bad), ParseError);
}

TEST_CASE("exact decimal rendering") {
  CHECK(to_decimal(Rational(29, 6), 4) == "4.8333");
  CHECK(to_decimal(Rational(268, 15), 4) == "17.8667");
  CHECK(to_decimal(Rational(1, 8), 2) == "0.13");
  CHECK(to_decimal(Rational(-1, 8), 2) == "-0.12");
  CHECK(to_decimal(Rational(8), 4) == "8.0000");
  CHECK(to_decimal(Rational(7, 2), 0) == "4");
  CHECK(table_decimals(Rational(6)) == 3);
  CHECK(table_decimals(Rational(11427, 100)) == 2);
  CHECK(table_decimals(Rational(1731)) == 1);
  CHECK(parse_rational("2.5") == Rational(5, 2));
  CHECK(parse_rational("-7/4") == Rational(-7, 4));
  CHECK_THROWS_AS(parse_rational("1/0"), ParseError);
  CHECK_THROWS_AS(parse_rational("abc"), ParseError);
}

TEST_CASE("small rationals round-trip and detect overflow") {
  Rational big(Integer(1) << 70, 3);
  CHECK_THROWS(to_small(big));
  Rational v(355, 113);
  CHECK(from_small(to_small(v)) == v);
  CHECK(factorial(5) == 120);
  CHECK(power(Integer(2), 10) == 1024);
}
