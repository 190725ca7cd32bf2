#include <random>

#include "catch_amalgamated.hpp"
#include "lotalloc/parallel.hpp"
#include "support.hpp"

using namespace lotalloc;

namespace {

std::vector<int> random_turns(oracle::Lcg& rng, int m, int n) {
  std::vector<int> t;
  for (int k = 0; k < m; ++k) t.push_back(1 + rng.below(n));
  return t;
}

SequentialPolicy policy_of(const std::vector<int>& turns) {
  std::vector<AgentId> ids;
  for (int t : turns) ids.push_back(AgentId{t});
  return SequentialPolicy(ids);
}

void check_invariants(const AllocationStructure& s) {
  REQUIRE(s.size() >= 1);
  CHECK(s.node(s.root()).remaining == ObjectSet::first(s.objects()));
  std::vector<bool> placed(s.size(), false);
  for (std::size_t v : s.bottom_up()) {
    for (const auto& group : s.out(v)) {
      if (group.target != AllocationStructure::kStop) CHECK(placed[group.target]);
    }
    placed[v] = true;
  }
  for (std::size_t v = 0; v < s.size(); ++v) {
    const auto& node = s.node(v);
    REQUIRE_FALSE(s.out(v).empty());
    int winners_expected = node.reported().size();
    for (const auto& group : s.out(v)) {
      for (AgentSet losers : group.labels) {
        CHECK(losers.is_subset_of(node.reporters));
        CHECK(losers != node.reporters);
        CHECK((node.reporters - losers).size() == winners_expected);
      }
      if (group.target != AllocationStructure::kStop) {
        CHECK(s.node(group.target).remaining == node.remaining - node.reported());
      } else {
        CHECK(node.remaining == node.reported());
      }
    }
  }
}

}  // namespace

TEST_CASE("all-reporting expected utilities on the five-object example") {
  const Profile R = example_profile();
  const auto s = build_structure(ParallelPolicy::all_reporting(), R);
  check_invariants(s);
  const auto v = root_values(s, R, ScoringSpec::borda());
  CHECK(v.expected == std::vector<Rational>{Rational(29, 6), Rational(8), Rational(15, 2)});
  CHECK(to_decimal(v.expected[0], 4) == "4.8333");
  CHECK(hat_u(s, R, ScoringSpec::borda(), AgentId{2}) == 8);
}

TEST_CASE("loser-reporting guaranteed utilities on the five-object example") {
  const Profile R = example_profile();
  const auto s = build_structure(ParallelPolicy::loser_reporting(), R);
  check_invariants(s);
  const auto v = root_values(s, R, ScoringSpec::lexicographic());
  CHECK(v.minimum == std::vector<Rational>{8, 16, 12});
  CHECK(underline_u(s, R, ScoringSpec::lexicographic(), AgentId{3}) == 12);
  const auto b = root_values(s, R, ScoringSpec::borda());
  CHECK(*std::min_element(b.minimum.begin(), b.minimum.end()) == 4);
}

TEST_CASE("root values match exhaustive outcome simulation") {
  oracle::Lcg rng(11);
  for (int m = 1; m <= 3; ++m) {
    for (int n = 1; n <= 3; ++n) {
      for (const auto& prefs : oracle::all_profiles(m, n)) {
        const Profile R = to_profile(prefs);
        const auto turns = random_turns(rng, m, n);
        const std::vector<std::pair<ParallelPolicy, oracle::Rule>> cases{
            {ParallelPolicy::all_reporting(), oracle::Rule::All},
            {ParallelPolicy::loser_reporting(), oracle::Rule::Loser},
            {ParallelPolicy::from_sequential(policy_of(turns)), oracle::Rule::Sequence}};
        for (const auto& [policy, rule] : cases) {
          const auto s = build_structure(policy, R);
          const auto outcomes = oracle::lottery_outcomes(rule, turns, prefs);
          for (const auto& g : {ScoringSpec::borda(), ScoringSpec::lexicographic()}) {
            const auto expected = oracle::outcome_values(outcomes, prefs, g.kind() == ScoringSpec::Kind::Borda
                                                                             ? oracle::borda(m)
                                                                             : oracle::lex(m));
            const auto v = root_values(s, R, g);
            CHECK(v.expected == expected.expected);
            CHECK(v.minimum == expected.minimum);
          }
        }
      }
    }
  }
}

TEST_CASE("library outcome enumeration is a probability distribution") {
  const Profile R = example_profile();
  for (const auto& policy : {ParallelPolicy::all_reporting(), ParallelPolicy::loser_reporting()}) {
    const auto s = build_structure(policy, R);
    const auto outcomes = enumerate_outcomes(s);
    Rational total;
    for (const auto& o : outcomes) {
      total += o.probability;
      ObjectSet all;
      for (const auto& b : o.bundles) {
        CHECK((all & b).empty());
        all |= b;
      }
      CHECK(all == ObjectSet::first(5));
    }
    CHECK(total == 1);
    const auto reference = oracle::lottery_outcomes(
        policy.kind() == ParallelPolicy::Kind::AllReporting ? oracle::Rule::All : oracle::Rule::Loser, {}, to_prefs(R));
    CHECK(outcomes.size() == reference.size());
  }
}

TEST_CASE("sequential embedding reproduces the picking protocol") {
  const Profile R = example_profile();
  const SequentialPolicy pi{1, 2, 3, 3, 2};
  const auto s = build_structure(ParallelPolicy::from_sequential(pi), R);
  check_invariants(s);
  CHECK(s.size() == 5u);
  const auto v = root_values(s, R, ScoringSpec::borda());
  CHECK(v.expected == utilities_sequential(pi, R, ScoringSpec::borda()));
  CHECK(v.minimum == v.expected);
}

TEST_CASE("loser-reporting gives everyone at least floor(m/n) objects") {
  for (int m = 1; m <= 4; ++m) {
    for (int n = 1; n <= 3; ++n) {
      for (const auto& prefs : oracle::all_profiles(m, n)) {
        const auto s = build_structure(ParallelPolicy::loser_reporting(), to_profile(prefs));
        for (const auto& o : enumerate_outcomes(s)) {
          for (const auto& bundle : o.bundles) CHECK(bundle.size() >= m / n);
        }
      }
    }
  }
}

TEST_CASE("policy violations") {
  const Profile R = example_profile();
  auto empty = ParallelPolicy::custom([](std::span<const StagePair>, int) { return AgentSet{}; }, "empty");
  CHECK_THROWS_AS(build_structure(empty, R), PolicyViolation);
  auto outside = ParallelPolicy::custom([](std::span<const StagePair>, int) { return AgentSet{AgentId{7}}; }, "outside");
  CHECK_THROWS_AS(build_structure(outside, R), PolicyViolation);
  CHECK_THROWS_AS(build_structure(ParallelPolicy::from_sequential(SequentialPolicy{1, 2}), R), PolicyViolation);
}

TEST_CASE("history-dependent custom policies are expanded per history") {
  const Profile R = example_profile();
  // Loser-reporting written as an opaque rule over the full history.
  auto rule = [](std::span<const StagePair> prefix, int n) {
    if (prefix.empty() || prefix.back().losers.empty()) return AgentSet::first(n);
    return prefix.back().losers;
  };
  auto custom = ParallelPolicy::custom(rule, "opaque-loser");
  CHECK_FALSE(custom.history_independent());
  for (const auto& g : {ScoringSpec::borda(), ScoringSpec::lexicographic()}) {
    const auto a = root_values(build_structure(custom, R), R, g);
    const auto b = root_values(build_structure(ParallelPolicy::loser_reporting(), R), R, g);
    CHECK(a.expected == b.expected);
    CHECK(a.minimum == b.minimum);
  }

  // Alternating between agent 1 alone and everyone depends on the stage count.
  auto alternating = ParallelPolicy::custom(
      [](std::span<const StagePair> prefix, int n) {
        return prefix.size() % 2 == 0 ? AgentSet{AgentId{1}} : AgentSet::first(n);
      },
      "alternating");
  const auto s = build_structure(alternating, R);
  check_invariants(s);
  CHECK_THROWS_AS(build_structure(alternating, R, 1), ResourceError);
}

TEST_CASE("sampled histories follow structure edges") {
  const Profile R = example_profile();
  const auto s = build_structure(ParallelPolicy::all_reporting(), R);
  std::mt19937_64 rng(42);
  for (int trial = 0; trial < 20; ++trial) {
    const auto h = sample_history(s, rng);
    REQUIRE_FALSE(h.empty());
    CHECK(h.front().node == s.root());
    ObjectSet allocated;
    for (const auto& st : h) allocated |= s.node(st.node).reported();
    CHECK(allocated == ObjectSet::first(5));
  }
  std::mt19937_64 a(5), b(5);
  const auto ha = sample_history(s, a);
  const auto hb = sample_history(s, b);
  REQUIRE(ha.size() == hb.size());
  for (std::size_t k = 0; k < ha.size(); ++k) {
    CHECK(ha[k].node == hb[k].node);
    CHECK(ha[k].losers == hb[k].losers);
  }
}

TEST_CASE("policy literals") {
  CHECK(ParallelPolicy::all_reporting().literal() == "all");
  CHECK(ParallelPolicy::loser_reporting().literal() == "loser");
  CHECK(ParallelPolicy::from_sequential(SequentialPolicy{1, 2, 1}).literal() == "seq:121");
}
