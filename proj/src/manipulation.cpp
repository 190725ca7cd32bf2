#include "lotalloc/manipulation.hpp"

#include <memory>
#include <random>

namespace lotalloc {

void ManipulationProblem::validate() const {
  int m = objects();
  for (const Ranking& r : others) {
    if (r.size() != m) throw DomainError("opponent rankings must cover the same objects");
  }
  if (!target.is_subset_of(ObjectSet::first(m))) throw DomainError("target contains an unknown object");
}

ObjectSet better(const Ranking& r, ObjectSet a, ObjectSet b) {
  if (!(a & b).empty()) throw DomainError("better() needs disjoint sets");
  if (b.empty()) return a;
  // Members of a ranked above r's favourite member of b.
  const int cutoff = r.rank_of(r.best_in(b));
  ObjectSet out;
  for (ObjectId o : a.members()) {
    if (r.rank_of(o) < cutoff) out.insert(o);
  }
  return out;
}

ObjectId best(const Ranking& r, ObjectSet a) {
  if (a.empty()) throw DomainError("best() of an empty set");
  return r.best_in(a);
}

int RhoSequence::cumulative_claimed(int k) const {
  ObjectSet all;
  for (int t = 0; t < k && t < static_cast<int>(stages.size()); ++t) all |= stages[static_cast<std::size_t>(t)].claimed;
  return all.size();
}

RhoSequence rho_sequence(std::span<const Ranking> others, ObjectSet target) {
  if (others.empty()) throw DomainError("rho sequence needs at least one opponent");
  const int m = others.front().size();
  RhoSequence rho;
  rho.app.assign(static_cast<std::size_t>(m), 0);
  ObjectSet available = ObjectSet::first(m);
  while (!available.empty()) {
    RhoStage stage{available, {}, {}};
    const ObjectSet wanted = available & target;
    const ObjectSet rest = available - target;
    for (const Ranking& r : others) {
      stage.claimed |= better(r, wanted, rest);
      if (!rest.empty()) stage.taken.insert(best(r, rest));
    }
    const int k = static_cast<int>(rho.stages.size()) + 1;
    for (ObjectId o : (stage.claimed | stage.taken).members()) rho.app[static_cast<std::size_t>(o.index - 1)] = k;
    available -= stage.claimed | stage.taken;
    rho.stages.push_back(stage);
  }
  return rho;
}

bool has_successful_strategy(const ManipulationProblem& problem) {
  problem.validate();
  if (problem.others.empty()) return true;
  const RhoSequence rho = rho_sequence(problem.others, problem.target);
  ObjectSet claimed;
  for (std::size_t k = 0; k < rho.stages.size(); ++k) {
    claimed |= rho.stages[k].claimed;
    if (static_cast<int>(k) + 1 <= claimed.size()) return false;
  }
  return true;
}

ObjectId smallest_filler(ObjectSet candidates) { return candidates.smallest(); }

FillerPick seeded_filler(std::uint64_t seed) {
  auto rng = std::make_shared<std::mt19937_64>(seed);
  return [rng](ObjectSet candidates) {
    auto members = candidates.members();
    std::uniform_int_distribution<std::size_t> pick(0, members.size() - 1);
    return members[pick(*rng)];
  };
}

std::optional<Strategy> find_successful_strategy(const ManipulationProblem& problem, const FillerPick& pick) {
  problem.validate();
  const int m = problem.objects();
  Strategy tau;
  if (problem.others.empty()) {
    for (ObjectId o : problem.target.members()) tau.reports.push_back(o);
    for (ObjectId o : (ObjectSet::first(m) - problem.target).members()) tau.reports.push_back(o);
    return tau;
  }

  ObjectSet available = ObjectSet::first(m);
  ObjectSet pending = problem.target;
  std::vector<ObjectId> fillers;
  int size = 0;
  for (int k = 1; !available.empty(); ++k) {
    ObjectSet claimed;
    for (const Ranking& r : problem.others) claimed |= better(r, pending, available - pending);
    size += claimed.size();
    if (size >= k) return std::nullopt;
    for (ObjectId o : claimed.members()) tau.reports.push_back(o);

    ObjectSet taken;
    const ObjectSet rest = available - pending;
    if (!rest.empty()) {
      for (const Ranking& r : problem.others) taken.insert(best(r, rest));
    }
    if (k > problem.target.size() && !taken.empty()) fillers.push_back(pick(taken));
    available -= claimed | taken;
    pending -= claimed;
  }
  tau.reports.insert(tau.reports.end(), fillers.begin(), fillers.end());
  play_strategy(tau, problem.others, m);
  return tau;
}

std::vector<StrategyStage> play_strategy(const Strategy& tau, std::span<const Ranking> others, int m) {
  ObjectSet remaining = ObjectSet::first(m);
  std::vector<StrategyStage> stages;
  for (std::size_t t = 0; t < tau.reports.size(); ++t) {
    const int stage = static_cast<int>(t) + 1;
    const ObjectId o = tau.reports[t];
    if (remaining.empty()) {
      throw ValidityError("allocation ended before stage " + std::to_string(stage) + " of the strategy", stage);
    }
    if (o.index < 1 || o.index > m || !remaining.contains(o)) {
      throw ValidityError("object " + std::to_string(o.index) + " is not available at stage " + std::to_string(stage),
                          stage);
    }
    ObjectSet reported{o};
    int contenders = 1;
    for (const Ranking& r : others) {
      ObjectId top = r.best_in(remaining);
      reported.insert(top);
      contenders += top == o ? 1 : 0;
    }
    stages.push_back(StrategyStage{remaining, o, contenders});
    remaining -= reported;
  }
  if (!remaining.empty()) {
    const int stage = static_cast<int>(tau.reports.size()) + 1;
    throw ValidityError("objects " + format_set(remaining) + " remain after the last report", stage);
  }
  return stages;
}

ObjectSet secured_objects(const Strategy& tau, std::span<const Ranking> others, int m) {
  ObjectSet secured;
  for (const auto& stage : play_strategy(tau, others, m)) {
    if (stage.contenders == 1) secured.insert(stage.report);
  }
  return secured;
}

Rational pessimistic_utility(const Strategy& tau, const Profile& R, const ScoringSpec& g) {
  const auto& rankings = R.rankings();
  std::span<const Ranking> others(rankings.begin() + 1, rankings.end());
  Rational total;
  for (ObjectId o : secured_objects(tau, others, R.objects()).members()) {
    total += score(g, R.ranking(AgentId{1}).rank_of(o), R.objects());
  }
  return total;
}

PessimisticPlan optimal_pessimistic_strategy(const Profile& R, const ScoringSpec& g, const FillerPick& pick) {
  const auto& rankings = R.rankings();
  const Ranking& own = rankings.front();
  PessimisticPlan plan;
  plan.provably_optimal = g.kind() == ScoringSpec::Kind::Lexicographic;
  ManipulationProblem problem{std::vector<Ranking>(rankings.begin() + 1, rankings.end()), ObjectSet{}};

  if (problem.others.empty()) {
    plan.strategy.reports = own.order();
    plan.achieved = ObjectSet::first(R.objects());
  } else {
    plan.strategy = *find_successful_strategy(problem, pick);
    for (ObjectId o : own.order()) {
      ManipulationProblem extended = problem;
      extended.target.insert(o);
      if (auto tau = find_successful_strategy(extended, pick)) {
        plan.strategy = std::move(*tau);
        problem = std::move(extended);
      }
    }
    plan.achieved = problem.target;
  }
  plan.guaranteed_value = pessimistic_utility(plan.strategy, R, g);
  return plan;
}

// ---------------------------------------------------------------- oracle

namespace {

struct Explorer {
  std::span<const Ranking> others;
  int m;
  ObjectSet target;
  std::vector<Rational> value_of;  // score of each object for the manipulator
  BruteForceResult result;
  bool have_best = false;
  std::set<std::uint32_t>* secured_sets = nullptr;
  std::vector<ObjectId> path;

  void walk(ObjectSet remaining, ObjectSet secured) {
    if (remaining.empty()) {
      if (secured_sets) secured_sets->insert(secured.bits());
      if (value_of.empty()) return;
      if (!result.exists && target.is_subset_of(secured)) {
        result.exists = true;
        result.witness = Strategy{path};
      }
      Rational value;
      for (ObjectId o : secured.members()) value += value_of[static_cast<std::size_t>(o.index - 1)];
      if (!have_best || value > result.best_value) {
        result.best_value = value;
        result.best_strategy = Strategy{path};
        have_best = true;
      }
      return;
    }
    ObjectSet tops;
    for (const Ranking& r : others) tops.insert(r.best_in(remaining));
    for (ObjectId o : remaining.members()) {
      path.push_back(o);
      ObjectSet next_secured = secured;
      if (!tops.contains(o)) next_secured.insert(o);
      walk(remaining - tops - ObjectSet{o}, next_secured);
      path.pop_back();
    }
  }
};

void check_size(int m, int max_m) {
  if (m > max_m) {
    throw ResourceError("brute-force manipulation limited to m <= " + std::to_string(max_m) + ", got m = " +
                        std::to_string(m));
  }
}

}  // namespace

std::set<std::uint32_t> achievable_secured_sets(std::span<const Ranking> others, int m, int max_m) {
  check_size(m, max_m);
  std::set<std::uint32_t> sets;
  Explorer explorer{others, m, ObjectSet{}, {}, {}, false, &sets, {}};
  explorer.walk(ObjectSet::first(m), ObjectSet{});
  return sets;
}

BruteForceResult brute_force_manipulation(const ManipulationProblem& problem, const ScoringSpec& g,
                                          const Ranking& manipulator, int max_m) {
  problem.validate();
  const int m = problem.objects();
  check_size(m, max_m);
  if (manipulator.size() != m) throw DomainError("manipulator ranking does not match the problem");
  std::vector<Rational> value_of(static_cast<std::size_t>(m));
  for (int k = 1; k <= m; ++k) value_of[static_cast<std::size_t>(manipulator.at(k).index - 1)] = score(g, k, m);
  Explorer explorer{problem.others, m, problem.target, std::move(value_of), {}, false, nullptr, {}};
  explorer.walk(ObjectSet::first(m), ObjectSet{});
  return explorer.result;
}

}  // namespace lotalloc
