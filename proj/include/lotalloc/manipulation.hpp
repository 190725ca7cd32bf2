#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <span>
#include <vector>

#include "lotalloc/core_model.hpp"

namespace lotalloc {

// Strategic play for agent 1 under all-reporting when agents 2..n report
// truthfully. With truthful opponents the reported set at every stage
// depends only on the remaining objects, never on who won a draw, so a
// strategy's stage-by-stage evolution is deterministic.

/// Rankings of agents 2..n and the bundle agent 1 wants to secure.
struct ManipulationProblem {
  std::vector<Ranking> others;
  ObjectSet target;

  int objects() const { return others.empty() ? 0 : others.front().size(); }
  /// Throws DomainError on an empty or inconsistent problem.
  void validate() const;
};

/// Objects agent 1 reports, one per stage.
struct Strategy {
  std::vector<ObjectId> reports;
  friend bool operator==(const Strategy&, const Strategy&) = default;
};

/// Objects of `a` that `r` prefers to every object of `b`; `a` and `b` must be disjoint.
ObjectSet better(const Ranking& r, ObjectSet a, ObjectSet b);
/// `r`'s favourite member of a nonempty set.
ObjectId best(const Ranking& r, ObjectSet a);

struct RhoStage {
  ObjectSet available;
  ObjectSet claimed;  // targets some opponent prefers to every remaining non-target
  ObjectSet taken;    // opponents' favourite remaining non-targets
};

struct RhoSequence {
  std::vector<RhoStage> stages;
  std::vector<int> app;  // stage (1-based) at which object o_(k+1) is claimed or taken

  int app_of(ObjectId o) const { return app[static_cast<std::size_t>(o.index - 1)]; }
  /// |claimed_1 ∪ ... ∪ claimed_k|
  int cumulative_claimed(int k) const;
};

RhoSequence rho_sequence(std::span<const Ranking> others, ObjectSet target);

/// True iff k > |claimed_1 ∪ ... ∪ claimed_k| for every stage k.
bool has_successful_strategy(const ManipulationProblem& problem);

/// Picks the filler reported once all targets are out. Receives the
/// opponents' favourite non-targets at that stage (never empty).
using FillerPick = std::function<ObjectId(ObjectSet candidates)>;
ObjectId smallest_filler(ObjectSet candidates);
FillerPick seeded_filler(std::uint64_t seed);

/// Targets in order of first claim, then one contested filler per
/// remaining stage. nullopt when no successful strategy exists.
std::optional<Strategy> find_successful_strategy(const ManipulationProblem& problem,
                                                 const FillerPick& pick = smallest_filler);

/// Per-stage record of agent 1 playing `tau` against truthful opponents.
struct StrategyStage {
  ObjectSet remaining;
  ObjectId report;
  int contenders = 0;  // including agent 1
};

/// Throws ValidityError when a report is unavailable, the process ends before
/// the strategy does, or objects remain after the last report.
std::vector<StrategyStage> play_strategy(const Strategy& tau, std::span<const Ranking> others, int m);
/// Objects agent 1 receives in every lottery realization: the uncontested reports.
ObjectSet secured_objects(const Strategy& tau, std::span<const Ranking> others, int m);
/// Utility agent 1 is guaranteed under `tau` if she loses every draw she enters.
Rational pessimistic_utility(const Strategy& tau, const Profile& R, const ScoringSpec& g);

struct PessimisticPlan {
  Strategy strategy;
  ObjectSet achieved;
  Rational guaranteed_value;
  /// False when the scoring is not lexicographic: greedy is then only a heuristic.
  bool provably_optimal = true;
};

/// Greedily extends the target set in agent 1's preference order, keeping
/// each object whose extension still admits a successful strategy.
PessimisticPlan optimal_pessimistic_strategy(const Profile& R, const ScoringSpec& g,
                                             const FillerPick& pick = smallest_filler);

// ---------------------------------------------------------------- oracle

/// Every bundle secured by at least one well-defined strategy, found by
/// walking the deterministic remaining-set evolution.
std::set<std::uint32_t> achievable_secured_sets(std::span<const Ranking> others, int m, int max_m = 6);

struct BruteForceResult {
  bool exists = false;
  Rational best_value;
  std::optional<Strategy> witness;  // secures the target, when one exists
  Strategy best_strategy;           // attains best_value
};

/// Exhaustive search over well-defined strategies. Throws ResourceError when m > max_m.
BruteForceResult brute_force_manipulation(const ManipulationProblem& problem, const ScoringSpec& g,
                                          const Ranking& manipulator, int max_m = 6);

}  // namespace lotalloc
