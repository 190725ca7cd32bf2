#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "lotalloc/budget.hpp"
#include "lotalloc/core_model.hpp"

namespace lotalloc {

/// Picking sequence: turns[k] is the agent choosing at step k+1.
class SequentialPolicy {
 public:
  SequentialPolicy() = default;
  explicit SequentialPolicy(std::vector<AgentId> turns);
  SequentialPolicy(std::initializer_list<int> turns);

  int length() const { return static_cast<int>(turns_.size()); }
  AgentId turn(int k) const;  // 1-based step
  const std::vector<AgentId>& turns() const { return turns_; }
  int max_agent() const;
  /// Throws DomainError unless length() == m and every turn is in 1..n.
  void validate(int m, int n) const;
  /// "12332", or "1,2,10" when some agent index exceeds 9.
  std::string to_string() const;

  friend auto operator<=>(const SequentialPolicy&, const SequentialPolicy&) = default;

 private:
  std::vector<AgentId> turns_;
};

struct Pick {
  AgentId agent;
  ObjectId object;
  friend bool operator==(const Pick&, const Pick&) = default;
};

using SequentialHistory = std::vector<Pick>;

enum class Aggregator { Utilitarian, Egalitarian };

/// How u_i* is obtained. Enumeration averages utility_sequential over every
/// profile. RankStateDp tracks only which of agent i's ranks remain: other
/// pickers' rankings are independent of i's and, given the history, each of
/// them takes a uniformly random remaining object, so the recursion over
/// remaining-rank subsets is exact.
enum class ExpectationMethod { Enumeration, RankStateDp };

SequentialHistory simulate_sequential(const SequentialPolicy& pi, const Profile& R);
Rational utility_sequential(const SequentialPolicy& pi, const Profile& R, const ScoringSpec& g, AgentId i);
/// Realized utilities of all agents, index i-1 for agent i.
std::vector<Rational> utilities_sequential(const SequentialPolicy& pi, const Profile& R, const ScoringSpec& g);

Rational expected_utility_sequential(const SequentialPolicy& pi, const ScoringSpec& g, AgentId i, int n,
                                     ExpectationMethod method = ExpectationMethod::RankStateDp);
std::vector<Rational> expected_utilities_sequential(const SequentialPolicy& pi, const ScoringSpec& g, int n,
                                                    ExpectationMethod method = ExpectationMethod::RankStateDp);
Rational aggregate(Aggregator F, const std::vector<Rational>& values);
Rational expected_welfare_sequential(const SequentialPolicy& pi, const ScoringSpec& g, Aggregator F, int n,
                                     ExpectationMethod method = ExpectationMethod::RankStateDp);

struct SearchOptions {
  /// Only evaluate sequences whose agents appear in first-appearance order.
  bool canonicalize = true;
  std::uint64_t max_sequences = 10'000'000;
  double seconds = 0;
};

struct OptimalSequence {
  SequentialPolicy policy;
  Rational value;
  std::uint64_t evaluated = 0;
};

using SequenceObjective = std::function<Rational(const SequentialPolicy&)>;

/// Argmax of `objective` over N^m; ties go to the lexicographically smallest
/// sequence. Canonicalization is sound only for agent-symmetric objectives.
OptimalSequence optimal_sequence_search(int m, int n, const SequenceObjective& objective,
                                        const SearchOptions& options = {});
OptimalSequence optimal_sequential(int m, int n, const ScoringSpec& g, Aggregator F,
                                   const SearchOptions& options = {});

/// Number of sequences the search would evaluate.
std::uint64_t candidate_count(int m, int n, bool canonicalize);
/// Relabels agents in first-appearance order (21332 -> 12331).
SequentialPolicy canonical_form(const SequentialPolicy& pi);

}  // namespace lotalloc
