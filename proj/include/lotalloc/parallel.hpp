#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "lotalloc/core_model.hpp"
#include "lotalloc/sequential.hpp"

namespace lotalloc {

/// One stage of a parallel history: who reported and who lost a lottery.
struct StagePair {
  AgentSet reporters;
  AgentSet losers;
  friend bool operator==(const StagePair&, const StagePair&) = default;
};

/// Maps the history of (reporters, losers) pairs to the next reporter set.
class ParallelPolicy {
 public:
  enum class Kind { AllReporting, LoserReporting, FromSequential, Custom };
  using Rule = std::function<AgentSet(std::span<const StagePair> prefix, int n)>;

  static ParallelPolicy all_reporting();
  static ParallelPolicy loser_reporting();
  static ParallelPolicy from_sequential(SequentialPolicy pi);
  /// `history_independent` promises that the rule's answer is determined by
  /// the remaining objects, the last reporter set and the last loser set;
  /// structure construction then expands each demand situation once.
  static ParallelPolicy custom(Rule rule, std::string name, bool history_independent = false);

  Kind kind() const { return kind_; }
  const SequentialPolicy& sequence() const { return sequence_; }
  const Rule& rule() const { return rule_; }
  bool history_independent() const { return history_independent_; }
  /// `all`, `loser`, `seq:<turns>` or the custom name.
  std::string literal() const;

 private:
  Kind kind_ = Kind::AllReporting;
  SequentialPolicy sequence_;
  Rule rule_;
  std::string name_;
  bool history_independent_ = true;
};

/// Reporter set for the stage after `prefix`. Throws PolicyViolation when
/// the answer is empty or names an agent outside 1..n.
AgentSet next_reporters(const ParallelPolicy& policy, std::span<const StagePair> prefix, int n);

/// Remaining objects plus each reporter's (truthful) demand.
struct DemandSituation {
  ObjectSet remaining;
  AgentSet reporters;
  std::array<std::int8_t, kMaxAgents> demand{};  // 1-based object per agent, 0 when not reporting

  ObjectId demand_of(AgentId i) const { return ObjectId{demand[static_cast<std::size_t>(i.index - 1)]}; }
  ObjectSet reported() const;
  /// Number of reporters demanding `o`.
  int contenders(ObjectId o) const;
};

/// All loser labels of one node that lead to the same successor.
struct EdgeGroup {
  std::size_t target = 0;
  std::vector<AgentSet> labels;
  AgentSet loser_union;  // agents losing under at least one label
  int multiplicity() const { return static_cast<int>(labels.size()); }
};

/// Acyclic graph of the demand situations reachable under truthful reporting.
/// Node 0 is the root; Stop is the sentinel index `kStop`.
class AllocationStructure {
 public:
  static constexpr std::size_t kStop = std::numeric_limits<std::size_t>::max();

  int objects() const { return m_; }
  int agents() const { return n_; }
  std::size_t size() const { return nodes_.size(); }
  std::size_t root() const { return 0; }
  const DemandSituation& node(std::size_t v) const { return nodes_[v]; }
  const std::vector<EdgeGroup>& out(std::size_t v) const { return out_[v]; }
  /// #out_v: distinct (label, successor) pairs.
  int out_count(std::size_t v) const;
  /// Node indices ordered by increasing number of remaining objects, so
  /// every successor precedes its predecessors.
  const std::vector<std::size_t>& bottom_up() const { return bottom_up_; }

 private:
  friend AllocationStructure build_structure(const ParallelPolicy&, const Profile&, std::uint64_t);

  int m_ = 0;
  int n_ = 0;
  std::vector<DemandSituation> nodes_;
  std::vector<std::vector<EdgeGroup>> out_;
  std::vector<std::size_t> bottom_up_;
};

/// Throws PolicyViolation when an embedded turn sequence does not fit m, n.
void check_embedded_sequence(const ParallelPolicy& policy, int m, int n);

/// Builds S^policy_R. Nodes are keyed by (remaining, reporters), which fixes
/// the truthful demands. For history-dependent custom policies every history
/// is expanded (at most `max_expansions` times) and edges are merged.
AllocationStructure build_structure(const ParallelPolicy& policy, const Profile& R,
                                    std::uint64_t max_expansions = 1'000'000);

/// Expected and minimum utility of every agent at the root.
struct RootValues {
  std::vector<Rational> expected;  // hat u
  std::vector<Rational> minimum;   // underline u
};

RootValues root_values(const AllocationStructure& s, const Profile& R, const ScoringSpec& g);
Rational hat_u(const AllocationStructure& s, const Profile& R, const ScoringSpec& g, AgentId i);
Rational underline_u(const AllocationStructure& s, const Profile& R, const ScoringSpec& g, AgentId i);

/// One complete history of the lottery process.
struct Outcome {
  std::vector<ObjectSet> bundles;  // index i-1 for agent i
  Rational probability;
  AgentSet lottery_winners;        // agents that won a draw among two or more
};

/// Every complete history with its probability (each (label, successor) pair
/// of a node has probability 1/#out). Throws ResourceError past `max_outcomes`.
std::vector<Outcome> enumerate_outcomes(const AllocationStructure& s, std::uint64_t max_outcomes = 1'000'000);

/// A single history drawn with fair lotteries: the node visited and the loser
/// label taken at each stage.
struct SampledStage {
  std::size_t node;
  AgentSet losers;
};
std::vector<SampledStage> sample_history(const AllocationStructure& s, std::mt19937_64& rng);

}  // namespace lotalloc
