#include "lotalloc/sequential.hpp"

#include <algorithm>
#include <optional>

namespace lotalloc {

SequentialPolicy::SequentialPolicy(std::vector<AgentId> turns) : turns_(std::move(turns)) {
  if (turns_.empty()) throw DomainError("sequential policy must have at least one turn");
  for (AgentId a : turns_) {
    if (a.index < 1 || a.index > kMaxAgents) {
      throw DomainError("agent index " + std::to_string(a.index) + " out of range in sequential policy");
    }
  }
}

SequentialPolicy::SequentialPolicy(std::initializer_list<int> turns) {
  std::vector<AgentId> ids;
  for (int t : turns) ids.push_back(AgentId{t});
  *this = SequentialPolicy(std::move(ids));
}

AgentId SequentialPolicy::turn(int k) const {
  if (k < 1 || k > length()) throw DomainError("step " + std::to_string(k) + " outside the policy");
  return turns_[static_cast<std::size_t>(k - 1)];
}

int SequentialPolicy::max_agent() const {
  int best = 0;
  for (AgentId a : turns_) best = std::max(best, a.index);
  return best;
}

void SequentialPolicy::validate(int m, int n) const {
  if (length() != m) {
    throw DomainError("sequential policy has " + std::to_string(length()) + " turns for " + std::to_string(m) +
                      " objects");
  }
  if (max_agent() > n) {
    throw DomainError("sequential policy names agent " + std::to_string(max_agent()) + " but n = " +
                      std::to_string(n));
  }
}

std::string SequentialPolicy::to_string() const {
  bool wide = max_agent() > 9;
  std::string out;
  for (std::size_t k = 0; k < turns_.size(); ++k) {
    if (wide && k > 0) out += ',';
    out += std::to_string(turns_[k].index);
  }
  return out;
}

SequentialHistory simulate_sequential(const SequentialPolicy& pi, const Profile& R) {
  pi.validate(R.objects(), R.agents());
  ObjectSet remaining = ObjectSet::first(R.objects());
  SequentialHistory history;
  history.reserve(static_cast<std::size_t>(pi.length()));
  for (AgentId picker : pi.turns()) {
    ObjectId o = R.ranking(picker).best_in(remaining);
    remaining.erase(o);
    history.push_back(Pick{picker, o});
  }
  return history;
}

std::vector<Rational> utilities_sequential(const SequentialPolicy& pi, const Profile& R, const ScoringSpec& g) {
  auto table = score_table(g, R.objects());
  std::vector<Rational> out(static_cast<std::size_t>(R.agents()));
  for (const Pick& p : simulate_sequential(pi, R)) {
    int k = R.ranking(p.agent).rank_of(p.object);
    out[static_cast<std::size_t>(p.agent.index - 1)] += table[static_cast<std::size_t>(k - 1)];
  }
  return out;
}

Rational utility_sequential(const SequentialPolicy& pi, const Profile& R, const ScoringSpec& g, AgentId i) {
  if (i.index < 1 || i.index > R.agents()) throw DomainError("agent out of range");
  return utilities_sequential(pi, R, g)[static_cast<std::size_t>(i.index - 1)];
}

namespace {

class RankStateDp {
 public:
  RankStateDp(const SequentialPolicy& pi, const std::vector<Rational>& scores, AgentId agent)
      : pi_(pi), scores_(scores), agent_(agent), m_(pi.length()),
        memo_(std::size_t{1} << m_) {}

  Rational value(std::uint32_t remaining) {
    if (remaining == 0) return Rational(0);
    auto& slot = memo_[remaining];
    if (slot) return *slot;
    int step = m_ - std::popcount(remaining);
    AgentId picker = pi_.turns()[static_cast<std::size_t>(step)];
    Rational result;
    if (picker == agent_) {
      int best = std::countr_zero(remaining);
      result = scores_[static_cast<std::size_t>(best)] + value(remaining & (remaining - 1));
    } else {
      Rational sum;
      for (std::uint32_t b = remaining; b != 0; b &= b - 1) {
        sum += value(remaining & ~(b & -b));
      }
      result = sum / Integer(std::popcount(remaining));
    }
    slot = result;
    return result;
  }

 private:
  const SequentialPolicy& pi_;
  const std::vector<Rational>& scores_;
  AgentId agent_;
  int m_;
  std::vector<std::optional<Rational>> memo_;
};

}  // namespace

std::vector<Rational> expected_utilities_sequential(const SequentialPolicy& pi, const ScoringSpec& g, int n,
                                                    ExpectationMethod method) {
  int m = pi.length();
  pi.validate(m, n);
  std::vector<Rational> out(static_cast<std::size_t>(n));
  if (method == ExpectationMethod::RankStateDp) {
    if (m > 20) throw ResourceError("rank-state recursion supports m <= 20");
    auto scores = score_table(g, m);
    std::uint32_t all = ObjectSet::first(m).bits();
    for (int i = 1; i <= n; ++i) {
      out[static_cast<std::size_t>(i - 1)] = RankStateDp(pi, scores, AgentId{i}).value(all);
    }
    return out;
  }
  ProfileStream stream(m, n, /*reduce_symmetry=*/true);
  for (auto cur = stream.cursor(); !cur.done(); cur.next()) {
    auto u = utilities_sequential(pi, cur.profile(), g);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += u[i];
  }
  for (auto& v : out) v /= Integer(stream.size());
  return out;
}

Rational expected_utility_sequential(const SequentialPolicy& pi, const ScoringSpec& g, AgentId i, int n,
                                     ExpectationMethod method) {
  if (i.index < 1 || i.index > n) throw DomainError("agent out of range");
  return expected_utilities_sequential(pi, g, n, method)[static_cast<std::size_t>(i.index - 1)];
}

Rational aggregate(Aggregator F, const std::vector<Rational>& values) {
  if (values.empty()) throw DomainError("aggregate of no values");
  if (F == Aggregator::Utilitarian) {
    Rational sum;
    for (const auto& v : values) sum += v;
    return sum;
  }
  return *std::min_element(values.begin(), values.end());
}

Rational expected_welfare_sequential(const SequentialPolicy& pi, const ScoringSpec& g, Aggregator F, int n,
                                     ExpectationMethod method) {
  return aggregate(F, expected_utilities_sequential(pi, g, n, method));
}

// ---------------------------------------------------------------- search

std::uint64_t candidate_count(int m, int n, bool canonicalize) {
  if (m < 1 || n < 1) throw DomainError("search needs m >= 1 and n >= 1");
  constexpr std::uint64_t kCap = std::uint64_t{1} << 62;
  auto sat_mul = [&](std::uint64_t a, std::uint64_t b) { return (b != 0 && a > kCap / b) ? kCap : a * b; };
  if (!canonicalize) {
    std::uint64_t total = 1;
    for (int k = 0; k < m; ++k) total = sat_mul(total, static_cast<std::uint64_t>(n));
    return total;
  }
  // ways[j]: restricted-growth prefixes using exactly j distinct agents
  std::vector<std::uint64_t> ways(static_cast<std::size_t>(n + 1), 0);
  ways[1] = 1;
  for (int len = 2; len <= m; ++len) {
    std::vector<std::uint64_t> next(ways.size(), 0);
    for (int j = 1; j <= n; ++j) {
      if (ways[static_cast<std::size_t>(j)] == 0) continue;
      auto w = ways[static_cast<std::size_t>(j)];
      next[static_cast<std::size_t>(j)] = std::min(kCap, next[static_cast<std::size_t>(j)] + sat_mul(w, static_cast<std::uint64_t>(j)));
      if (j < n) next[static_cast<std::size_t>(j + 1)] = std::min(kCap, next[static_cast<std::size_t>(j + 1)] + w);
    }
    ways = std::move(next);
  }
  std::uint64_t total = 0;
  for (auto w : ways) total = std::min(kCap, total + w);
  return total;
}

SequentialPolicy canonical_form(const SequentialPolicy& pi) {
  std::vector<int> relabel(static_cast<std::size_t>(kMaxAgents + 1), 0);
  int next = 0;
  std::vector<AgentId> out;
  for (AgentId a : pi.turns()) {
    auto& slot = relabel[static_cast<std::size_t>(a.index)];
    if (slot == 0) slot = ++next;
    out.push_back(AgentId{slot});
  }
  return SequentialPolicy(std::move(out));
}

namespace {

struct SearchState {
  const SequenceObjective& objective;
  BudgetTracker tracker;
  std::optional<OptimalSequence> best;
  std::uint64_t evaluated = 0;

  void consider(const std::vector<AgentId>& turns) {
    SequentialPolicy pi(turns);
    try {
      tracker.charge(1, "optimal sequence search");
    } catch (const ResourceError& e) {
      std::string progress = " (evaluated " + std::to_string(evaluated) + " sequences";
      if (best) progress += ", best so far " + best->policy.to_string() + " = " + to_decimal(best->value, 4);
      throw ResourceError(e.what() + progress + ")");
    }
    Rational value = objective(pi);
    ++evaluated;
    if (!best || value > best->value) best = OptimalSequence{std::move(pi), value, 0};
  }
};

void enumerate_canonical(SearchState& state, std::vector<AgentId>& turns, int m, int n, int used) {
  if (static_cast<int>(turns.size()) == m) {
    state.consider(turns);
    return;
  }
  int limit = std::min(n, used + 1);
  for (int a = 1; a <= limit; ++a) {
    turns.push_back(AgentId{a});
    enumerate_canonical(state, turns, m, n, std::max(used, a));
    turns.pop_back();
  }
}

}  // namespace

OptimalSequence optimal_sequence_search(int m, int n, const SequenceObjective& objective,
                                        const SearchOptions& options) {
  std::uint64_t candidates = candidate_count(m, n, options.canonicalize);
  if (options.max_sequences != 0 && candidates > options.max_sequences) {
    throw ResourceError("optimal sequence search over " + std::to_string(candidates) +
                        " sequences exceeds the budget of " + std::to_string(options.max_sequences));
  }
  SearchState state{objective, BudgetTracker(Budget{options.seconds, 0}), std::nullopt, 0};
  std::vector<AgentId> turns;
  if (options.canonicalize) {
    enumerate_canonical(state, turns, m, n, 0);
  } else {
    turns.assign(static_cast<std::size_t>(m), AgentId{1});
    while (true) {
      state.consider(turns);
      int k = m - 1;
      while (k >= 0 && turns[static_cast<std::size_t>(k)].index == n) {
        turns[static_cast<std::size_t>(k)] = AgentId{1};
        --k;
      }
      if (k < 0) break;
      ++turns[static_cast<std::size_t>(k)].index;
    }
  }
  OptimalSequence result = std::move(*state.best);
  result.evaluated = state.evaluated;
  return result;
}

OptimalSequence optimal_sequential(int m, int n, const ScoringSpec& g, Aggregator F, const SearchOptions& options) {
  return optimal_sequence_search(
      m, n, [&](const SequentialPolicy& pi) { return expected_welfare_sequential(pi, g, F, n); }, options);
}

}  // namespace lotalloc
