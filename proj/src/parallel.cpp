#include "lotalloc/parallel.hpp"

#include <algorithm>
#include <system_error>
#include <string>
#include <unordered_map>

namespace lotalloc {

// ---------------------------------------------------------------- policies

ParallelPolicy ParallelPolicy::all_reporting() {
  ParallelPolicy p;
  p.kind_ = Kind::AllReporting;
  return p;
}

ParallelPolicy ParallelPolicy::loser_reporting() {
  ParallelPolicy p;
  p.kind_ = Kind::LoserReporting;
  return p;
}

ParallelPolicy ParallelPolicy::from_sequential(SequentialPolicy pi) {
  ParallelPolicy p;
  p.kind_ = Kind::FromSequential;
  p.sequence_ = std::move(pi);
  return p;
}

ParallelPolicy ParallelPolicy::custom(Rule rule, std::string name, bool history_independent) {
  if (!rule) throw DomainError("custom policy needs a rule");
  ParallelPolicy p;
  p.kind_ = Kind::Custom;
  p.rule_ = std::move(rule);
  p.name_ = std::move(name);
  p.history_independent_ = history_independent;
  return p;
}

std::string ParallelPolicy::literal() const {
  switch (kind_) {
    case Kind::AllReporting: return "all";
    case Kind::LoserReporting: return "loser";
    case Kind::FromSequential: return "seq:" + sequence_.to_string();
    case Kind::Custom: return name_;
  }
  return "?";
}

AgentSet next_reporters(const ParallelPolicy& policy, std::span<const StagePair> prefix, int n) {
  AgentSet everyone = AgentSet::first(n);
  AgentSet next;
  switch (policy.kind()) {
    case ParallelPolicy::Kind::AllReporting:
      next = everyone;
      break;
    case ParallelPolicy::Kind::LoserReporting:
      next = (prefix.empty() || prefix.back().losers.empty()) ? everyone : prefix.back().losers;
      break;
    case ParallelPolicy::Kind::FromSequential: {
      const auto& turns = policy.sequence().turns();
      if (prefix.size() >= turns.size()) {
        throw PolicyViolation("sequential policy " + policy.sequence().to_string() + " has no turn for stage " +
                              std::to_string(prefix.size() + 1));
      }
      next.insert(turns[prefix.size()]);
      break;
    }
    case ParallelPolicy::Kind::Custom:
      next = policy.rule()(prefix, n);
      break;
  }
  if (next.empty()) {
    throw PolicyViolation("policy " + policy.literal() + " designated no reporters at stage " +
                          std::to_string(prefix.size() + 1));
  }
  if (!next.is_subset_of(everyone)) {
    throw PolicyViolation("policy " + policy.literal() + " designated an agent outside 1.." + std::to_string(n));
  }
  return next;
}

// ---------------------------------------------------------------- structure

ObjectSet DemandSituation::reported() const {
  ObjectSet out;
  for (AgentId i : reporters.members()) out.insert(demand_of(i));
  return out;
}

int DemandSituation::contenders(ObjectId o) const {
  int count = 0;
  for (AgentId i : reporters.members()) count += demand_of(i) == o ? 1 : 0;
  return count;
}

int AllocationStructure::out_count(std::size_t v) const {
  int total = 0;
  for (const auto& group : out_[v]) total += group.multiplicity();
  return total;
}

namespace {

struct Contest {
  ObjectId object;
  std::vector<AgentId> contenders;
};

std::vector<Contest> contests_of(const DemandSituation& node) {
  std::vector<Contest> contests;
  for (AgentId i : node.reporters.members()) {
    ObjectId o = node.demand_of(i);
    auto it = std::find_if(contests.begin(), contests.end(), [&](const Contest& c) { return c.object == o; });
    if (it == contests.end()) {
      contests.push_back(Contest{o, {i}});
    } else {
      it->contenders.push_back(i);
    }
  }
  std::sort(contests.begin(), contests.end(), [](const Contest& a, const Contest& b) { return a.object < b.object; });
  return contests;
}

/// Calls `fn(winners)` for every way of choosing one winner per contest,
/// in odometer order over the contests' contender lists.
template <typename Fn>
void for_each_winner_set(const std::vector<Contest>& contests, Fn&& fn) {
  std::vector<std::size_t> choice(contests.size(), 0);
  while (true) {
    AgentSet winners;
    for (std::size_t c = 0; c < contests.size(); ++c) winners.insert(contests[c].contenders[choice[c]]);
    fn(winners);
    std::size_t c = contests.size();
    while (c > 0) {
      --c;
      if (++choice[c] < contests[c].contenders.size()) break;
      choice[c] = 0;
      if (c == 0) return;
    }
    if (contests.empty()) return;
  }
}

std::uint64_t node_key(ObjectSet remaining, AgentSet reporters) {
  return (std::uint64_t{remaining.bits()} << 32) | reporters.bits();
}

}  // namespace

void check_embedded_sequence(const ParallelPolicy& policy, int m, int n) {
  if (policy.kind() != ParallelPolicy::Kind::FromSequential) return;
  try {
    policy.sequence().validate(m, n);
  } catch (const DomainError& e) {
    throw PolicyViolation(std::string("sequence ") + policy.sequence().to_string() + ": " + e.what());
  }
}

AllocationStructure build_structure(const ParallelPolicy& policy, const Profile& R, std::uint64_t max_expansions) {
  check_embedded_sequence(policy, R.objects(), R.agents());
  AllocationStructure s;
  s.m_ = R.objects();
  s.n_ = R.agents();
  const int n = s.n_;
  std::unordered_map<std::uint64_t, std::size_t> index;

  auto intern = [&](ObjectSet remaining, AgentSet reporters) -> std::size_t {
    auto [it, inserted] = index.try_emplace(node_key(remaining, reporters), s.nodes_.size());
    if (inserted) {
      DemandSituation node;
      node.remaining = remaining;
      node.reporters = reporters;
      for (AgentId i : reporters.members()) {
        node.demand[static_cast<std::size_t>(i.index - 1)] =
            static_cast<std::int8_t>(R.ranking(i).best_in(remaining).index);
      }
      s.nodes_.push_back(node);
      s.out_.emplace_back();
    }
    return it->second;
  };

  struct Work {
    std::size_t node;
    std::vector<StagePair> prefix;
  };
  const bool memoize = policy.history_independent();
  std::vector<char> expanded;
  std::vector<Work> stack;
  stack.push_back(Work{intern(ObjectSet::first(s.m_), next_reporters(policy, {}, n)), {}});
  std::uint64_t expansions = 0;

  while (!stack.empty()) {
    Work work = std::move(stack.back());
    stack.pop_back();
    expanded.resize(s.nodes_.size(), 0);
    if (memoize && expanded[work.node]) continue;
    expanded[work.node] = 1;
    if (++expansions > max_expansions) {
      throw ResourceError("allocation structure exceeded " + std::to_string(max_expansions) + " expansions");
    }

    const DemandSituation node = s.nodes_[work.node];
    const auto contests = contests_of(node);
    const ObjectSet next_remaining = node.remaining - node.reported();

    for_each_winner_set(contests, [&](AgentSet winners) {
      AgentSet losers = node.reporters - winners;
      std::size_t target = AllocationStructure::kStop;
      std::vector<StagePair> prefix;
      if (!next_remaining.empty()) {
        prefix = work.prefix;
        prefix.push_back(StagePair{node.reporters, losers});
        target = intern(next_remaining, next_reporters(policy, prefix, n));
      }
      auto& groups = s.out_[work.node];
      auto it = std::find_if(groups.begin(), groups.end(), [&](const EdgeGroup& g) { return g.target == target; });
      if (it == groups.end()) {
        groups.push_back(EdgeGroup{target, {losers}, losers});
      } else if (std::find(it->labels.begin(), it->labels.end(), losers) == it->labels.end()) {
        it->labels.push_back(losers);
        it->loser_union |= losers;
      }
      if (target != AllocationStructure::kStop &&
          (!memoize || target >= expanded.size() || !expanded[target])) {
        stack.push_back(Work{target, std::move(prefix)});
      }
    });
  }

  s.bottom_up_.resize(s.nodes_.size());
  for (std::size_t v = 0; v < s.nodes_.size(); ++v) s.bottom_up_[v] = v;
  std::stable_sort(s.bottom_up_.begin(), s.bottom_up_.end(), [&](std::size_t a, std::size_t b) {
    return s.nodes_[a].remaining.size() < s.nodes_[b].remaining.size();
  });
  return s;
}

// ---------------------------------------------------------------- recursions

namespace {

template <typename Scalar>
struct RootValuesOf {
  std::vector<Scalar> expected;
  std::vector<Scalar> minimum;
};

template <typename Scalar>
RootValuesOf<Scalar> evaluate(const AllocationStructure& s, const Profile& R, const std::vector<Scalar>& scores) {
  const std::size_t n = static_cast<std::size_t>(s.agents());
  std::vector<Scalar> hat(s.size() * n);
  std::vector<Scalar> under(s.size() * n);
  const Scalar zero(0);

  for (std::size_t v : s.bottom_up()) {
    const DemandSituation& node = s.node(v);
    const auto& groups = s.out(v);
    const Scalar out_count(s.out_count(v));
    for (std::size_t i = 0; i < n; ++i) {
      AgentId agent{static_cast<int>(i) + 1};
      const bool reporting = node.reporters.contains(agent);
      Scalar gain = zero;
      Scalar immediate = zero;
      if (reporting) {
        ObjectId o = node.demand_of(agent);
        gain = scores[static_cast<std::size_t>(R.ranking(agent).rank_of(o) - 1)];
        immediate = gain / Scalar(node.contenders(o));
      }
      Scalar future = zero;
      bool have_min = false;
      Scalar least = zero;
      for (const auto& group : groups) {
        const bool stop = group.target == AllocationStructure::kStop;
        const Scalar& next_hat = stop ? zero : hat[group.target * n + i];
        const Scalar& next_under = stop ? zero : under[group.target * n + i];
        future += Scalar(group.multiplicity()) * next_hat;
        Scalar candidate = next_under;
        if (reporting && !group.loser_union.contains(agent)) candidate += gain;
        if (!have_min || candidate < least) {
          least = candidate;
          have_min = true;
        }
      }
      hat[v * n + i] = immediate + future / out_count;
      under[v * n + i] = least;
    }
  }
  RootValuesOf<Scalar> out;
  const std::size_t root = s.root() * n;
  out.expected.assign(hat.begin() + static_cast<std::ptrdiff_t>(root), hat.begin() + static_cast<std::ptrdiff_t>(root + n));
  out.minimum.assign(under.begin() + static_cast<std::ptrdiff_t>(root), under.begin() + static_cast<std::ptrdiff_t>(root + n));
  return out;
}

}  // namespace

RootValues root_values(const AllocationStructure& s, const Profile& R, const ScoringSpec& g) {
  if (R.objects() != s.objects() || R.agents() != s.agents()) {
    throw DomainError("profile does not match the allocation structure");
  }
  auto scores = score_table(g, s.objects());
  try {
    std::vector<SmallRational> small;
    small.reserve(scores.size());
    for (const auto& v : scores) small.push_back(to_small(v));
    auto fast = evaluate(s, R, small);
    RootValues out;
    for (const auto& v : fast.expected) out.expected.push_back(from_small(v));
    for (const auto& v : fast.minimum) out.minimum.push_back(from_small(v));
    return out;
  } catch (const std::system_error&) {
  } catch (const std::overflow_error&) {
  }
  auto exact = evaluate(s, R, scores);
  return RootValues{std::move(exact.expected), std::move(exact.minimum)};
}

Rational hat_u(const AllocationStructure& s, const Profile& R, const ScoringSpec& g, AgentId i) {
  if (i.index < 1 || i.index > s.agents()) throw DomainError("agent out of range");
  return root_values(s, R, g).expected[static_cast<std::size_t>(i.index - 1)];
}

Rational underline_u(const AllocationStructure& s, const Profile& R, const ScoringSpec& g, AgentId i) {
  if (i.index < 1 || i.index > s.agents()) throw DomainError("agent out of range");
  return root_values(s, R, g).minimum[static_cast<std::size_t>(i.index - 1)];
}

// ---------------------------------------------------------------- outcomes

namespace {

void collect_outcomes(const AllocationStructure& s, std::size_t v, Outcome& current, std::vector<Outcome>& out,
                      std::uint64_t max_outcomes) {
  const DemandSituation& node = s.node(v);
  const Rational share = Rational(1, s.out_count(v));
  for (const auto& group : s.out(v)) {
    for (AgentSet losers : group.labels) {
      Outcome next = current;
      next.probability *= share;
      for (AgentId w : (node.reporters - losers).members()) {
        ObjectId o = node.demand_of(w);
        next.bundles[static_cast<std::size_t>(w.index - 1)].insert(o);
        if (node.contenders(o) > 1) next.lottery_winners.insert(w);
      }
      if (group.target == AllocationStructure::kStop) {
        if (out.size() >= max_outcomes) {
          throw ResourceError("outcome enumeration exceeded " + std::to_string(max_outcomes) + " histories");
        }
        out.push_back(std::move(next));
      } else {
        collect_outcomes(s, group.target, next, out, max_outcomes);
      }
    }
  }
}

}  // namespace

std::vector<Outcome> enumerate_outcomes(const AllocationStructure& s, std::uint64_t max_outcomes) {
  std::vector<Outcome> out;
  Outcome start{std::vector<ObjectSet>(static_cast<std::size_t>(s.agents())), Rational(1), AgentSet{}};
  collect_outcomes(s, s.root(), start, out, max_outcomes);
  return out;
}

std::vector<SampledStage> sample_history(const AllocationStructure& s, std::mt19937_64& rng) {
  std::vector<SampledStage> stages;
  std::size_t v = s.root();
  while (v != AllocationStructure::kStop) {
    std::uniform_int_distribution<int> pick(0, s.out_count(v) - 1);
    int k = pick(rng);
    for (const auto& group : s.out(v)) {
      if (k < group.multiplicity()) {
        stages.push_back(SampledStage{v, group.labels[static_cast<std::size_t>(k)]});
        v = group.target;
        break;
      }
      k -= group.multiplicity();
    }
  }
  return stages;
}

}  // namespace lotalloc
