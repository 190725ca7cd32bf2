#include "lotalloc/welfare.hpp"

#include <algorithm>
#include <exception>
#include <optional>
#include <thread>

namespace lotalloc {

char axis_letter(Axis a) { return a == Axis::U ? 'u' : 'e'; }

std::string WelfareCriterion::literal() const {
  if (mode == Mode::ExpectedMin) return std::string("em-") + axis_letter(z);
  return {axis_letter(x), axis_letter(y), axis_letter(z)};
}

// ---------------------------------------------------------------- summary

Rational PolicySummary::agent_value(AgentId i, Axis y, Axis z) const {
  if (i.index < 1 || i.index > n) throw DomainError("agent out of range");
  auto k = static_cast<std::size_t>(i.index - 1);
  if (y == Axis::U) return z == Axis::U ? mean_expected[k] : mean_minimum[k];
  return z == Axis::U ? min_expected[k] : min_minimum[k];
}

Rational PolicySummary::social_welfare(Axis x, Axis y, Axis z) const {
  std::vector<Rational> values;
  for (int i = 1; i <= n; ++i) values.push_back(agent_value(AgentId{i}, y, z));
  return aggregate(x == Axis::U ? Aggregator::Utilitarian : Aggregator::Egalitarian, values);
}

Rational PolicySummary::expected_min(Axis z) const {
  return z == Axis::U ? mean_of_min_expected : mean_of_min_minimum;
}

Rational PolicySummary::value(const WelfareCriterion& c) const {
  if (c.mode == WelfareCriterion::Mode::ExpectedMin) return expected_min(c.z);
  return social_welfare(c.x, c.y, c.z);
}

namespace {

struct Partial {
  std::vector<Rational> sum_expected;
  std::vector<Rational> sum_minimum;
  std::vector<std::optional<Rational>> min_expected;
  std::vector<std::optional<Rational>> min_minimum;
  Rational sum_min_expected;
  Rational sum_min_minimum;
  std::uint64_t profiles = 0;
  std::uint64_t nodes = 0;

  explicit Partial(int n)
      : sum_expected(static_cast<std::size_t>(n)), sum_minimum(static_cast<std::size_t>(n)),
        min_expected(static_cast<std::size_t>(n)), min_minimum(static_cast<std::size_t>(n)) {}

  static void keep_min(std::optional<Rational>& slot, const Rational& v) {
    if (!slot || v < *slot) slot = v;
  }

  void add(const RootValues& values) {
    for (std::size_t i = 0; i < sum_expected.size(); ++i) {
      sum_expected[i] += values.expected[i];
      sum_minimum[i] += values.minimum[i];
      keep_min(min_expected[i], values.expected[i]);
      keep_min(min_minimum[i], values.minimum[i]);
    }
    sum_min_expected += *std::min_element(values.expected.begin(), values.expected.end());
    sum_min_minimum += *std::min_element(values.minimum.begin(), values.minimum.end());
    ++profiles;
  }

  void merge(const Partial& other) {
    for (std::size_t i = 0; i < sum_expected.size(); ++i) {
      sum_expected[i] += other.sum_expected[i];
      sum_minimum[i] += other.sum_minimum[i];
      if (other.min_expected[i]) keep_min(min_expected[i], *other.min_expected[i]);
      if (other.min_minimum[i]) keep_min(min_minimum[i], *other.min_minimum[i]);
    }
    sum_min_expected += other.sum_min_expected;
    sum_min_minimum += other.sum_min_minimum;
    profiles += other.profiles;
    nodes += other.nodes;
  }
};

void evaluate_range(const ParallelPolicy& policy, const ScoringSpec& g, const ProfileStream& stream,
                    std::uint64_t begin, std::uint64_t end, BudgetTracker& tracker, Partial& out) {
  for (auto cur = stream.cursor(begin, end); !cur.done(); cur.next()) {
    AllocationStructure s = build_structure(policy, cur.profile());
    out.nodes += s.size();
    tracker.charge(s.size(), "policy evaluation");
    out.add(root_values(s, cur.profile(), g));
  }
}

}  // namespace

PolicySummary summarize_policy(const ParallelPolicy& policy, const ScoringSpec& g, int m, int n,
                               const EvaluationOptions& options) {
  ProfileStream stream(m, n, options.reduce_symmetry);
  check_embedded_sequence(policy, m, n);
  BudgetTracker tracker(options.budget);

  const unsigned jobs = std::max(1u, std::min<unsigned>(options.jobs, static_cast<unsigned>(std::min<std::uint64_t>(stream.size(), 256))));
  std::vector<Partial> partials(jobs, Partial(n));
  std::vector<std::exception_ptr> errors(jobs);
  auto bounds = [&](unsigned j) { return stream.size() / jobs * j + std::min<std::uint64_t>(j, stream.size() % jobs); };
  auto run = [&](unsigned j) {
    try {
      evaluate_range(policy, g, stream, bounds(j), bounds(j + 1), tracker, partials[j]);
    } catch (...) {
      errors[j] = std::current_exception();
    }
  };
  if (jobs == 1) {
    run(0);
  } else {
    std::vector<std::thread> workers;
    for (unsigned j = 0; j < jobs; ++j) workers.emplace_back(run, j);
    for (auto& w : workers) w.join();
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  Partial total(n);
  for (const auto& p : partials) total.merge(p);

  PolicySummary summary;
  summary.m = m;
  summary.n = n;
  summary.profiles = total.profiles;
  summary.nodes = total.nodes;
  const Integer count(stream.size());
  for (int i = 0; i < n; ++i) {
    auto k = static_cast<std::size_t>(i);
    summary.mean_expected.push_back(total.sum_expected[k] / count);
    summary.mean_minimum.push_back(total.sum_minimum[k] / count);
    summary.min_expected.push_back(*total.min_expected[k]);
    summary.min_minimum.push_back(*total.min_minimum[k]);
  }
  summary.mean_of_min_expected = total.sum_min_expected / count;
  summary.mean_of_min_minimum = total.sum_min_minimum / count;
  return summary;
}

Rational agent_value(AgentId i, Axis y, Axis z, const ParallelPolicy& policy, const ScoringSpec& g, int m, int n,
                     const EvaluationOptions& options) {
  if (i.index < 1 || i.index > n) throw DomainError("agent out of range");
  return summarize_policy(policy, g, m, n, options).agent_value(i, y, z);
}

Rational social_welfare(Axis x, Axis y, Axis z, const ParallelPolicy& policy, const ScoringSpec& g, int m, int n,
                        const EvaluationOptions& options) {
  return summarize_policy(policy, g, m, n, options).social_welfare(x, y, z);
}

Rational expected_min_welfare(Axis z, const ParallelPolicy& policy, const ScoringSpec& g, int m, int n,
                              const EvaluationOptions& options) {
  return summarize_policy(policy, g, m, n, options).expected_min(z);
}

Rational evaluate_criterion(const WelfareCriterion& c, const ParallelPolicy& policy, const ScoringSpec& g, int m,
                            int n, const EvaluationOptions& options) {
  return summarize_policy(policy, g, m, n, options).value(c);
}

Rational profile_welfare(Axis x, Axis z, const ParallelPolicy& policy, const Profile& R, const ScoringSpec& g) {
  auto values = root_values(build_structure(policy, R), R, g);
  return aggregate(x == Axis::U ? Aggregator::Utilitarian : Aggregator::Egalitarian,
                   z == Axis::U ? values.expected : values.minimum);
}

// ---------------------------------------------------------------- tables

TableSpec table_spec(int table_id) {
  using C = WelfareCriterion;
  switch (table_id) {
    case 1: return {1, ScoringSpec::borda(), C::compositional(Axis::U, Axis::U, Axis::U), 4, 2, 0};
    case 2: return {2, ScoringSpec::lexicographic(), C::compositional(Axis::U, Axis::U, Axis::U), 4, 2, 0};
    case 3: return {3, ScoringSpec::borda(), C::compositional(Axis::E, Axis::U, Axis::U), 4, 2, 0};
    case 4: return {4, ScoringSpec::lexicographic(), C::compositional(Axis::E, Axis::U, Axis::U), 4, 2, 0};
    case 5: return {5, ScoringSpec::borda(), C::expected_min(Axis::U), 2, 2, 2};
    default: throw DomainError("table id must be in 1..5, got " + std::to_string(table_id));
  }
}

TableRow reproduce_cell(int table_id, int m, int n, const TableOptions& options) {
  const TableSpec spec = table_spec(table_id);
  TableRow row;
  row.table_id = table_id;
  row.m = m;
  row.n = n;
  try {
    EvaluationOptions evaluation = options.evaluation;
    evaluation.budget = Budget{options.cell_seconds, options.cell_nodes};
    SearchOptions search = options.search;
    search.seconds = options.cell_seconds;

    OptimalSequence best;
    if (spec.criterion.mode == WelfareCriterion::Mode::ExpectedMin) {
      best = optimal_sequence_search(
          m, n,
          [&](const SequentialPolicy& pi) {
            return expected_min_welfare(spec.criterion.z, ParallelPolicy::from_sequential(pi), spec.scoring, m, n,
                                        evaluation);
          },
          search);
    } else {
      auto F = spec.criterion.x == Axis::U ? Aggregator::Utilitarian : Aggregator::Egalitarian;
      best = optimal_sequential(m, n, spec.scoring, F, search);
    }
    row.policy_star = best.policy;
    row.value_star = best.value;
    row.value_A = evaluate_criterion(spec.criterion, ParallelPolicy::all_reporting(), spec.scoring, m, n, evaluation);
  } catch (const ResourceError& e) {
    row.status = TableRow::Status::Timeout;
    row.message = e.what();
  } catch (const std::exception& e) {
    row.status = TableRow::Status::Failed;
    row.message = e.what();
  }
  return row;
}

std::vector<TableRow> reproduce_table(int table_id, int max_m, int max_n, const TableOptions& options) {
  const TableSpec spec = table_spec(table_id);
  int top_n = spec.max_n > 0 ? std::min(spec.max_n, max_n) : max_n;
  std::vector<TableRow> rows;
  for (int n = spec.min_n; n <= top_n; ++n) {
    for (int m = std::max(spec.min_m, n); m <= max_m; ++m) rows.push_back(reproduce_cell(table_id, m, n, options));
  }
  return rows;
}

}  // namespace lotalloc
