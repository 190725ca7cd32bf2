#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "lotalloc/budget.hpp"
#include "lotalloc/parallel.hpp"
#include "lotalloc/sequential.hpp"

namespace lotalloc {

/// u: utilitarian (sum or expectation); e: egalitarian (minimum).
enum class Axis { U, E };

char axis_letter(Axis a);

/// sw(x,y,z): x aggregates agents, y profiles, z lottery outcomes.
/// ExpectedMin is E_R[min_i u_i(z, policy, R)], the quantity tabulated for
/// the two-agent egalitarian comparison; it is not one of the eight
/// compositional criteria.
struct WelfareCriterion {
  enum class Mode { Compositional, ExpectedMin };

  Mode mode = Mode::Compositional;
  Axis x = Axis::U;
  Axis y = Axis::U;
  Axis z = Axis::U;

  static WelfareCriterion compositional(Axis x, Axis y, Axis z) { return {Mode::Compositional, x, y, z}; }
  static WelfareCriterion expected_min(Axis z) { return {Mode::ExpectedMin, Axis::U, Axis::U, z}; }
  /// "uuu", "eeu", ... or "em-u" / "em-e".
  std::string literal() const;
};

struct EvaluationOptions {
  bool reduce_symmetry = true;
  unsigned jobs = 1;
  /// max_steps counts allocation-structure nodes built.
  Budget budget;
};

/// Aggregates of u_i(u, policy, R) = hat u and u_i(e, policy, R) = underline u
/// over every profile, for every agent at once.
struct PolicySummary {
  int m = 0;
  int n = 0;
  std::vector<Rational> mean_expected;  // v_i(u,u)
  std::vector<Rational> mean_minimum;   // v_i(u,e)
  std::vector<Rational> min_expected;   // v_i(e,u)
  std::vector<Rational> min_minimum;    // v_i(e,e)
  Rational mean_of_min_expected;        // E_R[min_i hat u_i]
  Rational mean_of_min_minimum;         // E_R[min_i underline u_i]
  std::uint64_t profiles = 0;
  std::uint64_t nodes = 0;

  Rational agent_value(AgentId i, Axis y, Axis z) const;
  Rational social_welfare(Axis x, Axis y, Axis z) const;
  Rational expected_min(Axis z) const;
  Rational value(const WelfareCriterion& c) const;
};

/// One pass over the profile stream. Partitions are evaluated on `jobs`
/// threads and merged exactly, so the result does not depend on `jobs`.
PolicySummary summarize_policy(const ParallelPolicy& policy, const ScoringSpec& g, int m, int n,
                               const EvaluationOptions& options = {});

Rational agent_value(AgentId i, Axis y, Axis z, const ParallelPolicy& policy, const ScoringSpec& g, int m, int n,
                     const EvaluationOptions& options = {});
Rational social_welfare(Axis x, Axis y, Axis z, const ParallelPolicy& policy, const ScoringSpec& g, int m, int n,
                        const EvaluationOptions& options = {});
Rational expected_min_welfare(Axis z, const ParallelPolicy& policy, const ScoringSpec& g, int m, int n,
                              const EvaluationOptions& options = {});
Rational evaluate_criterion(const WelfareCriterion& c, const ParallelPolicy& policy, const ScoringSpec& g, int m,
                            int n, const EvaluationOptions& options = {});

/// Welfare at one fixed profile: x over agents, z over lottery outcomes.
Rational profile_welfare(Axis x, Axis z, const ParallelPolicy& policy, const Profile& R, const ScoringSpec& g);

// ---------------------------------------------------------------- tables

struct TableSpec {
  int id = 0;
  ScoringSpec scoring = ScoringSpec::borda();
  WelfareCriterion criterion;
  int min_m = 4;
  int min_n = 2;
  int max_n = 0;  // 0: no fixed upper bound
};

/// Tables 1-2: sw(u,u,u) under Borda / lexicographic; 3-4: sw(e,u,u);
/// 5: expected minimum under Borda with two agents.
TableSpec table_spec(int table_id);

struct TableRow {
  enum class Status { Ok, Timeout, Failed };

  int table_id = 0;
  int m = 0;
  int n = 0;
  Status status = Status::Ok;
  std::string message;
  SequentialPolicy policy_star;
  Rational value_star;
  Rational value_A;
};

struct TableOptions {
  EvaluationOptions evaluation;
  SearchOptions search;
  /// Per-cell limits; applied to both the sequence search and the
  /// all-reporting evaluation.
  double cell_seconds = 60;
  std::uint64_t cell_nodes = 100'000'000;
};

/// Optimal sequence and all-reporting value for one (m, n) cell. Resource
/// exhaustion is reported in the row, never thrown.
TableRow reproduce_cell(int table_id, int m, int n, const TableOptions& options = {});
/// Every cell with m >= n inside the table's range and the given limits,
/// ordered by n then m.
std::vector<TableRow> reproduce_table(int table_id, int max_m, int max_n, const TableOptions& options = {});

}  // namespace lotalloc
