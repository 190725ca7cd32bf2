#include "commands.hpp"

#include <cctype>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "lotalloc/manipulation.hpp"

namespace lotalloc::cli {

using nlohmann::json;

// ---------------------------------------------------------------- literals

ScoringSpec parse_scoring_literal(const std::string& text) {
  if (text == "borda") return ScoringSpec::borda();
  if (text == "lex" || text == "lexicographic") return ScoringSpec::lexicographic();
  if (text.rfind("custom:", 0) == 0) {
    const std::string path = text.substr(7);
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open scoring file '" + path + "'");
    return parse_scoring_table(in);
  }
  throw UsageError("unknown scoring '" + text + "' (expected borda, lex or custom:<file>)");
}

SequentialPolicy parse_turns(const std::string& text) {
  std::vector<AgentId> turns;
  if (text.find(',') != std::string::npos) {
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
      if (item.empty() || item.find_first_not_of("0123456789") != std::string::npos) {
        throw UsageError("bad turn '" + item + "' in '" + text + "'");
      }
      turns.push_back(AgentId{std::stoi(item)});
    }
  } else {
    for (std::size_t i = 0; i < text.size(); ++i) {
      const char c = text[i];
      if (c == '[') {
        const auto close = text.find(']', i);
        const std::string inner = close == std::string::npos ? "" : text.substr(i + 1, close - i - 1);
        if (inner.empty() || inner.find_first_not_of("0123456789") != std::string::npos) {
          throw UsageError("bad bracket group in '" + text + "'");
        }
        const int k = std::stoi(inner);
        if (k < 1) throw UsageError("bracket group must be at least [1] in '" + text + "'");
        for (int a = 1; a <= k; ++a) turns.push_back(AgentId{a});
        i = close;
      } else if (std::isdigit(static_cast<unsigned char>(c))) {
        turns.push_back(AgentId{c - '0'});
      } else {
        throw UsageError("bad character '" + std::string(1, c) + "' in turns '" + text + "'");
      }
    }
  }
  if (turns.empty()) throw UsageError("empty turn sequence");
  for (AgentId a : turns) {
    if (a.index < 1) throw UsageError("agent indices start at 1 in '" + text + "'");
  }
  return SequentialPolicy(std::move(turns));
}

ParallelPolicy parse_policy_literal(const std::string& text) {
  if (text == "all") return ParallelPolicy::all_reporting();
  if (text == "loser") return ParallelPolicy::loser_reporting();
  if (text.rfind("seq:", 0) == 0) return ParallelPolicy::from_sequential(parse_turns(text.substr(4)));
  throw UsageError("unknown policy '" + text + "' (expected all, loser or seq:<turns>)");
}

namespace {

Axis parse_axis(char c, const std::string& text) {
  if (c == 'u') return Axis::U;
  if (c == 'e') return Axis::E;
  throw UsageError("bad criterion '" + text + "'");
}

}  // namespace

WelfareCriterion parse_criterion_literal(const std::string& text) {
  if (text == "em-u") return WelfareCriterion::expected_min(Axis::U);
  if (text == "em-e") return WelfareCriterion::expected_min(Axis::E);
  if (text.size() != 3) throw UsageError("bad criterion '" + text + "' (expected xyz over {u,e}, em-u or em-e)");
  return WelfareCriterion::compositional(parse_axis(text[0], text), parse_axis(text[1], text),
                                         parse_axis(text[2], text));
}

double cell_budget_seconds(double fallback) {
  const char* env = std::getenv("ALLOC_BUDGET_SECS");
  if (env == nullptr || *env == '\0') return fallback;
  try {
    std::size_t used = 0;
    double secs = std::stod(env, &used);
    if (used != std::string(env).size() || secs < 0) throw std::invalid_argument("negative");
    return secs;
  } catch (const std::exception&) {
    throw UsageError(std::string("ALLOC_BUDGET_SECS must be a non-negative number, got '") + env + "'");
  }
}

// ---------------------------------------------------------------- helpers

namespace {

struct Common {
  std::string scoring = "borda";
  std::string format = "text";
  int precision = 4;
  unsigned jobs = 1;
  std::optional<std::uint64_t> seed;
};

void add_common(CLI::App* cmd, Common& c, const std::string& default_format) {
  c.format = default_format;
  cmd->add_option("--scoring", c.scoring, "borda, lex or custom:<file>")->capture_default_str();
  cmd->add_option("--format", c.format, "Output format")
      ->check(CLI::IsMember({"text", "csv", "json"}))
      ->capture_default_str();
  cmd->add_option("--precision", c.precision, "Decimal places for printed values")
      ->check(CLI::Range(0, 30))
      ->capture_default_str();
  cmd->add_option("--jobs", c.jobs, "Worker threads")->check(CLI::Range(1u, 256u))->capture_default_str();
  cmd->add_option("--seed", c.seed, "Seed for sampled histories and random filler picks");
}

std::string fixed(const Rational& v, int precision) { return to_decimal(v, precision); }

json number(const Rational& v, int precision) { return std::stod(to_decimal(v, precision)); }

json numbers(const std::vector<Rational>& values, int precision) {
  json arr = json::array();
  for (const auto& v : values) arr.push_back(number(v, precision));
  return arr;
}

std::string join(const std::vector<Rational>& values, int precision, const char* sep = " ") {
  std::string s;
  for (std::size_t i = 0; i < values.size(); ++i) s += (i ? sep : "") + fixed(values[i], precision);
  return s;
}

std::string object_name(ObjectId o) { return "o" + std::to_string(o.index); }

json objects_json(const std::vector<ObjectId>& objects) {
  json arr = json::array();
  for (ObjectId o : objects) arr.push_back(o.index);
  return arr;
}

std::string agent_set_string(AgentSet s) {
  std::string out = "{";
  bool first = true;
  for (AgentId a : s.members()) {
    out += (first ? "" : ",") + std::to_string(a.index);
    first = false;
  }
  return out + "}";
}


void warn_if_fewer_objects(int m, int n, std::ostream& err) {
  if (m < n) err << "warning: m = " << m << " < n = " << n << "; guarantees assuming m >= n do not apply\n";
}

std::vector<Ranking> read_rankings_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  return parse_rankings(in);
}

ObjectSet parse_object_list(const std::string& text, int m) {
  ObjectSet set;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty() && (item[0] == 'o' || item[0] == 'O')) item.erase(0, 1);
    if (item.empty() || item.find_first_not_of("0123456789") != std::string::npos) {
      throw UsageError("bad object '" + item + "' in target list '" + text + "'");
    }
    const int index = std::stoi(item);
    if (index < 1 || index > m) {
      throw UsageError("target object " + std::to_string(index) + " outside 1.." + std::to_string(m));
    }
    set.insert(ObjectId{index});
  }
  return set;
}

// ---------------------------------------------------------------- simulate

struct SimulateArgs {
  Common common;
  std::string policy;
  std::string profile;
};

void run_simulate(const SimulateArgs& a, std::ostream& out, std::ostream& err) {
  const Profile R = parse_profile_file(a.profile);
  const ScoringSpec g = parse_scoring_literal(a.common.scoring);
  const ParallelPolicy policy = parse_policy_literal(a.policy);
  const int m = R.objects();
  const int n = R.agents();
  const int p = a.common.precision;
  warn_if_fewer_objects(m, n, err);

  if (policy.kind() == ParallelPolicy::Kind::FromSequential) {
    const SequentialPolicy& pi = policy.sequence();
    check_embedded_sequence(policy, m, n);
    const auto history = simulate_sequential(pi, R);
    const auto utilities = utilities_sequential(pi, R, g);
    if (a.common.format == "json") {
      json picks = json::array();
      for (const auto& pick : history) picks.push_back({{"agent", pick.agent.index}, {"object", pick.object.index}});
      out << json{{"policy", policy.literal()}, {"scoring", g.name()}, {"m", m}, {"n", n}, {"history", picks},
                  {"utilities", numbers(utilities, p)}}
                 .dump(2)
          << "\n";
      return;
    }
    out << "policy " << policy.literal() << "  scoring " << g.name() << "  m=" << m << " n=" << n << "\n";
    for (std::size_t k = 0; k < history.size(); ++k) {
      out << "step " << k + 1 << ": agent " << history[k].agent.index << " picks " << object_name(history[k].object)
          << "\n";
    }
    out << "utilities: " << join(utilities, p) << "\n";
    return;
  }

  const AllocationStructure s = build_structure(policy, R);
  const RootValues values = root_values(s, R, g);

  std::optional<std::vector<SampledStage>> sample;
  if (a.common.seed) {
    std::mt19937_64 rng(*a.common.seed);
    sample = sample_history(s, rng);
  }

  auto contested_of = [&](const DemandSituation& node) {
    std::vector<std::pair<ObjectId, int>> contested;
    for (ObjectId o : node.reported().members()) {
      if (node.contenders(o) > 1) contested.emplace_back(o, node.contenders(o));
    }
    return contested;
  };

  if (a.common.format == "json") {
    json nodes = json::array();
    for (std::size_t v = 0; v < s.size(); ++v) {
      const auto& node = s.node(v);
      json demands = json::object();
      for (AgentId i : node.reporters.members()) demands[std::to_string(i.index)] = node.demand_of(i).index;
      json contested = json::array();
      for (auto [o, c] : contested_of(node)) contested.push_back({{"object", o.index}, {"contenders", c}});
      nodes.push_back({{"node", v},
                       {"remaining", objects_json(node.remaining.members())},
                       {"demands", demands},
                       {"contested", contested},
                       {"successors", s.out_count(v)}});
    }
    json doc{{"policy", policy.literal()}, {"scoring", g.name()},  {"m", m},
             {"n", n},                     {"nodes", nodes},       {"hat_u", numbers(values.expected, p)},
             {"underline_u", numbers(values.minimum, p)}};
    if (sample) {
      json stages = json::array();
      for (const auto& st : *sample) stages.push_back({{"node", st.node}, {"losers", agent_set_string(st.losers)}});
      doc["sample"] = stages;
    }
    out << doc.dump(2) << "\n";
    return;
  }

  out << "policy " << policy.literal() << "  scoring " << g.name() << "  m=" << m << " n=" << n << "\n";
  for (std::size_t v = 0; v < s.size(); ++v) {
    const auto& node = s.node(v);
    out << "node " << v << ": remaining " << format_set(node.remaining) << "  demands";
    for (AgentId i : node.reporters.members()) out << " " << i.index << ":" << object_name(node.demand_of(i));
    const auto contested = contested_of(node);
    out << "  contested";
    if (contested.empty()) out << " none";
    for (auto [o, c] : contested) out << " " << object_name(o) << "x" << c;
    out << "  successors " << s.out_count(v) << "\n";
  }
  out << "hat_u: " << join(values.expected, p) << "\n";
  out << "underline_u: " << join(values.minimum, p) << "\n";
  if (sample) {
    out << "sampled history (seed " << *a.common.seed << "):\n";
    for (std::size_t k = 0; k < sample->size(); ++k) {
      const auto& st = (*sample)[k];
      const auto& node = s.node(st.node);
      out << "stage " << k + 1 << ": remaining " << format_set(node.remaining) << "  receives";
      for (AgentId i : (node.reporters - st.losers).members()) {
        out << " " << i.index << ":" << object_name(node.demand_of(i));
      }
      out << "  losers " << agent_set_string(st.losers) << "\n";
    }
  }
}

// ---------------------------------------------------------------- eval

struct EvalArgs {
  Common common;
  std::string policy;
  std::string criterion;
  std::string profile;
  int m = 0;
  int n = 0;
};

void run_eval(const EvalArgs& a, std::ostream& out, std::ostream& err) {
  const ScoringSpec g = parse_scoring_literal(a.common.scoring);
  const ParallelPolicy policy = parse_policy_literal(a.policy);
  const int p = a.common.precision;
  Rational value;
  int m = a.m;
  int n = a.n;
  if (!a.profile.empty()) {
    const Profile R = parse_profile_file(a.profile);
    m = R.objects();
    n = R.agents();
    if (a.criterion.size() != 2) {
      throw UsageError("with --profile the criterion is two letters xz over {u,e}, got '" + a.criterion + "'");
    }
    warn_if_fewer_objects(m, n, err);
    check_embedded_sequence(policy, m, n);
    value = profile_welfare(parse_axis(a.criterion[0], a.criterion), parse_axis(a.criterion[1], a.criterion), policy,
                            R, g);
  } else {
    if (m < 1 || n < 1) throw UsageError("-m and -n are required without --profile");
    warn_if_fewer_objects(m, n, err);
    check_embedded_sequence(policy, m, n);
    EvaluationOptions options;
    options.jobs = a.common.jobs;
    options.budget.seconds = cell_budget_seconds(0);
    value = evaluate_criterion(parse_criterion_literal(a.criterion), policy, g, m, n, options);
  }

  if (a.common.format == "json") {
    out << json{{"policy", policy.literal()}, {"criterion", a.criterion}, {"scoring", g.name()}, {"m", m},
                {"n", n}, {"value", number(value, p)}}
               .dump(2)
        << "\n";
  } else if (a.common.format == "csv") {
    out << "policy,criterion,scoring,m,n,value\n"
        << policy.literal() << "," << a.criterion << "," << g.name() << "," << m << "," << n << ","
        << fixed(value, p) << "\n";
  } else {
    out << fixed(value, p) << "\n";
  }
}

// ---------------------------------------------------------------- optimal-seq

struct OptimalArgs {
  Common common;
  std::string criterion = "uuu";
  int m = 0;
  int n = 0;
  bool all_sequences = false;
  std::uint64_t max_sequences = 10'000'000;
};

void run_optimal(const OptimalArgs& a, std::ostream& out, std::ostream& err) {
  const ScoringSpec g = parse_scoring_literal(a.common.scoring);
  const WelfareCriterion c = parse_criterion_literal(a.criterion);
  const int p = a.common.precision;
  warn_if_fewer_objects(a.m, a.n, err);
  SearchOptions search;
  search.canonicalize = !a.all_sequences;
  search.max_sequences = a.max_sequences;
  search.seconds = cell_budget_seconds(0);

  OptimalSequence best;
  if (c.mode == WelfareCriterion::Mode::ExpectedMin) {
    EvaluationOptions evaluation;
    evaluation.jobs = a.common.jobs;
    best = optimal_sequence_search(
        a.m, a.n,
        [&](const SequentialPolicy& pi) {
          return expected_min_welfare(c.z, ParallelPolicy::from_sequential(pi), g, a.m, a.n, evaluation);
        },
        search);
  } else {
    if (c.y != Axis::U) throw UsageError("sequence search supports criteria with y = u (xuu, xue) or em-*");
    best = optimal_sequential(a.m, a.n, g, c.x == Axis::U ? Aggregator::Utilitarian : Aggregator::Egalitarian,
                              search);
  }

  if (a.common.format == "json") {
    out << json{{"m", a.m},
                {"n", a.n},
                {"scoring", g.name()},
                {"criterion", c.literal()},
                {"pi_star", best.policy.to_string()},
                {"value", number(best.value, p)},
                {"evaluated", best.evaluated}}
               .dump(2)
        << "\n";
  } else if (a.common.format == "csv") {
    out << "m,n,scoring,criterion,pi_star,value,evaluated\n"
        << a.m << "," << a.n << "," << g.name() << "," << c.literal() << "," << best.policy.to_string() << ","
        << fixed(best.value, p) << "," << best.evaluated << "\n";
  } else {
    out << best.policy.to_string() << " " << fixed(best.value, p) << "\n";
  }
}

// ---------------------------------------------------------------- tables

struct TablesArgs {
  Common common;
  int id = 1;
  int max_m = 6;
  int max_n = 3;
  double budget_secs = 60;
};

std::string table_value(const Rational& v) { return to_decimal(v, table_decimals(v)); }

void run_tables(const TablesArgs& a, std::ostream& out, std::ostream& err) {
  TableOptions options;
  options.evaluation.jobs = a.common.jobs;
  options.cell_seconds = cell_budget_seconds(a.budget_secs);
  const auto rows = reproduce_table(a.id, a.max_m, a.max_n, options);

  auto status_word = [](const TableRow& r) { return r.status == TableRow::Status::Timeout ? "timeout" : "failed"; };
  for (const auto& r : rows) {
    if (r.status != TableRow::Status::Ok) {
      err << "table " << r.table_id << " m=" << r.m << " n=" << r.n << ": " << status_word(r) << ": " << r.message
          << "\n";
    }
  }

  if (a.common.format == "json") {
    json arr = json::array();
    for (const auto& r : rows) {
      json row{{"table_id", r.table_id}, {"m", r.m}, {"n", r.n}};
      if (r.status == TableRow::Status::Ok) {
        row["pi_star"] = r.policy_star.to_string();
        row["value_star"] = std::stod(table_value(r.value_star));
        row["value_A"] = std::stod(table_value(r.value_A));
      } else {
        row["status"] = status_word(r);
      }
      arr.push_back(row);
    }
    out << arr.dump(2) << "\n";
    return;
  }

  const bool csv = a.common.format == "csv";
  auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (csv) {
        out << (i ? "," : "") << cells[i];
      } else {
        out << (i ? "  " : "") << std::setw(i < 3 ? 3 : 10) << cells[i];
      }
    }
    out << "\n";
  };
  line({"table_id", "m", "n", "pi_star", "value_star", "value_A"});
  for (const auto& r : rows) {
    if (r.status == TableRow::Status::Ok) {
      line({std::to_string(r.table_id), std::to_string(r.m), std::to_string(r.n), r.policy_star.to_string(),
            table_value(r.value_star), table_value(r.value_A)});
    } else {
      line({std::to_string(r.table_id), std::to_string(r.m), std::to_string(r.n), status_word(r), "", ""});
    }
  }
}

// ---------------------------------------------------------------- manipulate

struct ManipulateArgs {
  Common common;
  std::string others;
  std::string target;
  std::string profile;
  bool optimal = false;
  bool oracle = false;
};

void run_manipulate(const ManipulateArgs& a, std::ostream& out) {
  const FillerPick pick = a.common.seed ? seeded_filler(*a.common.seed) : FillerPick(smallest_filler);
  const int p = a.common.precision;
  json doc;

  if (a.optimal) {
    if (a.profile.empty()) throw UsageError("--optimal needs --profile");
    const Profile R = parse_profile_file(a.profile);
    const ScoringSpec g = parse_scoring_literal(a.common.scoring);
    const PessimisticPlan plan = optimal_pessimistic_strategy(R, g, pick);
    doc["feasible"] = true;
    doc["strategy"] = objects_json(plan.strategy.reports);
    doc["achieved"] = objects_json(plan.achieved.members());
    doc["guaranteed_value"] = number(plan.guaranteed_value, p);
    doc["provably_optimal"] = plan.provably_optimal;
    if (a.oracle) {
      ManipulationProblem problem{std::vector<Ranking>(R.rankings().begin() + 1, R.rankings().end()), {}};
      if (problem.others.empty()) {
        doc["oracle_agrees"] = true;
      } else {
        doc["oracle_agrees"] =
            brute_force_manipulation(problem, g, R.ranking(AgentId{1})).best_value == plan.guaranteed_value;
      }
    } else {
      doc["oracle_agrees"] = nullptr;
    }
  } else {
    if (a.others.empty() || a.target.empty()) throw UsageError("manipulate needs --others and --target, or --optimal");
    ManipulationProblem problem{read_rankings_file(a.others), {}};
    if (problem.others.empty()) throw ParseError("no rankings in '" + a.others + "'");
    problem.target = parse_object_list(a.target, problem.objects());
    const auto tau = find_successful_strategy(problem, pick);
    doc["feasible"] = tau.has_value();
    if (tau) {
      doc["strategy"] = objects_json(tau->reports);
      doc["achieved"] = objects_json(secured_objects(*tau, problem.others, problem.objects()).members());
    } else {
      doc["strategy"] = nullptr;
      doc["achieved"] = nullptr;
    }
    doc["guaranteed_value"] = nullptr;
    if (a.oracle) {
      const auto brute = brute_force_manipulation(problem, ScoringSpec::borda(), Ranking::identity(problem.objects()));
      doc["oracle_agrees"] = brute.exists == tau.has_value();
    } else {
      doc["oracle_agrees"] = nullptr;
    }
  }
  out << doc.dump(2) << "\n";
}

}  // namespace

// ---------------------------------------------------------------- entry

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact analysis of picking sequences and lottery-based allocation protocols", "lotalloc"};
  app.require_subcommand(1);

  SimulateArgs sim;
  auto* simulate = app.add_subcommand("simulate", "Trace one policy on one profile");
  add_common(simulate, sim.common, "text");
  simulate->add_option("--policy", sim.policy, "all, loser or seq:<turns>")->required();
  simulate->add_option("--profile", sim.profile, "Profile file")->required();

  EvalArgs ev;
  auto* eval = app.add_subcommand("eval", "Evaluate one welfare criterion for one policy");
  add_common(eval, ev.common, "text");
  eval->add_option("--policy", ev.policy, "all, loser or seq:<turns>")->required();
  eval->add_option("--criterion", ev.criterion, "xyz over {u,e}, em-u, em-e; xz with --profile")->required();
  eval->add_option("-m", ev.m, "Number of objects")->check(CLI::Range(1, 16));
  eval->add_option("-n", ev.n, "Number of agents")->check(CLI::Range(1, 16));
  eval->add_option("--profile", ev.profile, "Evaluate at a single profile");

  OptimalArgs opt;
  auto* optimal = app.add_subcommand("optimal-seq", "Search for a welfare-maximizing picking sequence");
  add_common(optimal, opt.common, "text");
  optimal->add_option("--criterion", opt.criterion, "xuu, xue, em-u or em-e")->capture_default_str();
  optimal->add_option("-m", opt.m, "Number of objects")->required()->check(CLI::Range(1, 16));
  optimal->add_option("-n", opt.n, "Number of agents")->required()->check(CLI::Range(1, 16));
  optimal->add_flag("--all-sequences", opt.all_sequences, "Do not restrict to first-appearance order");
  optimal->add_option("--max-sequences", opt.max_sequences, "Refuse searches larger than this")->capture_default_str();

  TablesArgs tab;
  auto* tables = app.add_subcommand("tables", "Reproduce a comparison table");
  add_common(tables, tab.common, "csv");
  tables->add_option("--id", tab.id, "Table 1..5")->required()->check(CLI::Range(1, 5));
  tables->add_option("--max-m", tab.max_m, "Largest number of objects")->capture_default_str()->check(CLI::Range(1, 16));
  tables->add_option("--max-n", tab.max_n, "Largest number of agents")->capture_default_str()->check(CLI::Range(1, 16));
  tables->add_option("--budget-secs", tab.budget_secs, "Seconds per cell (ALLOC_BUDGET_SECS overrides)")
      ->capture_default_str();

  ManipulateArgs man;
  auto* manipulate = app.add_subcommand("manipulate", "Find a manipulation strategy for agent 1");
  add_common(manipulate, man.common, "json");
  manipulate->add_option("--others", man.others, "File with the other agents' rankings");
  manipulate->add_option("--target", man.target, "Comma-separated objects to secure, e.g. 2,3");
  manipulate->add_flag("--optimal", man.optimal, "Maximize the guaranteed utility");
  manipulate->add_option("--profile", man.profile, "Full profile, agent 1 first (with --optimal)");
  manipulate->add_flag("--oracle", man.oracle, "Cross-check against exhaustive search");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kUsage;
  }

  try {
    if (*simulate) run_simulate(sim, out, err);
    if (*eval) run_eval(ev, out, err);
    if (*optimal) run_optimal(opt, out, err);
    if (*tables) run_tables(tab, out, err);
    if (*manipulate) run_manipulate(man, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return kParse;
  } catch (const ResourceError& e) {
    err << "resource limit: " << e.what() << "\n";
    return kResource;
  } catch (const PolicyViolation& e) {
    err << "policy violation: " << e.what() << "\n";
    return kPolicy;
  } catch (const ValidityError& e) {
    err << "invalid strategy at stage " << e.stage() << ": " << e.what() << "\n";
    return kPolicy;
  }
  return kOk;
}

}  // namespace lotalloc::cli
