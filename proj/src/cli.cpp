#include "sublinear/cli.hpp"

#include <cmath>
#include <functional>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "sublinear/config.hpp"
#include "sublinear/counterexamples.hpp"
#include "sublinear/error.hpp"
#include "sublinear/inequalities.hpp"
#include "sublinear/lln.hpp"
#include "sublinear/montecarlo.hpp"
#include "sublinear/oracle.hpp"
#include "sublinear/report.hpp"

namespace sublinear::cli {
namespace {

struct Flags {
  std::string config;
  std::string out;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> n;
  std::optional<std::size_t> k;
  bool quiet = false;
};

// Result of a subcommand: the report plus a one-line summary; `violation`
// marks a failed property check.
struct Outcome {
  Report report;
  std::string summary;
  bool violation = false;
};

[[noreturn]] void missing(const std::string& key, const std::string& command) {
  throw Error(ErrorCode::kConfig, key + ": required by " + command);
}

const AmbiguitySet& need_set(const RunConfig& c, const std::string& cmd) {
  if (!c.set) missing("generators", cmd);
  return *c.set;
}

const TestFunction& need_function(const RunConfig& c, const std::string& cmd) {
  if (!c.function) missing("function", cmd);
  return *c.function;
}

double need(const std::optional<double>& v, const char* key, const std::string& cmd) {
  if (!v) missing(key, cmd);
  return *v;
}

const std::vector<std::size_t>& need_horizons(const RunConfig& c, const std::string& cmd) {
  if (c.horizons.empty()) missing("horizons", cmd);
  return c.horizons;
}

DpOptions dp_options(const RunConfig& c) {
  DpOptions o;
  o.state_budget = c.state_budget;
  o.threads = c.threads;
  return o;
}

Json set_meta(const RunConfig& c) {
  Json m;
  if (c.set) m["set"] = c.set->describe();
  if (c.family) m["family"] = c.family->describe();
  if (c.function) m["function"] = function_to_json(*c.function);
  return m;
}

Outcome cmd_eval(const RunConfig& c) {
  const std::string cmd = "eval";
  const AmbiguitySet& set = need_set(c, cmd);
  const TestFunction& f = need_function(c, cmd);
  Table t{"eval", {"n", "upper", "lower", "state_count"}, {}};
  for (std::size_t n : need_horizons(c, cmd)) {
    const RobustResult up = robust_value(set, n, f, dp_options(c), Side::kUpper);
    const RobustResult lo = robust_value(set, n, f, dp_options(c), Side::kLower);
    t.rows.push_back({n, up.value, lo.value, up.state_count});
  }
  std::ostringstream s;
  s << "E[f(S_n/n)] at n=" << t.rows.back()[0].get<std::size_t>() << ": upper "
    << format_double(t.rows.back()[1].get<double>()) << ", lower "
    << format_double(t.rows.back()[2].get<double>());
  return {{cmd, set_meta(c), {t}}, s.str()};
}

Outcome cmd_capacity(const RunConfig& c) {
  const std::string cmd = "capacity";
  const AmbiguitySet& set = need_set(c, cmd);
  if (!c.event) missing("event", cmd);
  Table t{"capacity", {"n", "event", "upper", "lower"}, {}};
  for (std::size_t n : need_horizons(c, cmd)) {
    const double up = capacity(set, n, *c.event, Side::kUpper, dp_options(c));
    const double lo = capacity(set, n, *c.event, Side::kLower, dp_options(c));
    t.rows.push_back({n, c.event->describe(), up, lo});
  }
  Json meta = set_meta(c);
  meta["event"] = c.event->describe();
  std::ostringstream s;
  s << "V/v of " << c.event->describe() << " at n=" << t.rows.back()[0].get<std::size_t>()
    << ": " << format_double(t.rows.back()[2].get<double>()) << " / "
    << format_double(t.rows.back()[3].get<double>());
  return {{cmd, meta, {t}}, s.str()};
}

Outcome cmd_sweep(const RunConfig& c) {
  const std::string cmd = "lln-sweep";
  const AmbiguitySet& set = need_set(c, cmd);
  const TestFunction& f = need_function(c, cmd);
  const SweepReport r = lln_sweep(set, f, need_horizons(c, cmd), dp_options(c));
  Table t{"sweep", {"n", "dp_value", "limit_value", "abs_error"}, {}};
  for (const SweepRow& row : r.rows) {
    t.rows.push_back({row.n, row.dp_value, row.limit_value, row.abs_error});
  }
  const SweepRow& last = r.rows.back();
  std::ostringstream s;
  s << "abs_error at n=" << last.n << ": " << format_double(last.abs_error) << " (limit "
    << format_double(last.limit_value) << ")";
  return {{cmd, set_meta(c), {t}}, s.str()};
}

Outcome cmd_conditions(const RunConfig& c) {
  const std::string cmd = "conditions";
  if (!c.set && !c.family) missing("generators or family", cmd);
  if (!c.n_max) missing("n_max", cmd);
  const Source source = c.set ? Source(*c.set) : Source(*c.family);
  const ConditionReport r = peng_condition_report(source, *c.n_max);
  Table t{"conditions", {"n", "nV_tail", "psi_expect", "mu_lower_n", "mu_upper_n"}, {}};
  for (const ConditionRow& row : r.rows) {
    t.rows.push_back({row.n, row.n_v_tail, row.psi_expect, row.mu_lower_n, row.mu_upper_n});
  }
  Json meta = set_meta(c);
  meta["condition_i"] = std::string(to_string(r.condition_i));
  meta["range_note"] = r.range_note;
  meta["mu_upper_limit"] = r.mu_upper_limit ? Json(*r.mu_upper_limit) : Json(nullptr);
  meta["mu_lower_limit"] = r.mu_lower_limit ? Json(*r.mu_lower_limit) : Json(nullptr);
  meta["warnings"] = r.warnings;
  std::ostringstream s;
  s << "condition (i) " << to_string(r.condition_i) << " " << r.range_note << "; "
    << r.warnings.size() << " warnings";
  return {{cmd, meta, {t}}, s.str()};
}

Outcome cmd_ottaviani(const RunConfig& c) {
  const std::string cmd = "ottaviani";
  const AmbiguitySet& set = need_set(c, cmd);
  const double alpha = need(c.alpha, "alpha", cmd);
  const double cc = need(c.c, "c", cmd);
  Table t{"ottaviani", {"n", "alpha", "c", "premise_value", "lhs", "rhs", "status"}, {}};
  std::size_t violated = 0;
  std::size_t vacuous = 0;
  for (std::size_t n : need_horizons(c, cmd)) {
    const OttavianiReport r = ottaviani_check(set, n, alpha, cc, dp_options(c));
    if (r.status == OttavianiStatus::kViolated) ++violated;
    if (r.status == OttavianiStatus::kVacuous) ++vacuous;
    t.rows.push_back({r.n, r.alpha, r.c, r.premise_value, r.lhs, r.rhs,
                      std::string(to_string(r.status))});
  }
  std::ostringstream s;
  s << t.rows.size() << " horizons: " << violated << " VIOLATED, " << vacuous << " VACUOUS";
  return {{cmd, set_meta(c), {t}}, s.str(), violated > 0};
}

Outcome cmd_product(const RunConfig& c) {
  const std::string cmd = "product-identity";
  const AmbiguitySet& set = need_set(c, cmd);
  if (!c.event) missing("event", cmd);
  if (c.event->kind != PathEvent::Kind::kMaxIncrementAbsGe || c.event->complement) {
    throw Error(ErrorCode::kConfig, "event.kind: product-identity needs MAX_INCREMENT_ABS_GE");
  }
  Table t{"product", {"n", "threshold", "lhs", "rhs", "delta"}, {}};
  bool bad = false;
  double worst = 0.0;
  for (std::size_t n : need_horizons(c, cmd)) {
    const ProductIdentity p = capacity_product_identity(set, n, c.event->threshold,
                                                        dp_options(c));
    bad = bad || p.delta > 1e-9 || p.rhs < p.exponential_bound - kInequalityTolerance;
    worst = std::max(worst, p.delta);
    t.rows.push_back({p.n, p.threshold, p.lhs, p.rhs, p.delta});
  }
  return {{cmd, set_meta(c), {t}}, "max delta " + format_double(worst), bad};
}

Outcome cmd_chebyshev(const RunConfig& c) {
  const std::string cmd = "chebyshev";
  const AmbiguitySet& set = need_set(c, cmd);
  const double eps = need(c.eps, "eps", cmd);
  Table t{"chebyshev", {"n", "eps", "lhs", "rhs", "holds"}, {}};
  std::size_t failed = 0;
  for (std::size_t n : need_horizons(c, cmd)) {
    const ChebyshevCheck ch = chebyshev_bound_check(set, n, eps, dp_options(c));
    if (!ch.holds) ++failed;
    t.rows.push_back({ch.n, ch.eps, ch.lhs, ch.rhs, ch.holds});
  }
  std::ostringstream s;
  s << t.rows.size() << " horizons, bound fails at " << failed;
  return {{cmd, set_meta(c), {t}}, s.str(), failed > 0};
}

Outcome cmd_exm3(const RunConfig& c, const Flags& flags) {
  std::size_t truncation = 10'000;
  if (c.family) {
    if (c.family->name() != ParametricFamily::Name::kExm3) {
      throw Error(ErrorCode::kConfig, "family.name: counterexample exm3 needs EXM3");
    }
    truncation = c.family->truncation();
  }
  if (flags.k) truncation = *flags.k;
  const std::vector<double> lambdas =
      c.lambdas.empty() ? std::vector<double>{10, 20, 50, 100} : c.lambdas;
  const std::vector<std::size_t> ms =
      c.ms.empty() ? std::vector<std::size_t>{10, 20, 50, 100} : c.ms;
  const Exm3Report r = exm3_report(truncation, lambdas, ms);
  Table tl{"exm3_lambda", {"lambda", "value"}, {}};
  for (const auto& row : r.lambda_rows) tl.rows.push_back({row.lambda, row.value});
  Table tm{"exm3_m", {"m", "psi_expect", "m_V_tail"}, {}};
  for (const auto& row : r.m_rows) tm.rows.push_back({row.m, row.psi_expect, row.m_v_tail});
  Json meta;
  meta["family"] = ParametricFamily(ParametricFamily::Name::kExm3, truncation).describe();
  meta["truncation"] = truncation;
  std::ostringstream s;
  s << "N=" << truncation << ": E[(|X|-" << format_double(r.lambda_rows.back().lambda)
    << ")^+] = " << format_double(r.lambda_rows.back().value) << ", m V(|X|>=m) at m="
    << r.m_rows.back().m << " = " << format_double(r.m_rows.back().m_v_tail);
  return {{"exm3", meta, {tl, tm}}, s.str()};
}

Outcome cmd_heavy(const RunConfig& c, const Flags& flags) {
  std::size_t truncation = 200;
  if (c.family) {
    if (c.family->name() != ParametricFamily::Name::kHeavy) {
      throw Error(ErrorCode::kConfig, "family.name: counterexample heavy needs HEAVY");
    }
    truncation = c.family->truncation();
  }
  if (flags.k) truncation = *flags.k;
  std::vector<std::size_t> horizons = c.horizons.empty() ? std::vector<std::size_t>{20}
                                                         : c.horizons;
  Table t{"heavy", {"K", "n", "value", "lower_bound"}, {}};
  double limit = 0.0;
  for (std::size_t n : horizons) {
    const HeavyLlnResult r = heavy_lln_value(truncation, n, c.state_budget);
    limit = r.limit_value;
    t.rows.push_back({r.truncation, r.n, r.value, r.lower_bound});
  }
  Json meta;
  meta["family"] = ParametricFamily(ParametricFamily::Name::kHeavy, truncation).describe();
  meta["phi"] = function_to_json(heavy_phi());
  meta["mu_lower"] = 1.0;
  meta["mu_upper"] = 1.0;
  meta["limit_value"] = limit;
  std::ostringstream s;
  s << "K=" << truncation << ", n=" << t.rows.back()[1].get<std::size_t>() << ": value "
    << format_double(t.rows.back()[2].get<double>()) << ", limit_value "
    << format_double(limit);
  return {{"heavy", meta, {t}}, s.str()};
}

Outcome cmd_simulate(const RunConfig& c) {
  const std::string cmd = "simulate";
  const AmbiguitySet& set = need_set(c, cmd);
  const TestFunction& f = need_function(c, cmd);
  Table t{"simulate", {"n", "estimate", "stderr", "paths", "policy_value"}, {}};
  for (std::size_t n : need_horizons(c, cmd)) {
    SimConfig sc{set, {}, n, c.paths, c.seed, c.threads};
    sc.policy = c.policy.kind == PolicySpec::Kind::kRobust
                    ? robust_value(set, n, f, dp_options(c)).policy
                    : KernelPolicy::constant(set, n, c.policy.generator);
    const SimResult r = simulate(sc, f);
    const double exact = policy_value(set, sc.policy, n, f, dp_options(c));
    t.rows.push_back({n, r.estimate, r.stderr_, r.paths, exact});
  }
  Json meta = set_meta(c);
  meta["seed"] = c.seed;
  meta["policy"] = c.policy.kind == PolicySpec::Kind::kRobust
                       ? Json("robust")
                       : Json("constant:" + std::to_string(c.policy.generator));
  const auto& last = t.rows.back();
  std::ostringstream s;
  s << "n=" << last[0].get<std::size_t>() << ": estimate "
    << format_double(last[1].get<double>()) << " +- " << format_double(last[2].get<double>())
    << ", policy_value " << format_double(last[4].get<double>());
  return {{cmd, meta, {t}}, s.str()};
}

Outcome cmd_oracle(const RunConfig& c) {
  const std::string cmd = "oracle";
  const AmbiguitySet& set = need_set(c, cmd);
  const TestFunction& f = need_function(c, cmd);
  oracle::OracleOptions oo;
  oo.enumeration_budget = c.enumeration_budget;
  Table t{"oracle", {"n", "dp_value", "oracle_value", "abs_diff"}, {}};
  double worst = 0.0;
  for (std::size_t n : need_horizons(c, cmd)) {
    const double dp = robust_value(set, n, f, dp_options(c)).value;
    const double br = oracle::brute_force_value(set, n, f, oo);
    worst = std::max(worst, std::fabs(dp - br));
    t.rows.push_back({n, dp, br, std::fabs(dp - br)});
  }
  return {{cmd, set_meta(c), {t}}, "max abs_diff " + format_double(worst), worst > 1e-9};
}

int exit_code_for(const Error& e) {
  return is_budget_error(e.code()) ? kExitBudget : kExitValidation;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact sublinear expectations, capacities and LLN experiments"};
  app.require_subcommand(1);
  Flags flags;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", flags.config, "JSON run configuration");
    sub->add_option("--out", flags.out, "Output directory (overrides config out)");
    sub->add_option("--seed", flags.seed, "Random seed (overrides config seed)");
    sub->add_option("--n", flags.n, "Single horizon (overrides horizons / n_max)");
    sub->add_option("--K", flags.k, "Family truncation");
    sub->add_flag("--quiet", flags.quiet, "Suppress the summary line");
  };

  using Handler = std::function<Outcome(const RunConfig&)>;
  std::vector<std::pair<CLI::App*, Handler>> handlers;
  auto leaf = [&](CLI::App* parent, const char* name, const char* help, Handler h) {
    CLI::App* sub = parent->add_subcommand(name, help);
    add_common(sub);
    handlers.emplace_back(sub, std::move(h));
  };
  leaf(&app, "eval", "Upper and lower E[f(S_n/n)]", cmd_eval);
  leaf(&app, "capacity", "Upper and lower capacity of a path event", cmd_capacity);
  leaf(&app, "lln-sweep", "Robust value against the maximal-distribution limit", cmd_sweep);
  leaf(&app, "conditions", "Tail, psi and truncated-mean conditions", cmd_conditions);
  leaf(&app, "ottaviani", "Maximal inequality check", cmd_ottaviani);
  leaf(&app, "product-identity", "Capacity of the max increment", cmd_product);
  leaf(&app, "chebyshev", "Chebyshev-type bound check", cmd_chebyshev);
  leaf(&app, "simulate", "Monte Carlo under a kernel policy", cmd_simulate);
  leaf(&app, "oracle", "Lattice DP against the history-tree oracle", cmd_oracle);
  CLI::App* ce = app.add_subcommand("counterexample", "Countable-family counterexamples");
  ce->require_subcommand(1);
  leaf(ce, "exm3", "Tail and psi table for EXM3",
       [&](const RunConfig& c) { return cmd_exm3(c, flags); });
  leaf(ce, "heavy", "LLN failure for HEAVY",
       [&](const RunConfig& c) { return cmd_heavy(c, flags); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitValidation;
  }

  try {
    RunConfig cfg;
    if (!flags.config.empty()) cfg = load_config(flags.config);
    if (flags.seed) cfg.seed = *flags.seed;
    if (flags.n) {
      if (*flags.n < 1) throw Error(ErrorCode::kConfig, "--n: must be >= 1");
      cfg.horizons = {*flags.n};
      cfg.n_max = *flags.n;
    }
    for (auto& [sub, handler] : handlers) {
      if (!sub->parsed()) continue;
      Outcome o = handler(cfg);
      const std::string dir = !flags.out.empty() ? flags.out : cfg.out.value_or("results");
      const auto paths = write_report(o.report, dir);
      if (!flags.quiet) {
        out << sub->get_name() << ": " << o.summary << " -> " << paths.front().string()
            << "\n";
      }
      if (o.violation) {
        err << "property violation in " << sub->get_name() << "\n";
        return kExitViolation;
      }
      return kExitOk;
    }
    return kExitValidation;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_code_for(e);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitValidation;
  }
}

}  // namespace sublinear::cli
