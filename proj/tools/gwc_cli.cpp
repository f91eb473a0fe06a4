// gwc: compute G_omega-concurrence and related measures, run verification
// suites, regenerate figure grids and report the critical omegas.
//
// Exit status:
//   0  success
//   1  a verification check failed
//   2  malformed input (state file, preset, grid spec, figure id, parameter)
//   3  unsupported dimensions or rank
//   4  file could not be read or written
//   5  command-line usage error

#include <cstdio>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "gwc/figures.hpp"
#include "gwc/io.hpp"
#include "gwc/multiqubit.hpp"
#include "gwc/omega_analysis.hpp"
#include "gwc/verify.hpp"

namespace {

using gwc::Omega;
using json = nlohmann::ordered_json;

enum Exit { kOk = 0, kCheckFailed = 1, kBadInput = 2, kUnsupported = 3, kIoFailure = 4, kUsage = 5 };

struct RunConfig {
  std::string state;
  std::string measure = "gwc";
  std::string omega = "0.9";
  std::optional<double> power;
  double alpha = 1.0;
  double beta = 2.0;
  int focus = 0;
  int trials = 200;
  std::uint64_t seed = 42;
  double tol = 1e-3;
  std::optional<int> restarts;
  std::optional<int> m_max;
  std::string id;
  std::string out;
  std::string format = "json";
  std::string mc5 = "omega";
  std::string suite = "all";
};

gwc::Mc5Exponent mc5_of(const RunConfig& cfg) {
  return cfg.mc5 == "two" ? gwc::Mc5Exponent::two : gwc::Mc5Exponent::omega;
}

gwc::OptimizerBudget budget_of(const RunConfig& cfg, gwc::OptimizerBudget b = {}) {
  if (cfg.restarts) b.restarts = *cfg.restarts;
  if (cfg.m_max) b.m_max = *cfg.m_max;
  b.seed = cfg.seed;
  return b;
}

void emit(const RunConfig& cfg, const std::string& text) {
  if (cfg.out.empty()) {
    std::cout << text;
  } else {
    gwc::write_file(cfg.out, text);
  }
}

// Flat key/value rendering for --format table.
std::string as_table(const json& j) {
  std::ostringstream os;
  const auto line = [&os](const std::string& k, const json& v) {
    os << k;
    for (std::size_t pad = k.size(); pad < 18; ++pad) os << ' ';
    os << ' ' << (v.is_string() ? v.get<std::string>() : v.dump()) << '\n';
  };
  if (j.is_array()) {
    for (std::size_t i = 0; i < j.size(); ++i) {
      if (i) os << '\n';
      os << as_table(j[i]);
    }
    return os.str();
  }
  for (const auto& [k, v] : j.items()) line(k, v);
  return os.str();
}

std::string render(const RunConfig& cfg, const json& j) {
  return cfg.format == "table" ? as_table(j) : j.dump(2) + "\n";
}

json residual_json(const gwc::ResidualReport& r) {
  return {{"kind", gwc::to_string(r.kind)}, {"omega", r.omega.value()}, {"power", r.power},
          {"focus", r.focus},               {"lhs", r.lhs},             {"rhs_terms", r.rhs_terms},
          {"rhs_sum", r.rhs_sum()},         {"slack", r.slack},         {"unverified", r.unverified}};
}

json roof_json(const gwc::RoofResult& r) {
  return {{"value", r.value},
          {"direction", gwc::to_string(r.direction)},
          {"restarts_used", r.restarts_used},
          {"converged", r.converged},
          {"ensemble_size", r.best.states.size()}};
}

bool two_qubit(const gwc::HilbertDims& d) { return d == gwc::HilbertDims{2, 2}; }

json compute_one(const RunConfig& cfg, const gwc::AnyState& state, Omega w) {
  const auto* psi = std::get_if<gwc::PureState>(&state);
  const gwc::DensityOperator rho = gwc::as_density(state);
  const gwc::HilbertDims& dims = rho.dims();
  const std::string& m = cfg.measure;
  json out{{"measure", m}, {"dims", dims.values()}, {"omega", w.value()}};

  if (m == "gwc" || m == "concurrence" || m == "coa" || m == "gwcoa") {
    const bool conc = m == "concurrence" || m == "coa";
    const bool assisted = m == "coa" || m == "gwcoa";
    if (conc) out.erase("omega");
    if (psi) {
      const double v = conc ? gwc::concurrence_pure(*psi, {cfg.focus}).value : gwc::gwc_pure(*psi, {cfg.focus}, w).value;
      out["value"] = v;
      out["method"] = "schmidt";
      return out;
    }
    if (two_qubit(dims)) {
      gwc::MeasureValue v;
      if (m == "gwc") v = gwc::gwc_mixed_2q(rho, w);
      if (m == "concurrence") v = gwc::concurrence_mixed_2q(rho);
      if (m == "coa") v = gwc::coa_2q(rho);
      if (m == "gwcoa") v = gwc::gwcoa_upper_bound(rho, w);
      out["value"] = v.value;
      out["method"] = "closed_form";
      out["unverified"] = v.unverified;
      return out;
    }
    if (cfg.focus != 0) throw gwc::DomainError("roof evaluation cuts subsystem 0 from the rest; --focus must be 0");
    const gwc::PureMeasure f = conc ? gwc::PureMeasure([](const gwc::PureState& p) { return gwc::concurrence_pure(p, {0}).value; })
                                    : gwc::PureMeasure([w](const gwc::PureState& p) { return gwc::gwc_pure(p, {0}, w).value; });
    const gwc::RoofResult r =
        gwc::roof_extremize(rho, f, assisted ? gwc::RoofDirection::max : gwc::RoofDirection::min, budget_of(cfg));
    out["value"] = r.value;
    out["method"] = "roof";
    out["roof"] = roof_json(r);
    return out;
  }
  if (m == "monogamy" || m == "polygamy") {
    if (!psi) throw gwc::UnsupportedError(m + " residuals take pure states");
    const double p = cfg.power.value_or(m == "monogamy" ? cfg.beta : cfg.alpha);
    const gwc::ResidualReport r = m == "monogamy" ? gwc::monogamy_residual(*psi, cfg.focus, w, p)
                                                  : gwc::polygamy_residual(*psi, cfg.focus, w, p);
    out.update(residual_json(r));
    return out;
  }
  if (m == "tau") {
    const gwc::IndicatorValue v = psi ? gwc::indicator_tau(*psi, cfg.focus, w)
                                      : gwc::indicator_tau_mixed(rho, cfg.focus, w, budget_of(cfg));
    out["value"] = v.value;
    out["focus"] = v.focus;
    out["exact"] = v.exact;
    out["converged"] = v.converged;
    out["unverified"] = v.unverified;
    return out;
  }
  if (m == "tangle") {
    if (!psi) throw gwc::UnsupportedError("three-tangle takes a pure three-qubit state");
    const gwc::ThreeTangle t = gwc::three_tangle_pure3q(*psi);
    out.erase("omega");
    out["signed"] = t.signed_value;
    out["magnitude"] = t.magnitude;
    return out;
  }
  if (m == "residual422") {
    if (!psi || dims != gwc::HilbertDims{4, 2, 2}) throw gwc::UnsupportedError("residual422 takes a pure 4x2x2 state");
    const gwc::Residual422 r = gwc::residual_422_numeric(*psi, w, mc5_of(cfg), budget_of(cfg, {8, 200, 1, 0}));
    out["mc5_exponent"] = gwc::to_string(r.exponent);
    out["c_a_bc"] = r.c_a_bc;
    out["c_ab"] = r.c_ab;
    out["c_ac"] = r.c_ac;
    out["r_c"] = r.r_c;
    out["gwc_a_bc"] = r.g_a_bc;
    out["gwc_ab"] = r.g_ab;
    out["gwc_ac"] = r.g_ac;
    out["r_omega"] = r.r_omega;
    return out;
  }
  throw gwc::DomainError("unknown measure '" + m +
                         "' (expected gwc, concurrence, coa, gwcoa, monogamy, polygamy, tau, tangle, residual422)");
}

int cmd_compute(const RunConfig& cfg) {
  if (cfg.state.empty()) throw gwc::DomainError("compute needs --state");
  const gwc::AnyState state = gwc::load_state(cfg.state);
  const std::vector<double> omegas = gwc::parse_grid(cfg.omega);
  json results = json::array();
  for (double w : omegas) results.push_back(compute_one(cfg, state, Omega(w)));
  emit(cfg, render(cfg, results.size() == 1 ? results[0] : results));
  return kOk;
}

json check_json(const gwc::Check& c) {
  return {{"suite", c.suite}, {"check", c.name},     {"pass", c.pass},
          {"worst", c.worst}, {"tol", c.tol},        {"informational", c.informational},
          {"note", c.note},   {"seconds", c.seconds}};
}

int cmd_verify(const RunConfig& cfg) {
  gwc::VerifyConfig vc;
  vc.trials = cfg.trials;
  vc.seed = cfg.seed;
  vc.tol = cfg.tol;
  if (cfg.restarts) vc.restarts = *cfg.restarts;
  if (cfg.m_max) vc.m_max = *cfg.m_max;
  vc.property_trials = std::max(cfg.trials, 1);
  const std::string& s = cfg.suite;
  const bool all = s == "all";
  std::vector<gwc::Check> checks;
  const auto add = [&checks](std::vector<gwc::Check> more) { checks.insert(checks.end(), more.begin(), more.end()); };
  bool known = false;
  if (all || s == "theorem1") known = true, checks.push_back(gwc::verify_theorem1(vc));
  if (all || s == "coa") {
    known = true;
    gwc::VerifyConfig c = vc;
    if (all) c.trials = 100;
    checks.push_back(gwc::verify_coa(c));
  }
  if (all || s == "roots") known = true, add(gwc::verify_roots());
  if (all || s == "grids") known = true, add(gwc::verify_grids());
  if (all || s == "examples") known = true, add(gwc::verify_examples());
  if (all || s == "indicators") known = true, add(gwc::verify_indicators());
  if (all || s == "fig15") known = true, add(gwc::verify_fig15());
  if (all || s == "properties") known = true, add(gwc::verify_properties(all ? 1000 : vc.property_trials, vc.seed));
  if (all || s == "multiqubit") known = true, add(gwc::verify_multiqubit(all ? 500 : vc.property_trials, vc.seed));
  if (!known) {
    throw gwc::DomainError("unknown suite '" + s +
                           "' (expected all, theorem1, coa, roots, grids, examples, indicators, fig15, properties, multiqubit)");
  }
  bool ok = true;
  json j = json::array();
  std::ostringstream table;
  for (const auto& c : checks) {
    if (!c.informational && !c.pass) ok = false;
    j.push_back(check_json(c));
    char buf[64];
    std::snprintf(buf, sizeof buf, "%-6s", c.informational ? "INFO" : c.pass ? "PASS" : "FAIL");
    table << buf << ' ' << c.suite << '/' << c.name << "  worst=" << gwc::format_number(c.worst)
          << " tol=" << gwc::format_number(c.tol) << "  " << c.note << '\n';
  }
  emit(cfg, cfg.format == "table" ? table.str() : j.dump(2) + "\n");
  return ok ? kOk : kCheckFailed;
}

int cmd_sweep(const RunConfig& cfg) {
  const std::optional<std::string> id = gwc::canonical_figure_id(cfg.id);
  if (!id) throw gwc::DomainError("unknown figure id '" + cfg.id + "' (expected fig1..fig15)");
  gwc::SweepOptions opt;
  if (!cfg.omega.empty()) opt.omegas = gwc::parse_grid(cfg.omega);
  opt.mc5 = mc5_of(cfg);
  const gwc::Table t = gwc::sweep_figure(*id, opt);
  if (cfg.format == "json") {
    json j{{"id", *id}, {"columns", t.columns}, {"rows", t.rows}};
    emit(cfg, j.dump() + "\n");
  } else {
    emit(cfg, t.to_csv());
  }
  return kOk;
}

int cmd_roots(const RunConfig& cfg) {
  const gwc::RootResult a = gwc::find_omega_theta();
  const gwc::RootResult b = gwc::find_monogamy_root();
  const auto rj = [](const gwc::RootResult& r) {
    return json{{"root", r.root}, {"bracket", {r.lo, r.hi}}, {"residual", r.residual}, {"iterations", r.iterations}};
  };
  json j{{"omega_theta", rj(a)}, {"monogamy_root", rj(b)}};
  if (cfg.format == "table") {
    std::ostringstream os;
    os << "omega_theta    " << gwc::format_number(a.root) << "  residual " << gwc::format_number(a.residual) << '\n'
       << "monogamy_root  " << gwc::format_number(b.root) << "  residual " << gwc::format_number(b.residual) << '\n';
    emit(cfg, os.str());
  } else {
    emit(cfg, j.dump(2) + "\n");
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"G_omega-concurrence toolkit"};
  app.require_subcommand(1);
  RunConfig cfg;

  const auto add_output = [&cfg](CLI::App* sub) {
    sub->add_option("--out", cfg.out, "Write output to this file instead of stdout");
  };
  const auto add_budget = [&cfg](CLI::App* sub) {
    sub->add_option("--restarts", cfg.restarts, "Optimizer restarts (compute: 64, verify: 8)")->check(CLI::PositiveNumber);
    sub->add_option("--m-max", cfg.m_max, "Largest ensemble size (compute: r^2, verify: r+1)")->check(CLI::NonNegativeNumber);
    sub->add_option("--seed", cfg.seed, "Random seed");
  };

  CLI::App* compute = app.add_subcommand("compute", "Evaluate a measure on a state");
  compute->add_option("--state", cfg.state, "State JSON file or preset:<name>?k=v")->required();
  compute->add_option("--measure", cfg.measure,
                      "gwc | concurrence | coa | gwcoa | monogamy | polygamy | tau | tangle | residual422");
  compute->add_option("--omega", cfg.omega, "omega value or lo:hi:step");
  compute->add_option("--power", cfg.power, "Exponent for monogamy (beta) or polygamy (alpha)");
  compute->add_option("--alpha", cfg.alpha, "Polygamy exponent in (0, 1]");
  compute->add_option("--beta", cfg.beta, "Monogamy exponent >= 2");
  compute->add_option("--focus", cfg.focus, "Subsystem cut from the rest")->check(CLI::NonNegativeNumber);
  compute->add_option("--format", cfg.format, "json | table")->check(CLI::IsMember({"json", "table"}));
  compute->add_option("--mc5-exponent", cfg.mc5, "omega | two")->check(CLI::IsMember({"omega", "two"}));
  add_budget(compute);
  add_output(compute);

  CLI::App* verify = app.add_subcommand("verify", "Run verification suites");
  verify->add_option("suite", cfg.suite,
                     "all | theorem1 | coa | roots | grids | examples | indicators | fig15 | properties | multiqubit");
  verify->add_option("--trials", cfg.trials, "Random states per sampled check")->check(CLI::PositiveNumber);
  verify->add_option("--tol", cfg.tol, "Tolerance for optimizer comparisons")->check(CLI::PositiveNumber);
  verify->add_option("--format", cfg.format, "json | table")->check(CLI::IsMember({"json", "table"}));
  add_budget(verify);
  add_output(verify);

  std::string sweep_omega;
  CLI::App* sweep = app.add_subcommand("sweep", "Write a figure data grid");
  sweep->add_option("--id", cfg.id, "fig1 .. fig15")->required();
  sweep->add_option("--omega", sweep_omega, "Replace the omega axis (value or lo:hi:step)");
  sweep->add_option("--format", cfg.format, "csv | json")->check(CLI::IsMember({"csv", "json"}));
  sweep->add_option("--mc5-exponent", cfg.mc5, "omega | two (fig15)")->check(CLI::IsMember({"omega", "two"}));
  sweep->add_option("--seed", cfg.seed, "Random seed (sweeps are deterministic)");
  add_output(sweep);

  CLI::App* roots = app.add_subcommand("roots", "Locate the two critical omegas");
  roots->add_option("--format", cfg.format, "json | table")->check(CLI::IsMember({"json", "table"}));
  add_output(roots);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*compute) return cmd_compute(cfg);
    if (*verify) return cmd_verify(cfg);
    if (*sweep) {
      if (cfg.format == "json" && !sweep->count("--format")) cfg.format = "csv";
      cfg.omega = sweep_omega;
      return cmd_sweep(cfg);
    }
    if (*roots) return cmd_roots(cfg);
  } catch (const gwc::IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kIoFailure;
  } catch (const gwc::UnsupportedError& e) {
    std::cerr << "unsupported: " << e.what() << '\n';
    return kUnsupported;
  } catch (const gwc::DomainError& e) {
    std::cerr << "invalid input: " << e.what() << '\n';
    return kBadInput;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "invalid input: " << e.what() << '\n';
    return kBadInput;
  }
  return kUsage;
}
