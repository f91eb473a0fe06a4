// Acceptance runner: `acceptance --criterion N` (or no flag for all eight)
// prints one PASS/FAIL line per criterion and exits non-zero on any FAIL.

#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "gwc/verify.hpp"

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
  double seconds = 0.0;
};

// Folds a batch of checks into one outcome; informational checks are listed but never fail it.
Outcome fold(const std::vector<gwc::Check>& checks) {
  Outcome o;
  for (const auto& c : checks) {
    if (!c.informational && !c.pass) o.pass = false;
    if (!o.detail.empty()) o.detail += "; ";
    o.detail += c.name + (c.informational ? " [info]" : c.pass ? "" : " [FAILED]") +
                " worst=" + gwc::format_number(c.worst);
    if (!c.note.empty()) o.detail += " (" + c.note + ")";
    o.seconds += c.seconds;
  }
  return o;
}

Outcome with_time_limit(Outcome o, double limit, const gwc::detail::Stopwatch& clock) {
  o.seconds = clock.seconds();
  if (o.seconds > limit) {
    o.pass = false;
    o.detail += "; runtime " + gwc::format_number(o.seconds) + " s exceeds " + gwc::format_number(limit) + " s";
  }
  return o;
}

Outcome criterion1() {
  gwc::detail::Stopwatch clock;
  gwc::VerifyConfig cfg;
  cfg.trials = 200;
  cfg.seed = 42;
  cfg.tol = 1e-3;
  return with_time_limit(fold({gwc::verify_theorem1(cfg)}), 300.0, clock);
}

Outcome criterion2() {
  const std::vector<gwc::Check> checks = gwc::verify_roots();
  Outcome o = fold(checks);
  for (const auto& c : checks) {
    if (c.seconds >= 1.0) {
      o.pass = false;
      o.detail += "; " + c.name + " took " + gwc::format_number(c.seconds) + " s";
    }
  }
  return o;
}

Outcome criterion3() {
  gwc::detail::Stopwatch clock;
  return with_time_limit(fold(gwc::verify_grids(5e-3)), 60.0, clock);
}

Outcome criterion4() { return fold(gwc::verify_examples()); }

Outcome criterion5() { return fold(gwc::verify_indicators()); }

Outcome criterion6() {
  gwc::VerifyConfig cfg;
  cfg.trials = 100;
  cfg.tol = 1e-3;
  return fold({gwc::verify_coa(cfg)});
}

Outcome criterion7() { return fold(gwc::verify_properties(1000, 42)); }

Outcome criterion8() { return fold(gwc::verify_fig15()); }

const std::vector<std::pair<std::string, std::function<Outcome()>>>& criteria() {
  static const std::vector<std::pair<std::string, std::function<Outcome()>>> list = {
      {"roof minimum matches h_omega(C) on 200 random two-qubit states", criterion1},
      {"critical omegas 0.85798 and 0.7962", criterion2},
      {"subadditivity and squared superadditivity grids", criterion3},
      {"worked examples in closed form", criterion4},
      {"indicator behaviour for W and GHZ+W states", criterion5},
      {"closed-form CoA against roof maximization", criterion6},
      {"property corpora", criterion7},
      {"4x2x2 residual grid", criterion8},
  };
  return list;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"acceptance criteria"};
  int only = 0;
  app.add_option("--criterion", only, "Run a single criterion (1-8)")->check(CLI::Range(1, 8));
  CLI11_PARSE(app, argc, argv);

  bool all_pass = true;
  for (std::size_t k = 0; k < criteria().size(); ++k) {
    if (only != 0 && static_cast<int>(k) + 1 != only) continue;
    const auto& [title, run] = criteria()[k];
    gwc::detail::Stopwatch clock;
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    all_pass = all_pass && o.pass;
    std::printf("criterion %zu %s: %s [%.1f s] %s\n", k + 1, o.pass ? "PASS" : "FAIL", title.c_str(),
                clock.seconds(), o.detail.c_str());
    std::fflush(stdout);
  }
  return all_pass ? 0 : 1;
}
