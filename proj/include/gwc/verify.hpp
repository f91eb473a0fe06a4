#pragma once

// Verification suites shared by the command-line tool and the acceptance
// runner. Each check reports the worst value seen against its tolerance.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "gwc/figures.hpp"
#include "gwc/multiqubit.hpp"
#include "gwc/omega_analysis.hpp"
#include "gwc/parallel.hpp"
#include "gwc/random.hpp"
#include "gwc/roof.hpp"

namespace gwc {

struct Check {
  std::string suite;
  std::string name;
  bool pass = false;
  double worst = 0.0;
  double tol = 0.0;
  std::string note;
  /// Reported only; never affects the exit status.
  bool informational = false;
  double seconds = 0.0;
};

struct VerifyConfig {
  int trials = 200;
  std::uint64_t seed = 42;
  double tol = 1e-3;
  int restarts = 8;
  int max_iters = 200;
  /// 0 means rank + 1 for each sampled state.
  int m_max = 0;
  int property_trials = 1000;
};

namespace detail {

class Stopwatch {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

inline OptimizerBudget budget_for(const VerifyConfig& cfg, int rank, std::uint64_t seed) {
  OptimizerBudget b;
  b.restarts = cfg.restarts;
  b.max_iters = cfg.max_iters;
  b.seed = seed;
  b.m_max = cfg.m_max > 0 ? cfg.m_max : rank + 1;
  return b;
}

inline double max_of(const std::vector<double>& v) {
  return v.empty() ? 0.0 : *std::max_element(v.begin(), v.end());
}

inline double min_of(const std::vector<double>& v) {
  return v.empty() ? 0.0 : *std::min_element(v.begin(), v.end());
}

/// Random probability vector with every entry >= floor.
inline std::vector<double> random_spectrum(std::size_t n, double floor, Rng& rng) {
  std::exponential_distribution<double> ex(1.0);
  std::vector<double> v(n);
  double total = 0.0;
  for (double& x : v) total += (x = ex(rng));
  for (double& x : v) x = floor + (1.0 - floor * static_cast<double>(n)) * x / total;
  return v;
}

inline PureState random_product(const HilbertDims& a, const HilbertDims& b, Rng& rng) {
  return tensor(random_pure_state(a, rng), random_pure_state(b, rng));
}

}  // namespace detail

/// Roof minimum of gwc against h_omega(C) on seeded random two-qubit states, ranks cycling 1..4.
inline Check verify_theorem1(const VerifyConfig& cfg) {
  detail::Stopwatch clock;
  const std::vector<double> omegas = {0.86, 0.90, 0.95, 0.99};
  std::vector<double> gaps(static_cast<std::size_t>(cfg.trials) * omegas.size());
  parallel_for(static_cast<std::size_t>(cfg.trials), [&](std::size_t i) {
    Rng rng(mix_seed(cfg.seed, i));
    const int rank = 1 + static_cast<int>(i % 4);
    const DensityOperator rho = random_density(HilbertDims{2, 2}, rank, rng);
    const double c = concurrence_mixed_2q(rho).value;
    for (std::size_t k = 0; k < omegas.size(); ++k) {
      const Omega w(omegas[k]);
      const PureMeasure f = [w](const PureState& psi) { return gwc_pure(psi, {0}, w).value; };
      const RoofResult roof =
          roof_extremize(rho, f, RoofDirection::min, detail::budget_for(cfg, rank, mix_seed(cfg.seed ^ 0x7431, i)));
      gaps[i * omegas.size() + k] = std::abs(roof.value - h_omega(c, w));
    }
  });
  Check out{"theorem1", "roof_min_gwc_vs_h_of_concurrence"};
  out.worst = detail::max_of(gaps);
  out.tol = cfg.tol;
  out.pass = out.worst <= cfg.tol;
  out.note = std::to_string(cfg.trials) + " states x omega {0.86, 0.90, 0.95, 0.99}";
  out.seconds = clock.seconds();
  return out;
}

/// Closed-form CoA against brute-force maximization of the pure-state concurrence.
inline Check verify_coa(const VerifyConfig& cfg) {
  detail::Stopwatch clock;
  std::vector<double> gaps(static_cast<std::size_t>(cfg.trials));
  parallel_for(gaps.size(), [&](std::size_t i) {
    Rng rng(mix_seed(cfg.seed + 1, i));
    const int rank = 1 + static_cast<int>(i % 4);
    const DensityOperator rho = random_density(HilbertDims{2, 2}, rank, rng);
    const RoofResult roof = coa_oracle(rho, detail::budget_for(cfg, rank, mix_seed(cfg.seed ^ 0xc0a, i)));
    gaps[i] = std::abs(roof.value - coa_2q(rho).value);
  });
  Check out{"coa", "closed_form_vs_roof_max"};
  out.worst = detail::max_of(gaps);
  out.tol = cfg.tol;
  out.pass = out.worst <= cfg.tol;
  out.note = std::to_string(cfg.trials) + " states";
  out.seconds = clock.seconds();
  return out;
}

inline std::vector<Check> verify_roots() {
  std::vector<Check> out;
  {
    detail::Stopwatch clock;
    const RootResult r = find_omega_theta();
    Check c{"roots", "omega_theta"};
    c.worst = std::abs(r.root - 0.85798);
    c.tol = 5e-5;
    c.pass = c.worst <= c.tol && r.residual <= 1e-10 &&
             m_limit_theta1(Omega(r.root - 1e-3)) * m_limit_theta1(Omega(r.root + 1e-3)) < 0.0;
    c.note = "root " + format_number(r.root) + ", residual " + format_number(r.residual);
    c.seconds = clock.seconds();
    out.push_back(c);
  }
  {
    detail::Stopwatch clock;
    const RootResult r = find_monogamy_root();
    Check c{"roots", "monogamy_root"};
    c.worst = std::abs(r.root - 0.7962);
    c.tol = 5e-4;
    c.pass = c.worst <= c.tol && r.residual <= 1e-10;
    c.note = "root " + format_number(r.root) + ", residual " + format_number(r.residual);
    c.seconds = clock.seconds();
    out.push_back(c);
  }
  return out;
}

inline std::vector<Check> verify_grids(double step = 5e-3) {
  std::vector<Check> out;
  for (double w : {0.1, 0.5, 0.9}) {
    detail::Stopwatch clock;
    const GridCert g = certify_subadditive(Omega(w), step);
    Check c{"grids", "subadditive_omega_" + format_number(w)};
    c.worst = g.worst_violation;
    c.tol = g.tol;
    c.pass = g.pass;
    c.note = "max H over " + std::to_string(g.points) + " points";
    c.seconds = clock.seconds();
    out.push_back(c);
  }
  for (double w : {0.80, 0.90, 0.99, 0.70}) {
    detail::Stopwatch clock;
    const GridCert g = certify_superadditive_sq(Omega(w), step);
    const bool expect_pass = w >= 0.7962;
    Check c{"grids", std::string(expect_pass ? "superadditive_sq_omega_" : "superadditive_sq_fails_omega_") +
                         format_number(w)};
    c.worst = g.worst_violation;
    c.tol = g.tol;
    c.pass = g.pass == expect_pass;
    c.note = "min of squared residual at (" + format_number(g.worst_theta1) + ", " + format_number(g.worst_theta2) + ")";
    c.seconds = clock.seconds();
    out.push_back(c);
  }
  return out;
}

inline std::vector<Check> verify_examples() {
  std::vector<Check> out;
  const std::vector<double> omega_grid = closed_grid(kOmegaTheta, 1.0, 1e-2);
  {
    const PureState psi = preset("wclass3");
    const double err = std::max({std::abs(concurrence_pure(psi, {0}).value - std::sqrt(3.0) / 2.0),
                                 std::abs(coa_2q(reduced_density(psi, {0, 1})).value - 0.5),
                                 std::abs(coa_2q(reduced_density(psi, {0, 2})).value - std::sqrt(2.0) / 2.0)});
    out.push_back({"examples", "wclass3_coa_triple", err <= 1e-10, err, 1e-10, "(sqrt3/2, 1/2, sqrt2/2)"});
    std::vector<double> slacks;
    for (double a : closed_grid(0.05, 1.0, 0.05)) {
      for (double w : omega_grid) slacks.push_back(polygamy_residual(psi, 0, Omega(w), a).slack);
    }
    const double worst = detail::min_of(slacks);
    out.push_back({"examples", "wclass3_polygamy_grid", worst >= -1e-9, worst, 1e-9, "min Z2 - Z1"});
  }
  {
    const PureState psi = preset("gschmidt");
    // Read big-endian, |101> and |110> put the larger pair concurrence on AC;
    // the pair is compared as a set.
    const double cab = concurrence_mixed_2q(reduced_density(psi, {0, 1})).value;
    const double cac = concurrence_mixed_2q(reduced_density(psi, {0, 2})).value;
    const double err = std::max({std::abs(concurrence_pure(psi, {0}).value - 0.8),
                                 std::abs(std::max(cab, cac) - 2.0 * std::sqrt(2.0) / 5.0),
                                 std::abs(std::min(cab, cac) - 0.4)});
    out.push_back({"examples", "gschmidt_concurrence_triple", err <= 1e-10, err, 1e-10,
                   "(4/5, {2sqrt2/5, 2/5}); C_AB = " + format_number(cab) + ", C_AC = " + format_number(cac)});
    std::vector<double> slacks;
    for (double b : closed_grid(2.0, 10.0, 0.25)) {
      for (double w : omega_grid) slacks.push_back(monogamy_residual(psi, 0, Omega(w), b).slack);
    }
    const double worst = detail::min_of(slacks);
    out.push_back({"examples", "gschmidt_monogamy_grid", worst >= -1e-9, worst, 1e-9, "min W1 - W2"});
  }
  {
    std::vector<double> errs;
    for (double g : closed_grid(0.0, M_PI / 2.0, M_PI / 200.0)) {
      const Residual422 r = residual_422_closed(g, Omega(0.9));
      errs.push_back(std::abs(r.r_c - r.r_c_closed));
    }
    for (double g : closed_grid(0.0, M_PI / 2.0, M_PI / 16.0)) {
      const Residual422 r = residual_422(g, Omega(0.9));
      errs.push_back(std::abs(r.r_c - r.r_c_closed));
    }
    const double worst = detail::max_of(errs);
    out.push_back({"examples", "r_c_equals_minus_2a2b2", worst <= 1e-9, worst, 1e-9,
                   "closed forms on pi/200 grid, state-derived roofs on pi/16 grid"});
  }
  return out;
}

inline std::vector<Check> verify_indicators() {
  std::vector<Check> out;
  {
    std::vector<double> taus;
    for (int n : {3, 5, 10}) {
      const PureState w_state = preset("wN", {{"N", static_cast<double>(n)}});
      for (double w : closed_grid(kOmegaTheta, 0.999, 1e-3)) taus.push_back(indicator_tau(w_state, 0, Omega(w)).value);
    }
    const double worst = detail::min_of(taus);
    out.push_back({"indicators", "tau_w_states_positive", worst > 0.0, worst, 0.0,
                   "N in {3, 5, 10}, omega in [0.85798, 0.999]"});
  }
  const PureState mix = preset("ghzw", {{"d", 0.627}});
  {
    const double t = three_tangle_pure3q(mix).signed_value;
    out.push_back({"indicators", "ghzw_three_tangle_near_zero", std::abs(t) <= 5e-3, t, 5e-3, "d = 0.627"});
  }
  {
    std::vector<double> taus;
    for (double w : {0.90, 0.93, 0.96}) taus.push_back(indicator_tau(mix, 0, Omega(w)).value);
    const double worst = detail::min_of(taus);
    out.push_back({"indicators", "ghzw_tau_above_0.01", worst > 0.01, worst, 0.01,
                   "d = 0.627, omega {0.90, 0.93, 0.96}: tau = " + format_number(taus[0]) + ", " +
                       format_number(taus[1]) + ", " + format_number(taus[2])});
  }
  return out;
}

inline std::vector<Check> verify_fig15() {
  std::vector<Check> out;
  const std::vector<double> gammas = closed_grid(0.0, M_PI / 2.0, M_PI / 200.0);
  const std::vector<double> omegas = closed_grid(kOmegaTheta, 1.0, 1e-3);
  for (Mc5Exponent e : {Mc5Exponent::omega, Mc5Exponent::two}) {
    double worst = std::numeric_limits<double>::infinity();
    std::size_t negative = 0;
    for (double g : gammas) {
      for (double w : omegas) {
        const double r = residual_422_closed(g, Omega(w), e).r_omega;
        worst = std::min(worst, r);
        if (r < -1e-9) ++negative;
      }
    }
    Check c{"fig15", std::string("r_omega_nonnegative_exponent_") + to_string(e)};
    c.worst = worst;
    c.tol = 1e-9;
    c.pass = worst >= -1e-9;
    c.informational = e == Mc5Exponent::two;
    c.note = std::to_string(negative) + " of " + std::to_string(gammas.size() * omegas.size()) +
             " grid points below -1e-9";
    out.push_back(c);
  }
  return out;
}

/// Property checks on seeded corpora. `trials` sets the corpus size of each check.
inline std::vector<Check> verify_properties(int trials, std::uint64_t seed) {
  std::vector<Check> out;
  const std::vector<double> omegas = {0.3, 0.6, 0.9};
  const auto n = static_cast<std::size_t>(trials);

  {  // (chi_i - chi_j)(dF/dchi_i - dF/dchi_j) <= 0 by central differences
    std::vector<double> worst(n, -std::numeric_limits<double>::infinity());
    parallel_for(n, [&](std::size_t t) {
      Rng rng(mix_seed(seed + 10, t));
      const std::size_t d = 2 + t % 5;
      const std::vector<double> chi = detail::random_spectrum(d, 0.01, rng);
      for (double wv : omegas) {
        const Omega w(wv);
        const auto f = [w](const std::vector<double>& x) {
          double acc = 0.0;
          for (double v : x) acc += std::pow(v, w.value());
          return std::pow(std::max(acc - 1.0, 0.0), w.value());
        };
        std::vector<double> grad(d);
        for (std::size_t i = 0; i < d; ++i) {
          std::vector<double> up = chi, dn = chi;
          up[i] += 1e-6;
          dn[i] -= 1e-6;
          grad[i] = (f(up) - f(dn)) / 2e-6;
        }
        for (std::size_t i = 0; i < d; ++i) {
          for (std::size_t j = i + 1; j < d; ++j) {
            worst[t] = std::max(worst[t], (chi[i] - chi[j]) * (grad[i] - grad[j]));
          }
        }
      }
    });
    const double w = detail::max_of(worst);
    out.push_back({"properties", "schur_concavity_fd", w <= 1e-8, w, 1e-8, "max (chi_i - chi_j)(dF_i - dF_j)"});
  }
  {  // G_omega(t rho1 + (1-t) rho2) >= t G(rho1) + (1-t) G(rho2)
    std::vector<double> worst(n, std::numeric_limits<double>::infinity());
    parallel_for(n, [&](std::size_t t) {
      Rng rng(mix_seed(seed + 11, t));
      const HilbertDims dims = t % 2 ? HilbertDims{2, 2} : HilbertDims{2, 3};
      const auto d = static_cast<int>(dims.total());
      const DensityOperator a = random_density(dims, 1 + static_cast<int>(t % d), rng);
      const DensityOperator b = random_density(dims, 1 + static_cast<int>((t / 3) % d), rng);
      for (double wv : omegas) {
        const Omega w(wv);
        const double ga = g_omega_functional(a, w);
        const double gb = g_omega_functional(b, w);
        for (double s = 0.1; s < 0.95; s += 0.1) {
          const DensityOperator m = DensityOperator::mixture({s, 1.0 - s}, {a, b});
          worst[t] = std::min(worst[t], g_omega_functional(m, w) - (s * ga + (1.0 - s) * gb));
        }
      }
    });
    const double w = detail::min_of(worst);
    out.push_back({"properties", "g_omega_concavity", w >= -1e-10, w, 1e-10, "min concavity gap"});
  }
  {  // local unitaries leave gwc unchanged
    std::vector<double> worst(n, 0.0);
    parallel_for(n, [&](std::size_t t) {
      Rng rng(mix_seed(seed + 12, t));
      static const std::vector<HilbertDims> shapes = {{2, 2}, {2, 3}, {3, 3}, {2, 2, 2}};
      const HilbertDims& dims = shapes[t % shapes.size()];
      const PureState psi = random_pure_state(dims, rng);
      const PureState moved = apply_unitary(random_local_unitary(dims, rng), psi);
      const DensityOperator rho = random_density(HilbertDims{2, 2}, 1 + static_cast<int>(t % 4), rng);
      const DensityOperator rho_moved = apply_unitary(random_local_unitary(HilbertDims{2, 2}, rng), rho);
      for (double wv : omegas) {
        const Omega w(wv);
        worst[t] = std::max(worst[t], std::abs(gwc_pure(psi, {0}, w).value - gwc_pure(moved, {0}, w).value));
        worst[t] = std::max(worst[t],
                            std::abs(gwc_mixed_2q(rho, w).value - gwc_mixed_2q(rho_moved, w).value));
      }
    });
    const double w = detail::max_of(worst);
    out.push_back({"properties", "local_unitary_invariance", w <= 1e-10, w, 1e-10, "max |change|"});
  }
  {  // moving weight from a poorer to a richer coefficient cannot increase gwc
    std::vector<double> worst(n, std::numeric_limits<double>::infinity());
    parallel_for(n, [&](std::size_t t) {
      Rng rng(mix_seed(seed + 13, t));
      const int d = 2 + static_cast<int>(t % 3);
      std::vector<double> phi = detail::random_spectrum(static_cast<std::size_t>(d), 0.0, rng);
      std::vector<double> psi = phi;
      std::uniform_int_distribution<int> pick(0, d - 1);
      std::uniform_real_distribution<double> frac(0.0, 1.0);
      const int transfers = 1 + static_cast<int>(t % 3);
      for (int k = 0; k < transfers; ++k) {
        int i = pick(rng), j = pick(rng);
        if (i == j) continue;
        if (psi[static_cast<std::size_t>(i)] < psi[static_cast<std::size_t>(j)]) std::swap(i, j);
        const double moved = frac(rng) * psi[static_cast<std::size_t>(j)];
        psi[static_cast<std::size_t>(i)] += moved;
        psi[static_cast<std::size_t>(j)] -= moved;
      }
      const PureState a = state_with_schmidt(phi, d, d, rng);
      const PureState b = state_with_schmidt(psi, d, d, rng);
      for (double wv : omegas) {
        const Omega w(wv);
        worst[t] = std::min(worst[t], gwc_pure(a, {0}, w).value - gwc_pure(b, {0}, w).value);
      }
    });
    const double w = detail::min_of(worst);
    out.push_back({"properties", "majorization_monotonicity", w >= -1e-12, w, 1e-12, "min gwc(phi) - gwc(psi)"});
  }
  {  // gwc = 0 exactly on product states and > 0 on entangled ones
    std::vector<double> product_max(n, 0.0);
    std::vector<double> entangled_min(n, std::numeric_limits<double>::infinity());
    parallel_for(n, [&](std::size_t t) {
      Rng rng(mix_seed(seed + 14, t));
      static const std::vector<std::pair<HilbertDims, HilbertDims>> shapes = {
          {{2}, {2}}, {{2}, {3}}, {{3}, {3}}, {{2}, {2, 2}}};
      const auto& [da, db] = shapes[t % shapes.size()];
      const PureState prod = detail::random_product(da, db, rng);
      std::vector<int> dv = da.values();
      dv.insert(dv.end(), db.values().begin(), db.values().end());
      const PureState ent = random_pure_state(HilbertDims(dv), rng);
      for (double wv : omegas) {
        const Omega w(wv);
        product_max[t] = std::max(product_max[t], gwc_pure(prod, {0}, w).value);
        entangled_min[t] = std::min(entangled_min[t], gwc_pure(ent, {0}, w).value);
      }
    });
    const double pmax = detail::max_of(product_max);
    const double emin = detail::min_of(entangled_min);
    out.push_back({"properties", "faithfulness_product_zero", pmax == 0.0, pmax, 0.0, "max gwc on product states"});
    out.push_back({"properties", "faithfulness_entangled_positive", emin > 0.0, emin, 0.0,
                   "min gwc on Haar-random states"});
  }
  {  // h_omega monotone everywhere, convex from omega_theta up
    double mono = 0.0;
    double convex = 0.0;
    const std::vector<double> thetas = closed_grid(0.0, 1.0, 1e-3);
    for (double wv : closed_grid(0.05, 1.0, 0.05)) {
      const Omega w(wv);
      std::vector<double> h(thetas.size());
      for (std::size_t k = 0; k < thetas.size(); ++k) h[k] = h_omega(thetas[k], w);
      for (std::size_t k = 1; k < h.size(); ++k) mono = std::max(mono, h[k - 1] - h[k]);
      if (wv >= kOmegaTheta) {
        for (std::size_t k = 1; k + 1 < h.size(); ++k) convex = std::min(convex, h[k + 1] - 2.0 * h[k] + h[k - 1]);
      }
    }
    for (double wv : closed_grid(kOmegaTheta, 1.0, 1e-2)) {
      const Omega w(wv);
      std::vector<double> h(thetas.size());
      for (std::size_t k = 0; k < thetas.size(); ++k) h[k] = h_omega(thetas[k], w);
      for (std::size_t k = 1; k + 1 < h.size(); ++k) convex = std::min(convex, h[k + 1] - 2.0 * h[k] + h[k - 1]);
    }
    out.push_back({"properties", "h_omega_monotone", mono <= 1e-12, mono, 1e-12, "max decrease on theta grid"});
    out.push_back({"properties", "h_omega_convex_above_omega_theta", convex >= -1e-9, convex, 1e-9,
                   "min second difference"});
  }
  return out;
}

/// Polygamy and monogamy stress tests on random 3- and 4-qubit pure states.
inline std::vector<Check> verify_multiqubit(int trials, std::uint64_t seed) {
  const auto n = static_cast<std::size_t>(trials);
  std::vector<double> mono(n, std::numeric_limits<double>::infinity());
  std::vector<double> poly(n, std::numeric_limits<double>::infinity());
  std::vector<int> beta_broken(n, 0);
  parallel_for(n, [&](std::size_t t) {
    Rng rng(mix_seed(seed + 20, t));
    const PureState psi3 = random_pure_state(HilbertDims{2, 2, 2}, rng);
    const PureState psi4 = random_pure_state(HilbertDims{2, 2, 2, 2}, rng);
    for (double wv : {0.86, 0.9, 0.95, 0.99}) {
      const Omega w(wv);
      for (const PureState* psi : {&psi3, &psi4}) {
        for (int focus = 0; focus < static_cast<int>(psi->dims().size()); ++focus) {
          const double s2 = monogamy_residual(*psi, focus, w, 2.0).slack;
          mono[t] = std::min(mono[t], s2);
          if (s2 >= 0.0) {
            for (double b : {3.0, 4.0}) {
              if (monogamy_residual(*psi, focus, w, b).slack < -1e-12) beta_broken[t] = 1;
            }
          }
        }
      }
      poly[t] = std::min(poly[t], polygamy_residual(psi3, 0, w, 1.0).slack);
    }
  });
  std::vector<Check> out;
  const double m = detail::min_of(mono);
  const double p = detail::min_of(poly);
  int broken = 0;
  for (int b : beta_broken) broken += b;
  out.push_back({"multiqubit", "monogamy_slack_nonnegative", m >= -1e-9, m, 1e-9, "3- and 4-qubit states, all foci"});
  out.push_back({"multiqubit", "polygamy_slack_nonnegative", p >= -1e-9, p, 1e-9, "3-qubit states, alpha = 1"});
  out.push_back({"multiqubit", "beta_power_monotone", broken == 0, static_cast<double>(broken), 0.0,
                 "states whose beta = 2 slack >= 0 but beta = 3 or 4 slack < 0"});
  return out;
}

}  // namespace gwc
