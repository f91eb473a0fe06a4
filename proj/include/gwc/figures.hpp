#pragma once

// Data grids for figures 1-15. Rows are computed in parallel and stored by
// grid index, so output order never depends on scheduling.
//
//   fig01  theta, omega, value       M(theta, omega)
//   fig02  omega, value              lim_{theta->1} M, omega in [omega_theta, 1]
//   fig03  n, omega, value           g_omega(n)
//   fig04  omega, value              p_omega(1/sqrt2)
//   fig05  alpha, omega, lhs, rhs_sum, slack     wclass3 polygamy (Z1, Z2, Z2 - Z1)
//   fig06  alpha, omega, value       Z2 - Z1
//   fig07  alpha, omega, lhs, rhs_sum, slack     fig05 at omega = 0.9
//   fig08  omega, value              q_omega(1/sqrt2), omega in (0, 1]
//   fig09  omega, value              q_omega(1/sqrt2), omega from the monogamy root to 1
//   fig10  beta, omega, lhs, rhs_sum, slack      gschmidt monogamy (W1, W2, W1 - W2)
//   fig11  beta, omega, value        W1 - W2
//   fig12  beta, omega, lhs, rhs_sum, slack      fig10 at omega = 0.9
//   fig13  n, omega, value           tau_omega(W_N), N = 3, 5, 10
//   fig14  d, omega, value, tangle_signed        tau_omega of sqrt(d) GHZ - sqrt(1-d) W
//   fig15  gamma, omega, r_c, r_omega            4x2x2 family residuals

#include <cmath>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "gwc/io.hpp"
#include "gwc/multiqubit.hpp"
#include "gwc/omega_analysis.hpp"
#include "gwc/parallel.hpp"

namespace gwc {

struct SweepOptions {
  /// Replaces the omega axis of the chosen figure when set.
  std::optional<std::vector<double>> omegas;
  Mc5Exponent mc5 = Mc5Exponent::omega;
};

inline const std::vector<std::string>& figure_ids() {
  static const std::vector<std::string> ids = {"fig01", "fig02", "fig03", "fig04", "fig05",
                                               "fig06", "fig07", "fig08", "fig09", "fig10",
                                               "fig11", "fig12", "fig13", "fig14", "fig15"};
  return ids;
}

/// "fig8", "fig08" and "8" all name figure 8. Returns the canonical "figNN" or nullopt.
inline std::optional<std::string> canonical_figure_id(std::string id) {
  if (id.rfind("fig", 0) == 0) id = id.substr(3);
  if (id.empty() || id.size() > 2 || id.find_first_not_of("0123456789") != std::string::npos) return std::nullopt;
  const int n = std::stoi(id);
  if (n < 1 || n > 15) return std::nullopt;
  return std::string(n < 10 ? "fig0" : "fig") + std::to_string(n);
}

namespace detail {

inline std::vector<double> closed_range(double lo, double hi, double step) { return closed_grid(lo, hi, step); }

/// Outer product of two axes, evaluated row-major (a outer, b inner).
inline Table grid2(std::vector<std::string> columns, const std::vector<double>& a, const std::vector<double>& b,
                   const std::function<std::vector<double>(double, double)>& eval) {
  Table t;
  t.columns = std::move(columns);
  t.rows.resize(a.size() * b.size());
  parallel_for(t.rows.size(), [&](std::size_t k) {
    const double x = a[k / b.size()];
    const double y = b[k % b.size()];
    std::vector<double> row{x, y};
    for (double v : eval(x, y)) row.push_back(v);
    t.rows[k] = std::move(row);
  });
  return t;
}

inline Table grid1(std::vector<std::string> columns, const std::vector<double>& a,
                   const std::function<std::vector<double>(double)>& eval) {
  Table t;
  t.columns = std::move(columns);
  t.rows.resize(a.size());
  parallel_for(a.size(), [&](std::size_t k) {
    std::vector<double> row{a[k]};
    for (double v : eval(a[k])) row.push_back(v);
    t.rows[k] = std::move(row);
  });
  return t;
}

inline std::vector<double> report_row(const ResidualReport& r) { return {r.lhs, r.rhs_sum(), r.slack}; }

}  // namespace detail

inline Table sweep_figure(const std::string& raw_id, const SweepOptions& opt = {}) {
  const std::optional<std::string> id = canonical_figure_id(raw_id);
  detail::require(id.has_value(), "unknown figure id '" + raw_id + "' (expected fig1..fig15)");
  using detail::closed_range;
  const auto omegas = [&](std::vector<double> fallback) { return opt.omegas ? *opt.omegas : fallback; };
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  const double omega_theta = find_omega_theta().root;

  if (*id == "fig01") {
    return detail::grid2({"theta", "omega", "value"}, closed_range(0.01, 0.99, 0.01), omegas(closed_range(0.05, 1.0, 0.05)),
                         [](double t, double w) { return std::vector<double>{m_second_derivative(t, Omega(w))}; });
  }
  if (*id == "fig02") {
    return detail::grid1({"omega", "value"}, omegas(closed_range(omega_theta, 1.0, 1e-3)),
                         [](double w) { return std::vector<double>{m_limit_theta1(Omega(w))}; });
  }
  if (*id == "fig03") {
    return detail::grid2({"n", "omega", "value"}, closed_range(0.01, 0.99, 0.01), omegas(closed_range(0.05, 1.0, 0.05)),
                         [](double n, double w) { return std::vector<double>{f_g_functions(n, Omega(w)).g}; });
  }
  if (*id == "fig04") {
    return detail::grid1({"omega", "value"}, omegas(closed_range(0.01, 1.0, 0.01)),
                         [&](double w) { return std::vector<double>{polygamy_boundary_p(inv_sqrt2, Omega(w))}; });
  }
  if (*id == "fig05" || *id == "fig06" || *id == "fig07") {
    const PureState psi = preset("wclass3");
    const bool line = *id == "fig07";
    const std::vector<double> ws = line ? omegas({0.9}) : omegas(closed_range(omega_theta, 1.0, 0.01));
    const std::vector<double> alphas = closed_range(line ? 0.01 : 0.05, 1.0, line ? 0.01 : 0.05);
    if (*id == "fig06") {
      return detail::grid2({"alpha", "omega", "value"}, alphas, ws, [&](double a, double w) {
        return std::vector<double>{polygamy_residual(psi, 0, Omega(w), a).slack};
      });
    }
    return detail::grid2({"alpha", "omega", "lhs", "rhs_sum", "slack"}, alphas, ws, [&](double a, double w) {
      return detail::report_row(polygamy_residual(psi, 0, Omega(w), a));
    });
  }
  if (*id == "fig08") {
    return detail::grid1({"omega", "value"}, omegas(closed_range(0.01, 1.0, 0.01)),
                         [&](double w) { return std::vector<double>{monogamy_boundary_q(inv_sqrt2, Omega(w))}; });
  }
  if (*id == "fig09") {
    return detail::grid1({"omega", "value"}, omegas(closed_range(find_monogamy_root().root, 1.0, 1e-3)),
                         [&](double w) { return std::vector<double>{monogamy_boundary_q(inv_sqrt2, Omega(w))}; });
  }
  if (*id == "fig10" || *id == "fig11" || *id == "fig12") {
    const PureState psi = preset("gschmidt");
    const bool line = *id == "fig12";
    const std::vector<double> ws = line ? omegas({0.9}) : omegas(closed_range(omega_theta, 1.0, 0.01));
    const std::vector<double> betas = closed_range(2.0, 10.0, line ? 0.05 : 0.25);
    if (*id == "fig11") {
      return detail::grid2({"beta", "omega", "value"}, betas, ws, [&](double b, double w) {
        return std::vector<double>{monogamy_residual(psi, 0, Omega(w), b).slack};
      });
    }
    return detail::grid2({"beta", "omega", "lhs", "rhs_sum", "slack"}, betas, ws, [&](double b, double w) {
      return detail::report_row(monogamy_residual(psi, 0, Omega(w), b));
    });
  }
  if (*id == "fig13") {
    const std::vector<PureState> states = {preset("wN", {{"N", 3}}), preset("wN", {{"N", 5}}), preset("wN", {{"N", 10}})};
    return detail::grid2({"n", "omega", "value"}, {3, 5, 10}, omegas(closed_range(omega_theta, 1.0, 1e-3)),
                         [&](double n, double w) {
                           const std::size_t k = n == 3 ? 0 : n == 5 ? 1 : 2;
                           return std::vector<double>{indicator_tau(states[k], 0, Omega(w)).value};
                         });
  }
  if (*id == "fig14") {
    return detail::grid2({"d", "omega", "value", "tangle_signed"}, closed_range(0.0, 1.0, 1e-3), omegas({0.90, 0.93, 0.96}),
                         [](double d, double w) {
                           const PureState psi = preset("ghzw", {{"d", d}});
                           return std::vector<double>{indicator_tau(psi, 0, Omega(w)).value,
                                                      three_tangle_pure3q(psi).signed_value};
                         });
  }
  // fig15
  return detail::grid2({"gamma", "omega", "r_c", "r_omega"}, closed_range(0.0, M_PI / 2.0, M_PI / 200.0),
                       omegas(closed_range(kOmegaTheta, 1.0, 1e-3)), [&](double g, double w) {
                         const Residual422 r = residual_422_closed(g, Omega(w), opt.mc5);
                         return std::vector<double>{r.r_c, r.r_omega};
                       });
}

}  // namespace gwc
