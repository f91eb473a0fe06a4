#pragma once

// Monogamy and polygamy residuals for multiqubit pure states, the indicators
// tau_omega^i, the three-qubit tangle, and the 4x2x2 family
//   (a|000> + b|110> + a|201> + b|311>)/sqrt2,  a = cos(gamma), b = sin(gamma).

#include <cmath>
#include <string>
#include <vector>

#include "gwc/measures.hpp"
#include "gwc/presets.hpp"
#include "gwc/roof.hpp"

namespace gwc {

enum class ResidualKind { monogamy, polygamy };

inline const char* to_string(ResidualKind k) { return k == ResidualKind::monogamy ? "monogamy" : "polygamy"; }

struct ResidualReport {
  double lhs = 0.0;
  std::vector<double> rhs_terms;
  /// lhs - sum(rhs) for monogamy, sum(rhs) - lhs for polygamy
  double slack = 0.0;
  Omega omega{1.0};
  double power = 1.0;
  ResidualKind kind = ResidualKind::monogamy;
  int focus = 0;
  bool unverified = false;

  double rhs_sum() const {
    double acc = 0.0;
    for (double v : rhs_terms) acc += v;
    return acc;
  }
};

struct IndicatorValue {
  double value = 0.0;
  int focus = 0;
  Omega omega{1.0};
  bool exact = true;
  bool converged = true;
  bool unverified = false;
};

namespace detail {

inline void require_qubit_register(const HilbertDims& dims, int focus, const char* what) {
  if (!dims.all_qubits()) {
    throw UnsupportedError(std::string(what) + ": every subsystem must be a qubit, got dims " +
                           dims.to_string() + " (use residual_422 for the 4x2x2 family)");
  }
  require(dims.size() >= 3, std::string(what) + ": at least three qubits required");
  require(focus >= 0 && focus < static_cast<int>(dims.size()),
          std::string(what) + ": focus index out of range");
}

inline std::vector<int> pair_of(int i, int j) { return i < j ? std::vector<int>{i, j} : std::vector<int>{j, i}; }

inline ResidualReport finish(ResidualReport r) {
  r.slack = r.kind == ResidualKind::monogamy ? r.lhs - r.rhs_sum() : r.rhs_sum() - r.lhs;
  return r;
}

}  // namespace detail

/// gwc(focus | rest)^beta against sum_j gwc(rho_{focus j})^beta, two-qubit terms in closed form.
inline ResidualReport monogamy_residual(const PureState& psi, int focus, Omega omega, double beta = 2.0) {
  detail::require_qubit_register(psi.dims(), focus, "monogamy_residual");
  detail::require(beta >= 2.0, "monogamy_residual: beta must be >= 2");
  ResidualReport r;
  r.kind = ResidualKind::monogamy;
  r.omega = omega;
  r.power = beta;
  r.focus = focus;
  r.unverified = !omega.closed_form_regime();
  r.lhs = std::pow(gwc_pure(psi, {focus}, omega).value, beta);
  for (int j = 0; j < static_cast<int>(psi.dims().size()); ++j) {
    if (j == focus) continue;
    const DensityOperator pair = reduced_density(psi, detail::pair_of(focus, j));
    r.rhs_terms.push_back(std::pow(gwc_mixed_2q(pair, omega).value, beta));
  }
  return detail::finish(std::move(r));
}

/// sum_j h(CoA(rho_{focus j}))^alpha against gwc(focus | rest)^alpha. For a
/// pure global state the assisted lhs coincides with the pure-state value.
inline ResidualReport polygamy_residual(const PureState& psi, int focus, Omega omega, double alpha = 1.0) {
  detail::require_qubit_register(psi.dims(), focus, "polygamy_residual");
  detail::require(alpha > 0.0 && alpha <= 1.0, "polygamy_residual: alpha must lie in (0, 1]");
  ResidualReport r;
  r.kind = ResidualKind::polygamy;
  r.omega = omega;
  r.power = alpha;
  r.focus = focus;
  r.unverified = !omega.closed_form_regime();
  r.lhs = std::pow(gwc_pure(psi, {focus}, omega).value, alpha);
  for (int j = 0; j < static_cast<int>(psi.dims().size()); ++j) {
    if (j == focus) continue;
    const DensityOperator pair = reduced_density(psi, detail::pair_of(focus, j));
    r.rhs_terms.push_back(std::pow(gwcoa_upper_bound(pair, omega).value, alpha));
  }
  return detail::finish(std::move(r));
}

/// tau_omega^i of a pure qubit state: the squared monogamy residual.
inline IndicatorValue indicator_tau(const PureState& psi, int focus, Omega omega) {
  const ResidualReport r = monogamy_residual(psi, focus, omega, 2.0);
  IndicatorValue out;
  out.value = r.slack;
  out.focus = focus;
  out.omega = omega;
  out.unverified = r.unverified;
  return out;
}

/// Roof-minimized tau_omega^i over pure-state decompositions. The value is the
/// best ensemble found, so it bounds the true minimum from above.
inline IndicatorValue indicator_tau_mixed(const DensityOperator& rho, int focus, Omega omega,
                                          const OptimizerBudget& budget = {}) {
  detail::require_qubit_register(rho.dims(), focus, "indicator_tau_mixed");
  const PureMeasure tau = [focus, omega](const PureState& psi) {
    return indicator_tau(psi, focus, omega).value;
  };
  const RoofResult roof = roof_extremize(rho, tau, RoofDirection::min, budget);
  IndicatorValue out;
  out.value = roof.value;
  out.focus = focus;
  out.omega = omega;
  out.exact = roof.best.states.size() == 1;
  out.converged = roof.converged;
  out.unverified = !omega.closed_form_regime();
  return out;
}

struct ThreeTangle {
  /// C^2(A|BC) - C^2(rho_AB) - C^2(rho_AC)
  double signed_value = 0.0;
  double magnitude = 0.0;
};

inline ThreeTangle three_tangle_pure3q(const PureState& psi) {
  detail::require(psi.dims() == HilbertDims{2, 2, 2}, "three_tangle_pure3q: input must be 2x2x2");
  const double ca = concurrence_pure(psi, {0}).value;
  const double cab = concurrence_mixed_2q(reduced_density(psi, {0, 1})).value;
  const double cac = concurrence_mixed_2q(reduced_density(psi, {0, 2})).value;
  ThreeTangle out;
  out.signed_value = ca * ca - cab * cab - cac * cac;
  out.magnitude = std::abs(out.signed_value);
  return out;
}

/// Outer exponent of gwc(A|BC) for the 4x2x2 family: the defining omega, or
/// the 2 printed in the closed-form display.
enum class Mc5Exponent { omega, two };

inline const char* to_string(Mc5Exponent e) { return e == Mc5Exponent::omega ? "omega" : "two"; }

struct Residual422 {
  double gamma = 0.0;
  double omega = 1.0;
  Mc5Exponent exponent = Mc5Exponent::omega;
  double c_a_bc = 0.0;   // C(A|BC)
  double c_ab = 0.0;     // C(rho_AB)
  double c_ac = 0.0;     // C(rho_AC)
  double r_c = 0.0;      // C^2(A|BC) - C^2(rho_AB) - C^2(rho_AC)
  double r_c_closed = 0.0;  // -2 a^2 b^2
  double g_a_bc = 0.0;
  double g_ab = 0.0;
  double g_ac = 0.0;
  double r_omega = 0.0;  // g_a_bc^2 - g_ab^2 - g_ac^2
};

/// Closed forms: C^2(A|BC) = 2 - a^4 - b^4, C^2_AB = 4a^2b^2, C^2_AC = 1,
/// gwc(A|BC) = (2(a^2/2)^w + 2(b^2/2)^w - 1)^{w or 2}, gwc(rho_AB) = (a^{2w} + b^{2w} - 1)^w,
/// gwc(rho_AC) = ((1/2)^{w-1} - 1)^w.
inline Residual422 residual_422_closed(double gamma, Omega omega, Mc5Exponent exponent = Mc5Exponent::omega) {
  detail::require(gamma >= 0.0 && gamma <= M_PI / 2.0 + 1e-12, "residual_422: gamma must lie in [0, pi/2]");
  const double w = omega.value();
  const double a2 = std::pow(std::cos(gamma), 2);
  const double b2 = std::pow(std::sin(gamma), 2);
  Residual422 out;
  out.gamma = gamma;
  out.omega = w;
  out.exponent = exponent;
  out.c_a_bc = std::sqrt(std::max(0.0, 2.0 - a2 * a2 - b2 * b2));
  out.c_ab = 2.0 * std::sqrt(a2 * b2);
  out.c_ac = 1.0;
  out.r_c = out.c_a_bc * out.c_a_bc - out.c_ab * out.c_ab - out.c_ac * out.c_ac;
  out.r_c_closed = -2.0 * a2 * b2;
  const std::vector<double> chi_a{a2 / 2, b2 / 2, a2 / 2, b2 / 2};
  if (exponent == Mc5Exponent::omega) {
    out.g_a_bc = gwc_from_spectrum(chi_a, omega);
  } else {
    const double base = 2.0 * detail::clamped_pow(a2 / 2, w) + 2.0 * detail::clamped_pow(b2 / 2, w) - 1.0;
    out.g_a_bc = base * base;
  }
  out.g_ab = gwc_from_spectrum(std::vector<double>{a2, b2}, omega);
  out.g_ac = h_omega(1.0, omega);
  out.r_omega = out.g_a_bc * out.g_a_bc - out.g_ab * out.g_ab - out.g_ac * out.g_ac;
  return out;
}

/// The same quantities from a 4x2x2 pure state itself: the A|BC terms from the
/// Schmidt spectrum, the pair terms as convex roofs over decompositions of
/// rho_AB and rho_AC (A is four-dimensional, so no two-qubit formula applies).
/// The gamma and r_c_closed fields are left at zero.
inline Residual422 residual_422_numeric(const PureState& psi, Omega omega, Mc5Exponent exponent = Mc5Exponent::omega,
                                        const OptimizerBudget& budget = {8, 200, 1, 0}) {
  detail::require(psi.dims() == HilbertDims{4, 2, 2}, "residual_422: state must be 4x2x2");
  Residual422 out;
  out.omega = omega.value();
  out.exponent = exponent;
  const DensityOperator ab = reduced_density(psi, {0, 1});
  const DensityOperator ac = reduced_density(psi, {0, 2});
  const PureMeasure conc = [](const PureState& p) { return concurrence_pure(p, {0}).value; };
  const PureMeasure g = [omega](const PureState& p) { return gwc_pure(p, {0}, omega).value; };
  out.c_a_bc = concurrence_pure(psi, {0}).value;
  out.c_ab = roof_extremize(ab, conc, RoofDirection::min, budget).value;
  out.c_ac = roof_extremize(ac, conc, RoofDirection::min, budget).value;
  out.r_c = out.c_a_bc * out.c_a_bc - out.c_ab * out.c_ab - out.c_ac * out.c_ac;
  if (exponent == Mc5Exponent::omega) {
    out.g_a_bc = gwc_pure(psi, {0}, omega).value;
  } else {
    double base = -1.0;
    for (double chi : schmidt_spectrum(psi, {0}).chis()) base += std::pow(chi, omega.value());
    out.g_a_bc = base * base;
  }
  out.g_ab = roof_extremize(ab, g, RoofDirection::min, budget).value;
  out.g_ac = roof_extremize(ac, g, RoofDirection::min, budget).value;
  out.r_omega = out.g_a_bc * out.g_a_bc - out.g_ab * out.g_ab - out.g_ac * out.g_ac;
  return out;
}

/// State-derived residuals for the preset at gamma, with the closed -2a^2b^2 alongside.
inline Residual422 residual_422(double gamma, Omega omega, Mc5Exponent exponent = Mc5Exponent::omega,
                                const OptimizerBudget& budget = {8, 200, 1, 0}) {
  const Residual422 closed = residual_422_closed(gamma, omega, exponent);
  Residual422 out = residual_422_numeric(preset("p422", {{"gamma", gamma}}), omega, exponent, budget);
  out.gamma = gamma;
  out.r_c_closed = closed.r_c_closed;
  return out;
}

}  // namespace gwc
