#pragma once

// G_omega-concurrence and the concurrence family it is built from.
//
// For a bipartite pure state with squared Schmidt coefficients chi_i,
//   gwc = (sum_i chi_i^omega - 1)^omega,   0 < omega <= 1.
// On two qubits gwc = h_omega(C) with
//   h_omega(t) = [((1+sqrt(1-t^2))/2)^omega + ((1-sqrt(1-t^2))/2)^omega - 1]^omega,
// and for omega >= 0.85798 the convex roof over mixed two-qubit states is
// h_omega applied to the Wootters concurrence.

#include <cmath>
#include <optional>
#include <span>
#include <string>

#include "gwc/qstate.hpp"

namespace gwc {

/// Lower end of the omega range where the two-qubit closed form holds.
inline constexpr double kOmegaTheta = 0.85798;

/// Roundoff window below zero that is clamped to exactly zero before raising to omega.
inline constexpr double kNegativeBaseTol = 1e-12;

class Omega {
 public:
  explicit Omega(double value) : value_(value) {
    detail::require(std::isfinite(value) && value > 0.0 && value <= 1.0,
                    "omega must lie in (0, 1], got " + std::to_string(value));
  }
  double value() const { return value_; }
  /// At omega = 1 every G_omega-concurrence is identically zero.
  bool degenerate() const { return value_ == 1.0; }
  bool closed_form_regime() const { return value_ >= kOmegaTheta; }

  friend bool operator==(Omega a, Omega b) { return a.value_ == b.value_; }

 private:
  double value_;
};

enum class Measure { gwc, concurrence, coa, gwcoa };

inline const char* to_string(Measure m) {
  switch (m) {
    case Measure::gwc: return "gwc";
    case Measure::concurrence: return "concurrence";
    case Measure::coa: return "coa";
    case Measure::gwcoa: return "gwcoa";
  }
  return "?";
}

struct MeasureValue {
  double value = 0.0;
  Measure measure = Measure::gwc;
  std::optional<Omega> omega;
  /// Set when a two-qubit closed form is evaluated below omega = 0.85798.
  bool unverified = false;
};

namespace detail {

/// x^omega with x in [-1e-12, 0) clamped to 0. Larger negatives are a bug upstream.
inline double clamped_pow(double x, double omega) {
  if (x < 0.0) {
    require(x >= -kNegativeBaseTol, "negative base " + std::to_string(x) + " in G_omega evaluation");
    return 0.0;
  }
  return x == 0.0 ? 0.0 : std::pow(x, omega);
}

inline void require_two_qubit(const DensityOperator& rho, const char* what) {
  require(rho.dims() == HilbertDims{2, 2}, std::string(what) + ": input must be two-qubit (2x2)");
}

}  // namespace detail

/// (sum chi^omega - 1)^omega for a probability vector. Zero entries contribute 0.
/// The largest entry is handled as expm1(omega*log1p(-rest)) so near-separable
/// spectra keep full relative accuracy.
inline double gwc_from_spectrum(std::span<const double> chis, Omega omega) {
  const double w = omega.value();
  if (chis.empty()) return 0.0;
  std::size_t top = 0;
  for (std::size_t i = 1; i < chis.size(); ++i) {
    if (chis[i] > chis[top]) top = i;
  }
  double rest = 0.0;
  double tail = 0.0;
  for (std::size_t i = 0; i < chis.size(); ++i) {
    if (i == top || chis[i] <= 0.0) continue;
    rest += chis[i];
    tail += std::pow(chis[i], w);
  }
  if (rest == 0.0) return 0.0;
  const double head = std::expm1(w * std::log1p(-std::min(rest, 1.0)));
  return detail::clamped_pow(head + tail, w);
}

/// G_omega(rho) = (tr rho^omega - 1)^omega for an arbitrary density operator.
inline double g_omega_functional(const DensityOperator& rho, Omega omega) {
  const RVector ev = rho.spectrum();
  std::vector<double> p(ev.begin(), ev.end());
  double total = 0.0;
  for (double v : p) total += v;
  for (double& v : p) v /= total;
  return gwc_from_spectrum(p, omega);
}

inline MeasureValue gwc_pure(const PureState& psi, const std::vector<int>& cut, Omega omega) {
  const SchmidtSpectrum s = schmidt_spectrum(psi, cut);
  return {gwc_from_spectrum(s.chis(), omega), Measure::gwc, omega, false};
}

/// sqrt(2 (1 - sum chi_i^2)), with 1 - sum chi^2 accumulated pairwise.
inline double concurrence_from_spectrum(std::span<const double> chis) {
  double pairs = 0.0;
  for (std::size_t i = 0; i < chis.size(); ++i) {
    for (std::size_t j = i + 1; j < chis.size(); ++j) pairs += chis[i] * chis[j];
  }
  return std::sqrt(4.0 * pairs);
}

inline MeasureValue concurrence_pure(const PureState& psi, const std::vector<int>& cut) {
  const SchmidtSpectrum s = schmidt_spectrum(psi, cut);
  return {concurrence_from_spectrum(s.chis()), Measure::concurrence, std::nullopt, false};
}

/// Square roots of the eigenvalues of rho * spin_flip(rho), nonincreasing.
/// Computed as singular values of sqrt(rho) (sigma_y x sigma_y) sqrt(rho)^*,
/// whose squares are exactly those eigenvalues.
inline RVector wootters_mu(const DensityOperator& rho) {
  detail::require_two_qubit(rho, "wootters_mu");
  const HermitianEigen eig = hermitian_eigen(rho.matrix());
  RVector root = eig.values;
  for (auto& v : root) v = std::sqrt(std::max(v, 0.0));
  const CMatrix sq = eig.vectors * root.asDiagonal() * eig.vectors.adjoint();
  return singular_values(sq * sigma_yy() * sq.conjugate());
}

inline MeasureValue concurrence_mixed_2q(const DensityOperator& rho) {
  const RVector mu = wootters_mu(rho);
  const double c = mu(0) - mu(1) - mu(2) - mu(3);
  return {std::min(std::max(c, 0.0), 1.0), Measure::concurrence, std::nullopt, false};
}

/// Concurrence of assistance of a two-qubit state: sum of all four mu_i.
inline MeasureValue coa_2q(const DensityOperator& rho) {
  const RVector mu = wootters_mu(rho);
  return {std::min(mu.sum(), 1.0), Measure::coa, std::nullopt, false};
}

/// The two-qubit map from concurrence to G_omega-concurrence.
inline double h_omega(double theta, Omega omega) {
  detail::require(theta >= 0.0 && theta <= 1.0 + 1e-12,
                  "h_omega: theta must lie in [0, 1], got " + std::to_string(theta));
  theta = std::min(theta, 1.0);
  if (theta == 0.0) return 0.0;
  const double w = omega.value();
  const double s = std::sqrt((1.0 - theta) * (1.0 + theta));
  const double lo = theta * theta / (2.0 * (1.0 + s));  // (1 - s)/2 without cancellation
  const double head = std::expm1(w * std::log1p(-lo));  // ((1 + s)/2)^w - 1
  return detail::clamped_pow(head + std::pow(lo, w), w);
}

inline MeasureValue gwc_mixed_2q(const DensityOperator& rho, Omega omega) {
  detail::require_two_qubit(rho, "gwc_mixed_2q");
  const double c = concurrence_mixed_2q(rho).value;
  return {h_omega(c, omega), Measure::gwc, omega, !omega.closed_form_regime()};
}

/// h_omega(CoA). Named after its role in the polygamy relations. For
/// omega >= 0.85798 h_omega is convex, so averaging it over a CoA-optimal
/// ensemble gives gwcoa >= h_omega(CoA); on mixed inputs the roof maximum
/// can sit slightly above this value.
inline MeasureValue gwcoa_upper_bound(const DensityOperator& rho, Omega omega) {
  detail::require_two_qubit(rho, "gwcoa_upper_bound");
  return {h_omega(coa_2q(rho).value, omega), Measure::gwcoa, omega, !omega.closed_form_regime()};
}

}  // namespace gwc
