#pragma once

// Named states used by the worked examples.
//
//   wclass3   (|100> + |010>)/2 + (sqrt2/2)|001>
//   gschmidt  l0|000> + l1 e^{i phi}|100> + l2|101> + l3|110> + l4|111>
//             (defaults l0=l3=l4=1/sqrt5, l2=sqrt(2/5), l1=0, phi=0)
//   wN        N-qubit W state, param N (default 3)
//   ghzw      sqrt(d)|GHZ> - sqrt(1-d)|W> on three qubits, param d
//   p422      (a|000> + b|110> + a|201> + b|311>)/sqrt2 on 4x2x2,
//             a = cos(gamma), b = sin(gamma)

#include <cmath>
#include <map>
#include <set>
#include <string>
#include <string_view>

#include "gwc/qstate.hpp"

namespace gwc {

using PresetParams = std::map<std::string, double>;

namespace detail {

inline void check_param_names(const PresetParams& params, const std::set<std::string>& allowed,
                              std::string_view preset) {
  for (const auto& [key, value] : params) {
    require(allowed.count(key) == 1,
            "preset " + std::string(preset) + ": unknown parameter '" + key + "'");
    require(std::isfinite(value), "preset " + std::string(preset) + ": non-finite parameter");
  }
}

inline double param_or(const PresetParams& params, const std::string& key, double fallback) {
  auto it = params.find(key);
  return it == params.end() ? fallback : it->second;
}

/// Index of a basis ket given as one digit per subsystem.
inline Eigen::Index ket_index(const HilbertDims& dims, std::initializer_list<int> digits) {
  Eigen::Index idx = 0;
  std::size_t k = 0;
  for (int d : digits) idx = idx * dims[k++] + d;
  return idx;
}

inline PureState ghz_state(int n) {
  const HilbertDims dims(std::vector<int>(static_cast<std::size_t>(n), 2));
  CVector amps = CVector::Zero(static_cast<Eigen::Index>(dims.total()));
  amps(0) = amps(amps.size() - 1) = 1.0 / std::sqrt(2.0);
  return PureState(dims, amps);
}

inline PureState w_state(int n) {
  const HilbertDims dims(std::vector<int>(static_cast<std::size_t>(n), 2));
  CVector amps = CVector::Zero(static_cast<Eigen::Index>(dims.total()));
  const double a = 1.0 / std::sqrt(static_cast<double>(n));
  for (int k = 0; k < n; ++k) amps(Eigen::Index{1} << (n - 1 - k)) = a;
  return PureState(dims, amps);
}

}  // namespace detail

inline PureState preset(std::string_view name, const PresetParams& params = {}) {
  using detail::param_or;
  using detail::require;
  if (name == "wclass3") {
    detail::check_param_names(params, {}, name);
    const HilbertDims dims{2, 2, 2};
    CVector amps = CVector::Zero(8);
    amps(detail::ket_index(dims, {1, 0, 0})) = 0.5;
    amps(detail::ket_index(dims, {0, 1, 0})) = 0.5;
    amps(detail::ket_index(dims, {0, 0, 1})) = std::sqrt(2.0) / 2.0;
    return PureState(dims, amps);
  }
  if (name == "gschmidt") {
    detail::check_param_names(params, {"l0", "l1", "l2", "l3", "l4", "phi"}, name);
    const double l0 = param_or(params, "l0", 1.0 / std::sqrt(5.0));
    const double l1 = param_or(params, "l1", 0.0);
    const double l2 = param_or(params, "l2", std::sqrt(2.0 / 5.0));
    const double l3 = param_or(params, "l3", 1.0 / std::sqrt(5.0));
    const double l4 = param_or(params, "l4", 1.0 / std::sqrt(5.0));
    const double phi = param_or(params, "phi", 0.0);
    for (double l : {l0, l1, l2, l3, l4}) require(l >= 0.0, "preset gschmidt: lambda_i must be >= 0");
    const double sq = l0 * l0 + l1 * l1 + l2 * l2 + l3 * l3 + l4 * l4;
    require(std::abs(sq - 1.0) <= 1e-9, "preset gschmidt: sum of lambda_i^2 must equal 1");
    const HilbertDims dims{2, 2, 2};
    CVector amps = CVector::Zero(8);
    amps(detail::ket_index(dims, {0, 0, 0})) = l0;
    amps(detail::ket_index(dims, {1, 0, 0})) = l1 * std::polar(1.0, phi);
    amps(detail::ket_index(dims, {1, 0, 1})) = l2;
    amps(detail::ket_index(dims, {1, 1, 0})) = l3;
    amps(detail::ket_index(dims, {1, 1, 1})) = l4;
    return PureState::normalized(dims, amps);
  }
  if (name == "wN") {
    detail::check_param_names(params, {"N"}, name);
    const double n = param_or(params, "N", 3.0);
    require(n == std::floor(n) && n >= 2 && n <= 10, "preset wN: N must be an integer in [2, 10]");
    return detail::w_state(static_cast<int>(n));
  }
  if (name == "ghzw") {
    detail::check_param_names(params, {"d"}, name);
    const double d = param_or(params, "d", 0.5);
    require(d >= 0.0 && d <= 1.0, "preset ghzw: d must lie in [0, 1]");
    const CVector amps =
        std::sqrt(d) * detail::ghz_state(3).amps() - std::sqrt(1.0 - d) * detail::w_state(3).amps();
    return PureState::normalized(HilbertDims{2, 2, 2}, amps);
  }
  if (name == "p422") {
    detail::check_param_names(params, {"gamma"}, name);
    const double gamma = param_or(params, "gamma", M_PI / 4.0);
    const double a = std::cos(gamma);
    const double b = std::sin(gamma);
    const HilbertDims dims{4, 2, 2};
    CVector amps = CVector::Zero(16);
    const double r = 1.0 / std::sqrt(2.0);
    amps(detail::ket_index(dims, {0, 0, 0})) = r * a;
    amps(detail::ket_index(dims, {1, 1, 0})) = r * b;
    amps(detail::ket_index(dims, {2, 0, 1})) = r * a;
    amps(detail::ket_index(dims, {3, 1, 1})) = r * b;
    return PureState(dims, amps);
  }
  throw DomainError("unknown preset '" + std::string(name) +
                    "' (expected wclass3, gschmidt, wN, ghzw or p422)");
}

}  // namespace gwc
