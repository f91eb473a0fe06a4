#pragma once

// Seeded random states and unitaries for stress corpora and optimizer restarts.

#include <cstdint>
#include <random>

#include "gwc/qstate.hpp"

namespace gwc {

using Rng = std::mt19937_64;

/// SplitMix64 finalizer; derives independent child seeds from (seed, index).
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

inline CMatrix ginibre(Eigen::Index rows, Eigen::Index cols, Rng& rng) {
  std::normal_distribution<double> n01(0.0, 1.0);
  CMatrix g(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j) {
    for (Eigen::Index i = 0; i < rows; ++i) {
      const double re = n01(rng);
      const double im = n01(rng);
      g(i, j) = cplx(re, im);
    }
  }
  return g;
}

/// Haar-distributed unitary (QR of a Ginibre matrix with the diagonal phase fixed).
inline CMatrix random_unitary(Eigen::Index n, Rng& rng) {
  return orthonormalize_columns(ginibre(n, n, rng));
}

/// Haar-uniform pure state.
inline PureState random_pure_state(const HilbertDims& dims, Rng& rng) {
  CMatrix g = ginibre(static_cast<Eigen::Index>(dims.total()), 1, rng);
  return PureState::normalized(dims, g.col(0));
}

/// Random density operator of exactly `rank` (G G^dagger / tr for a Ginibre G).
inline DensityOperator random_density(const HilbertDims& dims, int rank, Rng& rng) {
  detail::require(rank >= 1 && static_cast<std::size_t>(rank) <= dims.total(),
                  "random_density: rank out of range");
  const CMatrix g = ginibre(static_cast<Eigen::Index>(dims.total()), rank, rng);
  CMatrix m = g * g.adjoint();
  m /= m.trace().real();
  return DensityOperator(dims, m);
}

/// Product of independent Haar unitaries, one per subsystem.
inline CMatrix random_local_unitary(const HilbertDims& dims, Rng& rng) {
  CMatrix u = random_unitary(dims[0], rng);
  for (std::size_t k = 1; k < dims.size(); ++k) u = kron(u, random_unitary(dims[k], rng));
  return u;
}

inline PureState apply_unitary(const CMatrix& u, const PureState& psi) {
  return PureState::normalized(psi.dims(), u * psi.amps());
}

inline DensityOperator apply_unitary(const CMatrix& u, const DensityOperator& rho) {
  return DensityOperator::from_trusted(rho.dims(), u * rho.matrix() * u.adjoint());
}

/// Pure state with prescribed Schmidt coefficients on a dA x dB cut, rotated
/// by random local unitaries.
inline PureState state_with_schmidt(const std::vector<double>& chis, int dim_a, int dim_b,
                                    Rng& rng) {
  detail::require(static_cast<int>(chis.size()) <= std::min(dim_a, dim_b),
                  "state_with_schmidt: too many coefficients");
  CVector amps = CVector::Zero(dim_a * dim_b);
  for (std::size_t i = 0; i < chis.size(); ++i) {
    amps(static_cast<Eigen::Index>(i) * dim_b + static_cast<Eigen::Index>(i)) =
        std::sqrt(std::max(chis[i], 0.0));
  }
  const HilbertDims dims{dim_a, dim_b};
  return apply_unitary(random_local_unitary(dims, rng), PureState::normalized(dims, amps));
}

}  // namespace gwc
