#pragma once

// Brute-force convex roofs over pure-state ensembles.
//
// A rank-r density operator rho = sum_k lambda_k |e_k><e_k| is written as
// W W^dagger with columns w_k = sqrt(lambda_k) e_k. Every ensemble of m >= r
// pure states realizing rho comes from an m x r isometry U (U^dagger U = I_r):
// the subnormalized members are t_i = sum_k U_ik w_k, with p_i = |t_i|^2.
//
// The search starts from QR-retracted random isometries and improves them by
// pattern search over 2x2 unitary mixings of member pairs (i, j). A mixing
// acts on rows i and j of U only, so every iterate is an exact isometry and
// only two members need re-evaluation per trial move.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "gwc/measures.hpp"
#include "gwc/random.hpp"

namespace gwc {

inline constexpr int kMaxRoofRank = 4;
inline constexpr std::size_t kMaxRoofDim = 16;
inline constexpr double kReconstructionTol = 1e-8;

struct OptimizerBudget {
  int restarts = 64;
  int max_iters = 200;  // sweeps over all member pairs per restart
  std::uint64_t seed = 1;
  int m_max = 0;  // largest ensemble size tried; 0 means r^2
};

enum class RoofDirection { min, max };

inline const char* to_string(RoofDirection d) { return d == RoofDirection::min ? "min" : "max"; }

using PureMeasure = std::function<double(const PureState&)>;

struct Decomposition {
  std::vector<double> probs;
  std::vector<PureState> states;

  CMatrix reconstruct() const {
    CMatrix acc = CMatrix::Zero(states.front().amps().size(), states.front().amps().size());
    for (std::size_t i = 0; i < states.size(); ++i) {
      acc += probs[i] * states[i].amps() * states[i].amps().adjoint();
    }
    return acc;
  }

  double reconstruction_error(const DensityOperator& source) const {
    return (reconstruct() - source.matrix()).norm();
  }

  double average(const PureMeasure& f) const {
    double acc = 0.0;
    for (std::size_t i = 0; i < states.size(); ++i) acc += probs[i] * f(states[i]);
    return acc;
  }
};

struct RoofResult {
  double value = 0.0;
  Decomposition best;
  RoofDirection direction = RoofDirection::min;
  int restarts_used = 0;
  bool converged = true;
};

/// Columns sqrt(lambda_k) e_k for the eigenvalues above `tol`, largest first.
inline CMatrix range_factor(const DensityOperator& rho, double tol = 1e-12) {
  const HermitianEigen eig = hermitian_eigen(rho.matrix());
  std::vector<Eigen::Index> keep;
  for (Eigen::Index k = eig.values.size(); k-- > 0;) {
    if (eig.values(k) > tol) keep.push_back(k);
  }
  CMatrix w(rho.matrix().rows(), static_cast<Eigen::Index>(keep.size()));
  for (std::size_t c = 0; c < keep.size(); ++c) {
    w.col(static_cast<Eigen::Index>(c)) = std::sqrt(eig.values(keep[c])) * eig.vectors.col(keep[c]);
  }
  return w;
}

namespace detail {

inline Decomposition decomposition_from_members(const HilbertDims& dims, const CMatrix& members) {
  Decomposition out;
  double total = 0.0;
  for (Eigen::Index i = 0; i < members.cols(); ++i) {
    const double p = members.col(i).squaredNorm();
    if (p < 1e-15) continue;
    out.probs.push_back(p);
    out.states.push_back(PureState::normalized(dims, members.col(i)));
    total += p;
  }
  for (double& p : out.probs) p /= total;
  return out;
}

}  // namespace detail

/// Ensemble induced by an m x r isometry on rho's range factor.
inline Decomposition enumerate_decomposition(const DensityOperator& rho, const CMatrix& isometry) {
  const CMatrix w = range_factor(rho);
  detail::require(isometry.cols() == w.cols(),
                  "enumerate_decomposition: isometry must have rank(rho) = " +
                      std::to_string(w.cols()) + " columns");
  detail::require(isometry.rows() >= isometry.cols(),
                  "enumerate_decomposition: isometry needs at least as many rows as columns");
  const CMatrix gram = isometry.adjoint() * isometry;
  detail::require((gram - CMatrix::Identity(gram.rows(), gram.cols())).cwiseAbs().maxCoeff() <= 1e-10,
                  "enumerate_decomposition: columns are not orthonormal");
  return detail::decomposition_from_members(rho.dims(), w * isometry.transpose());
}

namespace detail {

/// One restart of the pairwise pattern search. Returns the final isometry.
class PairSearch {
 public:
  static constexpr double kStepTol = 1e-4;
  static constexpr int kMaxPairEvals = 300;

  PairSearch(const HilbertDims& dims, const CMatrix& w, CMatrix isometry, const PureMeasure& f,
             double sign)
      : dims_(dims), u_(std::move(isometry)), f_(f), sign_(sign) {
    t_ = w * u_.transpose();
    g_.resize(static_cast<std::size_t>(t_.cols()));
    for (Eigen::Index i = 0; i < t_.cols(); ++i) g_[static_cast<std::size_t>(i)] = member_value(t_.col(i));
  }

  void run(int max_sweeps) {
    const Eigen::Index m = t_.cols();
    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
      double gained = 0.0;
      for (Eigen::Index i = 0; i < m; ++i) {
        for (Eigen::Index j = i + 1; j < m; ++j) gained += optimize_pair(i, j);
      }
      if (gained <= 1e-9 * (1.0 + std::abs(objective()))) break;
    }
  }

  double objective() const {
    double acc = 0.0;
    for (double g : g_) acc += g;
    return acc;
  }

  const CMatrix& isometry() const { return u_; }
  const CMatrix& members() const { return t_; }

 private:
  // sign * p * f(t / |t|); members with negligible weight contribute nothing.
  double member_value(const CVector& t) const {
    const double p = t.squaredNorm();
    if (p < 1e-15) return 0.0;
    return sign_ * p * f_(PureState(dims_, t / std::sqrt(p)));
  }

  struct Mixed {
    CVector a, b;
  };

  // Unitary mixing [[1, z], [-conj(z), 1]] / sqrt(1 + |z|^2); z = 0 is the identity.
  Mixed mix(Eigen::Index i, Eigen::Index j, cplx z) const {
    const double n = 1.0 / std::sqrt(1.0 + std::norm(z));
    return {n * (t_.col(i) + z * t_.col(j)), n * (t_.col(j) - std::conj(z) * t_.col(i))};
  }

  // Compass search over z = x + iy for the mixing of members i and j,
  // polling the last successful direction first. Returns the (nonnegative)
  // decrease of the signed objective.
  double optimize_pair(Eigen::Index i, Eigen::Index j) {
    static constexpr double kDirs[4][2] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    const double start = g_[static_cast<std::size_t>(i)] + g_[static_cast<std::size_t>(j)];
    double best = start;
    cplx z = 0.0;
    double best_gi = g_[static_cast<std::size_t>(i)], best_gj = g_[static_cast<std::size_t>(j)];
    double step = 0.5;
    int first = 0;
    int evals = 0;
    while (step > kStepTol && evals < kMaxPairEvals) {
      bool moved = false;
      for (int n = 0; n < 4; ++n) {
        const int k = (first + n) % 4;
        const cplx trial_z = z + step * cplx(kDirs[k][0], kDirs[k][1]);
        const Mixed trial = mix(i, j, trial_z);
        const double gi = member_value(trial.a);
        const double gj = member_value(trial.b);
        ++evals;
        if (gi + gj < best - 1e-15) {
          best = gi + gj;
          best_gi = gi;
          best_gj = gj;
          z = trial_z;
          first = k;
          moved = true;
          break;
        }
      }
      if (!moved) step *= 0.5;
    }
    if (best >= start) return 0.0;
    apply_mixing(i, j, z);
    g_[static_cast<std::size_t>(i)] = best_gi;
    g_[static_cast<std::size_t>(j)] = best_gj;
    return start - best;
  }

  void apply_mixing(Eigen::Index i, Eigen::Index j, cplx z) {
    const Mixed next = mix(i, j, z);
    t_.col(i) = next.a;
    t_.col(j) = next.b;
    const double n = 1.0 / std::sqrt(1.0 + std::norm(z));
    const Eigen::RowVectorXcd ui = u_.row(i);
    const Eigen::RowVectorXcd uj = u_.row(j);
    u_.row(i) = n * (ui + z * uj);
    u_.row(j) = n * (uj - std::conj(z) * ui);
  }

  const HilbertDims& dims_;
  CMatrix u_;
  CMatrix t_;
  std::vector<double> g_;
  const PureMeasure& f_;
  double sign_;
};

}  // namespace detail

/// Best ensemble average of `f` over decompositions of `rho`.
///
/// Restart 0 starts from the eigen-ensemble (identity isometry, m = r); the
/// remaining restarts draw QR-retracted Gaussian isometries and cycle the
/// ensemble size through r..min(r^2, m_max). Restarts reduce in index order,
/// so the result is a deterministic function of (rho, f, budget).
inline RoofResult roof_extremize(const DensityOperator& rho, const PureMeasure& f,
                                 RoofDirection direction, const OptimizerBudget& budget) {
  if (rho.dims().total() > kMaxRoofDim) {
    throw UnsupportedError("roof_extremize: total dimension " + std::to_string(rho.dims().total()) +
                           " exceeds 16");
  }
  detail::require(budget.restarts >= 1, "roof_extremize: restarts must be >= 1");
  detail::require(budget.max_iters >= 1, "roof_extremize: max_iters must be >= 1");
  const CMatrix w = range_factor(rho);
  const int r = static_cast<int>(w.cols());
  if (r > kMaxRoofRank) {
    throw UnsupportedError("roof_extremize: rank " + std::to_string(r) + " exceeds 4");
  }
  RoofResult out;
  out.direction = direction;
  if (r == 1) {
    out.best = enumerate_decomposition(rho, CMatrix::Identity(1, 1));
    out.value = f(out.best.states.front());
    return out;
  }

  const double sign = direction == RoofDirection::min ? 1.0 : -1.0;
  const int m_hi = budget.m_max > 0 ? std::max(r, std::min(r * r, budget.m_max)) : r * r;
  const int sizes = m_hi - r + 1;

  double incumbent = std::numeric_limits<double>::infinity();
  std::vector<double> history;
  history.reserve(static_cast<std::size_t>(budget.restarts));
  for (int k = 0; k < budget.restarts; ++k) {
    CMatrix start;
    if (k == 0) {
      start = CMatrix::Identity(r, r);
    } else {
      Rng rng(mix_seed(budget.seed, static_cast<std::uint64_t>(k)));
      const int m = r + (k - 1) % sizes;
      start = orthonormalize_columns(ginibre(m, r, rng));
    }
    detail::PairSearch search(rho.dims(), w, std::move(start), f, sign);
    search.run(budget.max_iters);
#ifndef NDEBUG
    {
      const CMatrix& t = search.members();
      const double err = (t * t.adjoint() - rho.matrix()).norm();
      detail::require(err <= kReconstructionTol, "roof_extremize: ensemble drifted off rho");
    }
#endif
    Decomposition dec = enumerate_decomposition(rho, search.isometry());
    const double value = sign * dec.average(f);
    if (value < incumbent) {
      incumbent = value;
      out.best = std::move(dec);
    }
    history.push_back(incumbent);
  }
  out.value = sign * incumbent;
  out.restarts_used = budget.restarts;
  const auto tail_start = static_cast<std::size_t>(std::ceil(0.75 * budget.restarts));
  if (tail_start >= 1 && tail_start < history.size()) {
    out.converged = history[tail_start - 1] - history.back() <= 1e-6;
  }
  detail::require(out.best.reconstruction_error(rho) <= kReconstructionTol,
                  "roof_extremize: best ensemble does not reconstruct rho");
  return out;
}

/// Concurrence of assistance of a two-qubit state by brute-force maximization.
inline RoofResult coa_oracle(const DensityOperator& rho, const OptimizerBudget& budget = {}) {
  detail::require(rho.dims() == HilbertDims{2, 2}, "coa_oracle: input must be two-qubit (2x2)");
  const PureMeasure conc = [](const PureState& psi) { return concurrence_pure(psi, {0}).value; };
  return roof_extremize(rho, conc, RoofDirection::max, budget);
}

}  // namespace gwc
