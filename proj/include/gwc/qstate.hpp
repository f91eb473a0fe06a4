#pragma once

// Multipartite states over a tensor-factored Hilbert space.
//
// Subsystem ordering is big-endian: subsystem 0 is the leftmost ket label, so
// |100> on 2x2x2 has flat index 4.

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "gwc/errors.hpp"
#include "gwc/linalg.hpp"

namespace gwc {

inline constexpr double kHermitianTol = 1e-10;
inline constexpr double kTraceTol = 1e-10;
inline constexpr double kNegativeEigTol = 1e-10;
inline constexpr double kNormTol = 1e-10;
inline constexpr double kSchmidtDropTol = 1e-12;
inline constexpr std::size_t kMaxTotalDim = 1024;

/// Ordered local dimensions d_1..d_N of a multipartite system.
class HilbertDims {
 public:
  HilbertDims() = default;
  HilbertDims(std::initializer_list<int> dims) : HilbertDims(std::vector<int>(dims)) {}
  explicit HilbertDims(std::vector<int> dims) : dims_(std::move(dims)) {
    detail::require(!dims_.empty(), "HilbertDims: at least one subsystem required");
    total_ = 1;
    for (int d : dims_) {
      detail::require(d >= 2, "HilbertDims: every local dimension must be >= 2");
      total_ *= static_cast<std::size_t>(d);
      detail::require(total_ <= kMaxTotalDim, "HilbertDims: total dimension exceeds 1024");
    }
  }

  std::size_t size() const { return dims_.size(); }
  int operator[](std::size_t k) const { return dims_[k]; }
  std::size_t total() const { return total_; }
  const std::vector<int>& values() const { return dims_; }
  bool all_qubits() const {
    return std::all_of(dims_.begin(), dims_.end(), [](int d) { return d == 2; });
  }

  /// Dimensions of the listed subsystems, in the listed (sorted) order.
  HilbertDims restricted(const std::vector<int>& keep) const {
    std::vector<int> out;
    out.reserve(keep.size());
    for (int k : keep) out.push_back(dims_[static_cast<std::size_t>(k)]);
    return HilbertDims(std::move(out));
  }

  std::string to_string() const {
    std::string s;
    for (std::size_t k = 0; k < dims_.size(); ++k) {
      if (k) s += "x";
      s += std::to_string(dims_[k]);
    }
    return s;
  }

  friend bool operator==(const HilbertDims& a, const HilbertDims& b) { return a.dims_ == b.dims_; }

 private:
  std::vector<int> dims_;
  std::size_t total_ = 0;
};

namespace detail {

/// Sorted, deduplicated, validated subsystem group. When `proper` is set the
/// group must also leave at least one subsystem outside it.
inline std::vector<int> checked_group(const HilbertDims& dims, std::vector<int> group, bool proper,
                                      const char* what) {
  std::sort(group.begin(), group.end());
  group.erase(std::unique(group.begin(), group.end()), group.end());
  require(!group.empty(), std::string(what) + ": subsystem set must be nonempty");
  for (int k : group) {
    require(k >= 0 && static_cast<std::size_t>(k) < dims.size(),
            std::string(what) + ": subsystem index " + std::to_string(k) + " out of range");
  }
  if (proper) {
    require(group.size() < dims.size(),
            std::string(what) + ": subsystem set must be a proper subset");
  }
  return group;
}

inline std::vector<int> complement(const HilbertDims& dims, const std::vector<int>& group) {
  std::vector<int> out;
  for (int k = 0; k < static_cast<int>(dims.size()); ++k) {
    if (!std::binary_search(group.begin(), group.end(), k)) out.push_back(k);
  }
  return out;
}

/// Flat-index offsets of every configuration of `group`, so that a full index
/// is offsets(group)[a] + offsets(rest)[b].
inline std::vector<std::size_t> group_offsets(const HilbertDims& dims,
                                              const std::vector<int>& group) {
  std::vector<std::size_t> stride(dims.size());
  std::size_t s = 1;
  for (std::size_t k = dims.size(); k-- > 0;) {
    stride[k] = s;
    s *= static_cast<std::size_t>(dims[k]);
  }
  std::vector<std::size_t> offsets{0};
  for (int k : group) {
    std::vector<std::size_t> next;
    next.reserve(offsets.size() * static_cast<std::size_t>(dims[static_cast<std::size_t>(k)]));
    for (std::size_t base : offsets) {
      for (int v = 0; v < dims[static_cast<std::size_t>(k)]; ++v) {
        next.push_back(base + static_cast<std::size_t>(v) * stride[static_cast<std::size_t>(k)]);
      }
    }
    offsets = std::move(next);
  }
  return offsets;
}

}  // namespace detail

class DensityOperator;

/// Normalized amplitude vector over `dims`.
class PureState {
 public:
  /// `amps` must already be normalized within 1e-10; it is rescaled to unit norm.
  PureState(HilbertDims dims, CVector amps) : dims_(std::move(dims)), amps_(std::move(amps)) {
    detail::require(static_cast<std::size_t>(amps_.size()) == dims_.total(),
                    "PureState: amplitude count " + std::to_string(amps_.size()) +
                        " does not match dims " + dims_.to_string());
    const double n = amps_.norm();
    detail::require(std::abs(n - 1.0) <= kNormTol, "PureState: amplitudes are not normalized");
    amps_ /= n;
  }

  /// Normalizes any nonzero vector.
  static PureState normalized(HilbertDims dims, CVector amps) {
    const double n = amps.norm();
    detail::require(n > 1e-300 && std::isfinite(n), "PureState: zero or non-finite vector");
    amps /= n;
    return PureState(std::move(dims), std::move(amps));
  }

  const HilbertDims& dims() const { return dims_; }
  const CVector& amps() const { return amps_; }
  std::size_t parties() const { return dims_.size(); }

  DensityOperator density() const;

 private:
  HilbertDims dims_;
  CVector amps_;
};

/// Hermitian, unit-trace, positive semidefinite operator over `dims`.
class DensityOperator {
 public:
  DensityOperator(HilbertDims dims, CMatrix mat) : dims_(std::move(dims)), mat_(std::move(mat)) {
    const auto n = static_cast<Eigen::Index>(dims_.total());
    detail::require(mat_.rows() == n && mat_.cols() == n,
                    "DensityOperator: matrix size does not match dims " + dims_.to_string());
    detail::require(mat_.allFinite(), "DensityOperator: non-finite entries");
    detail::require(hermiticity_defect(mat_) <= kHermitianTol, "DensityOperator: not Hermitian");
    detail::require(std::abs(mat_.trace() - cplx(1.0)) <= kTraceTol,
                    "DensityOperator: trace is not 1");
    mat_ = hermitian_part(mat_);
    const RVector ev = hermitian_eigenvalues(mat_);
    detail::require(ev.minCoeff() >= -kNegativeEigTol,
                    "DensityOperator: not positive semidefinite");
  }

  /// Skips the spectral check. For matrices that are density operators by
  /// construction (partial traces, mixtures of valid states).
  static DensityOperator from_trusted(HilbertDims dims, CMatrix mat) {
    DensityOperator out;
    out.dims_ = std::move(dims);
    out.mat_ = hermitian_part(mat);
    return out;
  }

  static DensityOperator mixture(const std::vector<double>& weights,
                                 const std::vector<DensityOperator>& parts) {
    detail::require(!parts.empty() && weights.size() == parts.size(),
                    "mixture: weights and parts must have equal nonzero length");
    CMatrix acc = CMatrix::Zero(parts[0].matrix().rows(), parts[0].matrix().cols());
    for (std::size_t i = 0; i < parts.size(); ++i) {
      detail::require(parts[i].dims() == parts[0].dims(), "mixture: dims differ");
      detail::require(weights[i] >= 0.0, "mixture: negative weight");
      acc += weights[i] * parts[i].matrix();
    }
    return DensityOperator(parts[0].dims(), acc);
  }

  const HilbertDims& dims() const { return dims_; }
  const CMatrix& matrix() const { return mat_; }
  std::size_t parties() const { return dims_.size(); }

  /// Eigenvalues ascending, with roundoff negatives in [-1e-10, 0) set to 0.
  RVector spectrum() const {
    RVector ev = hermitian_eigenvalues(mat_);
    for (auto& v : ev) {
      detail::require(v >= -kNegativeEigTol, "DensityOperator: eigenvalue below -1e-10");
      if (v < 0.0) v = 0.0;
    }
    return ev;
  }

  /// Number of eigenvalues above `tol`.
  int rank(double tol = 1e-12) const {
    const RVector ev = hermitian_eigenvalues(mat_);
    return static_cast<int>((ev.array() > tol).count());
  }

 private:
  DensityOperator() = default;
  HilbertDims dims_;
  CMatrix mat_;
};

inline DensityOperator PureState::density() const {
  return DensityOperator::from_trusted(dims_, amps_ * amps_.adjoint());
}

inline DensityOperator partial_trace(const DensityOperator& rho, std::vector<int> keep) {
  const HilbertDims& dims = rho.dims();
  keep = detail::checked_group(dims, std::move(keep), true, "partial_trace");
  const std::vector<int> traced = detail::complement(dims, keep);
  const auto ko = detail::group_offsets(dims, keep);
  const auto to = detail::group_offsets(dims, traced);
  const auto n = static_cast<Eigen::Index>(ko.size());
  CMatrix out = CMatrix::Zero(n, n);
  const CMatrix& m = rho.matrix();
  for (Eigen::Index a = 0; a < n; ++a) {
    for (Eigen::Index b = 0; b < n; ++b) {
      cplx acc = 0.0;
      for (std::size_t t : to) {
        acc += m(static_cast<Eigen::Index>(ko[static_cast<std::size_t>(a)] + t),
                 static_cast<Eigen::Index>(ko[static_cast<std::size_t>(b)] + t));
      }
      out(a, b) = acc;
    }
  }
  return DensityOperator::from_trusted(dims.restricted(keep), out);
}

/// Reduced state of a pure input on `keep`, computed from the amplitudes as M M^dagger.
inline DensityOperator reduced_density(const PureState& psi, std::vector<int> keep) {
  const HilbertDims& dims = psi.dims();
  keep = detail::checked_group(dims, std::move(keep), true, "reduced_density");
  const std::vector<int> traced = detail::complement(dims, keep);
  const auto ko = detail::group_offsets(dims, keep);
  const auto to = detail::group_offsets(dims, traced);
  CMatrix m(static_cast<Eigen::Index>(ko.size()), static_cast<Eigen::Index>(to.size()));
  for (std::size_t a = 0; a < ko.size(); ++a) {
    for (std::size_t b = 0; b < to.size(); ++b) {
      m(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) =
          psi.amps()(static_cast<Eigen::Index>(ko[a] + to[b]));
    }
  }
  return DensityOperator::from_trusted(dims.restricted(keep), m * m.adjoint());
}

/// Squared Schmidt coefficients of a bipartite cut, nonincreasing. Entries
/// below 1e-12 are dropped and the remainder renormalized to sum 1.
class SchmidtSpectrum {
 public:
  /// Builds a spectrum from raw eigenvalues; negatives in [-1e-10, 0) are
  /// clipped, anything more negative is rejected.
  static SchmidtSpectrum from_values(std::vector<double> raw) {
    std::vector<double> kept;
    for (double v : raw) {
      detail::require(std::isfinite(v), "SchmidtSpectrum: non-finite value");
      detail::require(v >= -kNegativeEigTol, "SchmidtSpectrum: eigenvalue below -1e-10");
      if (v >= kSchmidtDropTol) kept.push_back(std::min(v, 1.0));
    }
    detail::require(!kept.empty(), "SchmidtSpectrum: no positive entries");
    const double total = std::accumulate(kept.begin(), kept.end(), 0.0);
    for (double& v : kept) v /= total;
    std::sort(kept.begin(), kept.end(), std::greater<>());
    SchmidtSpectrum out;
    out.chis_ = std::move(kept);
    return out;
  }

  const std::vector<double>& chis() const { return chis_; }
  std::size_t rank() const { return chis_.size(); }
  bool separable() const { return chis_.size() == 1; }

 private:
  std::vector<double> chis_;
};

inline SchmidtSpectrum schmidt_spectrum(const PureState& psi, std::vector<int> first) {
  const RVector ev = hermitian_eigenvalues(reduced_density(psi, std::move(first)).matrix());
  return SchmidtSpectrum::from_values(std::vector<double>(ev.begin(), ev.end()));
}

/// sigma_y (x) sigma_y as a real matrix in the computational basis.
inline CMatrix sigma_yy() {
  CMatrix s = CMatrix::Zero(4, 4);
  s(0, 3) = -1.0;
  s(1, 2) = 1.0;
  s(2, 1) = 1.0;
  s(3, 0) = -1.0;
  return s;
}

/// (sigma_y (x) sigma_y) rho^* (sigma_y (x) sigma_y) for a two-qubit operator.
inline CMatrix spin_flip(const DensityOperator& rho) {
  detail::require(rho.dims() == HilbertDims{2, 2}, "spin_flip: input must be two-qubit (2x2)");
  const CMatrix s = sigma_yy();
  return s * rho.matrix().conjugate() * s;
}

inline double trace_distance_frobenius(const CMatrix& a, const CMatrix& b) { return (a - b).norm(); }

/// Kronecker product of two state vectors (big-endian: `a` is the left factor).
inline PureState tensor(const PureState& a, const PureState& b) {
  std::vector<int> dims = a.dims().values();
  dims.insert(dims.end(), b.dims().values().begin(), b.dims().values().end());
  CVector out(a.amps().size() * b.amps().size());
  for (Eigen::Index i = 0; i < a.amps().size(); ++i) {
    out.segment(i * b.amps().size(), b.amps().size()) = a.amps()(i) * b.amps();
  }
  return PureState::normalized(HilbertDims(std::move(dims)), std::move(out));
}

inline CMatrix kron(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

inline DensityOperator tensor(const DensityOperator& a, const DensityOperator& b) {
  std::vector<int> dims = a.dims().values();
  dims.insert(dims.end(), b.dims().values().begin(), b.dims().values().end());
  return DensityOperator::from_trusted(HilbertDims(std::move(dims)), kron(a.matrix(), b.matrix()));
}

}  // namespace gwc
