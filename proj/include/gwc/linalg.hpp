#pragma once

// Small dense complex linear algebra used throughout the toolkit.
// Matrices here never exceed dimension 32 except for reduced states of
// pure inputs (total dimension <= 1024), so accuracy is preferred over speed.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>

#include "gwc/errors.hpp"

namespace gwc {

using cplx = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RVector = Eigen::VectorXd;

struct HermitianEigen {
  RVector values;   // ascending
  CMatrix vectors;  // columns are eigenvectors
};

/// Eigenvalues of a Hermitian matrix, ascending. Only the lower triangle is read.
inline RVector hermitian_eigenvalues(const CMatrix& m) {
  if (m.rows() == 1) return RVector::Constant(1, m(0, 0).real());
  if (m.rows() == 2) {
    // closed form; avoids solver setup in the hot roof loop
    const double a = m(0, 0).real();
    const double d = m(1, 1).real();
    const double half_gap = std::hypot(0.5 * (a - d), std::abs(m(1, 0)));
    const double mean = 0.5 * (a + d);
    RVector out(2);
    out << mean - half_gap, mean + half_gap;
    return out;
  }
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(m, Eigen::EigenvaluesOnly);
  return solver.eigenvalues();
}

inline HermitianEigen hermitian_eigen(const CMatrix& m) {
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(m, Eigen::ComputeEigenvectors);
  if (solver.info() != Eigen::Success) throw DomainError("hermitian eigensolver did not converge");
  return {solver.eigenvalues(), solver.eigenvectors()};
}

inline double hermiticity_defect(const CMatrix& m) {
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

inline CMatrix hermitian_part(const CMatrix& m) { return 0.5 * (m + m.adjoint()); }

/// Orthonormalizes the columns of an arbitrary full-column-rank matrix (thin QR,
/// with the phase of R's diagonal fixed so the map is well defined).
inline CMatrix orthonormalize_columns(const CMatrix& a) {
  Eigen::HouseholderQR<CMatrix> qr(a);
  CMatrix q = qr.householderQ() * CMatrix::Identity(a.rows(), a.cols());
  const CMatrix r = qr.matrixQR().topRows(a.cols()).template triangularView<Eigen::Upper>();
  for (Eigen::Index k = 0; k < a.cols(); ++k) {
    const cplx d = r(k, k);
    const double mag = std::abs(d);
    if (mag < 1e-14) throw DomainError("matrix does not have full column rank");
    q.col(k) *= d / mag;
  }
  return q;
}

/// Singular values, descending.
inline RVector singular_values(const CMatrix& m) {
  Eigen::JacobiSVD<CMatrix> svd(m);
  return svd.singularValues();
}

}  // namespace gwc
