#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstddef>

namespace qbc {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

inline constexpr double kHermitianTol = 1e-10;
inline constexpr double kTraceTol = 1e-9;
inline constexpr double kEigenTol = 1e-9;
inline constexpr double kNormTol = 1e-10;
inline constexpr double kTracePreservingTol = 1e-9;

// Eigenvalues at or below this value contribute nothing to entropies.
inline constexpr double kEntropyClamp = 1e-12;

inline Matrix hermitize(const Matrix& m) { return (m + m.adjoint()) * 0.5; }

inline double hermitian_deviation(const Matrix& m) {
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

inline Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

inline Vector kron(const Vector& a, const Vector& b) {
  Vector out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i)
    out.segment(i * b.size(), b.size()) = a(i) * b;
  return out;
}

inline RealVector hermitian_eigenvalues(const Matrix& m) {
  if (m.rows() == 1) return RealVector::Constant(1, m(0, 0).real());
  Eigen::SelfAdjointEigenSolver<Matrix> solver(m, Eigen::EigenvaluesOnly);
  return solver.eigenvalues();
}

inline Matrix basis_projector(std::size_t dim, std::size_t index) {
  Matrix m = Matrix::Zero(dim, dim);
  m(index, index) = 1.0;
  return m;
}

inline Vector basis_vector(std::size_t dim, std::size_t index) {
  Vector v = Vector::Zero(dim);
  v(index) = 1.0;
  return v;
}

// Thin Q factor of a QR decomposition with the phases fixed so that R has a
// positive real diagonal. Maps any full-column-rank matrix onto the Stiefel
// manifold of isometries.
inline Matrix qr_isometry(const Matrix& a) {
  Eigen::HouseholderQR<Matrix> qr(a);
  Matrix q = qr.householderQ() * Matrix::Identity(a.rows(), a.cols());
  const Matrix& r = qr.matrixQR();
  for (Eigen::Index i = 0; i < a.cols(); ++i) {
    const double mag = std::abs(r(i, i));
    if (mag > 0) q.col(i) *= r(i, i) / mag;
  }
  return q;
}

}  // namespace qbc
