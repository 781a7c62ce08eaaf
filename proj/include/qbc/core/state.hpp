#pragma once

#include <cmath>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "qbc/core/layout.hpp"
#include "qbc/core/matrix.hpp"
#include "qbc/error.hpp"

namespace qbc {

class PureState;

// Positive semidefinite, unit-trace Hermitian matrix annotated with the
// subsystem layout of the space it acts on.
class DensityMatrix {
 public:
  DensityMatrix(Matrix m, SystemLayout layout) : m_(std::move(m)), layout_(std::move(layout)) {
    check_shape();
    if (const double dev = hermitian_deviation(m_); dev > kHermitianTol) {
      std::ostringstream os;
      os << "density matrix is not Hermitian (deviation " << dev << ")";
      throw ValidationError(os.str());
    }
    m_ = hermitize(m_);
    if (const double tr = m_.trace().real(); std::abs(tr - 1.0) > kTraceTol) {
      std::ostringstream os;
      os << "density matrix trace is " << tr << ", expected 1";
      throw ValidationError(os.str());
    }
    if (const double lo = hermitian_eigenvalues(m_).minCoeff(); lo < -kEigenTol) {
      std::ostringstream os;
      os << "density matrix has negative eigenvalue " << lo;
      throw ValidationError(os.str());
    }
  }

  // Skips the spectral checks; for states produced by trusted internal maps
  // (channel outputs, partial traces) where the checks would only cost time.
  static DensityMatrix trusted(Matrix m, SystemLayout layout) {
    DensityMatrix d;
    d.m_ = hermitize(m);
    d.layout_ = std::move(layout);
    d.check_shape();
    return d;
  }

  static DensityMatrix maximally_mixed(SystemLayout layout) {
    const auto d = layout.total_dim();
    return trusted(Matrix::Identity(d, d) / static_cast<double>(d), std::move(layout));
  }

  static DensityMatrix basis(SystemLayout layout, std::size_t index) {
    const auto d = layout.total_dim();
    if (index >= d) throw ValidationError("basis index out of range");
    return trusted(basis_projector(d, index), std::move(layout));
  }

  static DensityMatrix diagonal(SystemLayout layout, const std::vector<double>& probs) {
    const auto d = layout.total_dim();
    if (probs.size() != d) throw DimensionMismatch("diagonal length does not match layout");
    Matrix m = Matrix::Zero(d, d);
    for (std::size_t i = 0; i < d; ++i) m(i, i) = probs[i];
    return DensityMatrix(std::move(m), std::move(layout));
  }

  const Matrix& matrix() const { return m_; }
  const SystemLayout& layout() const { return layout_; }
  std::size_t dim() const { return static_cast<std::size_t>(m_.rows()); }

  DensityMatrix relabeled(SystemLayout layout) const {
    if (layout.total_dim() != dim()) throw DimensionMismatch("relabel changes dimension");
    return trusted(m_, std::move(layout));
  }

 private:
  DensityMatrix() = default;

  void check_shape() const {
    if (m_.rows() != m_.cols()) throw DimensionMismatch("density matrix must be square");
    if (static_cast<std::size_t>(m_.rows()) != layout_.total_dim()) {
      std::ostringstream os;
      os << "matrix dimension " << m_.rows() << " does not match layout " << layout_.to_string();
      throw DimensionMismatch(os.str());
    }
  }

  Matrix m_;
  SystemLayout layout_;
};

class PureState {
 public:
  PureState(Vector amplitudes, SystemLayout layout)
      : v_(std::move(amplitudes)), layout_(std::move(layout)) {
    if (static_cast<std::size_t>(v_.size()) != layout_.total_dim())
      throw DimensionMismatch("amplitude count does not match layout " + layout_.to_string());
    if (const double n2 = v_.squaredNorm(); std::abs(n2 - 1.0) > kNormTol) {
      std::ostringstream os;
      os << "pure state is not normalized (squared norm " << n2 << ")";
      throw ValidationError(os.str());
    }
  }

  static PureState normalized(Vector amplitudes, SystemLayout layout) {
    const double n = amplitudes.norm();
    if (n == 0.0) throw ValidationError("cannot normalize the zero vector");
    return PureState(amplitudes / n, std::move(layout));
  }

  static PureState basis(SystemLayout layout, std::size_t index) {
    Vector v = basis_vector(layout.total_dim(), index);
    return PureState(std::move(v), std::move(layout));
  }

  const Vector& amplitudes() const { return v_; }
  const SystemLayout& layout() const { return layout_; }
  std::size_t dim() const { return static_cast<std::size_t>(v_.size()); }

  DensityMatrix density() const { return DensityMatrix::trusted(v_ * v_.adjoint(), layout_); }

 private:
  Vector v_;
  SystemLayout layout_;
};

// Block-diagonal classical-quantum state: sum_x p(x) |x><x| (x) rho_x.
class CqState {
 public:
  CqState(std::vector<double> weights, std::vector<DensityMatrix> conditionals)
      : w_(std::move(weights)), rho_(std::move(conditionals)) {
    if (w_.empty() || w_.size() != rho_.size())
      throw ValidationError("cq state needs one weight per conditional state");
    double total = 0.0;
    for (std::size_t x = 0; x < w_.size(); ++x) {
      if (w_[x] < -kTraceTol || w_[x] > 1.0 + kTraceTol)
        throw ValidationError("cq weight " + std::to_string(x) + " outside [0,1]");
      total += w_[x];
      if (!(rho_[x].layout() == rho_.front().layout()))
        throw ValidationError("cq conditionals must share one layout");
    }
    if (std::abs(total - 1.0) > kTraceTol) {
      std::ostringstream os;
      os << "cq weights sum to " << total << ", expected 1";
      throw ValidationError(os.str());
    }
  }

  std::size_t size() const { return w_.size(); }
  const std::vector<double>& weights() const { return w_; }
  const std::vector<DensityMatrix>& conditionals() const { return rho_; }
  const SystemLayout& layout() const { return rho_.front().layout(); }

 private:
  std::vector<double> w_;
  std::vector<DensityMatrix> rho_;
};

}  // namespace qbc
