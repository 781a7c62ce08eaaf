#pragma once

#include <cmath>
#include <vector>

#include "qbc/core/ops.hpp"
#include "qbc/core/random.hpp"

namespace qbc::testing {

inline constexpr std::uint64_t kSeed = 20240611;

inline PureState epr(const std::string& a = "A", const std::string& b = "B") {
  Vector v = Vector::Zero(4);
  v(0) = v(3) = 1.0 / std::sqrt(2.0);
  return PureState(v, SystemLayout{{a, 2}, {b, 2}});
}

inline PureState ghz(const Labels& labels = {"A", "B", "C"}) {
  std::vector<Subsystem> parts;
  for (const auto& l : labels) parts.push_back({l, 2});
  const SystemLayout layout(parts);
  Vector v = Vector::Zero(layout.total_dim());
  v(0) = v(v.size() - 1) = 1.0 / std::sqrt(2.0);
  return PureState(v, layout);
}

inline PureState plus_state(const std::string& label = "A") {
  Vector v(2);
  v << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
  return PureState(v, SystemLayout{{label, 2}});
}

inline DensityMatrix diag_state(const std::string& label, std::vector<double> p) {
  return DensityMatrix::diagonal(SystemLayout{{label, p.size()}}, p);
}

inline double h2(double p) { return p <= 0 || p >= 1 ? 0.0 : -p * std::log2(p) - (1 - p) * std::log2(1 - p); }

inline double max_abs(const Matrix& m) { return m.cwiseAbs().maxCoeff(); }

// Entropy of the marginal of a pure state on the factors flagged in `keep`,
// by direct index arithmetic on the amplitude vector.
inline double pure_marginal_entropy(const Vector& psi, const std::vector<std::size_t>& dims,
                                    const std::vector<bool>& keep) {
  std::size_t dk = 1, dt = 1;
  for (std::size_t i = 0; i < dims.size(); ++i) (keep[i] ? dk : dt) *= dims[i];
  Matrix m = Matrix::Zero(dk, dt);
  for (std::size_t idx = 0; idx < dk * dt; ++idx) {
    std::size_t r = idx, ki = 0, ti = 0, kw = 1, tw = 1;
    for (std::size_t i = dims.size(); i-- > 0;) {
      const auto digit = r % dims[i];
      r /= dims[i];
      if (keep[i]) {
        ki += digit * kw;
        kw *= dims[i];
      } else {
        ti += digit * tw;
        tw *= dims[i];
      }
    }
    m(ki, ti) = psi(idx);
  }
  Eigen::JacobiSVD<Matrix> svd(m);
  double h = 0.0;
  for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i) {
    const double p = svd.singularValues()(i) * svd.singularValues()(i);
    if (p > 1e-15) h -= p * std::log2(p);
  }
  return h;
}

}  // namespace qbc::testing
