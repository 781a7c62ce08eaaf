#pragma once

#include <cstdint>
#include <random>

#include "qbc/core/state.hpp"

namespace qbc {

using Rng = std::mt19937_64;

inline Matrix complex_gaussian(Eigen::Index rows, Eigen::Index cols, Rng& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  Matrix g(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j)
    for (Eigen::Index i = 0; i < rows; ++i) {
      const double re = n(rng);
      const double im = n(rng);
      g(i, j) = Complex(re, im);
    }
  return g;
}

inline PureState random_pure(const SystemLayout& layout, Rng& rng) {
  return PureState::normalized(complex_gaussian(layout.total_dim(), 1, rng).col(0), layout);
}

// G G^dagger / tr, with G of shape d x rank (rank 0 means full rank).
inline DensityMatrix random_mixed(const SystemLayout& layout, Rng& rng, std::size_t rank = 0) {
  const auto d = layout.total_dim();
  const Matrix g = complex_gaussian(d, rank == 0 ? d : rank, rng);
  Matrix m = g * g.adjoint();
  m /= m.trace().real();
  return DensityMatrix::trusted(m, layout);
}

// Haar-random unitary.
inline Matrix random_unitary(std::size_t d, Rng& rng) {
  return qr_isometry(complex_gaussian(d, d, rng));
}

inline Matrix random_isometry(std::size_t rows, std::size_t cols, Rng& rng) {
  return qr_isometry(complex_gaussian(rows, cols, rng));
}

// Effect 0 <= L <= 1 with uniform spectrum in a Haar-random basis.
inline Matrix random_effect(std::size_t d, Rng& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  RealVector ev(d);
  for (std::size_t i = 0; i < d; ++i) ev(i) = u(rng);
  const Matrix q = random_unitary(d, rng);
  return hermitize(q * ev.cast<Complex>().asDiagonal() * q.adjoint());
}

}  // namespace qbc
