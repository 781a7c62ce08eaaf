#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <span>
#include <vector>

#include "qbc/core/state.hpp"

namespace qbc {

namespace detail {

// Offsets into the full row-major index for every combination of digits of
// the selected subsystems (last selected subsystem varies fastest).
inline std::vector<std::size_t> digit_offsets(const std::vector<std::size_t>& dims,
                                              const std::vector<std::size_t>& selected) {
  std::vector<std::size_t> stride(dims.size(), 1);
  for (std::size_t i = dims.size(); i-- > 1;) stride[i - 1] = stride[i] * dims[i];
  std::vector<std::size_t> offsets{0};
  for (const auto s : selected) {
    std::vector<std::size_t> next;
    next.reserve(offsets.size() * dims[s]);
    for (const auto base : offsets)
      for (std::size_t d = 0; d < dims[s]; ++d) next.push_back(base + d * stride[s]);
    offsets = std::move(next);
  }
  return offsets;
}

inline Matrix partial_trace_matrix(const Matrix& m, const std::vector<std::size_t>& dims,
                                   const std::vector<bool>& keep) {
  std::vector<std::size_t> kept, traced;
  for (std::size_t i = 0; i < dims.size(); ++i) (keep[i] ? kept : traced).push_back(i);
  const auto ko = digit_offsets(dims, kept);
  const auto to = digit_offsets(dims, traced);
  Matrix out = Matrix::Zero(ko.size(), ko.size());
  for (std::size_t i = 0; i < ko.size(); ++i)
    for (std::size_t j = 0; j < ko.size(); ++j) {
      Complex acc = 0.0;
      for (const auto t : to) acc += m(ko[i] + t, ko[j] + t);
      out(i, j) = acc;
    }
  return out;
}

}  // namespace detail

inline double xlog2x(double x) { return x <= kEntropyClamp ? 0.0 : x * std::log2(x); }

inline double shannon_entropy(std::span<const double> p) {
  double h = 0.0;
  for (const double x : p) h -= xlog2x(x);
  return h;
}

inline double binary_entropy(double p) { return -xlog2x(p) - xlog2x(1.0 - p); }

// Entropy (bits) of a Hermitian matrix's spectrum; eigenvalues in
// [-1e-9, 1e-12] count as zero.
inline double entropy_of(const Matrix& m) {
  const RealVector ev = hermitian_eigenvalues(m);
  double h = 0.0;
  for (Eigen::Index i = 0; i < ev.size(); ++i) h -= xlog2x(ev(i));
  return h;
}

inline double von_neumann_entropy(const DensityMatrix& rho) { return entropy_of(rho.matrix()); }

inline DensityMatrix tensor_product(const DensityMatrix& a, const DensityMatrix& b) {
  return DensityMatrix::trusted(kron(a.matrix(), b.matrix()), a.layout().concat(b.layout()));
}

inline PureState tensor_product(const PureState& a, const PureState& b) {
  return PureState::normalized(kron(a.amplitudes(), b.amplitudes()),
                               a.layout().concat(b.layout()));
}

inline DensityMatrix partial_trace(const DensityMatrix& rho, const Labels& keep) {
  const auto& layout = rho.layout();
  for (const auto& l : keep) (void)layout.index_of(l);
  std::vector<bool> mask(layout.size(), false);
  for (std::size_t i = 0; i < layout.size(); ++i)
    mask[i] = std::find(keep.begin(), keep.end(), layout.parts()[i].label) != keep.end();
  return DensityMatrix::trusted(detail::partial_trace_matrix(rho.matrix(), layout.dims(), mask),
                                layout.select(keep));
}

inline DensityMatrix trace_out(const DensityMatrix& rho, const Labels& discard) {
  for (const auto& l : discard) (void)rho.layout().index_of(l);
  Labels keep;
  for (const auto& l : rho.layout().labels())
    if (std::find(discard.begin(), discard.end(), l) == discard.end()) keep.push_back(l);
  return partial_trace(rho, keep);
}

// Unitary permutation P with P|i_0 i_1 ...> = |i_order[0] ...>, i.e. the
// subsystems of `layout` rearranged into `order`.
inline Matrix permutation_matrix(const SystemLayout& layout, const Labels& order) {
  if (order.size() != layout.size()) throw ValidationError("reorder must list every label once");
  std::vector<std::size_t> src;
  for (const auto& l : order) src.push_back(layout.index_of(l));
  const auto dims = layout.dims();
  std::vector<std::size_t> new_dims;
  for (const auto s : src) new_dims.push_back(dims[s]);
  const std::size_t n = layout.total_dim();
  Matrix p = Matrix::Zero(n, n);
  std::vector<std::size_t> digits(dims.size());
  for (std::size_t old = 0; old < n; ++old) {
    std::size_t r = old;
    for (std::size_t i = dims.size(); i-- > 0;) {
      digits[i] = r % dims[i];
      r /= dims[i];
    }
    std::size_t idx = 0;
    for (std::size_t i = 0; i < src.size(); ++i) idx = idx * new_dims[i] + digits[src[i]];
    p(idx, old) = 1.0;
  }
  return p;
}

inline DensityMatrix reorder(const DensityMatrix& rho, const Labels& order) {
  const Matrix p = permutation_matrix(rho.layout(), order);
  std::vector<Subsystem> parts;
  for (const auto& l : order) parts.push_back({l, rho.layout().dim(l)});
  return DensityMatrix::trusted(p * rho.matrix() * p.adjoint(), SystemLayout(std::move(parts)));
}

// Canonical purification sum_i sqrt(lambda_i) |i>^R |e_i>. The reference
// has the same dimension as the input (rank padded with zero amplitudes).
inline PureState purify(const DensityMatrix& rho, const std::string& reference_label = "R") {
  const std::size_t d = rho.dim();
  Eigen::SelfAdjointEigenSolver<Matrix> es(rho.matrix());
  Vector psi = Vector::Zero(d * d);
  for (std::size_t i = 0; i < d; ++i) {
    const double lambda = std::max(0.0, es.eigenvalues()(i));
    psi.segment(i * d, d) = std::sqrt(lambda) * es.eigenvectors().col(i);
  }
  SystemLayout layout = SystemLayout{{reference_label, d}}.concat(rho.layout());
  return PureState::normalized(std::move(psi), std::move(layout));
}

inline double trace_norm(const Matrix& m) {
  Eigen::JacobiSVD<Matrix> svd(m);
  return svd.singularValues().sum();
}

inline void require_same_dim(const DensityMatrix& a, const DensityMatrix& b) {
  if (a.dim() != b.dim())
    throw DimensionMismatch("states act on " + a.layout().to_string() + " and " +
                            b.layout().to_string());
}

inline double trace_distance(const DensityMatrix& rho, const DensityMatrix& sigma) {
  require_same_dim(rho, sigma);
  return trace_norm(hermitize(rho.matrix() - sigma.matrix()));
}

inline Matrix psd_sqrt(const Matrix& m) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(hermitize(m));
  RealVector ev = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  return es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().adjoint();
}

// Squared fidelity (tr sqrt(sqrt(rho) sigma sqrt(rho)))^2, computed on the
// support of whichever state has the smaller numerical rank.
inline double fidelity(const DensityMatrix& rho, const DensityMatrix& sigma) {
  require_same_dim(rho, sigma);
  Eigen::SelfAdjointEigenSolver<Matrix> ea(rho.matrix()), eb(sigma.matrix());
  auto support = [](const Eigen::SelfAdjointEigenSolver<Matrix>& es) {
    const double cut = 1e-13 * std::max(1.0, es.eigenvalues().maxCoeff());
    std::vector<Eigen::Index> idx;
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i)
      if (es.eigenvalues()(i) > cut) idx.push_back(i);
    return idx;
  };
  auto ia = support(ea), ib = support(eb);
  const bool swap = ib.size() < ia.size();
  const auto& es = swap ? eb : ea;
  const auto& idx = swap ? ib : ia;
  const Matrix& other = swap ? rho.matrix() : sigma.matrix();
  Matrix w(es.eigenvectors().rows(), static_cast<Eigen::Index>(idx.size()));
  for (std::size_t k = 0; k < idx.size(); ++k)
    w.col(k) = std::sqrt(es.eigenvalues()(idx[k])) * es.eigenvectors().col(idx[k]);
  const RealVector ev = hermitian_eigenvalues(hermitize(w.adjoint() * other * w));
  double root = 0.0;
  for (Eigen::Index i = 0; i < ev.size(); ++i) root += std::sqrt(std::max(0.0, ev(i)));
  return std::clamp(root * root, 0.0, 1.0);
}

inline double fidelity(const PureState& phi, const DensityMatrix& sigma) {
  if (phi.dim() != sigma.dim()) throw DimensionMismatch("fidelity: dimension mismatch");
  return std::clamp((phi.amplitudes().adjoint() * sigma.matrix() * phi.amplitudes())(0, 0).real(),
                    0.0, 1.0);
}

}  // namespace qbc
