#pragma once

#include <set>
#include <string>
#include <vector>

#include "qbc/channel/kraus.hpp"
#include "qbc/core/ops.hpp"

namespace qbc {

namespace detail {

inline void require_disjoint(std::initializer_list<const Labels*> groups) {
  std::set<std::string> seen;
  for (const auto* g : groups)
    for (const auto& l : *g)
      if (!seen.insert(l).second)
        throw ValidationError("label '" + l + "' appears in more than one argument");
}

inline Labels join(const Labels& a, const Labels& b) {
  Labels out = a;
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

}  // namespace detail

// H of the marginal on `labels` (0 for the empty set).
inline double entropy(const DensityMatrix& rho, const Labels& labels) {
  if (labels.empty()) return 0.0;
  for (const auto& l : labels) rho.layout().index_of(l);
  if (labels.size() == rho.layout().size()) return von_neumann_entropy(rho);
  return von_neumann_entropy(partial_trace(rho, labels));
}

inline double conditional_entropy(const DensityMatrix& rho, const Labels& a, const Labels& b) {
  detail::require_disjoint({&a, &b});
  return entropy(rho, detail::join(a, b)) - entropy(rho, b);
}

inline double coherent_information(const DensityMatrix& rho, const Labels& a, const Labels& b) {
  return -conditional_entropy(rho, a, b);
}

inline double mutual_information(const DensityMatrix& rho, const Labels& a, const Labels& b) {
  detail::require_disjoint({&a, &b});
  return entropy(rho, a) + entropy(rho, b) - entropy(rho, detail::join(a, b));
}

inline double conditional_mutual_information(const DensityMatrix& rho, const Labels& a,
                                             const Labels& b, const Labels& c) {
  detail::require_disjoint({&a, &b, &c});
  return conditional_entropy(rho, a, c) - conditional_entropy(rho, a, detail::join(b, c));
}

// I(R>B) on (id (x) N)(phi) for a purification phi^{R A'} of rho_in.
inline double channel_coherent_information(const DensityMatrix& rho_in, const KrausChannel& ch) {
  if (rho_in.dim() != ch.input_dim())
    throw DimensionMismatch("input state " + rho_in.layout().to_string() +
                            " does not match channel input " + ch.input().to_string());
  std::string ref = "R";
  while (ch.output().contains(ref)) ref += "'";
  const PureState phi = purify(rho_in, ref);
  const auto r = phi.layout().dim(ref);
  const Matrix id = Matrix::Identity(r, r);
  const Matrix pm = phi.amplitudes() * phi.amplitudes().adjoint();
  const auto dout = r * ch.output_dim();
  Matrix out = Matrix::Zero(dout, dout);
  for (const auto& k : ch.ops()) {
    const Matrix full = kron(id, k);
    out.noalias() += full * pm * full.adjoint();
  }
  const SystemLayout layout = SystemLayout{{ref, r}}.concat(ch.output());
  return coherent_information(DensityMatrix::trusted(out, layout), {ref}, ch.output().labels());
}

// Block-diagonal embedding sum_x p(x)|x><x|^X (x) rho_x with X first.
inline DensityMatrix embed(const CqState& cq, const std::string& x_label = "X") {
  const auto nx = cq.size();
  const auto d = cq.layout().total_dim();
  Matrix m = Matrix::Zero(nx * d, nx * d);
  for (std::size_t x = 0; x < nx; ++x)
    m.block(x * d, x * d, d, d) = cq.weights()[x] * cq.conditionals()[x].matrix();
  return DensityMatrix::trusted(m, SystemLayout{{x_label, nx}}.concat(cq.layout()));
}

// H(sum p rho_x) - sum p H(rho_x), restricted to q_labels.
inline double holevo_information(const CqState& cq, const Labels& q_labels) {
  const auto& rho = cq.conditionals();
  const auto d = q_labels.empty() ? 1 : cq.layout().select(q_labels).total_dim();
  Matrix avg = Matrix::Zero(d, d);
  double inner = 0.0;
  for (std::size_t x = 0; x < cq.size(); ++x) {
    const double p = cq.weights()[x];
    if (p <= 0.0) continue;
    if (q_labels.empty()) {
      avg(0, 0) += p;
      continue;
    }
    const DensityMatrix r = partial_trace(rho[x], q_labels);
    avg += p * r.matrix();
    inner += p * von_neumann_entropy(r);
  }
  return entropy_of(hermitize(avg)) - inner;
}

inline double holevo_information(const CqState& cq) {
  return holevo_information(cq, cq.layout().labels());
}

// Same quantity through the full block-diagonal matrix.
inline double holevo_information_embedded(const CqState& cq, const Labels& q_labels) {
  std::string x = "X";
  while (cq.layout().contains(x)) x += "'";
  return mutual_information(embed(cq, x), {x}, q_labels);
}

}  // namespace qbc
