#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qbc/channel/kraus.hpp"

namespace qbc {

inline const std::string kInputLabel = "A'";
inline const std::string kBobLabel = "B";
inline const std::string kCharlieLabel = "C";
inline const std::string kEnvLabel = "E";

// Environment vectors |psi_x> of a generalized dephasing isometry
// sum_x |x>^B |psi_x>^{CE} <x|. Each vector lives on C (x) E; a missing E
// factor means Charlie holds the whole environment.
struct DephasingSpec {
  std::vector<PureState> env_vectors;

  explicit DephasingSpec(std::vector<PureState> vectors) : env_vectors(std::move(vectors)) {
    if (env_vectors.empty()) throw ValidationError("dephasing spec needs at least one vector");
    const auto& layout = env_vectors.front().layout();
    if (!layout.contains(kCharlieLabel))
      throw ValidationError("dephasing environment layout must contain 'C'");
    for (const auto& l : layout.labels())
      if (l != kCharlieLabel && l != kEnvLabel)
        throw ValidationError("dephasing environment labels must be 'C' and optionally 'E'");
    if (layout.labels().front() != kCharlieLabel)
      throw ValidationError("dephasing environment layout must list 'C' before 'E'");
    for (const auto& v : env_vectors)
      if (!(v.layout() == layout))
        throw ValidationError("dephasing environment vectors must share one layout");
  }

  std::size_t alphabet_size() const { return env_vectors.size(); }
  const SystemLayout& env_layout() const { return env_vectors.front().layout(); }
  std::size_t c_dim() const { return env_layout().dim(kCharlieLabel); }
  std::size_t e_dim() const {
    return env_layout().contains(kEnvLabel) ? env_layout().dim(kEnvLabel) : 1;
  }
};

// Quantum channel A' -> B (x) C with the receivers as the two output labels.
class BroadcastChannel {
 public:
  explicit BroadcastChannel(KrausChannel channel, std::optional<DephasingSpec> dephasing = {})
      : ch_(std::move(channel)), dephasing_(std::move(dephasing)) {
    if (ch_.output().size() != 2)
      throw ValidationError("broadcast channel output must consist of exactly two receivers, got " +
                            ch_.output().to_string());
  }

  const KrausChannel& channel() const { return ch_; }
  const std::optional<DephasingSpec>& dephasing() const { return dephasing_; }
  const std::string& bob() const { return ch_.output().parts()[0].label; }
  const std::string& charlie() const { return ch_.output().parts()[1].label; }
  std::size_t input_dim() const { return ch_.input_dim(); }
  std::size_t bob_dim() const { return ch_.output().parts()[0].dim; }
  std::size_t charlie_dim() const { return ch_.output().parts()[1].dim; }

 private:
  KrausChannel ch_;
  std::optional<DephasingSpec> dephasing_;
};

namespace detail {

// Kraus operators of tr_{drop} o ch, where `drop` is one of ch's outputs.
inline KrausChannel trace_output(const KrausChannel& ch, std::size_t keep_index) {
  const auto& parts = ch.output().parts();
  const auto db = parts[0].dim;
  const auto dc = parts[1].dim;
  std::vector<Matrix> ops;
  for (const auto& k : ch.ops()) {
    if (keep_index == 0) {
      for (std::size_t c = 0; c < dc; ++c) {
        Matrix m(db, ch.input_dim());
        for (std::size_t b = 0; b < db; ++b) m.row(b) = k.row(b * dc + c);
        ops.push_back(std::move(m));
      }
    } else {
      for (std::size_t b = 0; b < db; ++b) ops.push_back(k.middleRows(b * dc, dc));
    }
  }
  return minimal_kraus(KrausChannel(std::move(ops), ch.input(), SystemLayout{parts[keep_index]}));
}

}  // namespace detail

inline std::pair<KrausChannel, KrausChannel> marginals(const BroadcastChannel& bc) {
  return {detail::trace_output(bc.channel(), 0), detail::trace_output(bc.channel(), 1)};
}

// Classical input alphabet with conditional states rho_x on B (x) C.
class CqBroadcastChannel {
 public:
  explicit CqBroadcastChannel(std::vector<DensityMatrix> conditionals)
      : rho_(std::move(conditionals)) {
    if (rho_.empty()) throw ValidationError("cq broadcast channel needs at least one input letter");
    if (rho_.front().layout().size() != 2)
      throw ValidationError("cq conditionals must live on exactly two receiver systems, got " +
                            rho_.front().layout().to_string());
    for (std::size_t x = 0; x < rho_.size(); ++x)
      if (!(rho_[x].layout() == rho_.front().layout()))
        throw ValidationError("conditional " + std::to_string(x) + " has a different layout");
  }

  std::size_t alphabet_size() const { return rho_.size(); }
  const std::vector<DensityMatrix>& conditionals() const { return rho_; }
  const SystemLayout& layout() const { return rho_.front().layout(); }
  const std::string& bob() const { return layout().parts()[0].label; }
  const std::string& charlie() const { return layout().parts()[1].label; }
  std::size_t bob_dim() const { return layout().parts()[0].dim; }
  std::size_t charlie_dim() const { return layout().parts()[1].dim; }

  std::vector<DensityMatrix> bob_states() const { return reduced(bob()); }
  std::vector<DensityMatrix> charlie_states() const { return reduced(charlie()); }

 private:
  std::vector<DensityMatrix> reduced(const std::string& label) const {
    std::vector<DensityMatrix> out;
    for (const auto& r : rho_) out.push_back(partial_trace(r, {label}));
    return out;
  }

  std::vector<DensityMatrix> rho_;
};

inline BroadcastChannel make_generalized_dephasing(const DephasingSpec& spec) {
  const auto nx = spec.alphabet_size();
  const auto dc = spec.c_dim();
  const auto de = spec.e_dim();
  std::vector<Matrix> ops;
  for (std::size_t e = 0; e < de; ++e) {
    Matrix k = Matrix::Zero(nx * dc, nx);
    for (std::size_t x = 0; x < nx; ++x)
      for (std::size_t c = 0; c < dc; ++c)
        k(x * dc + c, x) = spec.env_vectors[x].amplitudes()(c * de + e);
    ops.push_back(std::move(k));
  }
  KrausChannel ch(std::move(ops), SystemLayout{{kInputLabel, nx}},
                  SystemLayout{{kBobLabel, nx}, {kCharlieLabel, dc}});
  return BroadcastChannel(std::move(ch), spec);
}

// The 3x3 pinching whose environment (a qubit) goes entirely to Charlie:
// psi_1 = psi_2 = |0>, psi_3 = |1>.
inline DephasingSpec pinching_spec() {
  const SystemLayout c{{kCharlieLabel, 2}};
  return DephasingSpec({PureState::basis(c, 0), PureState::basis(c, 0), PureState::basis(c, 1)});
}

inline BroadcastChannel make_pinching() { return make_generalized_dephasing(pinching_spec()); }

// |x> -> |x>^B |x>^C on a qubit.
inline BroadcastChannel make_ghz_copy() {
  const SystemLayout c{{kCharlieLabel, 2}};
  return make_generalized_dephasing(DephasingSpec({PureState::basis(c, 0), PureState::basis(c, 1)}));
}

// Noiseless qubit to Bob, one-dimensional Charlie.
inline BroadcastChannel make_identity_to_bob(std::size_t d = 2) {
  return BroadcastChannel(KrausChannel({Matrix::Identity(d, d)}, SystemLayout{{kInputLabel, d}},
                                       SystemLayout{{kBobLabel, d}, {kCharlieLabel, 1}}));
}

// Restriction of a broadcast channel to computational-basis inputs.
inline CqBroadcastChannel classical_input(const BroadcastChannel& bc) {
  std::vector<DensityMatrix> rho;
  for (std::size_t x = 0; x < bc.input_dim(); ++x)
    rho.push_back(apply(bc.channel(), DensityMatrix::basis(bc.channel().input(), x)));
  return CqBroadcastChannel(std::move(rho));
}

// k parallel uses, with outputs regrouped as B^k (x) C^k and presented as
// single receiver systems of dimension |B|^k and |C|^k.
inline BroadcastChannel tensor_power(const BroadcastChannel& bc, std::size_t k) {
  if (k < 1) throw ValidationError("blocklength k must be at least 1");
  if (k == 1) return bc;
  const auto db = bc.bob_dim();
  const auto dc = bc.charlie_dim();
  std::vector<Subsystem> parts;
  Labels order;
  for (std::size_t i = 0; i < k; ++i) {
    parts.push_back({"B" + std::to_string(i), db});
    parts.push_back({"C" + std::to_string(i), dc});
  }
  for (std::size_t i = 0; i < k; ++i) order.push_back("B" + std::to_string(i));
  for (std::size_t i = 0; i < k; ++i) order.push_back("C" + std::to_string(i));
  const Matrix perm = permutation_matrix(SystemLayout(parts), order);
  std::vector<Matrix> ops = bc.channel().ops();
  for (std::size_t i = 1; i < k; ++i) {
    std::vector<Matrix> next;
    for (const auto& a : ops)
      for (const auto& b : bc.channel().ops()) next.push_back(kron(a, b));
    ops = std::move(next);
  }
  for (auto& op : ops) op = perm * op;
  std::size_t din = 1, dbk = 1, dck = 1;
  for (std::size_t i = 0; i < k; ++i) {
    din *= bc.input_dim();
    dbk *= db;
    dck *= dc;
  }
  KrausChannel ch(std::move(ops), SystemLayout{{bc.channel().input().parts()[0].label, din}},
                  SystemLayout{{bc.bob(), dbk}, {bc.charlie(), dck}});
  return BroadcastChannel(minimal_kraus(ch));
}

// Letters x^k in lexicographic order (x_1 most significant).
inline CqBroadcastChannel tensor_power(const CqBroadcastChannel& w, std::size_t k) {
  if (k < 1) throw ValidationError("blocklength k must be at least 1");
  if (k == 1) return w;
  const auto db = w.bob_dim();
  const auto dc = w.charlie_dim();
  std::vector<Subsystem> parts;
  Labels order;
  for (std::size_t i = 0; i < k; ++i) {
    parts.push_back({"B" + std::to_string(i), db});
    parts.push_back({"C" + std::to_string(i), dc});
  }
  for (std::size_t i = 0; i < k; ++i) order.push_back("B" + std::to_string(i));
  for (std::size_t i = 0; i < k; ++i) order.push_back("C" + std::to_string(i));
  const Matrix perm = permutation_matrix(SystemLayout(parts), order);
  std::vector<Matrix> states;
  for (const auto& r : w.conditionals()) states.push_back(r.matrix());
  for (std::size_t i = 1; i < k; ++i) {
    std::vector<Matrix> next;
    for (const auto& a : states)
      for (const auto& r : w.conditionals()) next.push_back(kron(a, r.matrix()));
    states = std::move(next);
  }
  std::size_t dbk = 1, dck = 1;
  for (std::size_t i = 0; i < k; ++i) {
    dbk *= db;
    dck *= dc;
  }
  const SystemLayout layout{{w.bob(), dbk}, {w.charlie(), dck}};
  std::vector<DensityMatrix> out;
  for (const auto& s : states) out.push_back(DensityMatrix::trusted(perm * s * perm.adjoint(), layout));
  return CqBroadcastChannel(std::move(out));
}

// Named cq channels used by tests and the CLI.
inline CqBroadcastChannel make_noiseless_bit_cq() {
  const SystemLayout layout{{kBobLabel, 2}, {kCharlieLabel, 2}};
  return CqBroadcastChannel({DensityMatrix::basis(layout, 0), DensityMatrix::basis(layout, 3)});
}

inline CqBroadcastChannel make_constant_cq(std::size_t letters = 2) {
  const SystemLayout layout{{kBobLabel, 2}, {kCharlieLabel, 2}};
  return CqBroadcastChannel(
      std::vector<DensityMatrix>(letters, DensityMatrix::diagonal(layout, {0.4, 0.1, 0.3, 0.2})));
}

inline CqBroadcastChannel make_pinching_cq() { return classical_input(make_pinching()); }

// Classical cascade X -> Y -> Z embedded as diagonal conditionals
// rho_x = sum_{y,z} p(y|x) p(z|y) |y><y| (x) |z><z|. Matrices are column
// stochastic: p_y_given_x(y, x).
inline CqBroadcastChannel make_classical_cascade_cq(const Eigen::MatrixXd& p_y_given_x,
                                                    const Eigen::MatrixXd& p_z_given_y) {
  const auto ny = static_cast<std::size_t>(p_y_given_x.rows());
  const auto nz = static_cast<std::size_t>(p_z_given_y.rows());
  if (static_cast<std::size_t>(p_z_given_y.cols()) != ny)
    throw DimensionMismatch("p(z|y) must have one column per y");
  const SystemLayout layout{{kBobLabel, ny}, {kCharlieLabel, nz}};
  std::vector<DensityMatrix> rho;
  for (Eigen::Index x = 0; x < p_y_given_x.cols(); ++x) {
    std::vector<double> diag(ny * nz);
    for (std::size_t y = 0; y < ny; ++y)
      for (std::size_t z = 0; z < nz; ++z) diag[y * nz + z] = p_y_given_x(y, x) * p_z_given_y(z, y);
    rho.push_back(DensityMatrix::diagonal(layout, diag));
  }
  return CqBroadcastChannel(std::move(rho));
}

inline Eigen::MatrixXd binary_symmetric(double flip) {
  Eigen::MatrixXd m(2, 2);
  m << 1.0 - flip, flip, flip, 1.0 - flip;
  return m;
}

}  // namespace qbc
