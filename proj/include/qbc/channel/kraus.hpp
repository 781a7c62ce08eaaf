#pragma once

#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "qbc/core/ops.hpp"
#include "qbc/core/random.hpp"

namespace qbc {

// Completely positive trace-preserving map in Kraus form.
class KrausChannel {
 public:
  KrausChannel(std::vector<Matrix> ops, SystemLayout input, SystemLayout output)
      : ops_(std::move(ops)), in_(std::move(input)), out_(std::move(output)) {
    if (ops_.empty()) throw ValidationError("channel needs at least one Kraus operator");
    const auto din = in_.total_dim();
    const auto dout = out_.total_dim();
    Matrix sum = Matrix::Zero(din, din);
    for (std::size_t i = 0; i < ops_.size(); ++i) {
      const auto& k = ops_[i];
      if (static_cast<std::size_t>(k.rows()) != dout || static_cast<std::size_t>(k.cols()) != din) {
        std::ostringstream os;
        os << "Kraus operator " << i << " has shape " << k.rows() << "x" << k.cols()
           << ", expected " << dout << "x" << din;
        throw DimensionMismatch(os.str());
      }
      sum += k.adjoint() * k;
    }
    if (const double dev = (sum - Matrix::Identity(din, din)).cwiseAbs().maxCoeff();
        dev > kTracePreservingTol) {
      std::ostringstream os;
      os << "Kraus operators are not trace preserving: max |sum K^dag K - I| = " << dev;
      throw ValidationError(os.str());
    }
  }

  static KrausChannel identity(const SystemLayout& layout) {
    const auto d = layout.total_dim();
    return KrausChannel({Matrix::Identity(d, d)}, layout, layout);
  }

  const std::vector<Matrix>& ops() const { return ops_; }
  const SystemLayout& input() const { return in_; }
  const SystemLayout& output() const { return out_; }
  std::size_t input_dim() const { return in_.total_dim(); }
  std::size_t output_dim() const { return out_.total_dim(); }

  Matrix apply(const Matrix& rho) const {
    Matrix out = Matrix::Zero(output_dim(), output_dim());
    for (const auto& k : ops_) out.noalias() += k * rho * k.adjoint();
    return hermitize(out);
  }

  // Choi matrix sum_ij |i><j| (x) N(|i><j|), input factor first.
  Matrix choi() const {
    const auto din = input_dim();
    const auto dout = output_dim();
    Matrix j = Matrix::Zero(din * dout, din * dout);
    for (const auto& k : ops_) {
      Vector v(din * dout);
      for (std::size_t i = 0; i < din; ++i) v.segment(i * dout, dout) = k.col(i);
      j.noalias() += v * v.adjoint();
    }
    return j;
  }

  KrausChannel relabeled(SystemLayout input, SystemLayout output) const {
    return KrausChannel(ops_, std::move(input), std::move(output));
  }

 private:
  std::vector<Matrix> ops_;
  SystemLayout in_;
  SystemLayout out_;
};

inline DensityMatrix apply(const KrausChannel& ch, const DensityMatrix& rho) {
  if (rho.dim() != ch.input_dim())
    throw DimensionMismatch("channel input " + ch.input().to_string() + " does not accept " +
                            rho.layout().to_string());
  return DensityMatrix::trusted(ch.apply(rho.matrix()), ch.output());
}

// Applies `ch` to the subsystem `label` of `rho`; the channel's output
// subsystems take that subsystem's place in the layout.
inline DensityMatrix apply_on(const KrausChannel& ch, const DensityMatrix& rho,
                              const std::string& label) {
  const auto& layout = rho.layout();
  const auto pos = layout.index_of(label);
  if (layout.parts()[pos].dim != ch.input_dim())
    throw DimensionMismatch("channel input dimension does not match subsystem '" + label + "'");
  std::size_t before = 1, after = 1;
  std::vector<Subsystem> parts;
  for (std::size_t i = 0; i < layout.size(); ++i) {
    if (i < pos) before *= layout.parts()[i].dim;
    if (i > pos) after *= layout.parts()[i].dim;
    if (i == pos)
      parts.insert(parts.end(), ch.output().parts().begin(), ch.output().parts().end());
    else
      parts.push_back(layout.parts()[i]);
  }
  SystemLayout out_layout(std::move(parts));
  const Matrix ib = Matrix::Identity(before, before);
  const Matrix ia = Matrix::Identity(after, after);
  const auto dout = out_layout.total_dim();
  Matrix out = Matrix::Zero(dout, dout);
  for (const auto& k : ch.ops()) {
    const Matrix full = kron(kron(ib, k), ia);
    out.noalias() += full * rho.matrix() * full.adjoint();
  }
  return DensityMatrix::trusted(out, std::move(out_layout));
}

// Stinespring isometry V: input -> output (x) env with V = sum_i K_i (x) |i>.
struct IsometricExtension {
  Matrix isometry;
  SystemLayout input;
  SystemLayout output;  // channel output followed by the environment
  SystemLayout env;

  KrausChannel as_channel() const { return KrausChannel({isometry}, input, output); }
};

inline IsometricExtension isometric_extension(const KrausChannel& ch,
                                              const std::string& env_label = "E") {
  const auto r = ch.ops().size();
  const auto dout = ch.output_dim();
  Matrix v = Matrix::Zero(dout * r, ch.input_dim());
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t o = 0; o < dout; ++o) v.row(o * r + i) = ch.ops()[i].row(o);
  SystemLayout env{{env_label, r}};
  return {std::move(v), ch.input(), ch.output().concat(env), env};
}

// Channel to the environment of the canonical isometric extension.
inline KrausChannel complementary(const KrausChannel& ch, const std::string& env_label = "E") {
  const auto r = ch.ops().size();
  std::vector<Matrix> ops;
  for (std::size_t b = 0; b < ch.output_dim(); ++b) {
    Matrix f(r, ch.input_dim());
    for (std::size_t i = 0; i < r; ++i) f.row(i) = ch.ops()[i].row(b);
    ops.push_back(std::move(f));
  }
  return KrausChannel(std::move(ops), ch.input(), SystemLayout{{env_label, r}});
}

// second o first.
inline KrausChannel compose(const KrausChannel& second, const KrausChannel& first) {
  if (first.output_dim() != second.input_dim())
    throw DimensionMismatch("cannot compose channels with mismatched dimensions");
  std::vector<Matrix> ops;
  for (const auto& b : second.ops())
    for (const auto& a : first.ops()) ops.push_back(b * a);
  return KrausChannel(std::move(ops), first.input(), second.output());
}

inline KrausChannel tensor(const KrausChannel& a, const KrausChannel& b) {
  std::vector<Matrix> ops;
  for (const auto& ka : a.ops())
    for (const auto& kb : b.ops()) ops.push_back(kron(ka, kb));
  return KrausChannel(std::move(ops), a.input().concat(b.input()), a.output().concat(b.output()));
}

// Kraus operators from the Choi eigendecomposition; the count equals the
// Choi rank, the smallest possible.
inline KrausChannel minimal_kraus(const KrausChannel& ch, double tol = 1e-12) {
  const auto din = ch.input_dim();
  const auto dout = ch.output_dim();
  Eigen::SelfAdjointEigenSolver<Matrix> es(ch.choi());
  std::vector<Matrix> ops;
  for (Eigen::Index e = es.eigenvalues().size(); e-- > 0;) {
    const double lambda = es.eigenvalues()(e);
    if (lambda <= tol) break;
    Matrix k(dout, din);
    const Vector v = std::sqrt(lambda) * es.eigenvectors().col(e);
    for (std::size_t i = 0; i < din; ++i) k.col(i) = v.segment(i * dout, dout);
    ops.push_back(std::move(k));
  }
  // Renormalize against round-off in the eigendecomposition.
  Matrix s = Matrix::Zero(din, din);
  for (const auto& k : ops) s += k.adjoint() * k;
  const Matrix fix = psd_sqrt(s).inverse();
  for (auto& k : ops) k = k * fix;
  return KrausChannel(std::move(ops), ch.input(), ch.output());
}

inline bool is_isometry(const KrausChannel& ch, double tol = 1e-9) {
  if (ch.ops().size() != 1) return false;
  const auto& v = ch.ops().front();
  return (v.adjoint() * v - Matrix::Identity(v.cols(), v.cols())).cwiseAbs().maxCoeff() <= tol;
}

inline KrausChannel completely_dephasing_channel(const SystemLayout& layout) {
  const auto d = layout.total_dim();
  std::vector<Matrix> ops;
  for (std::size_t x = 0; x < d; ++x) ops.push_back(basis_projector(d, x));
  return KrausChannel(std::move(ops), layout, layout);
}

// Trace-and-replace map rho -> tr(rho) sigma.
inline KrausChannel constant_channel(const SystemLayout& input, const DensityMatrix& sigma) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(sigma.matrix());
  std::vector<Matrix> ops;
  const auto din = input.total_dim();
  for (Eigen::Index j = 0; j < es.eigenvalues().size(); ++j) {
    const double lambda = es.eigenvalues()(j);
    if (lambda <= 1e-15) continue;
    for (std::size_t i = 0; i < din; ++i) {
      Matrix k = Matrix::Zero(sigma.dim(), din);
      k.col(i) = std::sqrt(lambda) * es.eigenvectors().col(j);
      ops.push_back(std::move(k));
    }
  }
  return KrausChannel(std::move(ops), input, sigma.layout());
}

inline KrausChannel random_channel(const SystemLayout& input, const SystemLayout& output,
                                   std::size_t kraus_count, Rng& rng) {
  const auto din = input.total_dim();
  const auto dout = output.total_dim();
  if (dout * kraus_count < din)
    throw ValidationError("random channel needs |out| * kraus_count >= |in|");
  const Matrix v = random_isometry(dout * kraus_count, din, rng);
  std::vector<Matrix> ops;
  for (std::size_t i = 0; i < kraus_count; ++i) {
    Matrix k(dout, din);
    for (std::size_t o = 0; o < dout; ++o) k.row(o) = v.row(o * kraus_count + i);
    ops.push_back(std::move(k));
  }
  return KrausChannel(std::move(ops), input, output);
}

// Zeroes every coherence between different basis states of `label`.
inline DensityMatrix completely_dephase(const DensityMatrix& rho, const std::string& label) {
  const auto& layout = rho.layout();
  const auto pos = layout.index_of(label);
  std::size_t stride = 1;
  for (std::size_t i = pos + 1; i < layout.size(); ++i) stride *= layout.parts()[i].dim;
  const auto d = layout.parts()[pos].dim;
  Matrix m = rho.matrix();
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      if ((i / stride) % d != (j / stride) % d) m(i, j) = 0.0;
  return DensityMatrix::trusted(m, layout);
}

// Spanning set of density matrices: |i><i| and the two symmetrized
// superpositions (|i>+|j>)/sqrt2, (|i>+i|j>)/sqrt2 for i<j.
inline std::vector<Matrix> probe_states(std::size_t d) {
  std::vector<Matrix> out;
  for (std::size_t i = 0; i < d; ++i) out.push_back(basis_projector(d, i));
  const double s = 1.0 / std::sqrt(2.0);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = i + 1; j < d; ++j) {
      Vector a = Vector::Zero(d), b = Vector::Zero(d);
      a(i) = s;
      a(j) = s;
      b(i) = s;
      b(j) = Complex(0.0, s);
      out.push_back(a * a.adjoint());
      out.push_back(b * b.adjoint());
    }
  return out;
}

}  // namespace qbc
