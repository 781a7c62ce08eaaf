#pragma once

#include <string>
#include <vector>

#include "qbc/channel/broadcast.hpp"
#include "qbc/info/quantities.hpp"
#include "qbc/region/optimizer.hpp"
#include "qbc/region/types.hpp"

namespace qbc {

// Raw rates at one parameter point. `use_bob` selects whether I(T;B)
// constrains the common rate (it does not on certified degraded channels).
struct Evaluation {
  double personal = 0.0;
  double common_b = 0.0;
  double common_c = 0.0;
  bool use_bob = true;

  double common() const { return use_bob ? std::min(common_b, common_c) : common_c; }

  double violation(double r) const {
    const double vc = std::max(0.0, r - common_c);
    const double vb = use_bob ? std::max(0.0, r - common_b) : 0.0;
    return vc * vc + vb * vb;
  }
};

namespace detail {

inline double conditional_mixture_term(const MixtureEntropy& h, const double* joint,
                                       std::size_t t_size, std::size_t nx, double* avg_out) {
  // Returns sum_t p_t H(sum_x p(x|t) rho_x); accumulates the average weights.
  double total = 0.0;
  std::vector<double> cond(nx);
  for (std::size_t t = 0; t < t_size; ++t) {
    double pt = 0.0;
    for (std::size_t x = 0; x < nx; ++x) pt += joint[t * nx + x];
    if (pt <= 0.0) continue;
    for (std::size_t x = 0; x < nx; ++x) {
      cond[x] = joint[t * nx + x] / pt;
      if (avg_out) avg_out[x] += joint[t * nx + x];
    }
    total += pt * h(cond.data());
  }
  return total;
}

inline RealVector gaussian_vector(std::size_t n, double scale, Rng& rng) {
  std::normal_distribution<double> g(0.0, scale);
  RealVector v(n);
  for (std::size_t i = 0; i < n; ++i) v(i) = g(rng);
  return v;
}

}  // namespace detail

// Rates I(X;B|T), I(T;B), I(T;C) of a cq broadcast channel over p(t,x).
class CqRateModel {
 public:
  CqRateModel(const CqBroadcastChannel& w, std::size_t t_size, bool certified, std::size_t k,
              std::string region)
      : bob_(matrices(w.bob_states())),
        charlie_(matrices(w.charlie_states())),
        nx_(w.alphabet_size()),
        t_(t_size),
        k_(k),
        certified_(certified),
        region_(std::move(region)) {}

  std::size_t num_params() const { return t_ * nx_; }
  std::size_t t_size() const { return t_; }
  const std::string& region() const { return region_; }

  Evaluation evaluate_joint(const std::vector<double>& joint) const {
    std::vector<double> px(nx_, 0.0);
    const double hb_t = detail::conditional_mixture_term(bob_, joint.data(), t_, nx_, px.data());
    const double hc_t = detail::conditional_mixture_term(charlie_, joint.data(), t_, nx_, nullptr);
    double hb_x = 0.0;
    for (std::size_t x = 0; x < nx_; ++x) {
      double p = 0.0;
      for (std::size_t t = 0; t < t_; ++t) p += joint[t * nx_ + x];
      hb_x += p * bob_.component(x);
    }
    const double kk = static_cast<double>(k_);
    Evaluation e;
    e.personal = (hb_t - hb_x) / kk;
    e.common_b = (bob_(px.data()) - hb_t) / kk;
    e.common_c = (charlie_(px.data()) - hc_t) / kk;
    e.use_bob = !certified_;
    return e;
  }

  std::vector<double> joint(const RealVector& theta) const { return softmax(theta.data(), t_ * nx_); }

  Evaluation evaluate(const RealVector& theta) const { return evaluate_joint(joint(theta)); }

  RealVector random_start(Rng& rng) const { return detail::gaussian_vector(num_params(), 2.0, rng); }

  Witness witness(const RealVector& theta, const Evaluation& e) const {
    Witness w;
    w.region = region_;
    w.k = k_;
    w.t_size = t_;
    w.x_size = nx_;
    w.joint = joint(theta);
    w.common = e.common();
    w.personal = e.personal;
    return w;
  }

 private:
  static std::vector<Matrix> matrices(const std::vector<DensityMatrix>& states) {
    std::vector<Matrix> out;
    for (const auto& s : states) out.push_back(s.matrix());
    return out;
  }

  MixtureEntropy bob_;
  MixtureEntropy charlie_;
  std::size_t nx_, t_, k_;
  bool certified_;
  std::string region_;
};

// Rates over pure-state ensembles {p(t), phi_t^{A''A'}}: only the input
// marginals rho_t matter, with I(A>B)_t = H(N_B(rho_t)) - H(N_B^c(rho_t)).
class EnsembleRateModel {
 public:
  EnsembleRateModel(const BroadcastChannel& bc, std::size_t t_size, std::size_t k,
                    std::string region)
      : t_(t_size), k_(k), d_(bc.input_dim()), region_(std::move(region)) {
    auto [to_b, to_c] = marginals(bc);
    to_b_ = std::move(to_b);
    to_c_ = std::move(to_c);
    env_b_ = complementary(to_b_);
  }

  std::size_t num_params() const { return t_ + 2 * t_ * d_ * d_; }
  std::size_t t_size() const { return t_; }

  std::vector<Matrix> amplitude_matrices(const RealVector& theta) const {
    std::vector<Matrix> out;
    for (std::size_t t = 0; t < t_; ++t) {
      Matrix m(d_, d_);
      const double* base = theta.data() + t_ + 2 * t * d_ * d_;
      for (std::size_t i = 0; i < d_ * d_; ++i) m(i / d_, i % d_) = Complex(base[2 * i], base[2 * i + 1]);
      const double n = m.norm();
      out.push_back(n > 0 ? Matrix(m / n) : Matrix(Matrix::Identity(d_, d_) / std::sqrt(double(d_))));
    }
    return out;
  }

  Evaluation evaluate_inputs(const std::vector<double>& pt, const std::vector<Matrix>& rho) const {
    Matrix avg_b = Matrix::Zero(to_b_.output_dim(), to_b_.output_dim());
    Matrix avg_c = Matrix::Zero(to_c_.output_dim(), to_c_.output_dim());
    double personal = 0.0, hb = 0.0, hc = 0.0;
    for (std::size_t t = 0; t < pt.size(); ++t) {
      if (pt[t] <= 0.0) continue;
      const Matrix b = hermitize(to_b_.apply(rho[t]));
      const Matrix c = hermitize(to_c_.apply(rho[t]));
      const double hbt = entropy_of(b);
      personal += pt[t] * (hbt - entropy_of(hermitize(env_b_.apply(rho[t]))));
      hb += pt[t] * hbt;
      hc += pt[t] * entropy_of(c);
      avg_b += pt[t] * b;
      avg_c += pt[t] * c;
    }
    const double kk = static_cast<double>(k_);
    Evaluation e;
    e.personal = personal / kk;
    e.common_b = (entropy_of(hermitize(avg_b)) - hb) / kk;
    e.common_c = (entropy_of(hermitize(avg_c)) - hc) / kk;
    return e;
  }

  Evaluation evaluate(const RealVector& theta) const {
    const auto pt = softmax(theta.data(), t_);
    std::vector<Matrix> rho;
    for (const auto& m : amplitude_matrices(theta)) rho.push_back(m * m.adjoint());
    return evaluate_inputs(pt, rho);
  }

  RealVector random_start(Rng& rng) const { return detail::gaussian_vector(num_params(), 1.0, rng); }

  // |phi_t> with amplitude (a'', a') = M(a', a'').
  Witness witness(const RealVector& theta, const Evaluation& e) const {
    Witness w;
    w.region = region_;
    w.k = k_;
    w.t_size = t_;
    w.weights = softmax(theta.data(), t_);
    for (const auto& m : amplitude_matrices(theta)) {
      Vector v(d_ * d_);
      for (std::size_t a2 = 0; a2 < d_; ++a2)
        for (std::size_t a1 = 0; a1 < d_; ++a1) v(a2 * d_ + a1) = m(a1, a2);
      w.states.push_back(v);
    }
    w.common = e.common();
    w.personal = e.personal;
    return w;
  }

 private:
  std::size_t t_, k_, d_;
  std::string region_;
  KrausChannel to_b_ = KrausChannel::identity(SystemLayout{{"_", 1}});
  KrausChannel to_c_ = KrausChannel::identity(SystemLayout{{"_", 1}});
  KrausChannel env_b_ = KrausChannel::identity(SystemLayout{{"_", 1}});
};

// Rates H(X|T) - H(CE|T) and I(T;C) of a generalized dephasing channel.
class DephasingRateModel {
 public:
  DephasingRateModel(const DephasingSpec& spec, std::size_t t_size, std::string region)
      : env_(env_states(spec, false)),
        charlie_(env_states(spec, true)),
        nx_(spec.alphabet_size()),
        t_(t_size),
        region_(std::move(region)) {}

  std::size_t num_params() const { return t_ * nx_; }
  std::size_t t_size() const { return t_; }

  Evaluation evaluate_joint(const std::vector<double>& joint) const {
    std::vector<double> px(nx_, 0.0), cond(nx_);
    double hx_t = 0.0;
    for (std::size_t t = 0; t < t_; ++t) {
      double pt = 0.0;
      for (std::size_t x = 0; x < nx_; ++x) pt += joint[t * nx_ + x];
      if (pt <= 0.0) continue;
      for (std::size_t x = 0; x < nx_; ++x) cond[x] = joint[t * nx_ + x] / pt;
      hx_t += pt * shannon_entropy(cond);
    }
    const double he_t = detail::conditional_mixture_term(env_, joint.data(), t_, nx_, px.data());
    const double hc_t = detail::conditional_mixture_term(charlie_, joint.data(), t_, nx_, nullptr);
    Evaluation e;
    e.personal = hx_t - he_t;
    e.common_c = charlie_(px.data()) - hc_t;
    e.common_b = e.common_c;
    e.use_bob = false;
    return e;
  }

  std::vector<double> joint(const RealVector& theta) const { return softmax(theta.data(), t_ * nx_); }
  Evaluation evaluate(const RealVector& theta) const { return evaluate_joint(joint(theta)); }
  RealVector random_start(Rng& rng) const { return detail::gaussian_vector(num_params(), 2.0, rng); }

  Witness witness(const RealVector& theta, const Evaluation& e) const {
    Witness w;
    w.region = region_;
    w.t_size = t_;
    w.x_size = nx_;
    w.joint = joint(theta);
    w.common = e.common();
    w.personal = e.personal;
    return w;
  }

 private:
  static std::vector<Matrix> env_states(const DephasingSpec& spec, bool charlie_only) {
    std::vector<Matrix> out;
    for (const auto& v : spec.env_vectors) {
      const DensityMatrix d = v.density();
      out.push_back(charlie_only ? partial_trace(d, {kCharlieLabel}).matrix() : d.matrix());
    }
    return out;
  }

  MixtureEntropy env_;
  MixtureEntropy charlie_;
  std::size_t nx_, t_;
  std::string region_;
};

// Independent re-evaluation of witnesses through the full block-diagonal
// states and the generic entropy functions.
struct WitnessRates {
  double common = 0.0;
  double personal = 0.0;
};

namespace detail {

inline void require_joint(const Witness& w, std::size_t nx) {
  if (w.x_size != nx || w.joint.size() != w.t_size * nx)
    throw ValidationError("witness distribution does not match the channel alphabet");
}

}  // namespace detail

inline WitnessRates evaluate_cq_witness(const CqBroadcastChannel& w_k, const Witness& wit) {
  const auto nx = w_k.alphabet_size();
  detail::require_joint(wit, nx);
  const auto& layout = w_k.layout();
  const auto d = layout.total_dim();
  const auto n = wit.t_size * nx * d;
  Matrix m = Matrix::Zero(n, n);
  for (std::size_t t = 0; t < wit.t_size; ++t)
    for (std::size_t x = 0; x < nx; ++x) {
      const auto off = (t * nx + x) * d;
      m.block(off, off, d, d) = wit.joint[t * nx + x] * w_k.conditionals()[x].matrix();
    }
  const DensityMatrix sigma = DensityMatrix::trusted(
      m, SystemLayout{{"T", wit.t_size}, {"X", nx}}.concat(layout));
  const Labels b{w_k.bob()}, c{w_k.charlie()};
  const double kk = static_cast<double>(wit.k);
  const double ib = mutual_information(sigma, {"T"}, b) / kk;
  const double ic = mutual_information(sigma, {"T"}, c) / kk;
  const bool certified = wit.region == "cq-certified";
  return {certified ? ic : std::min(ib, ic),
          conditional_mutual_information(sigma, {"X"}, b, {"T"}) / kk};
}

inline WitnessRates evaluate_ensemble_witness(const BroadcastChannel& bc_k, const Witness& wit) {
  const auto d = bc_k.input_dim();
  if (wit.weights.size() != wit.t_size || wit.states.size() != wit.t_size)
    throw ValidationError("witness ensemble size does not match t_size");
  const KrausChannel& ch = bc_k.channel();
  const auto dout = ch.output_dim();
  const Matrix id = Matrix::Identity(d, d);
  const auto block = d * dout;
  Matrix m = Matrix::Zero(wit.t_size * block, wit.t_size * block);
  for (std::size_t t = 0; t < wit.t_size; ++t) {
    if (static_cast<std::size_t>(wit.states[t].size()) != d * d)
      throw DimensionMismatch("witness state dimension does not match the channel input");
    const PureState phi(wit.states[t], SystemLayout{{"A''", d}, {"A'", d}});
    const Matrix pm = phi.amplitudes() * phi.amplitudes().adjoint();
    Matrix out = Matrix::Zero(block, block);
    for (const auto& k : ch.ops()) {
      const Matrix full = kron(id, k);
      out.noalias() += full * pm * full.adjoint();
    }
    m.block(t * block, t * block, block, block) = wit.weights[t] * out;
  }
  const DensityMatrix sigma = DensityMatrix::trusted(
      m, SystemLayout{{"T", wit.t_size}, {"A''", d}}.concat(ch.output()));
  const Labels b{bc_k.bob()}, c{bc_k.charlie()};
  const double kk = static_cast<double>(wit.k);
  return {std::min(mutual_information(sigma, {"T"}, b), mutual_information(sigma, {"T"}, c)) / kk,
          coherent_information(sigma, {"A''"}, {bc_k.bob(), "T"}) / kk};
}

inline WitnessRates evaluate_dephasing_witness(const DephasingSpec& spec, const Witness& wit) {
  const auto nx = spec.alphabet_size();
  detail::require_joint(wit, nx);
  const auto& env = spec.env_layout();
  const auto d = env.total_dim();
  const auto n = wit.t_size * nx * d;
  Matrix m = Matrix::Zero(n, n);
  for (std::size_t t = 0; t < wit.t_size; ++t)
    for (std::size_t x = 0; x < nx; ++x) {
      const auto off = (t * nx + x) * d;
      const Vector& v = spec.env_vectors[x].amplitudes();
      m.block(off, off, d, d) = wit.joint[t * nx + x] * v * v.adjoint();
    }
  const DensityMatrix omega =
      DensityMatrix::trusted(m, SystemLayout{{"T", wit.t_size}, {"X", nx}}.concat(env));
  return {mutual_information(omega, {"T"}, {kCharlieLabel}),
          conditional_entropy(omega, {"X"}, {"T"}) - conditional_entropy(omega, env.labels(), {"T"})};
}

}  // namespace qbc
