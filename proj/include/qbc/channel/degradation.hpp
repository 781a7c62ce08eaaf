#pragma once

#include <algorithm>
#include <deque>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qbc/channel/broadcast.hpp"
#include "qbc/optimizer_config.hpp"

namespace qbc {

struct DegradationResult {
  double residual = std::numeric_limits<double>::infinity();
  KrausChannel degrading_map = KrausChannel::identity(SystemLayout{{"_", 1}});
  bool certified = false;
  std::string method;  // "stiefel" or "measure-prepare"
};

// Pair (N_B(rho), N_C(rho)) the degrading map must connect.
struct ProbePair {
  Matrix input;
  Matrix target;
};

inline double max_commutator(const std::vector<Matrix>& ms) {
  double worst = 0.0;
  for (std::size_t i = 0; i < ms.size(); ++i)
    for (std::size_t j = i + 1; j < ms.size(); ++j)
      worst = std::max(worst, (ms[i] * ms[j] - ms[j] * ms[i]).cwiseAbs().maxCoeff());
  return worst;
}

inline double degradation_residual(const KrausChannel& map, const std::vector<ProbePair>& probes) {
  double worst = 0.0;
  for (const auto& p : probes)
    worst = std::max(worst, trace_norm(hermitize(map.apply(p.input) - p.target)));
  return worst;
}

namespace detail {

// Hilbert-Schmidt surrogate sum_p ||tr_env(V s_p V^dag) - t_p||_F^2 for an
// isometry V: din -> dout (x) env. Fills the per-probe differences.
inline double hs_objective(const Matrix& v, std::size_t dout, std::size_t env,
                           const std::vector<ProbePair>& probes, std::vector<Matrix>& diffs) {
  diffs.resize(probes.size());
  double f = 0.0;
  for (std::size_t p = 0; p < probes.size(); ++p) {
    const Matrix w = v * probes[p].input * v.adjoint();
    Matrix m = Matrix::Zero(dout, dout);
    for (std::size_t a = 0; a < dout; ++a)
      for (std::size_t b = 0; b < dout; ++b)
        for (std::size_t e = 0; e < env; ++e) m(a, b) += w(a * env + e, b * env + e);
    diffs[p] = m - probes[p].target;
    f += diffs[p].squaredNorm();
  }
  return f;
}

inline KrausChannel kraus_from_isometry(const Matrix& v, std::size_t dout, std::size_t env,
                                        const SystemLayout& in, const SystemLayout& out) {
  std::vector<Matrix> ops;
  for (std::size_t e = 0; e < env; ++e) {
    Matrix k(dout, v.cols());
    for (std::size_t o = 0; o < dout; ++o) k.row(o) = v.row(o * env + e);
    if (k.cwiseAbs().maxCoeff() > 1e-14) ops.push_back(std::move(k));
  }
  // QR output is an isometry to working precision; restore exact trace
  // preservation so the map passes KrausChannel validation.
  Matrix s = Matrix::Zero(v.cols(), v.cols());
  for (const auto& k : ops) s += k.adjoint() * k;
  const Matrix fix = psd_sqrt(s).inverse();
  for (auto& k : ops) k = k * fix;
  return KrausChannel(std::move(ops), in, out);
}

// Riemannian descent on the Stiefel manifold with QR retraction.
inline DegradationResult stiefel_search(const std::vector<ProbePair>& probes, const SystemLayout& in,
                                        const SystemLayout& out, std::size_t env,
                                        const OptimizerConfig& cfg) {
  const auto din = in.total_dim();
  const auto dout = out.total_dim();
  Rng rng(cfg.seed ^ 0x9e3779b97f4a7c15ULL);
  DegradationResult best{std::numeric_limits<double>::infinity(),
                         KrausChannel::identity(SystemLayout{{"_", 1}}), false, "stiefel"};
  std::vector<Matrix> diffs, trial_diffs;
  const Matrix id_env = Matrix::Identity(env, env);
  for (std::size_t restart = 0; restart < cfg.degrade_restarts; ++restart) {
    Matrix v = random_isometry(dout * env, din, rng);
    double f = hs_objective(v, dout, env, probes, diffs);
    // Barzilai-Borwein steps with a non-monotone Armijo test.
    Matrix prev_v, prev_xi;
    bool have_prev = false;
    std::deque<double> recent{f};
    for (std::size_t it = 0; it < cfg.degrade_iterations && f > 1e-28; ++it) {
      Matrix g = Matrix::Zero(v.rows(), v.cols());
      for (std::size_t p = 0; p < probes.size(); ++p)
        g.noalias() += 4.0 * kron(diffs[p], id_env) * v * probes[p].input;
      const Matrix vg = v.adjoint() * g;
      const Matrix xi = g - v * hermitize(vg);
      const double g2 = xi.squaredNorm();
      if (g2 < 1e-32) break;
      double step = 0.1;
      if (have_prev) {
        const Matrix sv = v - prev_v;
        const double sy = (sv.adjoint() * (xi - prev_xi)).trace().real();
        if (sy > 0) step = std::clamp(sv.squaredNorm() / sy, 1e-10, 1e10);
      }
      const double ref = *std::max_element(recent.begin(), recent.end());
      bool accepted = false;
      while (step > 1e-20) {
        Matrix cand = qr_isometry(v - step * xi);
        const double fc = hs_objective(cand, dout, env, probes, trial_diffs);
        if (fc <= ref - 1e-4 * step * g2) {
          prev_v = std::move(v);
          prev_xi = xi;
          have_prev = true;
          v = std::move(cand);
          f = fc;
          std::swap(diffs, trial_diffs);
          accepted = true;
          break;
        }
        step *= 0.5;
      }
      if (!accepted) break;
      recent.push_back(f);
      if (recent.size() > 10) recent.pop_front();
    }
    KrausChannel map = kraus_from_isometry(v, dout, env, in, out);
    const double residual = degradation_residual(map, probes);
    if (residual < best.residual) best = {residual, std::move(map), false, "stiefel"};
    if (best.residual <= cfg.degrade_threshold * 1e-2) break;
  }
  best.certified = best.residual <= cfg.degrade_threshold;
  return best;
}

inline RealVector project_to_simplex(const RealVector& v) {
  std::vector<double> u(v.data(), v.data() + v.size());
  std::sort(u.begin(), u.end(), std::greater<>());
  double css = 0.0, theta = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    css += u[i];
    const double t = (css - 1.0) / static_cast<double>(i + 1);
    if (u[i] - t > 0) theta = t;
  }
  return (v.array() - theta).cwiseMax(0.0);
}

inline Matrix project_to_density(const Matrix& m) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(hermitize(m));
  const RealVector ev = project_to_simplex(es.eigenvalues());
  return hermitize(es.eigenvectors() * ev.cast<Complex>().asDiagonal() * es.eigenvectors().adjoint());
}

// Measure in the orthonormal basis `u`, then prepare tau_y. The tau_y solve
// a convex least-squares problem over density matrices (accelerated
// projected gradient). With `require_diagonal` the search is abandoned when
// some probe input is not diagonal in `u`.
inline std::optional<DegradationResult> measure_prepare_search(
    const std::vector<ProbePair>& probes, const SystemLayout& in, const SystemLayout& out,
    const Matrix& u, bool require_diagonal, const OptimizerConfig& cfg) {
  const auto din = in.total_dim();
  const auto dout = out.total_dim();
  Eigen::MatrixXd prob(probes.size(), din);
  for (std::size_t p = 0; p < probes.size(); ++p) {
    const Matrix d = u.adjoint() * probes[p].input * u;
    Matrix off = d;
    off.diagonal().setZero();
    if (require_diagonal && off.cwiseAbs().maxCoeff() > 1e-9) return std::nullopt;
    for (std::size_t y = 0; y < din; ++y) prob(p, y) = std::max(0.0, d(y, y).real());
  }
  const double lipschitz =
      2.0 * std::max(1e-12, Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(prob.transpose() * prob)
                                .eigenvalues()
                                .maxCoeff());
  std::vector<Matrix> tau(din, Matrix::Identity(dout, dout) / static_cast<double>(dout));
  std::vector<Matrix> look = tau;
  double momentum = 1.0;
  auto objective = [&](const std::vector<Matrix>& t, std::vector<Matrix>* grads) {
    double f = 0.0;
    if (grads) grads->assign(din, Matrix::Zero(dout, dout));
    for (std::size_t p = 0; p < probes.size(); ++p) {
      Matrix d = -probes[p].target;
      for (std::size_t y = 0; y < din; ++y) d += prob(p, y) * t[y];
      f += d.squaredNorm();
      if (grads)
        for (std::size_t y = 0; y < din; ++y) (*grads)[y] += 2.0 * prob(p, y) * d;
    }
    return f;
  };
  std::vector<Matrix> grads;
  for (std::size_t it = 0; it < cfg.degrade_iterations; ++it) {
    objective(look, &grads);
    std::vector<Matrix> next(din);
    for (std::size_t y = 0; y < din; ++y) next[y] = project_to_density(look[y] - grads[y] / lipschitz);
    const double m_next = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * momentum * momentum));
    double change = 0.0;
    for (std::size_t y = 0; y < din; ++y) {
      change = std::max(change, (next[y] - tau[y]).cwiseAbs().maxCoeff());
      look[y] = next[y] + ((momentum - 1.0) / m_next) * (next[y] - tau[y]);
    }
    tau = std::move(next);
    momentum = m_next;
    if (change < 1e-15 || objective(tau, nullptr) < 1e-28) break;
  }
  std::vector<Matrix> ops;
  for (std::size_t y = 0; y < din; ++y) {
    Eigen::SelfAdjointEigenSolver<Matrix> ty(tau[y]);
    for (Eigen::Index j = 0; j < ty.eigenvalues().size(); ++j) {
      const double lambda = ty.eigenvalues()(j);
      if (lambda <= 1e-15) continue;
      ops.push_back(std::sqrt(lambda) * ty.eigenvectors().col(j) * u.col(y).adjoint());
    }
  }
  Matrix s = Matrix::Zero(din, din);
  for (const auto& k : ops) s += k.adjoint() * k;
  const Matrix fix = psd_sqrt(s).inverse();
  for (auto& k : ops) k = k * fix;
  KrausChannel map(std::move(ops), in, out);
  const double residual = degradation_residual(map, probes);
  return DegradationResult{residual, std::move(map), residual <= cfg.degrade_threshold,
                           "measure-prepare"};
}

}  // namespace detail

// Searches for N_d: B -> C with N_d o to_b = to_c, probing on a spanning set
// of inputs. env_dim is the Kraus count of candidate maps (0: |B||C|).
inline DegradationResult degradedness_residual(const KrausChannel& to_b, const KrausChannel& to_c,
                                               std::size_t env_dim, const OptimizerConfig& cfg) {
  cfg.validate();
  if (to_b.input_dim() != to_c.input_dim())
    throw DimensionMismatch("degradedness: channels must share their input");
  std::vector<ProbePair> probes;
  for (const auto& p : probe_states(to_b.input_dim()))
    probes.push_back({to_b.apply(p), to_c.apply(p)});
  // Measure-and-prepare in the computational basis of B is tried first; it
  // is exact for dephasing-type channels.
  const auto db = to_b.output_dim();
  auto mp = detail::measure_prepare_search(probes, to_b.output(), to_c.output(),
                                           Matrix::Identity(db, db), false, cfg);
  if (mp->residual <= cfg.degrade_threshold * 1e-2) return std::move(*mp);
  const std::size_t env = env_dim == 0 ? db * to_c.output_dim() : env_dim;
  auto st = detail::stiefel_search(probes, to_b.output(), to_c.output(), env, cfg);
  return st.residual < mp->residual ? st : std::move(*mp);
}

inline DegradationResult degradedness_residual(const BroadcastChannel& bc, std::size_t env_dim,
                                               const OptimizerConfig& cfg) {
  const auto [to_b, to_c] = marginals(bc);
  return degradedness_residual(to_b, to_c, env_dim, cfg);
}

// For a cq channel the probes are the letters themselves. Commuting Bob
// states restrict the search to measure-and-prepare maps.
inline DegradationResult degradedness_residual(const CqBroadcastChannel& w, std::size_t env_dim,
                                               const OptimizerConfig& cfg) {
  cfg.validate();
  const auto bs = w.bob_states();
  const auto cs = w.charlie_states();
  std::vector<ProbePair> probes;
  std::vector<Matrix> bob;
  for (std::size_t x = 0; x < bs.size(); ++x) {
    probes.push_back({bs[x].matrix(), cs[x].matrix()});
    bob.push_back(bs[x].matrix());
  }
  const SystemLayout in = bs.front().layout();
  const SystemLayout out = cs.front().layout();
  if (max_commutator(bob) <= 1e-9) {
    Matrix mix = Matrix::Zero(in.total_dim(), in.total_dim());
    for (std::size_t x = 0; x < bob.size(); ++x)
      mix += (1.0 + std::fmod(std::sqrt(2.0) * static_cast<double>(x + 1), 1.0)) * bob[x];
    Eigen::SelfAdjointEigenSolver<Matrix> es(hermitize(mix));
    if (auto r = detail::measure_prepare_search(probes, in, out, es.eigenvectors(), true, cfg))
      return std::move(*r);
  }
  const std::size_t env = env_dim == 0 ? in.total_dim() * out.total_dim() : env_dim;
  return detail::stiefel_search(probes, in, out, env, cfg);
}

}  // namespace qbc
