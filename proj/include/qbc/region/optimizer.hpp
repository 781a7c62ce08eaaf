#pragma once

#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

#include "qbc/core/ops.hpp"
#include "qbc/core/random.hpp"
#include "qbc/optimizer_config.hpp"

namespace qbc {

inline std::size_t resolve_threads(std::size_t requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("QBC_THREADS")) {
    const long n = std::strtol(env, nullptr, 10);
    if (n > 0) return static_cast<std::size_t>(n);
  }
  return std::max<std::size_t>(1, std::thread::hardware_concurrency());
}

// Runs f(i) for i in [0, n). Results must be written by index so the outcome
// does not depend on scheduling. The first exception (by index) is rethrown.
template <class F>
void parallel_for(std::size_t n, std::size_t threads, F&& f) {
  threads = std::min(threads, n);
  if (threads <= 1) {
    for (std::size_t i = 0; i < n; ++i) f(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(n);
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < threads; ++w)
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) {
        try {
          f(i);
        } catch (...) {
          errors[i] = std::current_exception();
        }
      }
    });
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

inline Rng seeded_rng(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(b)};
  return Rng(seq);
}

template <class F>
RealVector central_gradient(const F& f, const RealVector& x, double h) {
  RealVector g(x.size());
  RealVector y = x;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    y(i) = x(i) + h;
    const double up = f(y);
    y(i) = x(i) - h;
    const double down = f(y);
    y(i) = x(i);
    g(i) = (up - down) / (2.0 * h);
  }
  return g;
}

// Quasi-Newton ascent (BFGS inverse-Hessian update, Armijo backtracking)
// with finite-difference gradients.
template <class F>
RealVector bfgs_maximize(const F& f, RealVector x, std::size_t max_iterations, double fd_step,
                         double tolerance) {
  const auto n = x.size();
  Eigen::MatrixXd h = Eigen::MatrixXd::Identity(n, n);
  double fx = f(x);
  RealVector g = central_gradient(f, x, fd_step);
  bool fresh = true;
  int stalled = 0;
  for (std::size_t it = 0; it < max_iterations; ++it) {
    if (g.norm() < tolerance) break;
    RealVector d = h * g;
    double slope = g.dot(d);
    if (!(slope > 0)) {
      h.setIdentity();
      d = g;
      slope = g.squaredNorm();
      fresh = true;
    }
    double step = 1.0;
    RealVector xn;
    double fn = 0.0;
    bool ok = false;
    for (int tries = 0; tries < 50; ++tries) {
      xn = x + step * d;
      fn = f(xn);
      if (fn >= fx + 1e-4 * step * slope) {
        ok = true;
        break;
      }
      step *= 0.5;
    }
    if (!ok) {
      if (fresh) break;
      h.setIdentity();
      fresh = true;
      continue;
    }
    const RealVector gn = central_gradient(f, xn, fd_step);
    const RealVector s = xn - x;
    const RealVector y = g - gn;  // gradient change of -f
    const double sy = s.dot(y);
    if (sy > 1e-14) {
      const double rho = 1.0 / sy;
      const Eigen::MatrixXd left = Eigen::MatrixXd::Identity(n, n) - rho * s * y.transpose();
      h = left * h * left.transpose() + rho * s * s.transpose();
      fresh = false;
    }
    const double gain = fn - fx;
    x = xn;
    fx = fn;
    g = gn;
    stalled = gain < tolerance * (1.0 + std::abs(fx)) ? stalled + 1 : 0;
    if (stalled >= 3) break;
  }
  return x;
}

inline std::vector<double> softmax(const double* logits, std::size_t n) {
  double hi = logits[0];
  for (std::size_t i = 1; i < n; ++i) hi = std::max(hi, logits[i]);
  std::vector<double> p(n);
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) total += (p[i] = std::exp(logits[i] - hi));
  for (auto& v : p) v /= total;
  return p;
}

// Entropy of mixtures sum_x w_x rho_x of a fixed family. Commuting families
// are diagonalized once so each mixture entropy is a Shannon entropy.
class MixtureEntropy {
 public:
  explicit MixtureEntropy(std::vector<Matrix> states) : states_(std::move(states)) {
    const auto d = states_.front().rows();
    component_.reserve(states_.size());
    for (const auto& s : states_) component_.push_back(entropy_of(s));
    double worst = 0.0;
    Matrix generic = Matrix::Zero(d, d);
    for (std::size_t i = 0; i < states_.size(); ++i) {
      generic += (1.0 + std::fmod(std::sqrt(3.0) * static_cast<double>(i + 1), 1.0)) * states_[i];
      for (std::size_t j = i + 1; j < states_.size(); ++j)
        worst = std::max(worst,
                         (states_[i] * states_[j] - states_[j] * states_[i]).cwiseAbs().maxCoeff());
    }
    if (worst > 1e-9) return;
    Eigen::SelfAdjointEigenSolver<Matrix> es(hermitize(generic));
    const Matrix& u = es.eigenvectors();
    diag_.resize(d, static_cast<Eigen::Index>(states_.size()));
    for (std::size_t i = 0; i < states_.size(); ++i) {
      Matrix r = u.adjoint() * states_[i] * u;
      for (Eigen::Index a = 0; a < d; ++a) diag_(a, i) = r(a, a).real();
      r.diagonal().setZero();
      if (r.cwiseAbs().maxCoeff() > 1e-9) {
        diag_.resize(0, 0);
        return;
      }
    }
    commuting_ = true;
  }

  bool commuting() const { return commuting_; }
  std::size_t size() const { return states_.size(); }
  double component(std::size_t x) const { return component_[x]; }
  const Matrix& state(std::size_t x) const { return states_[x]; }

  double operator()(const double* w) const {
    if (commuting_) {
      const Eigen::Map<const RealVector> wv(w, static_cast<Eigen::Index>(states_.size()));
      const RealVector p = diag_ * wv;
      return shannon_entropy(std::span<const double>(p.data(), static_cast<std::size_t>(p.size())));
    }
    return entropy_of(mixture(w));
  }

  Matrix mixture(const double* w) const {
    Matrix m = Matrix::Zero(states_.front().rows(), states_.front().cols());
    for (std::size_t x = 0; x < states_.size(); ++x)
      if (w[x] != 0.0) m += w[x] * states_[x];
    return m;
  }

 private:
  std::vector<Matrix> states_;
  std::vector<double> component_;
  Eigen::MatrixXd diag_;
  bool commuting_ = false;
};

}  // namespace qbc
