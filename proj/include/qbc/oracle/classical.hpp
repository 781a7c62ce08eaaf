#pragma once

#include <cmath>
#include <vector>

#include <Eigen/Dense>

#include "qbc/oracle/enumerate.hpp"

namespace qbc::oracle {

namespace detail {

inline double plogp(double p) { return p > 0 ? -p * std::log2(p) : 0.0; }

inline double table_entropy(const std::vector<double>& p) {
  double h = 0.0;
  for (const double v : p) h += plogp(v);
  return h;
}

inline void check_stochastic(const Eigen::MatrixXd& m, const char* name) {
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    double s = 0.0;
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      if (m(i, j) < 0) throw ValidationError(std::string(name) + " has a negative entry");
      s += m(i, j);
    }
    if (std::abs(s - 1.0) > 1e-12)
      throw ValidationError(std::string(name) + " column " + std::to_string(j) +
                            " sums to " + std::to_string(s));
  }
}

}  // namespace detail

// Degraded classical broadcast channel X -> Y -> Z given column-stochastic
// p(y|x) (|Y| x |X|) and p(z|y) (|Z| x |Y|). Exhaustive Pareto frontier of
// (I(T;Z), I(X;Y|T)) from probability tables alone.
inline Frontier classical_degraded_region(const Eigen::MatrixXd& p_y_given_x,
                                          const Eigen::MatrixXd& p_z_given_y, std::size_t mesh,
                                          std::size_t t_size = 0) {
  detail::check_stochastic(p_y_given_x, "p(y|x)");
  detail::check_stochastic(p_z_given_y, "p(z|y)");
  if (p_z_given_y.cols() != p_y_given_x.rows())
    throw ValidationError("p(z|y) must have one column per output y");
  const auto nx = static_cast<std::size_t>(p_y_given_x.cols());
  const auto ny = static_cast<std::size_t>(p_y_given_x.rows());
  const Eigen::MatrixXd p_z_given_x = p_z_given_y * p_y_given_x;
  const auto nz = static_cast<std::size_t>(p_z_given_x.rows());
  if (t_size == 0) t_size = std::min(nx, ny * ny);
  check_enumeration_budget(nx, t_size, mesh);

  std::vector<double> hy_x(nx);
  for (std::size_t x = 0; x < nx; ++x) {
    std::vector<double> col(ny);
    for (std::size_t y = 0; y < ny; ++y) col[y] = p_y_given_x(y, x);
    hy_x[x] = detail::table_entropy(col);
  }
  const double inv = 1.0 / static_cast<double>(mesh);
  Staircase stairs;
  std::vector<double> py_t(ny), pz_t(nz), py(ny), pz(nz);
  std::vector<int> counts(t_size * nx, 0);
  auto visit = [&](const std::vector<int>& c) {
    std::fill(pz.begin(), pz.end(), 0.0);
    double hy_cond_t = 0.0, hz_cond_t = 0.0, hy_cond_x = 0.0;
    for (std::size_t t = 0; t < t_size; ++t) {
      int nt = 0;
      for (std::size_t x = 0; x < nx; ++x) nt += c[t * nx + x];
      if (nt == 0) continue;
      std::fill(py_t.begin(), py_t.end(), 0.0);
      std::fill(pz_t.begin(), pz_t.end(), 0.0);
      for (std::size_t x = 0; x < nx; ++x) {
        const double q = static_cast<double>(c[t * nx + x]) / nt;
        if (q == 0) continue;
        hy_cond_x += c[t * nx + x] * inv * hy_x[x];
        for (std::size_t y = 0; y < ny; ++y) py_t[y] += q * p_y_given_x(y, x);
        for (std::size_t z = 0; z < nz; ++z) pz_t[z] += q * p_z_given_x(z, x);
      }
      const double pt = nt * inv;
      hy_cond_t += pt * detail::table_entropy(py_t);
      hz_cond_t += pt * detail::table_entropy(pz_t);
      for (std::size_t z = 0; z < nz; ++z) pz[z] += pt * pz_t[z];
    }
    const double itz = detail::table_entropy(pz) - hz_cond_t;
    const double ixy_t = hy_cond_t - hy_cond_x;
    stairs.insert(clip_rate(itz), clip_rate(ixy_t), c);
  };
  for_each_composition(counts, 0, static_cast<int>(mesh), visit);
  Frontier f;
  f.region = "oracle-classical";
  f.t_size = t_size;
  for (const auto& [common, e] : stairs.steps()) {
    RatePoint p;
    p.common_rate = common;
    p.personal_rate = e.personal;
    p.witness.region = "classical";
    p.witness.t_size = t_size;
    p.witness.x_size = nx;
    for (const int v : e.counts) p.witness.joint.push_back(v * inv);
    p.witness.common = common;
    p.witness.personal = e.personal;
    f.points.push_back(std::move(p));
  }
  return f;
}

}  // namespace qbc::oracle
