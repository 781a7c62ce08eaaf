#pragma once

#include <limits>
#include <vector>

#include "qbc/channel/broadcast.hpp"
#include "qbc/oracle/enumerate.hpp"
#include "qbc/region/optimizer.hpp"

namespace qbc::oracle {

struct GridResult {
  Frontier pareto;                // exact Pareto points of the enumeration
  std::vector<RatePoint> sampled; // hull values on an r_grid-point common grid
  std::size_t enumerated = 0;
  double mesh_error = 0.0;
};

namespace detail {

// H of sum_x w_x rho_x, through Shannon entropies when every state is
// diagonal in the computational basis.
class MixtureTable {
 public:
  explicit MixtureTable(const std::vector<DensityMatrix>& states) {
    for (const auto& s : states) {
      mats_.push_back(s.matrix());
      Matrix off = s.matrix();
      off.diagonal().setZero();
      if (off.cwiseAbs().maxCoeff() > 1e-12) diagonal_ = false;
    }
    for (const auto& m : mats_) h_.push_back(entropy_of(m));
  }

  double entropy(const std::vector<double>& w) const {
    const auto d = mats_.front().rows();
    if (diagonal_) {
      std::vector<double> p(d, 0.0);
      for (std::size_t x = 0; x < w.size(); ++x)
        if (w[x] > 0)
          for (Eigen::Index i = 0; i < d; ++i) p[i] += w[x] * mats_[x](i, i).real();
      return shannon_entropy(p);
    }
    Matrix m = Matrix::Zero(d, d);
    for (std::size_t x = 0; x < w.size(); ++x)
      if (w[x] > 0) m += w[x] * mats_[x];
    return entropy_of(m);
  }

  double component(std::size_t x) const { return h_[x]; }

 private:
  std::vector<Matrix> mats_;
  std::vector<double> h_;
  bool diagonal_ = true;
};

}  // namespace detail

inline Witness oracle_witness(const std::vector<int>& counts, std::size_t t_size, std::size_t nx,
                              std::size_t mesh, const std::string& region) {
  Witness w;
  w.region = region;
  w.t_size = t_size;
  w.x_size = nx;
  for (const int c : counts) w.joint.push_back(static_cast<double>(c) / static_cast<double>(mesh));
  return w;
}

inline std::vector<RatePoint> sample_frontier(const Frontier& f, std::size_t r_grid) {
  std::vector<RatePoint> out;
  const double top = f.max_common();
  const std::size_t n = top <= 0 || r_grid < 2 ? 1 : r_grid;
  for (std::size_t i = 0; i < n; ++i) {
    RatePoint p;
    p.common_rate = n == 1 ? 0.0 : top * static_cast<double>(i) / static_cast<double>(n - 1);
    p.personal_rate = f.value_at(p.common_rate, 1e-12);
    out.push_back(p);
  }
  return out;
}

// Exhaustive Pareto frontier of (min{I(T;B), I(T;C)}, I(X;B|T)) over all
// p(t,x) with entries in {0, 1/mesh, ..., 1}.
inline GridResult grid_cq_frontier(const CqBroadcastChannel& w, std::size_t t_size,
                                   std::size_t mesh, std::size_t r_grid = 33,
                                   std::size_t threads = 0) {
  const auto nx = w.alphabet_size();
  check_enumeration_budget(nx, t_size, mesh);
  const detail::MixtureTable bob(w.bob_states());
  const detail::MixtureTable charlie(w.charlie_states());
  const std::size_t cells = t_size * nx;
  const int total = static_cast<int>(mesh);
  const double inv = 1.0 / static_cast<double>(mesh);

  std::vector<Staircase> chunks(mesh + 1);
  std::vector<std::size_t> counted(mesh + 1, 0);
  parallel_for(mesh + 1, resolve_threads(threads), [&](std::size_t chunk) {
    std::vector<int> counts(cells, 0);
    std::vector<double> cond(nx), px(nx);
    Staircase& stairs = chunks[chunk];
    auto visit = [&](const std::vector<int>& c) {
      ++counted[chunk];
      std::fill(px.begin(), px.end(), 0.0);
      double hb_t = 0.0, hc_t = 0.0;
      for (std::size_t t = 0; t < t_size; ++t) {
        int nt = 0;
        for (std::size_t x = 0; x < nx; ++x) nt += c[t * nx + x];
        if (nt == 0) continue;
        for (std::size_t x = 0; x < nx; ++x) {
          cond[x] = static_cast<double>(c[t * nx + x]) / nt;
          px[x] += c[t * nx + x] * inv;
        }
        const double pt = nt * inv;
        hb_t += pt * bob.entropy(cond);
        hc_t += pt * charlie.entropy(cond);
      }
      double hb_x = 0.0;
      for (std::size_t x = 0; x < nx; ++x) hb_x += px[x] * bob.component(x);
      const double common = std::min(bob.entropy(px) - hb_t, charlie.entropy(px) - hc_t);
      stairs.insert(clip_rate(common), clip_rate(hb_t - hb_x), c);
    };
    const int first = static_cast<int>(chunk);
    counts[0] = first;
    if (cells == 1) {
      if (first == total) visit(counts);
      return;
    }
    for_each_composition(counts, 1, total - first, visit);
  });
  Staircase all;
  GridResult res;
  for (std::size_t i = 0; i <= mesh; ++i) {
    all.merge(chunks[i]);
    res.enumerated += counted[i];
  }
  res.pareto.region = "oracle-cq";
  res.pareto.t_size = t_size;
  for (const auto& [c, e] : all.steps())
    res.pareto.points.push_back({c, e.personal, oracle_witness(e.counts, t_size, nx, mesh, "cq")});
  res.sampled = sample_frontier(res.pareto, r_grid);
  res.mesh_error = 1.0 / static_cast<double>(mesh);
  return res;
}

struct CardinalityReport {
  double improvement = 0.0;         // max of the two terms below
  double personal_improvement = 0.0;
  double common_improvement = 0.0;  // growth of the largest common rate
  double mesh_error = 0.0;
  GridResult base;
  GridResult extended;
};

// Frontier gain from enlarging |T| from `bound` to `bound + extra`.
inline CardinalityReport cardinality_probe(const CqBroadcastChannel& w, std::size_t bound,
                                           std::size_t extra, std::size_t mesh,
                                           std::size_t r_grid = 33, std::size_t threads = 0) {
  check_enumeration_budget(w.alphabet_size(), bound + extra, mesh);
  CardinalityReport rep;
  rep.base = grid_cq_frontier(w, bound, mesh, r_grid, threads);
  rep.extended = grid_cq_frontier(w, bound + extra, mesh, r_grid, threads);
  const Frontier& a = rep.base.pareto;
  const Frontier& b = rep.extended.pareto;
  rep.common_improvement = std::max(0.0, b.max_common() - a.max_common());
  for (const auto& p : rep.extended.sampled) {
    const double base = a.value_at(p.common_rate, 1e-12);
    if (std::isinf(base)) continue;
    rep.personal_improvement = std::max(rep.personal_improvement, p.personal_rate - base);
  }
  for (const auto& p : b.points) {
    const double base = a.value_at(p.common_rate, 1e-12);
    if (std::isinf(base)) continue;
    rep.personal_improvement = std::max(rep.personal_improvement, p.personal_rate - base);
  }
  rep.improvement = std::max(rep.personal_improvement, rep.common_improvement);
  rep.mesh_error = 1.0 / static_cast<double>(mesh);
  return rep;
}

}  // namespace qbc::oracle
