#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "qbc/core/matrix.hpp"
#include "qbc/optimizer_config.hpp"

namespace qbc {

// Optimizer parameters certifying one frontier point. Rates are raw
// (unclipped) values as evaluated at these parameters.
struct Witness {
  std::string region;            // cq, cq-certified, cq-eg, qq, dephasing
  std::size_t k = 1;
  std::size_t t_size = 0;
  std::size_t x_size = 0;        // letters per t (cq and dephasing regions)
  std::vector<double> joint;     // p(t,x), index t * x_size + x
  std::vector<double> weights;   // p(t) for ensembles
  std::vector<Vector> states;    // |phi_t> on A'' (x) A'^k, A'' first
  double common = 0.0;
  double personal = 0.0;
  double target_common = 0.0;
  bool converged = true;
};

struct RatePoint {
  double common_rate = 0.0;
  double personal_rate = 0.0;
  Witness witness;
};

// Reported rates: negatives and float noise near zero become 0.
inline double clip_rate(double r) { return r <= 1e-12 ? 0.0 : r; }

struct Frontier {
  std::string region;
  std::size_t k = 1;
  std::size_t t_size = 0;
  std::uint64_t seed = 0;
  bool certified = false;
  std::vector<RatePoint> points;  // common increasing, personal decreasing

  double max_common() const { return points.empty() ? 0.0 : points.back().common_rate; }

  // Upper concave envelope of the points (time sharing keeps the region
  // convex). Returns -infinity beyond the largest common rate.
  double value_at(double r, double slack = 1e-9) const {
    if (points.empty()) return -std::numeric_limits<double>::infinity();
    if (r > max_common() + slack) return -std::numeric_limits<double>::infinity();
    if (r <= points.front().common_rate) return points.front().personal_rate;
    const auto hull = upper_hull();
    for (std::size_t i = 1; i < hull.size(); ++i) {
      const auto& a = points[hull[i - 1]];
      const auto& b = points[hull[i]];
      if (r <= b.common_rate) {
        const double t = (r - a.common_rate) / (b.common_rate - a.common_rate);
        return a.personal_rate + t * (b.personal_rate - a.personal_rate);
      }
    }
    return points.back().personal_rate;
  }

  std::vector<std::size_t> upper_hull() const {
    std::vector<std::size_t> h;
    for (std::size_t i = 0; i < points.size(); ++i) {
      while (h.size() >= 2) {
        const auto& a = points[h[h.size() - 2]];
        const auto& b = points[h.back()];
        const auto& c = points[i];
        const double cross = (b.common_rate - a.common_rate) * (c.personal_rate - a.personal_rate) -
                             (b.personal_rate - a.personal_rate) * (c.common_rate - a.common_rate);
        if (cross >= 0) h.pop_back();
        else break;
      }
      h.push_back(i);
    }
    return h;
  }
};

// Keeps the non-dominated points, sorted by common rate.
inline std::vector<RatePoint> pareto_filter(std::vector<RatePoint> pts, double tol = 1e-12) {
  std::stable_sort(pts.begin(), pts.end(), [](const RatePoint& a, const RatePoint& b) {
    if (a.common_rate != b.common_rate) return a.common_rate > b.common_rate;
    return a.personal_rate > b.personal_rate;
  });
  std::vector<RatePoint> kept;
  double best = -std::numeric_limits<double>::infinity();
  for (auto& p : pts) {
    if (p.personal_rate > best + tol) {
      best = p.personal_rate;
      kept.push_back(std::move(p));
    }
  }
  std::reverse(kept.begin(), kept.end());
  return kept;
}

struct MergingRates {
  double q_c_bound = 0.0;   // I(A>BC)
  double bc_distill = 0.0;  // I(B>C)
  bool feasible = false;
};

struct IndependentRates {
  double rate_b = 0.0;  // I(A_B>B)
  double rate_c = 0.0;  // I(A_C>C)
  bool feasible_b = false;
  bool feasible_c = false;
};

}  // namespace qbc
