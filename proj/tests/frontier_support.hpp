#pragma once

#include <algorithm>
#include <cmath>
#include <utility>
#include <vector>

#include "qbc/region/types.hpp"

namespace qbc::testing {

using Point2 = std::pair<double, double>;  // (common, personal)

// Region boundary as a polyline: the frontier vertices closed off by the
// axis segments at both ends.
inline std::vector<Point2> boundary_polyline(const Frontier& f) {
  std::vector<Point2> out;
  if (f.points.empty()) return out;
  if (f.points.front().common_rate > 0) out.push_back({0.0, f.points.front().personal_rate});
  for (const auto& p : f.points) out.push_back({p.common_rate, p.personal_rate});
  if (f.points.back().personal_rate > 0) out.push_back({f.points.back().common_rate, 0.0});
  return out;
}

inline double segment_distance(Point2 p, Point2 a, Point2 b) {
  const double dx = b.first - a.first, dy = b.second - a.second;
  const double len2 = dx * dx + dy * dy;
  double t = len2 > 0 ? ((p.first - a.first) * dx + (p.second - a.second) * dy) / len2 : 0.0;
  t = std::clamp(t, 0.0, 1.0);
  return std::hypot(p.first - a.first - t * dx, p.second - a.second - t * dy);
}

inline double distance_to_boundary(const Frontier& f, double common, double personal) {
  const auto line = boundary_polyline(f);
  if (line.size() == 1) return std::hypot(common - line[0].first, personal - line[0].second);
  double best = INFINITY;
  for (std::size_t i = 1; i < line.size(); ++i)
    best = std::min(best, segment_distance({common, personal}, line[i - 1], line[i]));
  return best;
}

// Largest distance from a vertex of either boundary to the other boundary.
inline double boundary_gap(const Frontier& a, const Frontier& b) {
  double worst = 0.0;
  for (const auto& [c, p] : boundary_polyline(a)) worst = std::max(worst, distance_to_boundary(b, c, p));
  for (const auto& [c, p] : boundary_polyline(b)) worst = std::max(worst, distance_to_boundary(a, c, p));
  return worst;
}

}  // namespace qbc::testing
