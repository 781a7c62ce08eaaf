#pragma once

#include <cstdio>
#include <string>

#include "qbc/io/json_codec.hpp"
#include "qbc/region/types.hpp"

namespace qbc::io {

inline std::string format_rate(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v == 0.0 ? 0.0 : v);
  return buf;
}

inline std::string frontier_csv(const std::vector<RatePoint>& points) {
  std::string out = "common_rate,personal_rate,witness_id\n";
  for (std::size_t i = 0; i < points.size(); ++i)
    out += format_rate(points[i].common_rate) + "," + format_rate(points[i].personal_rate) + "," +
           std::to_string(i) + "\n";
  return out;
}

inline Json witness_to(const Witness& w) {
  Json j{{"region", w.region}, {"k", w.k},           {"t_size", w.t_size},
         {"x_size", w.x_size}, {"common", w.common}, {"personal", w.personal},
         {"target_common", w.target_common},         {"converged", w.converged}};
  if (!w.joint.empty()) j["joint"] = w.joint;
  if (!w.weights.empty()) j["weights"] = w.weights;
  if (!w.states.empty()) {
    Json states = Json::array();
    for (const auto& v : w.states) states.push_back(vector_to(v));
    j["states"] = states;
  }
  return j;
}

inline Witness witness_from(const Json& j) {
  Witness w;
  w.region = require(j, "region", "witness").get<std::string>();
  w.k = require(j, "k", "witness").get<std::size_t>();
  w.t_size = require(j, "t_size", "witness").get<std::size_t>();
  w.x_size = j.value("x_size", std::size_t{0});
  w.common = j.value("common", 0.0);
  w.personal = j.value("personal", 0.0);
  w.target_common = j.value("target_common", 0.0);
  w.converged = j.value("converged", true);
  if (j.contains("joint")) w.joint = j.at("joint").get<std::vector<double>>();
  if (j.contains("weights")) w.weights = j.at("weights").get<std::vector<double>>();
  if (j.contains("states"))
    for (std::size_t t = 0; t < j.at("states").size(); ++t) {
      const auto& s = j.at("states")[t];
      w.states.push_back(vector_from(s, s.size(), "witness.states[" + std::to_string(t) + "]"));
    }
  return w;
}

inline Json frontier_to(const Frontier& f, const Json& channel) {
  Json pts = Json::array();
  for (std::size_t i = 0; i < f.points.size(); ++i)
    pts.push_back({{"witness_id", i},
                   {"common_rate", f.points[i].common_rate},
                   {"personal_rate", f.points[i].personal_rate},
                   {"witness", witness_to(f.points[i].witness)}});
  return Json{{"region", f.region}, {"k", f.k},        {"t_size", f.t_size},
              {"seed", f.seed},     {"certified", f.certified}, {"channel", channel},
              {"points", pts}};
}

}  // namespace qbc::io
