#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "qbc/core/layout.hpp"
#include "qbc/core/matrix.hpp"
#include "qbc/error.hpp"

namespace qbc::io {

using Json = nlohmann::ordered_json;

inline const Json& require(const Json& obj, const std::string& key, const std::string& where) {
  if (!obj.is_object() || !obj.contains(key))
    throw ValidationError(where + ": missing field '" + key + "'");
  return obj.at(key);
}

inline Complex complex_from(const Json& j, const std::string& where) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw ValidationError(where + ": complex entries must be [re, im] pairs");
  return {j[0].get<double>(), j[1].get<double>()};
}

inline Json complex_to(Complex c) { return Json::array({c.real(), c.imag()}); }

inline Matrix matrix_from(const Json& j, std::size_t rows, std::size_t cols, const std::string& where) {
  if (!j.is_array() || j.size() != rows)
    throw ValidationError(where + ": expected " + std::to_string(rows) + " rows");
  Matrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    const auto& row = j[r];
    if (!row.is_array() || row.size() != cols)
      throw ValidationError(where + "[" + std::to_string(r) + "]: expected " +
                            std::to_string(cols) + " entries");
    for (std::size_t c = 0; c < cols; ++c)
      m(r, c) = complex_from(row[c], where + "[" + std::to_string(r) + "][" + std::to_string(c) + "]");
  }
  return m;
}

inline Json matrix_to(const Matrix& m) {
  Json rows = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(complex_to(m(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

inline Vector vector_from(const Json& j, std::size_t n, const std::string& where) {
  if (!j.is_array() || j.size() != n)
    throw ValidationError(where + ": expected " + std::to_string(n) + " amplitudes");
  Vector v(n);
  for (std::size_t i = 0; i < n; ++i) v(i) = complex_from(j[i], where + "[" + std::to_string(i) + "]");
  return v;
}

inline Json vector_to(const Vector& v) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(complex_to(v(i)));
  return out;
}

inline SystemLayout layout_from(const Json& dims, const std::string& where) {
  if (!dims.is_object()) throw ValidationError(where + ": dims must be an object of label -> dimension");
  std::vector<Subsystem> parts;
  for (const auto& [label, d] : dims.items()) {
    if (!d.is_number_integer() || d.get<long long>() < 1)
      throw ValidationError(where + "." + label + ": dimension must be a positive integer");
    parts.push_back({label, d.get<std::size_t>()});
  }
  return SystemLayout(std::move(parts));
}

inline Json layout_to(const SystemLayout& layout) {
  Json out = Json::object();
  for (const auto& p : layout.parts()) out[p.label] = p.dim;
  return out;
}

inline Json parse_text(const std::string& text, const std::string& where) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ValidationError(where + ": malformed document: " + e.what());
  }
}

}  // namespace qbc::io
