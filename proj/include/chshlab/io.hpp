#pragma once

#include <array>
#include <charconv>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "chshlab/strategy.hpp"

namespace chshlab {

/// Shortest decimal string that round-trips to the same double.
inline std::string format_double(double x) {
  std::array<char, 32> buf;
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), x);
  return std::string(buf.data(), res.ptr);
}

namespace io {

using json = nlohmann::json;

inline json complex_to_json(const cplx& z) { return json::array({z.real(), z.imag()}); }

inline cplx complex_from_json(const json& j) {
  if (!j.is_array() || j.size() != 2)
    throw std::invalid_argument("complex entry must be a [re, im] pair");
  return cplx{j[0].get<double>(), j[1].get<double>()};
}

inline json vector_to_json(const Vector& v) {
  json a = json::array();
  for (std::size_t i = 0; i < v.dim(); ++i) a.push_back(complex_to_json(v[i]));
  return a;
}

inline Vector vector_from_json(const json& j, std::size_t expected_dim) {
  if (!j.is_array() || j.size() != expected_dim)
    throw std::invalid_argument("state entry count mismatch");
  Vector v(expected_dim);
  for (std::size_t i = 0; i < expected_dim; ++i) {
    v[i] = complex_from_json(j[i]);
    detail::require_finite(v[i]);
  }
  return v;
}

inline json matrix_to_json(const Matrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(complex_to_json(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

inline Matrix matrix_from_json(const json& j, std::size_t dim) {
  if (!j.is_array() || j.size() != dim)
    throw std::invalid_argument("matrix row count mismatch");
  Matrix m(dim, dim);
  for (std::size_t i = 0; i < dim; ++i) {
    if (!j[i].is_array() || j[i].size() != dim)
      throw std::invalid_argument("matrix column count mismatch");
    for (std::size_t k = 0; k < dim; ++k) {
      m(i, k) = complex_from_json(j[i][k]);
      detail::require_finite(m(i, k));
    }
  }
  return m;
}

}  // namespace io

inline io::json strategy_to_json(const CHSHStrategy& s) {
  io::json j;
  j["dimA"] = s.dim_a();
  j["dimB"] = s.dim_b();
  j["psi"] = io::vector_to_json(s.psi());
  j["A0"] = io::matrix_to_json(s.a0().matrix());
  j["A1"] = io::matrix_to_json(s.a1().matrix());
  j["B0"] = io::matrix_to_json(s.b0().matrix());
  j["B1"] = io::matrix_to_json(s.b1().matrix());
  return j;
}

inline CHSHStrategy strategy_from_json(const io::json& j, double tol = kObservableTol) {
  for (const char* key : {"dimA", "dimB", "psi", "A0", "A1", "B0", "B1"})
    if (!j.contains(key))
      throw std::invalid_argument(std::string("strategy file missing field: ") + key);
  const std::size_t da = j["dimA"].get<std::size_t>();
  const std::size_t db = j["dimB"].get<std::size_t>();
  if (da == 0 || db == 0) throw std::invalid_argument("dims must be >= 1");
  return CHSHStrategy(da, db, io::vector_from_json(j["psi"], da * db),
                      io::matrix_from_json(j["A0"], da), io::matrix_from_json(j["A1"], da),
                      io::matrix_from_json(j["B0"], db), io::matrix_from_json(j["B1"], db),
                      tol);
}

inline void save_strategy(const std::string& path, const CHSHStrategy& s) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << strategy_to_json(s).dump(2) << '\n';
  if (!out) throw std::runtime_error("write failed: " + path);
}

inline CHSHStrategy load_strategy(const std::string& path, double tol = kObservableTol) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open strategy file: " + path);
  io::json j;
  in >> j;
  return strategy_from_json(j, tol);
}

}  // namespace chshlab
