#pragma once

#include <cstddef>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "../errors.hpp"
#include "../matrix.hpp"
#include "../ode.hpp"
#include "../scalar.hpp"
#include "../system.hpp"

namespace amca::cli {

using nlohmann::json;

// Malformed or inconsistent input document.
class SchemaError : public Error {
 public:
  using Error::Error;
};

inline json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SchemaError("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw SchemaError(path + ": " + e.what());
  }
}

// Accepts a JSON number or a string "p", "p/q" or a decimal literal.
template <Scalar T>
T read_scalar(const json& v, const std::string& where) {
  if (v.is_number_integer()) {
    if constexpr (is_exact_v<T>)
      return T(v.get<long long>());
    else
      return static_cast<double>(v.get<long long>());
  }
  if (v.is_number()) {
    double d = v.get<double>();
    if constexpr (is_exact_v<T>)
      return rational_from_double(d);
    else
      return d;
  }
  if (v.is_string()) {
    auto r = parse_rational(v.get<std::string>());
    if (!r) throw SchemaError(where + ": cannot parse number '" + v.get<std::string>() + "'");
    if constexpr (is_exact_v<T>)
      return *r;
    else
      return to_double(*r);
  }
  throw SchemaError(where + ": expected a number");
}

// Row-major nested array with the given physical shape; block size s is used
// only to name the offending block row in messages.
template <Scalar T>
Matrix<T> read_matrix(const json& v, std::size_t rows, std::size_t cols, std::size_t s, const std::string& name) {
  if (!v.is_array()) throw SchemaError(name + ": expected a nested array");
  if (v.size() != rows)
    throw SchemaError(name + ": expected " + std::to_string(rows) + " rows (" + std::to_string(rows / s) +
                      " block rows of size " + std::to_string(s) + "), got " + std::to_string(v.size()));
  Matrix<T> m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    const json& row = v[i];
    const std::string where = name + " row " + std::to_string(i + 1) + " (block row " + std::to_string(i / s + 1) + ")";
    if (!row.is_array() || row.size() != cols)
      throw SchemaError(where + ": expected " + std::to_string(cols) + " entries (" + std::to_string(cols / s) +
                        " block columns), got " + (row.is_array() ? std::to_string(row.size()) : "a non-array"));
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = read_scalar<T>(row[j], where);
  }
  return m;
}

template <Scalar T>
json write_scalar(const T& x) {
  if constexpr (is_exact_v<T>)
    return x.str();
  else
    return x;
}

template <Scalar T>
json write_matrix(const Matrix<T>& m) {
  json out = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(write_scalar(m(i, j)));
    out.push_back(std::move(row));
  }
  return out;
}

template <Scalar T>
json write_matrix_list(const std::vector<Matrix<T>>& ms) {
  json out = json::array();
  for (const auto& m : ms) out.push_back(write_matrix(m));
  return out;
}

inline std::size_t read_count(const json& doc, const char* key, std::size_t min_value = 1) {
  if (!doc.contains(key)) throw SchemaError(std::string("missing field '") + key + "'");
  const json& v = doc.at(key);
  if (!v.is_number_integer() || v.get<long long>() < static_cast<long long>(min_value))
    throw SchemaError(std::string("field '") + key + "' must be an integer >= " + std::to_string(min_value));
  return v.get<std::size_t>();
}

template <Scalar T>
BlockSystem<T> read_system(const json& doc) {
  if (!doc.is_object()) throw SchemaError("system file must hold one object");
  const std::size_t n = read_count(doc, "n"), s = read_count(doc, "s"), m = read_count(doc, "m"),
                    k = read_count(doc, "k"), p = read_count(doc, "p");
  if (p > n) throw SchemaError("p must lie in 1..n");
  if (!doc.contains("form") || !doc["form"].is_string()) throw SchemaError("missing field 'form'");
  auto form = parse_form(doc["form"].get<std::string>());
  if (!form || *form == Form::general)
    throw SchemaError("form must be 'frobenius' or 'hessenberg', got '" + doc["form"].get<std::string>() + "'");
  for (const char* key : {"F", "G", "H"})
    if (!doc.contains(key)) throw SchemaError(std::string("missing field '") + key + "'");
  return BlockSystem<T>(read_matrix<T>(doc["F"], n * s, n * s, s, "F"), read_matrix<T>(doc["G"], n * s, m * s, s, "G"),
                        read_matrix<T>(doc["H"], k * s, n * s, s, "H"), n, s, m, k, p, *form);
}

template <Scalar T>
json write_system(const BlockSystem<T>& sys) {
  return {{"n", sys.n},
          {"s", sys.s},
          {"m", sys.m},
          {"k", sys.k},
          {"p", sys.p},
          {"form", form_name(sys.form)},
          {"F", write_matrix(sys.F.matrix())},
          {"G", write_matrix(sys.G.matrix())},
          {"H", write_matrix(sys.H.matrix())}};
}

template <Scalar T>
std::vector<Matrix<T>> read_matrix_list(const json& v, std::size_t count, std::size_t s, const std::string& name) {
  if (!v.is_array() || v.size() != count)
    throw SchemaError(name + ": expected a list of " + std::to_string(count) + " matrices");
  std::vector<Matrix<T>> out;
  for (std::size_t i = 0; i < count; ++i) out.push_back(read_matrix<T>(v[i], s, s, s, name + "[" + std::to_string(i + 1) + "]"));
  return out;
}

enum class TargetKind { gammas, solvents };

// Exactly one of "gammas" / "solvents".
inline TargetKind target_kind(const json& doc) {
  if (!doc.is_object()) throw SchemaError("targets file must hold one object");
  const bool g = doc.contains("gammas"), s = doc.contains("solvents");
  if (g == s) throw SchemaError("targets file needs exactly one of 'gammas' or 'solvents'");
  return g ? TargetKind::gammas : TargetKind::solvents;
}

template <Scalar T>
std::vector<Matrix<T>> read_targets(const json& doc, TargetKind kind, std::size_t n, std::size_t s) {
  if (target_kind(doc) != kind)
    throw SchemaError(kind == TargetKind::gammas ? "expected 'gammas' in targets file" : "expected 'solvents' in targets file");
  const char* key = kind == TargetKind::gammas ? "gammas" : "solvents";
  return read_matrix_list<T>(doc[key], n, s, key);
}

// {"Q": ...} or a result document carrying Q (and optionally S).
template <Scalar T>
Matrix<T> read_gain(const json& doc, std::size_t rows, std::size_t cols, std::size_t s) {
  if (!doc.is_object() || !doc.contains("Q")) throw SchemaError("gain file needs a 'Q' field");
  return read_matrix<T>(doc["Q"], rows, cols, s, "Q");
}

template <Scalar T>
HigherOrderOde<T> read_ode(const json& doc) {
  if (!doc.is_object()) throw SchemaError("ode file must hold one object");
  HigherOrderOde<T> ode;
  ode.n = read_count(doc, "n");
  ode.s = read_count(doc, "s");
  ode.m = read_count(doc, "m");
  ode.k = read_count(doc, "k");
  ode.p = read_count(doc, "p");
  if (ode.p > ode.n) throw SchemaError("p must lie in 1..n");
  for (const char* key : {"A", "B", "C"})
    if (!doc.contains(key)) throw SchemaError(std::string("missing field '") + key + "'");
  ode.A = read_matrix_list<T>(doc["A"], ode.n, ode.s, "A");
  const json& b = doc["B"];
  if (!b.is_array() || b.size() != ode.n - ode.p + 1)
    throw SchemaError("B: expected " + std::to_string(ode.n - ode.p + 1) + " rows (l = p..n)");
  for (std::size_t l = 0; l < b.size(); ++l)
    ode.B.push_back(read_matrix_list<T>(b[l], ode.m, ode.s, "B row " + std::to_string(l + ode.p)));
  const json& c = doc["C"];
  if (!c.is_array() || c.size() != ode.p) throw SchemaError("C: expected " + std::to_string(ode.p) + " rows (v = 1..p)");
  for (std::size_t v = 0; v < c.size(); ++v)
    ode.C.push_back(read_matrix_list<T>(c[v], ode.k, ode.s, "C row " + std::to_string(v + 1)));
  return ode;
}

inline json write_strings(const std::vector<std::string>& xs) {
  json out = json::array();
  for (const auto& x : xs) out.push_back(x);
  return out;
}

}  // namespace amca::cli
