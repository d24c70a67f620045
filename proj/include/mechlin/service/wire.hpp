#pragma once

#include <cmath>
#include <complex>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"
#include "mechlin/error.hpp"
#include "mechlin/factor/permutation.hpp"
#include "mechlin/numeric/eigen.hpp"
#include "mechlin/scalar/ncexpr.hpp"
#include "mechlin/scalar/ratfunc.hpp"

namespace mechlin::wire {

using json = nlohmann::ordered_json;

/// A decoded MatrixDocument. Exact scalars travel as strings; doubles as
/// JSON numbers.
using AnyMatrix = std::variant<Matrix<Rational>, Matrix<GaussianRational>, Matrix<double>, Matrix<Poly>>;

template <class S>
struct ScalarTag;
template <>
struct ScalarTag<Rational> {
  static constexpr const char* name = "rational";
};
template <>
struct ScalarTag<GaussianRational> {
  static constexpr const char* name = "gaussian";
};
template <>
struct ScalarTag<double> {
  static constexpr const char* name = "double";
};
template <>
struct ScalarTag<Poly> {
  static constexpr const char* name = "poly";
};
template <>
struct ScalarTag<RatFunc> {
  static constexpr const char* name = "ratfunc";
};
template <>
struct ScalarTag<NCExpr> {
  static constexpr const char* name = "nc";
};
template <>
struct ScalarTag<cdouble> {
  static constexpr const char* name = "complex";
};

[[noreturn]] inline void bad_request(const std::string& msg, std::map<std::string, std::string> detail = {}) {
  throw Error(ErrorCode::BadRequest, msg, std::move(detail));
}

inline json error_json(const Error& e) {
  json d = json::object();
  for (const auto& [k, v] : e.detail()) d[k] = v;
  return {{"code", std::string(code_name(e.code()))}, {"message", e.message()}, {"detail", d}};
}

// Doubles that JSON cannot carry go out as strings.
inline json number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

inline json scalar_json(const Rational& v) { return v.to_string(); }
inline json scalar_json(const GaussianRational& v) { return v.to_string(); }
inline json scalar_json(const Poly& v) { return v.to_string(); }
inline json scalar_json(const RatFunc& v) { return v.to_string(); }
inline json scalar_json(const NCExpr& v) { return v.to_string(); }
inline json scalar_json(double v) { return number(v); }
inline json scalar_json(const cdouble& v) { return {{"re", number(v.real())}, {"im", number(v.imag())}}; }

template <class S>
json matrix_json(const Matrix<S>& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(scalar_json(m(i, j)));
    rows.push_back(std::move(row));
  }
  json doc = {{"scalar", ScalarTag<S>::name}, {"rows", m.rows()}, {"cols", m.cols()}, {"entries", std::move(rows)}};
  if constexpr (std::is_same_v<S, Poly>) {
    std::string v;
    for (const auto& p : m.data())
      if (!p.var().empty()) v = p.var();
    if (!v.empty()) doc["var"] = v;
  }
  return doc;
}

template <class S>
json vector_json(const std::vector<S>& v) {
  json out = json::array();
  for (const auto& x : v) out.push_back(scalar_json(x));
  return out;
}

inline json matrix_json(const AnyMatrix& m) {
  return std::visit([](const auto& x) { return matrix_json(x); }, m);
}

inline json permutation_json(const Permutation& p) { return json(p); }

// Field access with BadRequest on a missing or mistyped member.
inline const json& field(const json& obj, const char* key) {
  if (!obj.is_object()) bad_request("request body must be a JSON object");
  auto it = obj.find(key);
  if (it == obj.end()) bad_request(std::string("missing field '") + key + "'", {{"field", key}});
  return *it;
}

inline bool has(const json& obj, const char* key) { return obj.is_object() && obj.contains(key) && !obj.at(key).is_null(); }

inline std::string get_string(const json& obj, const char* key) {
  const json& v = field(obj, key);
  if (!v.is_string()) bad_request(std::string("field '") + key + "' must be a string", {{"field", key}});
  return v.get<std::string>();
}

inline std::string get_string(const json& obj, const char* key, const std::string& fallback) {
  return has(obj, key) ? get_string(obj, key) : fallback;
}

inline long long get_int(const json& obj, const char* key) {
  const json& v = field(obj, key);
  if (!v.is_number_integer()) bad_request(std::string("field '") + key + "' must be an integer", {{"field", key}});
  return v.get<long long>();
}

inline long long get_int(const json& obj, const char* key, long long fallback) {
  return has(obj, key) ? get_int(obj, key) : fallback;
}

inline std::uint64_t get_seed(const json& obj, const char* key) {
  const json& v = field(obj, key);
  if (v.is_number_unsigned()) return v.get<std::uint64_t>();
  if (v.is_number_integer() && v.get<long long>() >= 0) return static_cast<std::uint64_t>(v.get<long long>());
  bad_request(std::string("field '") + key + "' must be a nonnegative integer", {{"field", key}});
}

inline double get_double(const json& obj, const char* key) {
  const json& v = field(obj, key);
  if (v.is_number()) return v.get<double>();
  if (v.is_string()) return Rational::parse(v.get<std::string>()).to_double();
  bad_request(std::string("field '") + key + "' must be a number", {{"field", key}});
}

inline bool get_bool(const json& obj, const char* key, bool fallback) {
  if (!has(obj, key)) return fallback;
  const json& v = obj.at(key);
  if (!v.is_boolean()) bad_request(std::string("field '") + key + "' must be true or false", {{"field", key}});
  return v.get<bool>();
}

namespace detail {

inline std::string where(std::size_t i, std::size_t j) {
  return "(" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")";
}

// Exact scalars come as strings; integers are accepted as a convenience.
inline std::string exact_text(const json& v, const std::string& at) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_integer()) return v.dump();
  if (v.is_number()) bad_request("exact scalars travel as strings, not floats, at " + at, {{"entry", at}});
  bad_request("entry must be a string at " + at, {{"entry", at}});
}

template <class S>
S read_scalar(const json& v, const std::string& at, const std::string& var) {
  auto tagged = [&](auto&& fn) -> S {
    try {
      return fn();
    } catch (const Error& e) {
      auto d = e.detail();
      d["entry"] = at;
      throw Error(e.code(), e.message() + " at " + at, d);
    }
  };
  if constexpr (std::is_same_v<S, double>) {
    if (v.is_number()) return v.get<double>();
    if (v.is_string()) return tagged([&] { return Rational::parse(v.get<std::string>()).to_double(); });
    bad_request("double entry must be a number at " + at, {{"entry", at}});
  } else if constexpr (std::is_same_v<S, Rational>) {
    const std::string t = exact_text(v, at);
    return tagged([&] { return Rational::parse(t); });
  } else if constexpr (std::is_same_v<S, GaussianRational>) {
    const std::string t = exact_text(v, at);
    return tagged([&] { return GaussianRational::parse(t); });
  } else {
    const std::string t = exact_text(v, at);
    return tagged([&] { return Poly::parse(t, var); });
  }
}

template <class S>
Matrix<S> read_entries(const json& doc, std::size_t rows, std::size_t cols, const std::string& var) {
  const json& e = field(doc, "entries");
  if (!e.is_array() || e.size() != rows) bad_request("entries must be an array of 'rows' rows");
  Matrix<S> m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    if (!e[i].is_array() || e[i].size() != cols)
      bad_request("row " + std::to_string(i + 1) + " must have 'cols' entries", {{"row", std::to_string(i + 1)}});
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = read_scalar<S>(e[i][j], where(i, j), var);
  }
  return m;
}

}  // namespace detail

/// MatrixDocument -> matrix. "scalar" defaults to rational.
inline AnyMatrix read_matrix(const json& doc) {
  if (!doc.is_object()) bad_request("matrix must be a MatrixDocument object");
  const std::string scalar = get_string(doc, "scalar", "rational");
  const long long rows = get_int(doc, "rows"), cols = get_int(doc, "cols");
  if (rows < 1 || cols < 1 || rows > 4096 || cols > 4096)
    bad_request("rows and cols must be in 1..4096", {{"rows", std::to_string(rows)}, {"cols", std::to_string(cols)}});
  const auto r = static_cast<std::size_t>(rows), c = static_cast<std::size_t>(cols);
  const std::string var = get_string(doc, "var", "");
  if (scalar == "rational") return detail::read_entries<Rational>(doc, r, c, var);
  if (scalar == "gaussian") return detail::read_entries<GaussianRational>(doc, r, c, var);
  if (scalar == "double") return detail::read_entries<double>(doc, r, c, var);
  if (scalar == "poly") {
    Matrix<Poly> m = detail::read_entries<Poly>(doc, r, c, var);
    std::string v = var;
    for (const auto& p : m.data()) {
      if (p.var().empty()) continue;
      if (v.empty()) v = p.var();
      if (p.var() != v)
        throw Error(ErrorCode::VariableMismatch, "entries use different variables",
                    {{"first", v}, {"second", p.var()}});
    }
    return m.map([&](const Poly& p) { return v.empty() ? p : p.with_var(v); });
  }
  bad_request("unknown scalar '" + scalar + "'", {{"scalar", scalar}});
}

/// A vector given either as a plain JSON array or as a one-column
/// MatrixDocument, read in the scalar type S.
template <class S>
Matrix<S> read_column(const json& v) {
  if (v.is_array()) {
    if (v.empty()) bad_request("vector must not be empty");
    Matrix<S> out(v.size(), 1);
    for (std::size_t i = 0; i < v.size(); ++i) out(i, 0) = detail::read_scalar<S>(v[i], detail::where(i, 0), "");
    return out;
  }
  AnyMatrix m = read_matrix(v);
  if (auto* exact = std::get_if<Matrix<S>>(&m)) return *exact;
  if constexpr (std::is_same_v<S, double>) {
    if (auto* q = std::get_if<Matrix<Rational>>(&m)) return q->map([](const Rational& x) { return x.to_double(); });
  }
  if constexpr (std::is_same_v<S, GaussianRational>) {
    if (auto* q = std::get_if<Matrix<Rational>>(&m)) return q->map([](const Rational& x) { return GaussianRational(x); });
  }
  bad_request(std::string("vector must hold ") + ScalarTag<S>::name + " scalars");
}

inline const char* scalar_name(const AnyMatrix& m) {
  return std::visit([](const auto& x) { return ScalarTag<typename std::decay_t<decltype(x)>::scalar_type>::name; }, m);
}

}  // namespace mechlin::wire
