#pragma once

#include <cctype>
#include <functional>
#include <map>
#include <string>
#include <string_view>

#include "mechlin/assessment.hpp"
#include "mechlin/companion.hpp"
#include "mechlin/determinants.hpp"
#include "mechlin/factor/block.hpp"
#include "mechlin/factor/ldlt.hpp"
#include "mechlin/factor/qr.hpp"
#include "mechlin/factor/solve.hpp"
#include "mechlin/numeric/svd.hpp"
#include "mechlin/parametric.hpp"
#include "mechlin/parser.hpp"
#include "mechlin/service/wire.hpp"
#include "mechlin/special.hpp"

namespace mechlin::service {

using wire::AnyMatrix;
using wire::json;

struct Response {
  int status = 200;
  json body;
};

namespace detail {

using namespace wire;

template <class S>
inline constexpr bool exact_field_v = std::is_same_v<S, Rational> || std::is_same_v<S, GaussianRational>;

template <class M>
using scalar_of = typename std::decay_t<M>::scalar_type;

[[noreturn]] inline void wrong_scalar(const std::string& what, const AnyMatrix& m, const char* wanted) {
  throw Error(ErrorCode::InvalidArgument, what + " needs " + wanted + " entries",
              {{"scalar", scalar_name(m)}, {"operation", what}});
}

// Runs f on a rational or gaussian matrix.
template <class F>
json on_exact(const AnyMatrix& m, const std::string& what, F f) {
  return std::visit(
      [&](const auto& a) -> json {
        if constexpr (exact_field_v<scalar_of<decltype(a)>>)
          return f(a);
        else
          wrong_scalar(what, m, "rational or gaussian");
      },
      m);
}

// Runs f on a rational, gaussian or double matrix.
template <class F>
json on_field(const AnyMatrix& m, const std::string& what, F f) {
  return std::visit(
      [&](const auto& a) -> json {
        if constexpr (!std::is_same_v<scalar_of<decltype(a)>, Poly>)
          return f(a);
        else
          wrong_scalar(what, m, "numeric");
      },
      m);
}

// Real double view of a rational or double matrix.
inline Matrix<double> as_double(const AnyMatrix& m, const std::string& what) {
  if (auto* d = std::get_if<Matrix<double>>(&m)) return *d;
  if (auto* q = std::get_if<Matrix<Rational>>(&m)) return to_double(*q);
  wrong_scalar(what, m, "rational or double");
}

inline Matrix<Rational> as_rational(const AnyMatrix& m, const std::string& what) {
  if (auto* q = std::get_if<Matrix<Rational>>(&m)) return *q;
  wrong_scalar(what, m, "rational");
}

template <class S>
json column_json(const Matrix<S>& v) {
  json out = json::array();
  for (std::size_t i = 0; i < v.rows(); ++i) out.push_back(scalar_json(v(i, 0)));
  return out;
}

inline Pivoting parse_pivoting(const std::string& s) {
  if (s == "none") return Pivoting::none;
  if (s == "partial") return Pivoting::partial;
  if (s == "complete") return Pivoting::complete;
  if (s == "rook") return Pivoting::rook;
  throw Error(ErrorCode::InvalidArgument, "pivoting must be none, partial, complete or rook", {{"pivoting", s}});
}

inline std::vector<Rational> rational_list(const json& req, const char* key) {
  std::vector<Rational> out;
  if (!has(req, key)) return out;
  const json& v = req.at(key);
  if (!v.is_array()) bad_request(std::string("field '") + key + "' must be an array", {{"field", key}});
  for (std::size_t i = 0; i < v.size(); ++i) out.push_back(wire::detail::read_scalar<Rational>(v[i], key + ("[" + std::to_string(i) + "]"), ""));
  return out;
}

inline json companion_json(const CompanionResult& r) {
  json out = {{"A", matrix_json(r.A)}};
  if (r.B) out["B"] = matrix_json(*r.B);
  out["basis"] = basis_name(r.basis);
  out["height"] = r.height.to_string();
  return out;
}

// "0", "1", an integer, or a symbol name.
inline NCExpr nc_operand(const json& v, const std::string& at) {
  if (v.is_number_integer()) return NCExpr(Rational(v.get<long long>()));
  if (!v.is_string()) bad_request("block entries must be strings at " + at, {{"entry", at}});
  const std::string s = v.get<std::string>();
  if (!s.empty() && (std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) {
    for (char ch : s)
      if (!std::isalnum(static_cast<unsigned char>(ch)) && ch != '_')
        bad_request("block entry '" + s + "' is not a symbol or an integer", {{"entry", at}});
    return NCExpr::symbol(s);
  }
  return NCExpr(Rational::parse(s));
}

// ---- endpoints ----

inline json parse(const json& req) {
  ParseOptions opts;
  opts.alphabetical = get_bool(req, "alphabetical", false);
  const std::string text = get_string(req, "text");
  if (get_bool(req, "complex", false)) {
    auto s = parse_system_complex(text, opts);
    return {{"A", matrix_json(s.A)}, {"b", matrix_json(s.b)}, {"vars", s.vars}, {"text", render_system(s)}};
  }
  auto s = parse_system(text, opts);
  return {{"A", matrix_json(s.A)}, {"b", matrix_json(s.b)}, {"vars", s.vars}, {"text", render_system(s)}};
}

inline json block_lu(const json& req) {
  const json& b = field(req, "blocks");
  if (!b.is_array() || b.size() != 2 || !b[0].is_array() || !b[1].is_array() || b[0].size() != 2 || b[1].size() != 2)
    throw Error(ErrorCode::ShapeMismatch, "blocks must be a 2x2 array of symbols");
  Matrix<NCExpr> m(2, 2);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) m(i, j) = nc_operand(b[i][j], wire::detail::where(i, j));
  auto f = block_lu_2x2(m);
  Matrix<NCExpr> lu = f.L * f.U;
  return {{"L", matrix_json(f.L)}, {"U", matrix_json(f.U)}, {"LU", matrix_json(lu.map([](const NCExpr& e) { return nc_normalize(e); }))}};
}

inline json factor(const json& req) {
  const std::string kind = get_string(req, "kind");
  if (kind == "block_lu") return block_lu(req);
  const AnyMatrix m = read_matrix(field(req, "matrix"));
  if (kind == "plu") {
    const Pivoting piv = parse_pivoting(get_string(req, "pivoting", "partial"));
    return on_field(m, "plu", [&](const auto& a) {
      auto f = plu(a, piv);
      json out = {{"P", f.row_perm}, {"L", matrix_json(f.L)}, {"U", matrix_json(f.U)}};
      if (f.col_perm) out["Q"] = *f.col_perm;
      return out;
    });
  }
  if (kind == "turing") {
    return on_exact(m, "turing", [](const auto& a) {
      auto t = turing(a);
      return json{{"P", t.row_perm},          {"L", matrix_json(t.L)}, {"D", matrix_json(t.D)},
                  {"U", matrix_json(t.U)},    {"R", matrix_json(t.R)}, {"rank", t.rank},
                  {"pivot_cols", t.pivot_cols}};
    });
  }
  if (kind == "qr") {
    if (auto* d = std::get_if<Matrix<double>>(&m)) {
      auto f = qr_householder(*d);
      return {{"Q", matrix_json(f.Q)}, {"R", matrix_json(f.R)}, {"mode", "householder"}};
    }
    return on_exact(m, "qr", [](const auto& a) {
      auto f = qr_exact(a);
      return json{{"Q", matrix_json(f.Q)}, {"R", matrix_json(f.R)}, {"mode", "orthogonal_unnormalized"}};
    });
  }
  if (kind == "ldlt") {
    return on_exact(m, "ldlt", [](const auto& a) {
      auto f = ldlt(a);
      return json{{"L", matrix_json(f.L)}, {"d", vector_json(f.d)}};
    });
  }
  if (kind == "cholesky") return {{"L", matrix_json(cholesky(as_double(m, "cholesky")))}};
  if (kind == "schur") {
    return on_field(m, "schur", [&](const auto& a) {
      const long long k = get_int(req, "split", static_cast<long long>(a.rows() / 2));
      if (k < 1 || k >= static_cast<long long>(std::min(a.rows(), a.cols())))
        throw Error(ErrorCode::OutOfRange, "split must leave four nonempty blocks", {{"split", std::to_string(k)}});
      const auto s = static_cast<std::size_t>(k);
      return json{{"S", matrix_json(schur_complement(a, BlockPartition{s, s}))}, {"split", s}};
    });
  }
  throw Error(ErrorCode::InvalidArgument, "unknown factor kind '" + kind + "'", {{"kind", kind}});
}

inline json det(const json& req) {
  const std::string method = get_string(req, "method", "auto");
  if (method == "symbolic") {
    auto s = symbolic_det_termcount(static_cast<int>(get_int(req, "n")));
    return {{"det", s.det.to_string()}, {"terms", s.terms}};
  }
  const AnyMatrix m = read_matrix(field(req, "matrix"));
  return std::visit(
      [&](const auto& a) -> json {
        using S = scalar_of<decltype(a)>;
        require_square(a, "det");
        if constexpr (std::is_same_v<S, Poly>) {
          if (method != "auto" && method != "laplace")
            throw Error(ErrorCode::InvalidArgument, "polynomial entries support only laplace", {{"method", method}});
          if (a.rows() > 8) throw Error(ErrorCode::OutOfRange, "laplace is limited to 8x8", {{"n", std::to_string(a.rows())}});
          return {{"det", det_laplace(a).to_string()}};
        } else if constexpr (std::is_same_v<S, double>) {
          if (method != "auto" && method != "pivots")
            throw Error(ErrorCode::InvalidArgument, "double entries support only pivots", {{"method", method}});
          auto f = plu(a, Pivoting::partial);
          double d = permutation_sign(f.row_perm);
          for (std::size_t k = 0; k < a.rows(); ++k) d *= f.U(k, k);
          return {{"det", number(d)}};
        } else {
          if (method == "laplace") {
            if (a.rows() > 8) throw Error(ErrorCode::OutOfRange, "laplace is limited to 8x8", {{"n", std::to_string(a.rows())}});
            return {{"det", det_laplace(a).to_string()}};
          }
          if (method == "schur") return {{"det", det_schur(a).to_string()}};
          if (method == "turing" || method == "pivots" || method == "auto") return {{"det", det_turing(a).to_string()}};
          throw Error(ErrorCode::InvalidArgument, "unknown det method '" + method + "'", {{"method", method}});
        }
      },
      m);
}

inline json solve(const json& req) {
  const AnyMatrix m = read_matrix(field(req, "A"));
  const std::string method = get_string(req, "method", "lu");
  if (method == "lstsq") {
    return on_field(m, "lstsq", [&](const auto& a) {
      using S = scalar_of<decltype(a)>;
      auto r = lstsq(a, read_column<S>(field(req, "b")));
      return json{{"x", column_json(r.x)}, {"residual", number(r.residual_norm)}};
    });
  }
  return on_exact(m, "solve", [&](const auto& a) {
    using S = scalar_of<decltype(a)>;
    const Matrix<S> b = read_column<S>(field(req, "b"));
    if (method == "cramer") return json{{"kind", "unique"}, {"x", column_json(cramer_solve(a, b))}};
    SolveMethod sm;
    if (method == "lu")
      sm = SolveMethod::lu;
    else if (method == "turing")
      sm = SolveMethod::turing;
    else
      throw Error(ErrorCode::InvalidArgument, "method must be lu, turing, cramer or lstsq", {{"method", method}});
    auto s = mechlin::solve(a, b, sm);
    static constexpr const char* kinds[] = {"unique", "family", "inconsistent"};
    json out = {{"kind", kinds[static_cast<int>(s.kind)]}, {"rank", s.rank}};
    if (s.x) out["x"] = column_json(*s.x);
    json ns = json::array();
    for (const auto& v : s.nullspace) ns.push_back(column_json(v));
    out["nullspace"] = ns;
    if (s.kind == SolutionKind::inconsistent) out["witness_row"] = s.witness_row;
    return out;
  });
}

inline json inverse(const json& req) {
  return on_exact(read_matrix(field(req, "matrix")), "inverse", [](const auto& a) {
    return json{{"inverse", matrix_json(inverse_exact(a))}, {"det", det_turing(a).to_string()}};
  });
}

inline json eig(const json& req) {
  const AnyMatrix m = read_matrix(field(req, "matrix"));
  if (get_bool(req, "exact", false)) {
    return on_exact(m, "exact eig", [](const auto& a) {
      auto e = eig_exact_small(a);
      return json{{"eigenvalues", vector_json(e.eigenvalues)}, {"unsolved", e.unsolved.to_string()}, {"note", e.note}};
    });
  }
  const Matrix<double> a = as_double(m, "eig");
  const bool vectors = get_bool(req, "vectors", false);
  const long long cap = get_int(req, "max_iterations", 0);
  if (cap < 0 || cap > 1000000) throw Error(ErrorCode::OutOfRange, "max_iterations must be in 0..1000000");
  auto r = eig_qr(a, vectors, static_cast<int>(cap));
  json out = {{"eigenvalues", vector_json(r.eigenvalues)}, {"iterations", r.iterations}};
  if (r.eigenvectors) {
    out["eigenvectors"] = matrix_json(*r.eigenvectors);
    json be = json::array();
    const Matrix<cdouble> ac = to_complex_matrix(a);
    for (std::size_t k = 0; k < r.eigenvalues.size(); ++k) {
      std::vector<cdouble> x(a.rows());
      for (std::size_t i = 0; i < a.rows(); ++i) x[i] = (*r.eigenvectors)(i, k);
      be.push_back(number(backward_error_eig(ac, r.eigenvalues[k], x)));
    }
    out["backward_errors"] = be;
  }
  if (get_bool(req, "condition", false)) {
    json c = json::array();
    for (const auto& l : r.eigenvalues) c.push_back(number(eig_condition(a, l)));
    out["conditions"] = c;
  }
  return out;
}

inline json svd(const json& req) {
  const Matrix<double> a = as_double(read_matrix(field(req, "matrix")), "svd");
  auto s = svd_jacobi(a);
  return {{"sigma", vector_json(s.sigma)},
          {"U", matrix_json(s.U)},
          {"V", matrix_json(s.V)},
          {"condition", number(condition_number(a))},
          {"rank", numeric_rank(a)}};
}

inline json companion(const json& req) {
  const std::string kind = get_string(req, "kind");
  const std::string var = get_string(req, "var", "z");
  auto poly = [&] { return Poly::parse(get_string(req, "poly"), var).with_var(var); };
  if (kind == "frobenius") {
    auto r = frobenius_companion(poly());
    json out = companion_json(r);
    out["charpoly"] = charpoly(r.A, var).to_string();
    return out;
  }
  if (kind == "pencil") {
    auto r = companion_pencil(poly());
    json out = companion_json(r);
    out["det"] = pencil_determinant(r.A, *r.B, var).to_string();
    return out;
  }
  if (kind == "colleague") return companion_json(colleague_chebyshev(rational_list(req, "coeffs")));
  if (kind == "mandelbrot") {
    const int n = static_cast<int>(get_int(req, "n"));
    json out = companion_json(mandelbrot_companion(n));
    out["poly"] = mandelbrot_poly(n, var).to_string();
    return out;
  }
  if (kind == "min_height") {
    auto r = min_height_companion_search(poly(), static_cast<int>(get_int(req, "hmax", 2)));
    return {{"A", matrix_json(r.A)}, {"height", r.height.to_string()}};
  }
  if (kind == "charpoly") {
    return on_exact(read_matrix(field(req, "matrix")), "charpoly",
                    [&](const auto& a) { return json{{"charpoly", charpoly(a, var).to_string()}}; });
  }
  throw Error(ErrorCode::InvalidArgument, "unknown companion kind '" + kind + "'", {{"kind", kind}});
}

inline json param_rref(const json& req) {
  const AnyMatrix m = read_matrix(field(req, "matrix"));
  const json& doc = req.at("matrix");
  ParamMatrix pm;
  pm.param = get_string(req, "param", get_string(doc, "var", "a"));
  if (auto* p = std::get_if<Matrix<Poly>>(&m))
    pm.entries = *p;
  else if (auto* q = std::get_if<Matrix<Rational>>(&m))
    pm.entries = q->map([](const Rational& x) { return Poly(x); });
  else
    wrong_scalar("param/rref", m, "poly or rational");
  const CaseTree tree = parametric_rref(pm);
  json leaves = json::array();
  for (const auto& l : tree.leaves) {
    json cons = json::array();
    for (const auto& c : l.condition.constraints)
      cons.push_back({{"q", c.q.to_string()}, {"kind", c.kind == ConstraintKind::zero ? "zero" : "nonzero"}});
    json leaf = {{"condition", l.condition.to_string()}, {"constraints", cons}, {"rank", l.rank}, {"rref", matrix_json(l.rref)}};
    if (l.det) leaf["det"] = l.det->to_string();
    leaf["generic_on_constraint"] = l.generic_on_constraint;
    leaves.push_back(std::move(leaf));
  }
  json out = {{"param", tree.param}, {"leaves", leaves}};
  if (has(req, "at")) {
    const Rational a0 = wire::detail::read_scalar<Rational>(req.at("at"), "at", "");
    auto s = specialize_leaf(tree, a0);
    json sp = {{"at", a0.to_string()}, {"leaf", s.leaf_index}, {"rank", s.rank}, {"rref", matrix_json(s.rref)}};
    if (s.det) sp["det"] = s.det->to_string();
    out["specialized"] = sp;
  }
  return out;
}

inline json gen(const json& req) {
  GeneratorSpec s;
  s.kind = parse_kind(get_string(req, "kind"));
  const long long size = get_int(req, "size", s.kind == MatrixKind::gallery3 ? 3 : 0);
  if (size < 1) throw Error(ErrorCode::InvalidArgument, "size must be positive", {{"size", std::to_string(size)}});
  s.size = static_cast<std::size_t>(size);
  s.seed = has(req, "seed") ? get_seed(req, "seed") : 0;
  s.first_row = rational_list(req, "first_row");
  s.first_col = rational_list(req, "first_col");
  s.last_row = rational_list(req, "last_row");
  const long long lower = get_int(req, "lower", 1), upper = get_int(req, "upper", 1), ops = get_int(req, "ops", 0);
  if (lower < 0 || upper < 0 || ops < 0) throw Error(ErrorCode::InvalidArgument, "lower, upper and ops must be nonnegative");
  s.lower = static_cast<std::size_t>(lower);
  s.upper = static_cast<std::size_t>(upper);
  s.ops = static_cast<std::size_t>(ops);
  s.lo = get_int(req, "lo", -5);
  s.hi = get_int(req, "hi", 5);
  s.multiplier = get_int(req, "multiplier", 2);
  return {{"matrix", matrix_json(generate(s))}, {"kind", std::string(kind_name(s.kind))}, {"seed", s.seed}};
}

inline json apply(const json& req) {
  return on_field(read_matrix(field(req, "matrix")), "apply", [&](const auto& a) {
    using S = scalar_of<decltype(a)>;
    const Matrix<S> x = read_column<S>(field(req, "vector"));
    if (x.rows() != a.cols())
      throw Error(ErrorCode::ShapeMismatch, "vector length must equal the number of columns",
                  {{"matrix", shape_string(a.rows(), a.cols())}, {"vector", std::to_string(x.rows())}});
    return json{{"vector", column_json(Matrix<S>(a * x))}};
  });
}

inline json project(const json& req) {
  return on_field(read_matrix(field(req, "A")), "project", [&](const auto& a) {
    using S = scalar_of<decltype(a)>;
    auto r = project_colspace(a, read_column<S>(field(req, "b")));
    std::size_t rk;
    if constexpr (std::is_same_v<S, double>)
      rk = numeric_rank(a);
    else
      rk = rank(a);
    return json{{"p", column_json(r.p)}, {"residual", number(r.residual_norm)}, {"rank", rk}};
  });
}

inline json exam_mc(const json& req) {
  const double v = get_double(req, "true_value");
  const json& o = field(req, "options");
  if (!o.is_array()) bad_request("options must be an array of numbers");
  std::vector<double> opts;
  for (const auto& x : o) {
    if (!x.is_number()) bad_request("options must be an array of numbers");
    opts.push_back(x.get<double>());
  }
  const double ans = mc_floor_answer(v, opts);
  const auto idx = static_cast<std::size_t>(std::find(opts.begin(), opts.end(), ans) - opts.begin());
  return {{"answer", ans}, {"index", idx}};
}

inline json exam_unimodular(const json& req) {
  const long long h = get_int(req, "max_height", 9);
  if (h < 0) throw Error(ErrorCode::InvalidArgument, "max_height must be nonnegative");
  auto q = exam_unimodular_question(get_seed(req, "seed"), h);
  return {{"A", matrix_json(q.A)}, {"inverse", matrix_json(q.inverse)}, {"seed", q.seed}};
}

inline json cayley_endpoint(const json& req) {
  return {{"Q", matrix_json(cayley(as_rational(read_matrix(field(req, "matrix")), "cayley")))}};
}

inline const std::map<std::string, json (*)(const json&), std::less<>>& routes() {
  static const std::map<std::string, json (*)(const json&), std::less<>> table{
      {"/v1/parse", parse},
      {"/v1/factor", factor},
      {"/v1/det", det},
      {"/v1/solve", solve},
      {"/v1/inverse", inverse},
      {"/v1/eig", eig},
      {"/v1/svd", svd},
      {"/v1/companion", companion},
      {"/v1/param/rref", param_rref},
      {"/v1/gen", gen},
      {"/v1/apply", apply},
      {"/v1/project", project},
      {"/v1/exam/mc", exam_mc},
      {"/v1/exam/unimodular", exam_unimodular},
      {"/v1/cayley", cayley_endpoint},
  };
  return table;
}

inline Response error_response(int status, const Error& e) { return {status, error_json(e)}; }

}  // namespace detail

/// POST routes, in a fixed order.
inline std::vector<std::string> post_routes() {
  std::vector<std::string> out;
  for (const auto& [k, v] : detail::routes()) out.push_back(k);
  return out;
}

/// Runs one POST route on a parsed body. Domain errors become 400 with an
/// ApiError body.
inline Response call(std::string_view route, const json& body) {
  const auto& table = detail::routes();
  auto it = table.find(route);
  if (it == table.end())
    return detail::error_response(404, Error(ErrorCode::NotFound, "no route " + std::string(route), {{"route", std::string(route)}}));
  try {
    return {200, it->second(body)};
  } catch (const Error& e) {
    return detail::error_response(400, e);
  } catch (const json::exception& e) {
    return detail::error_response(400, Error(ErrorCode::BadRequest, e.what()));
  } catch (const std::exception& e) {
    return detail::error_response(400, Error(ErrorCode::BadRequest, e.what()));
  }
}

/// Full request handling: method, path and raw body in, status and JSON out.
inline Response handle(std::string_view method, std::string_view path, std::string_view body) {
  if (path == "/v1/health") {
    if (method == "GET") return {200, json{{"ok", true}}};
    return detail::error_response(405, Error(ErrorCode::BadRequest, "health is GET only", {{"method", std::string(method)}}));
  }
  if (!detail::routes().count(std::string(path)))
    return detail::error_response(404, Error(ErrorCode::NotFound, "no route " + std::string(path), {{"route", std::string(path)}}));
  if (method != "POST")
    return detail::error_response(405, Error(ErrorCode::BadRequest, std::string(path) + " is POST only", {{"method", std::string(method)}}));
  json parsed;
  try {
    parsed = json::parse(body);
  } catch (const json::parse_error& e) {
    return detail::error_response(400, Error(ErrorCode::BadRequest, "malformed JSON: " + std::string(e.what())));
  }
  return call(path, parsed);
}

}  // namespace mechlin::service
