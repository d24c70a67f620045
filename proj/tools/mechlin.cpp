// mechlin command line: every subcommand builds a request for the service
// layer and prints the response. Exit 0 ok, 1 domain error, 2 usage error.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

#include "CLI11.hpp"
#include "mechlin/service/server.hpp"

namespace {

using mechlin::service::json;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_input(const std::string& file) {
  if (file.empty()) return {std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
  std::ifstream in(file, std::ios::binary);
  if (!in) throw UsageError("cannot read " + file);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) {
    item.erase(0, item.find_first_not_of(" \t"));
    item.erase(item.find_last_not_of(" \t") + 1);
    out.push_back(item);
  }
  return out;
}

json string_list(const std::string& s) {
  json a = json::array();
  for (const auto& x : split(s, ',')) a.push_back(x);
  return a;
}

std::string cell(const json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_object() && v.contains("re")) {
    std::ostringstream os;
    os << cell(v["re"]);
    const std::string im = cell(v["im"]);
    os << (im.empty() || im[0] == '-' ? "" : "+") << im << "i";
    return os.str();
  }
  return v.dump();
}

bool is_matrix_doc(const json& v) { return v.is_object() && v.contains("entries") && v.contains("rows"); }

void print_matrix(std::ostream& os, const json& doc, bool csv) {
  std::vector<std::vector<std::string>> rows;
  std::size_t width = 0;
  for (const auto& r : doc["entries"]) {
    rows.emplace_back();
    for (const auto& x : r) {
      rows.back().push_back(cell(x));
      width = std::max(width, rows.back().back().size());
    }
  }
  for (const auto& r : rows) {
    for (std::size_t j = 0; j < r.size(); ++j) {
      if (csv) {
        os << (j ? "," : "") << r[j];
      } else {
        os << (j ? "  " : "  ") << std::string(width - r[j].size(), ' ') << r[j];
      }
    }
    os << "\n";
  }
}

// CSV and text render top-level fields; nested objects fall back to JSON.
void print(const json& body, const std::string& format) {
  if (format == "json") {
    std::cout << body.dump(2) << "\n";
    return;
  }
  const bool csv = format == "csv";
  for (const auto& [key, v] : body.items()) {
    if (is_matrix_doc(v)) {
      std::cout << (csv ? "# " : "") << key << (csv ? "" : ":") << "\n";
      print_matrix(std::cout, v, csv);
    } else if (v.is_array() && std::all_of(v.begin(), v.end(), [](const json& x) { return !x.is_array() && (!x.is_object() || x.contains("re")); })) {
      std::cout << key << (csv ? "" : ":");
      for (const auto& x : v) std::cout << (csv ? "," : " ") << cell(x);
      std::cout << "\n";
    } else if (v.is_object() || v.is_array()) {
      std::cout << key << (csv ? "," : ": ") << v.dump() << "\n";
    } else {
      std::cout << key << (csv ? "," : ": ") << cell(v) << "\n";
    }
  }
}

// A MatrixDocument on input becomes the named field of the request; any
// other JSON object is taken as the request itself.
json request_from_input(const std::string& file, const char* field) {
  const std::string text = read_input(file);
  json in;
  try {
    in = json::parse(text);
  } catch (const json::parse_error& e) {
    throw mechlin::Error(mechlin::ErrorCode::BadRequest, "input is not valid JSON: " + std::string(e.what()));
  }
  if (is_matrix_doc(in) || in.contains("scalar")) return json{{field, in}};
  if (!in.is_object()) throw mechlin::Error(mechlin::ErrorCode::BadRequest, "input must be a MatrixDocument or a request object");
  return in;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"mechlin: exact and numeric linear algebra"};
  app.require_subcommand(1);
  std::string file, format = "json";
  auto common = [&](CLI::App* sub) {
    sub->add_option("-f,--file", file, "MatrixDocument or request JSON (default: stdin)");
    sub->add_option("--format", format, "json, csv or text")->check(CLI::IsMember({"json", "csv", "text"}));
  };

  std::string route;
  std::function<json()> build;

  // parse
  auto* parse = app.add_subcommand("parse", "linear equations to (A, b)");
  common(parse);
  std::string text;
  bool complex = false, alphabetical = false;
  parse->add_option("--text", text, "equations (default: --file or stdin)");
  parse->add_flag("--complex", complex, "'i' is the imaginary unit");
  parse->add_flag("--alphabetical", alphabetical, "order variables by name");
  parse->callback([&] {
    route = "/v1/parse";
    build = [&] {
      return json{{"text", text.empty() ? read_input(file) : text}, {"complex", complex}, {"alphabetical", alphabetical}};
    };
  });

  // factor
  auto* factor = app.add_subcommand("factor", "plu, turing, qr, ldlt, cholesky, schur, block_lu");
  common(factor);
  std::string kind, pivoting = "partial", blocks;
  long long split_at = 0;
  factor->add_option("--kind", kind)->required();
  factor->add_option("--pivoting", pivoting)->check(CLI::IsMember({"none", "partial", "complete", "rook"}));
  factor->add_option("--split", split_at, "schur: size of the leading block");
  factor->add_option("--blocks", blocks, "block_lu: \"B11,B12;B21,B22\"");
  factor->callback([&] {
    route = "/v1/factor";
    build = [&] {
      json req;
      if (kind == "block_lu") {
        if (blocks.empty()) throw UsageError("block_lu needs --blocks");
        req["blocks"] = json::array();
        for (const auto& row : split(blocks, ';')) req["blocks"].push_back(string_list(row));
      } else {
        req = request_from_input(file, "matrix");
      }
      req["kind"] = kind;
      req["pivoting"] = pivoting;
      if (split_at > 0) req["split"] = split_at;
      return req;
    };
  });

  // det
  auto* det = app.add_subcommand("det", "determinant");
  common(det);
  std::string method;
  det->add_option("--method", method, "auto, laplace, schur, turing, pivots");
  det->callback([&] {
    route = "/v1/det";
    build = [&] {
      json req = request_from_input(file, "matrix");
      if (!method.empty()) req["method"] = method;
      return req;
    };
  });

  // solve
  auto* solve = app.add_subcommand("solve", "A x = b");
  common(solve);
  std::string rhs;
  solve->add_option("--rhs", rhs, "comma-separated right-hand side");
  solve->add_option("--method", method, "lu, turing, cramer, lstsq");
  solve->callback([&] {
    route = "/v1/solve";
    build = [&] {
      json req = request_from_input(file, "A");
      if (!rhs.empty()) req["b"] = string_list(rhs);
      if (!req.contains("b")) throw UsageError("solve needs --rhs or a request with \"b\"");
      if (!method.empty()) req["method"] = method;
      return req;
    };
  });

  // inverse, svd
  auto* inverse = app.add_subcommand("inverse", "exact inverse");
  common(inverse);
  inverse->callback([&] {
    route = "/v1/inverse";
    build = [&] { return request_from_input(file, "matrix"); };
  });
  auto* svd = app.add_subcommand("svd", "singular value decomposition");
  common(svd);
  svd->callback([&] {
    route = "/v1/svd";
    build = [&] { return request_from_input(file, "matrix"); };
  });

  // eig
  auto* eig = app.add_subcommand("eig", "eigenvalues");
  common(eig);
  bool vectors = false, exact = false, condition = false;
  int max_iterations = 0;
  eig->add_flag("--vectors", vectors);
  eig->add_flag("--exact", exact, "exact eigenvalues where rational");
  eig->add_flag("--condition", condition, "eigenvalue condition numbers");
  eig->add_option("--max-iterations", max_iterations);
  eig->callback([&] {
    route = "/v1/eig";
    build = [&] {
      json req = request_from_input(file, "matrix");
      req["vectors"] = vectors;
      req["exact"] = exact;
      req["condition"] = condition;
      if (max_iterations > 0) req["max_iterations"] = max_iterations;
      return req;
    };
  });

  // companion
  auto* comp = app.add_subcommand("companion", "frobenius, pencil, colleague, min_height, charpoly");
  common(comp);
  std::string poly, coeffs, var = "z";
  int hmax = 2;
  comp->add_option("--kind", kind)->required();
  comp->add_option("--poly", poly);
  comp->add_option("--coeffs", coeffs, "colleague: Chebyshev coefficients c0,c1,...");
  comp->add_option("--hmax", hmax);
  comp->add_option("--var", var);
  comp->callback([&] {
    route = "/v1/companion";
    build = [&] {
      json req = kind == "charpoly" ? request_from_input(file, "matrix") : json::object();
      req["kind"] = kind;
      req["var"] = var;
      if (!poly.empty()) req["poly"] = poly;
      if (!coeffs.empty()) req["coeffs"] = string_list(coeffs);
      req["hmax"] = hmax;
      return req;
    };
  });

  // mandelbrot
  auto* mandel = app.add_subcommand("mandelbrot", "height-1 companion of the n-th Mandelbrot polynomial");
  common(mandel);
  int n = 0;
  mandel->add_option("-n,--n", n)->required();
  mandel->callback([&] {
    route = "/v1/companion";
    build = [&] { return json{{"kind", "mandelbrot"}, {"n", n}}; };
  });

  // param
  auto* param = app.add_subcommand("param", "case tree of a matrix with one parameter");
  common(param);
  std::string at, pname;
  param->add_option("--at", at, "specialize at this rational value");
  param->add_option("--param", pname, "parameter name");
  param->callback([&] {
    route = "/v1/param/rref";
    build = [&] {
      json req = request_from_input(file, "matrix");
      if (!at.empty()) req["at"] = at;
      if (!pname.empty()) req["param"] = pname;
      return req;
    };
  });

  // gen
  auto* gen = app.add_subcommand("gen", "special matrices");
  common(gen);
  std::size_t size = 0;
  std::uint64_t seed = 0;
  long long lo = -5, hi = 5, lower = 1, upper = 1, ops = 0, multiplier = 2;
  std::string first_row, first_col, last_row;
  gen->add_option("--kind", kind)->required();
  gen->add_option("--size", size);
  gen->add_option("--seed", seed);
  gen->add_option("--lo", lo);
  gen->add_option("--hi", hi);
  gen->add_option("--lower", lower);
  gen->add_option("--upper", upper);
  gen->add_option("--ops", ops);
  gen->add_option("--multiplier", multiplier);
  gen->add_option("--first-row", first_row);
  gen->add_option("--first-col", first_col);
  gen->add_option("--last-row", last_row);
  gen->callback([&] {
    route = "/v1/gen";
    build = [&] {
      json req{{"kind", kind}, {"seed", seed}, {"lo", lo}, {"hi", hi}, {"lower", lower}, {"upper", upper}, {"ops", ops}, {"multiplier", multiplier}};
      if (size > 0) req["size"] = size;
      if (!first_row.empty()) req["first_row"] = string_list(first_row);
      if (!first_col.empty()) req["first_col"] = string_list(first_col);
      if (!last_row.empty()) req["last_row"] = string_list(last_row);
      return req;
    };
  });

  // exam
  auto* exam = app.add_subcommand("exam", "exam helpers");
  exam->require_subcommand(1);
  auto* mc = exam->add_subcommand("mc", "closest option not larger than the true value");
  common(mc);
  double value = 0;
  std::vector<double> options;
  mc->add_option("--value", value)->required();
  mc->add_option("--options", options)->required()->delimiter(',');
  mc->callback([&] {
    route = "/v1/exam/mc";
    build = [&] { return json{{"true_value", value}, {"options", options}}; };
  });
  auto* uni = exam->add_subcommand("unimodular", "3x3 matrix with an integer inverse");
  common(uni);
  long long max_height = 9;
  uni->add_option("--seed", seed)->required();
  uni->add_option("--max-height", max_height);
  uni->callback([&] {
    route = "/v1/exam/unimodular";
    build = [&] { return json{{"seed", seed}, {"max_height", max_height}}; };
  });

  // serve
  auto* serve = app.add_subcommand("serve", "JSON over HTTP");
  int port = 8080;
  bool open = false;
  std::string host = "127.0.0.1";
  serve->add_option("--port", port, "overridden by MECHLIN_PORT");
  serve->add_option("--host", host, "bind address");
  serve->add_flag("--public", open, "bind 0.0.0.0 instead of loopback");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  if (serve->parsed()) {
    if (const char* env = std::getenv("MECHLIN_PORT")) {
      try {
        port = std::stoi(env);
      } catch (const std::exception&) {
        std::cerr << "MECHLIN_PORT is not a port number\n";
        return 2;
      }
    }
    if (open) host = "0.0.0.0";
    std::cerr << "mechlin serving on " << host << ":" << port << "\n";
    if (!mechlin::service::serve(host, port)) {
      std::cerr << "cannot bind " << host << ":" << port << "\n";
      return 2;
    }
    return 0;
  }

  try {
    const json req = build();
    const auto res = mechlin::service::call(route, req);
    if (res.status != 200) {
      std::cout << res.body.dump() << "\n";
      return 1;
    }
    print(res.body, format);
    return 0;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const mechlin::Error& e) {
    std::cout << mechlin::wire::error_json(e).dump() << "\n";
    return 1;
  }
}
