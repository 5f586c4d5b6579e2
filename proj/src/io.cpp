#include "blidkit/io.hpp"

#include <fstream>
#include <sstream>

#include "blidkit/errors.hpp"

namespace blidkit {

namespace {

const Json& field(const Json& j, const char* key, const std::string& where) {
  if (!j.is_object() || !j.contains(key)) {
    throw ParseError(where + ": missing field '" + key + "'");
  }
  return j.at(key);
}

double number(const Json& j, const std::string& where) {
  if (!j.is_number()) throw ParseError(where + ": expected a number");
  return j.get<double>();
}

int integer(const Json& j, const std::string& where) {
  if (!j.is_number_integer()) throw ParseError(where + ": expected an integer");
  return j.get<int>();
}

void add_monomials(HomPolyMap& p, int coord, const Json& list,
                   const std::string& where) {
  if (!list.is_array()) throw ParseError(where + ": expected a list of monomials");
  for (const Json& mono : list) {
    const Json& e = field(mono, "exponents", where);
    if (!e.is_array() || static_cast<int>(e.size()) != p.dim()) {
      throw ParseError(where + ": exponents must list " +
                       std::to_string(p.dim()) + " integers");
    }
    std::vector<int> exps;
    for (const Json& k : e) {
      const int v = integer(k, where + ".exponents");
      if (v < 0) throw ParseError(where + ": negative exponent");
      exps.push_back(v);
    }
    MultiIndex idx(exps);
    if (idx.degree() != p.degree()) {
      throw ParseError(where + ": monomial " + idx.to_string() +
                       " does not have degree " + std::to_string(p.degree()));
    }
    p.add_coeff(coord, idx, number(field(mono, "coeff", where), where + ".coeff"));
  }
}

}  // namespace

Json parse_json_text(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::exception& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what());
  }
}

Json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open input file " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_json_text(buf.str());
}

void write_text_file(const std::filesystem::path& path,
                     const std::string& text) {
  if (path.has_parent_path()) {
    std::filesystem::create_directories(path.parent_path());
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParseError("cannot write " + path.string());
  out << text;
}

Eigen::MatrixXd matrix_from_json(const Json& j) {
  if (!j.is_array() || j.empty()) {
    throw ParseError("matrix: expected a nonempty list");
  }
  if (j.front().is_array()) {
    const int rows = static_cast<int>(j.size());
    const int cols = static_cast<int>(j.front().size());
    Eigen::MatrixXd a(rows, cols);
    for (int r = 0; r < rows; ++r) {
      if (!j[r].is_array() || static_cast<int>(j[r].size()) != cols) {
        throw ParseError("matrix: ragged rows");
      }
      for (int c = 0; c < cols; ++c) a(r, c) = number(j[r][c], "matrix entry");
    }
    return a;
  }
  const int n = static_cast<int>(j.size());
  const int m = static_cast<int>(std::lround(std::sqrt(double(n))));
  if (m * m != n) throw ParseError("matrix: flat list length is not a square");
  Eigen::MatrixXd a(m, m);
  for (int k = 0; k < n; ++k) a(k / m, k % m) = number(j[k], "matrix entry");
  return a;
}

Json matrix_to_json(const Eigen::MatrixXd& a) {
  Json rows = Json::array();
  for (int r = 0; r < a.rows(); ++r) {
    Json row = Json::array();
    for (int c = 0; c < a.cols(); ++c) row.push_back(a(r, c));
    rows.push_back(row);
  }
  return rows;
}

Eigen::VectorXd vector_from_json(const Json& j) {
  if (!j.is_array()) throw ParseError("vector: expected a list of numbers");
  Eigen::VectorXd v(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) v[i] = number(j[i], "vector entry");
  return v;
}

Json vector_to_json(const Eigen::VectorXd& v) {
  Json out = Json::array();
  for (int i = 0; i < v.size(); ++i) out.push_back(v[i]);
  return out;
}

HomPolyMap hompoly_from_json(const Json& j) {
  const std::string where = "polynomial";
  const int dim = integer(field(j, "dim", where), where + ".dim");
  const int degree = integer(field(j, "degree", where), where + ".degree");
  const int codim =
      j.contains("codim") ? integer(j.at("codim"), where + ".codim") : 1;
  HomPolyMap p = [&] {
    try {
      return HomPolyMap(dim, codim, degree);
    } catch (const Error& e) {
      throw ParseError(where + ": " + e.what());
    }
  }();
  const Json& coords = field(j, "coords", where);
  if (!coords.is_array()) throw ParseError(where + ".coords: expected a list");
  const bool flat = codim == 1 && (coords.empty() || coords.front().is_object());
  if (flat) {
    add_monomials(p, 0, coords, where + ".coords");
  } else {
    if (static_cast<int>(coords.size()) != codim) {
      throw ParseError(where + ".coords: expected one list per output");
    }
    for (int c = 0; c < codim; ++c) {
      add_monomials(p, c, coords[c], where + ".coords[" + std::to_string(c) + "]");
    }
  }
  return p;
}

Json hompoly_to_json(const HomPolyMap& p) {
  Json coords = Json::array();
  for (int c = 0; c < p.codim(); ++c) {
    Json list = Json::array();
    for (int k = 0; k < static_cast<int>(p.basis().size()); ++k) {
      const double v = p.coefficients()(c, k);
      if (v == 0.0) continue;
      list.push_back(Json{{"exponents", p.basis()[k].exponents()}, {"coeff", v}});
    }
    coords.push_back(list);
  }
  return Json{{"dim", p.dim()},
              {"codim", p.codim()},
              {"degree", p.degree()},
              {"coords", coords}};
}

JetSpec jet_from_json(const Json& j) {
  JetSpec jet;
  jet.dim = integer(field(j, "dim", "jet"), "jet.dim");
  jet.order = integer(field(j, "J", "jet"), "jet.J");
  const Json& polys = field(j, "polys", "jet");
  if (!polys.is_array()) throw ParseError("jet.polys: expected a list");
  for (const Json& p : polys) jet.polys.push_back(hompoly_from_json(p));
  try {
    jet.validate();
  } catch (const Error& e) {
    throw ParseError(std::string("jet: ") + e.what());
  }
  return jet;
}

CohomologicalProblem problem_from_json(const Json& j) {
  CohomologicalProblem p;
  p.a = matrix_from_json(field(j, "A", "problem"));
  if (j.contains("terms")) {
    const Json& terms = j.at("terms");
    if (!terms.is_array()) throw ParseError("problem.terms: expected a list");
    for (const Json& t : terms) p.terms.push_back(hompoly_from_json(t));
  }
  if (j.contains("flat_term") && !j.at("flat_term").is_null()) {
    const Json& ft = j.at("flat_term");
    FlatTerm term;
    if (ft.contains("kind")) {
      if (!ft.at("kind").is_string()) throw ParseError("flat_term.kind: expected a string");
      term.kind = ft.at("kind").get<std::string>();
    }
    term.coeff = vector_from_json(field(ft, "coeff", "flat_term"));
    p.flat_term = term;
  }
  if (j.contains("degree_cap")) {
    p.degree_cap = integer(j.at("degree_cap"), "problem.degree_cap");
  }
  if (j.contains("tol")) p.tol = number(j.at("tol"), "problem.tol");
  try {
    p.validate();
  } catch (const Error& e) {
    throw ParseError(std::string("problem: ") + e.what());
  }
  return p;
}

GridFunction gridfunction_from_json(const Json& j) {
  const Json& values = field(j, "values", "grid function");
  std::vector<double> v;
  if (!values.is_array()) throw ParseError("grid function.values: expected a list");
  for (const Json& x : values) v.push_back(number(x, "grid function value"));
  if (j.contains("grid_size") &&
      integer(j.at("grid_size"), "grid_size") + 1 != static_cast<int>(v.size())) {
    throw ParseError("grid function: grid_size + 1 values expected");
  }
  try {
    return GridFunction(v);
  } catch (const Error& e) {
    throw ParseError(std::string("grid function: ") + e.what());
  }
}

Json gridfunction_to_json(const GridFunction& x) {
  return Json{{"grid_size", x.grid_size()}, {"values", x.values()}};
}

Json resonances_to_json(const std::vector<Resonance>& r) {
  Json out = Json::array();
  for (const Resonance& res : r) {
    out.push_back(Json{{"p", res.index.exponents()},
                       {"degree", res.index.degree()},
                       {"residual", res.residual}});
  }
  return out;
}

Json complex_list_to_json(const std::vector<std::complex<double>>& z) {
  Json out = Json::array();
  for (const auto& c : z) out.push_back(Json::array({c.real(), c.imag()}));
  return out;
}

Json solve_report_to_json(const SolveReport& r) {
  Json degrees = Json::array();
  for (const DegreeReport& d : r.degrees) {
    degrees.push_back(Json{{"degree", d.degree},
                           {"sigma_min", d.formal.sigma_min},
                           {"system_residual", d.formal.system_residual},
                           {"roundtrip_residual", d.formal.roundtrip_residual}});
  }
  Json residuals{{"formal", r.formal_residual}};
  residuals["local"] = r.local_residual ? Json(*r.local_residual) : Json(nullptr);
  residuals["global"] = r.residual;
  Json out{{"q", r.q},
           {"horizon", r.horizon},
           {"eigenvalues", complex_list_to_json(r.eigenvalues)},
           {"resonances", resonances_to_json(r.resonances)},
           {"degrees", degrees},
           {"residuals", residuals},
           {"samples", r.samples.size()}};
  if (r.global) {
    const GlobalizeReport& g = *r.global;
    out["k0"] = Json{{"strip", g.strip},
                     {"k0_plus", g.k0_plus},
                     {"k0_minus", g.k0_minus},
                     {"k0", g.k0},
                     {"bound", g.k0_bound}};
  } else {
    out["k0"] = nullptr;
  }
  return out;
}

void write_residual_csv(std::ostream& out,
                        const std::vector<ResidualSample>& samples) {
  const int m = samples.empty() ? 0 : static_cast<int>(samples.front().x.size());
  for (int i = 0; i < m; ++i) out << 'x' << (i + 1) << ',';
  out << "residual\n";
  out.precision(17);
  for (const ResidualSample& s : samples) {
    for (int i = 0; i < m; ++i) out << s.x[i] << ',';
    out << s.residual << '\n';
  }
}

}  // namespace blidkit
