#pragma once

// JSON and CSV serialization for problem files and reports. Every reader
// throws ParseError with a message naming the offending field.
//
// Schemas:
//   matrix       [[a11, a12], [a21, a22]]  (rows), or a flat row-major
//                list of m*m numbers
//   HomPolyMap   {"dim": m, "codim": d, "degree": n,
//                 "coords": [[{"exponents": [...], "coeff": c}, ...], ...]}
//                one list per output coordinate; with codim 1 a single flat
//                list of monomials is also accepted. Missing monomials are 0.
//   JetSpec      {"dim": m, "J": J, "polys": [HomPolyMap, ...]}
//   problem      {"A": matrix, "terms": [HomPolyMap, ...],
//                 "flat_term": {"kind": "exp_flat", "coeff": [...]},
//                 "degree_cap": D, "tol": t}
//   GridFunction {"grid_size": G, "values": [v0, ..., vG]}

#include <filesystem>
#include <ostream>
#include <string>

#include <Eigen/Core>
#include <json.hpp>

#include "blidkit/cohomo.hpp"
#include "blidkit/germ.hpp"
#include "blidkit/gridfunction.hpp"
#include "blidkit/polyalg.hpp"

namespace blidkit {

using Json = nlohmann::ordered_json;

Json read_json_file(const std::filesystem::path& path);
Json parse_json_text(const std::string& text);
void write_text_file(const std::filesystem::path& path,
                     const std::string& text);

Eigen::MatrixXd matrix_from_json(const Json& j);
Json matrix_to_json(const Eigen::MatrixXd& a);
Eigen::VectorXd vector_from_json(const Json& j);
Json vector_to_json(const Eigen::VectorXd& v);

HomPolyMap hompoly_from_json(const Json& j);
Json hompoly_to_json(const HomPolyMap& p);

JetSpec jet_from_json(const Json& j);

CohomologicalProblem problem_from_json(const Json& j);

GridFunction gridfunction_from_json(const Json& j);
Json gridfunction_to_json(const GridFunction& x);

Json resonances_to_json(const std::vector<Resonance>& r);
Json complex_list_to_json(const std::vector<std::complex<double>>& z);
Json solve_report_to_json(const SolveReport& r);

/// "x1,...,xm,residual" rows with a header.
void write_residual_csv(std::ostream& out,
                        const std::vector<ResidualSample>& samples);

}  // namespace blidkit
