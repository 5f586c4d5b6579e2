#include "cli.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>

#include <CLI11.hpp>
#include <Eigen/Dense>

#include "blidkit/blid.hpp"
#include "blidkit/bump.hpp"
#include "blidkit/cohomo.hpp"
#include "blidkit/germ.hpp"
#include "blidkit/gridfunction.hpp"
#include "blidkit/io.hpp"
#include "blidkit/polyalg.hpp"
#include "blidkit/random.hpp"

namespace blidkit::cli {

namespace fs = std::filesystem;

namespace {

Json load_input(const RunConfig& cfg, bool required) {
  if (!cfg.input) {
    if (required) throw ParseError("this subcommand needs --input <file>");
    return Json::object();
  }
  return read_json_file(*cfg.input);
}

void emit(const fs::path& path, const std::string& text, std::ostream& log) {
  write_text_file(path, text);
  log << "wrote " << path.string() << '\n';
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

ScalarCutoff cutoff_from(const Json& j, double a, double b) {
  if (j.contains("cutoff")) {
    const Json& c = j.at("cutoff");
    if (!c.is_array() || c.size() != 2 || !c[0].is_number() ||
        !c[1].is_number()) {
      throw ParseError("cutoff: expected [a, b]");
    }
    a = c[0].get<double>();
    b = c[1].get<double>();
  }
  try {
    return ScalarCutoff(a, b);
  } catch (const Error& e) {
    throw ParseError(std::string("cutoff: ") + e.what());
  }
}

int int_field(const Json& j, const char* key, int fallback) {
  if (!j.contains(key)) return fallback;
  if (!j.at(key).is_number_integer()) {
    throw ParseError(std::string(key) + ": expected an integer");
  }
  return j.at(key).get<int>();
}

double num_field(const Json& j, const char* key, double fallback) {
  if (!j.contains(key)) return fallback;
  if (!j.at(key).is_number()) {
    throw ParseError(std::string(key) + ": expected a number");
  }
  return j.at(key).get<double>();
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

// ---------------------------------------------------------------- extend

int run_extend(const RunConfig& cfg, const fs::path& out, std::ostream& log) {
  const Json in = load_input(cfg, false);
  const int grid = int_field(in, "grid_size", 200);
  const ScalarCutoff h = cutoff_from(in, 1.0 / 3.0, 0.5);
  const double max_scale = num_field(in, "max_scale", 1.5);
  const int rows = cfg.samples.value_or(61);
  if (rows < 2) throw ParseError("--samples must be at least 2");
  const GridFunction dir =
      in.contains("direction")
          ? gridfunction_from_json(in.at("direction"))
          : GridFunction::sample(grid, [](double t) { return t; });
  const double dir_norm = sup_norm(dir);
  if (dir_norm == 0.0) throw ParseError("direction must be nonzero");

  std::ostringstream csv;
  csv << "scale,sup_norm,f,F\n";
  int agree = 0;
  for (int i = 0; i < rows; ++i) {
    const double s = max_scale * i / (rows - 1);
    const GridFunction x = s * dir;
    const double big_f = integral_functional(x, true, h);
    if (!std::isfinite(big_f)) {
      throw CheckFailed("extension_finite", "extended functional is not finite",
                        Json{{"scale", s}});
    }
    std::string raw;
    try {
      const double f = integral_functional(x, false, h);
      raw = fmt(f);
      if (sup_norm(x) < h.inner_radius()) {
        if (f != big_f) {
          throw CheckFailed("extension_agreement",
                            "F differs from f inside the identity ball",
                            Json{{"scale", s}, {"f", f}, {"F", big_f}});
        }
        ++agree;
      }
    } catch (const PoleOnGrid&) {
      raw = "";
    }
    csv << fmt(s) << ',' << fmt(sup_norm(x)) << ',' << raw << ',' << fmt(big_f)
        << '\n';
  }

  const GridFunction far = GridFunction::constant(grid, 10.0);
  const double far_value = integral_functional(far, true, h);
  bool raw_undefined = false;
  try {
    integral_functional(far, false, h);
  } catch (const PoleOnGrid&) {
    raw_undefined = true;
  }
  if (!std::isfinite(far_value) || !raw_undefined) {
    throw CheckFailed("extension_far_point",
                      "x = 10 should give a finite F and an undefined f");
  }

  Json report{{"grid_size", grid},
              {"cutoff", {h.inner_radius(), h.outer_radius()}},
              {"identity_radius", h.inner_radius()},
              {"rows", rows},
              {"rows_checked_equal", agree},
              {"constant_10", {{"F", far_value}, {"f_defined", false}}},
              {"passed", true}};
  emit(out / "extend.csv", csv.str(), log);
  emit(out / "extend.json", dump(report), log);
  return kOk;
}

// ----------------------------------------------------------------- borel

JetSpec random_jet(int dim, int order, Rng& rng) {
  JetSpec jet;
  jet.dim = dim;
  jet.order = order;
  for (int j = 0; j <= order; ++j) {
    Eigen::MatrixXd c(1, basis_size(dim, j));
    for (int k = 0; k < c.cols(); ++k) c(0, k) = rng.uniform(-1.0, 1.0);
    jet.polys.emplace_back(dim, j, c);
  }
  return jet;
}

Eigen::VectorXd random_unit(int dim, Rng& rng) {
  for (;;) {
    Eigen::VectorXd v = rng.uniform_vector(dim, -1.0, 1.0);
    const double n = v.norm();
    if (n > 1e-3 && n <= 1.0) return v / n;
  }
}

int run_borel(const RunConfig& cfg, const fs::path& out, std::ostream& log) {
  const Json in = load_input(cfg, false);
  Rng rng(cfg.seed);
  const JetSpec jet =
      in.contains("jet") ? jet_from_json(in.at("jet")) : random_jet(2, 4, rng);
  const ScalarCutoff tau = cutoff_from(in, 0.25, 1.0);
  const double tol = cfg.tol.value_or(1e-4);
  const int ndirs = cfg.samples.value_or(20);
  const RealizedJet real = realize_jet(jet, tau);

  std::ostringstream csv;
  csv << "n,direction,coord";
  for (int i = 0; i < jet.dim; ++i) csv << ",d" << (i + 1);
  csv << ",extracted,expected,rel_err\n";
  double worst = 0.0;
  Json worst_sample = nullptr;
  for (int k = 0; k < ndirs; ++k) {
    const Eigen::VectorXd dir = random_unit(jet.dim, rng);
    for (int n = 0; n <= jet.order; ++n) {
      const Eigen::VectorXd got = jet_extract(real.map, dir, n);
      const Eigen::VectorXd want = jet.polys[n](dir);
      const double floor = std::max(continuity_bound(jet.polys[n]), 1e-300);
      for (int c = 0; c < jet.codim(); ++c) {
        const double err =
            std::abs(got[c] - want[c]) / std::max(std::abs(want[c]), floor);
        if (err > worst) {
          worst = err;
          worst_sample = Json{{"n", n}, {"direction", vector_to_json(dir)}};
        }
        csv << n << ',' << k << ',' << c;
        for (int i = 0; i < jet.dim; ++i) csv << ',' << fmt(dir[i]);
        csv << ',' << fmt(got[c]) << ',' << fmt(want[c]) << ',' << fmt(err)
            << '\n';
      }
    }
  }

  double total = 0.0;
  for (double b : real.summand_bounds) total += b;
  double far_max = 0.0;
  for (int i = 0; i < 200; ++i) {
    const Eigen::VectorXd x = 100.0 * random_unit(jet.dim, rng);
    far_max = std::max(far_max, value_norm(real.map(x)));
  }

  Json report{{"dim", jet.dim},
              {"J", jet.order},
              {"cutoff", {tau.inner_radius(), tau.outer_radius()}},
              {"scales", real.scales},
              {"summand_bounds", real.summand_bounds},
              {"identity_radius", real.identity_radius},
              {"max_rel_err", worst},
              {"tol", tol},
              {"sup_on_radius_100", far_max},
              {"certified_bound", total}};
  const bool ok_err = worst <= tol;
  const bool ok_bound = far_max <= total * (1.0 + 1e-12);
  report["passed"] = ok_err && ok_bound;
  emit(out / "borel.csv", csv.str(), log);
  emit(out / "borel.json", dump(report), log);
  if (!ok_err) {
    throw CheckFailed("borel_jet_match",
                      "jet_extract misses P_n by relative " + fmt(worst),
                      worst_sample);
  }
  if (!ok_bound) {
    throw CheckFailed("borel_bound", "|f| exceeds the certified bound on |x| = 100");
  }
  return kOk;
}

// ---------------------------------------------------------------- cohomo

int run_cohomo_solve(const RunConfig& cfg, const fs::path& out,
                     std::ostream& log) {
  const CohomologicalProblem problem = problem_from_json(load_input(cfg, true));
  SolveOptions opts;
  opts.seed = cfg.seed;
  opts.samples = cfg.samples.value_or(10000);
  const CohomologicalSolution sol = solve_cohomological(problem, opts);
  const double tol = cfg.tol.value_or(problem.tol);

  Json report = solve_report_to_json(sol.report);
  Json q = Json::array();
  for (const HomPolyMap& p : sol.formal) q.push_back(hompoly_to_json(p));
  report["formal_solution"] = q;
  report["tol"] = tol;
  report["passed"] = sol.report.residual <= tol;
  std::ostringstream csv;
  write_residual_csv(csv, sol.report.samples);
  emit(out / "cohomo_report.json", dump(report), log);
  emit(out / "cohomo_residuals.csv", csv.str(), log);
  if (sol.report.residual > tol) {
    const ResidualSample* worst = nullptr;
    for (const ResidualSample& s : sol.report.samples) {
      if (!worst || s.residual > worst->residual) worst = &s;
    }
    throw CheckFailed("cohomo_residual",
                      "residual " + fmt(sol.report.residual) + " exceeds " +
                          fmt(tol),
                      worst ? Json{{"x", vector_to_json(worst->x)},
                                   {"residual", worst->residual}}
                            : Json(nullptr));
  }
  return kOk;
}

int run_cohomo_resonances(const RunConfig& cfg, const fs::path& out,
                          std::ostream& log) {
  const Json in = load_input(cfg, true);
  if (!in.contains("A")) throw ParseError("resonance input: missing field 'A'");
  const Eigen::MatrixXd a = matrix_from_json(in.at("A"));
  if (a.rows() != a.cols()) throw ParseError("A must be square");
  const int n_max = int_field(in, "n_max", 4);
  if (n_max < 1) throw ParseError("n_max must be >= 1");
  const double tol = cfg.tol.value_or(num_field(in, "tol", 1e-8));
  const auto eig = eigenvalues(a);
  const auto hits = check_resonances(eig, n_max, tol);
  Json report{{"eigenvalues", complex_list_to_json(eig)},
              {"n_max", n_max},
              {"tol", tol},
              {"resonances", resonances_to_json(hits)}};
  for (const Resonance& r : hits) {
    log << "resonance p = " << r.index.to_string() << "  |lambda^p - 1| = "
        << r.residual << '\n';
  }
  emit(out / "resonances.json", dump(report), log);
  return kOk;
}

// ------------------------------------------------------------- blid show

int run_blid_show(const RunConfig& cfg, const fs::path& out, std::ostream& log) {
  const Json in = load_input(cfg, false);
  const ScalarCutoff tau = cutoff_from(in, 1.0 / 3.0, 0.5);
  double lo = -1.0, hi = 1.0;
  if (in.contains("range")) {
    const Json& r = in.at("range");
    if (!r.is_array() || r.size() != 2) throw ParseError("range: expected [lo, hi]");
    lo = r[0].get<double>();
    hi = r[1].get<double>();
    if (!(lo < hi)) throw ParseError("range: lo must be below hi");
  }
  const int n = cfg.samples.value_or(201);
  if (n < 2) throw ParseError("--samples must be at least 2");
  std::ostringstream csv;
  csv << "s,tau,dtau,h\n";
  for (int i = 0; i < n; ++i) {
    const double s = lo + (hi - lo) * i / (n - 1);
    const double t = tau.value(s);
    const double hs = scalar_blid_eval(tau, s);
    const bool inside = std::abs(s) <= tau.inner_radius();
    const bool outside = std::abs(s) >= tau.outer_radius();
    if (t < 0.0 || t > 1.0 || (inside && t != 1.0) || (outside && t != 0.0) ||
        std::abs(hs) > tau.outer_radius()) {
      throw CheckFailed("cutoff_profile", "cutoff profile out of range",
                        Json{{"s", s}, {"tau", t}, {"h", hs}});
    }
    csv << fmt(s) << ',' << fmt(t) << ',' << fmt(tau.first_derivative(s)) << ','
        << fmt(hs) << '\n';
  }
  emit(out / "blid_profile.csv", csv.str(), log);
  return kOk;
}

// -------------------------------------------------------------- selftest

struct Check {
  std::string name;
  double value = 0.0;
  double limit = 0.0;
  bool passed = false;
};

Eigen::MatrixXd random_hyperbolic(int m, Rng& rng) {
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(m, m);
  int i = 0;
  while (i < m) {
    const bool inside = rng.uniform() < 0.5;
    const double r = inside ? rng.uniform(0.2, 0.8) : rng.uniform(1.25, 3.0);
    if (i + 1 < m && rng.uniform() < 0.3) {
      const double th = rng.uniform(0.3, 2.8);
      d(i, i) = d(i + 1, i + 1) = r * std::cos(th);
      d(i, i + 1) = -r * std::sin(th);
      d(i + 1, i) = r * std::sin(th);
      i += 2;
    } else {
      d(i, i) = rng.uniform() < 0.5 ? -r : r;
      i += 1;
    }
  }
  Eigen::MatrixXd s = Eigen::MatrixXd::Identity(m, m) * 2.0;
  for (int r = 0; r < m; ++r)
    for (int c = 0; c < m; ++c) s(r, c) += rng.uniform(-1.0, 1.0);
  return s * d * s.inverse();
}

std::vector<Check> selftest_checks(std::uint64_t seed) {
  std::vector<Check> out;
  Rng rng(seed);
  auto add = [&out](std::string name, double value, double limit) {
    out.push_back({std::move(name), value, limit, value <= limit});
  };

  {
    const ScalarCutoff h(1.0 / 3.0, 0.5);
    double bound_excess = 0.0;
    double identity_miss = 0.0;
    for (int i = 0; i < 200; ++i) {
      const double scale = rng.uniform(0.0, 100.0);
      GridFunction x(64);
      for (int k = 0; k <= 64; ++k) x[k] = rng.uniform(-scale, scale);
      bound_excess = std::max(bound_excess, sup_norm(blid_c01(h, x)) - 0.5);
      GridFunction small = (0.3 / std::max(sup_norm(x), 1e-300)) * x;
      if (!(blid_c01(h, small) == small)) identity_miss += 1.0;
      if (integral_functional(small, true, h) !=
          integral_functional(small, false, h)) {
        identity_miss += 1.0;
      }
    }
    add("c01_blid_bound", std::max(bound_excess, 0.0), 0.0);
    add("c01_blid_identity_and_extension", identity_miss, 0.0);
  }
  {
    double worst = 0.0;
    for (int i = 0; i < 50; ++i) {
      const int m = rng.uniform_int(1, 3);
      const int j = rng.uniform_int(1, 4);
      Eigen::MatrixXd c(1, basis_size(m, j));
      for (int k = 0; k < c.cols(); ++k) c(0, k) = rng.uniform(-1.0, 1.0);
      const HomPolyMap p(m, j, c);
      const SymMultilinear g = polarize(p);
      const Eigen::VectorXd x = rng.uniform_vector(m, -1.0, 1.0);
      const double want = p(x)[0];
      const double got = g(std::vector<Eigen::VectorXd>(j, x))[0];
      worst = std::max(worst, std::abs(got - want) / std::max(std::abs(want), 1e-12));
    }
    add("polarization_diagonal", worst, 1e-10);
  }
  {
    const JetSpec jet = random_jet(2, 4, rng);
    const RealizedJet real = realize_jet(jet, ScalarCutoff(0.25, 1.0));
    double worst = 0.0;
    for (int k = 0; k < 5; ++k) {
      const Eigen::VectorXd dir = random_unit(2, rng);
      for (int n = 0; n <= 4; ++n) {
        const double got = jet_extract(real.map, dir, n)[0];
        const double want = jet.polys[n](dir)[0];
        const double floor = std::max(continuity_bound(jet.polys[n]), 1e-300);
        worst = std::max(worst, std::abs(got - want) / std::max(std::abs(want), floor));
      }
    }
    add("borel_jet_match", worst, 1e-4);
  }
  {
    const auto hits = check_resonances({2.0, 0.5}, 4, 1e-10);
    std::set<std::vector<int>> got;
    for (const Resonance& r : hits) got.insert(r.index.exponents());
    const std::set<std::vector<int>> want{{1, 1}, {2, 2}};
    add("resonances_diag_2_half", got == want ? 0.0 : 1.0, 0.0);
  }
  {
    Eigen::MatrixXd a = Eigen::Vector2d(0.5, 1.0 / 3.0).asDiagonal();
    HomPolyMap p(2, 1, 2);
    p.set_coeff(0, MultiIndex({2, 0}), 2.0);
    p.set_coeff(0, MultiIndex({1, 1}), 2.0);
    const std::vector<HomPolyMap> terms{p};
    const std::vector<HomPolyMap> q{solve_formal(a, p, 1e-10)};
    double worst = 0.0;
    for (int i = 0; i < 20; ++i) {
      const Eigen::VectorXd x = rng.in_ball(2, 1.0);
      const double series =
          solve_series(a, terms, x, SeriesDirection::contraction, 1e-12).value;
      worst = std::max(worst, std::abs(taylor_sum(q, x) - series));
    }
    add("formal_vs_series", worst, 1e-8);
  }
  {
    CohomologicalProblem pr;
    pr.a = Eigen::Vector2d(0.5, 2.0).asDiagonal();
    HomPolyMap p(2, 1, 2);
    p.set_coeff(0, MultiIndex({2, 0}), 2.0);
    p.set_coeff(0, MultiIndex({0, 2}), 2.0);
    pr.terms = {p};
    SolveOptions opts;
    opts.seed = seed;
    opts.samples = 2000;
    add("hyperbolic_pipeline_residual", solve_cohomological(pr, opts).report.residual,
        1e-10);
  }
  {
    double worst = 0.0;
    for (int i = 0; i < 20; ++i) {
      const Eigen::MatrixXd a = random_hyperbolic(rng.uniform_int(1, 4), rng);
      const HyperbolicSplitting s = split_hyperbolic(a);
      const Eigen::MatrixXd& pp = s.projector_plus();
      const Eigen::MatrixXd& pm = s.projector_minus();
      const int m = static_cast<int>(a.rows());
      worst = std::max({worst, (pp * pp - pp).cwiseAbs().maxCoeff(),
                        (pm * pm - pm).cwiseAbs().maxCoeff(),
                        (pp * pm).cwiseAbs().maxCoeff(),
                        (a * pp - pp * a).cwiseAbs().maxCoeff(),
                        (pp + pm - Eigen::MatrixXd::Identity(m, m))
                            .cwiseAbs()
                            .maxCoeff()});
    }
    add("projector_algebra", worst, 1e-8);
  }
  {
    const Eigen::MatrixXd a = Eigen::Vector2d(0.5, 2.0).asDiagonal();
    const HyperbolicSplitting s = split_hyperbolic(a);
    const double delta = 0.5;
    auto v = [delta](const Eigen::VectorXd& x) {
      return std::pow(std::max(0.0, x.norm() - delta), 3) * x[0];
    };
    const VanishingSplit vs = vanishing_split(
        v, s, radial_blid_with_bound(ScalarCutoff(0.25, 1.0), 0.25), delta);
    double nonzero = 0.0;
    for (int i = 0; i < 500; ++i) {
      Eigen::VectorXd x = rng.uniform_vector(2, -5.0, 5.0);
      Eigen::VectorXd xp = x;
      xp[0] = rng.uniform(-vs.strip, vs.strip) * 0.999;
      Eigen::VectorXd xm = x;
      xm[1] = rng.uniform(-vs.strip, vs.strip) * 0.999;
      if (vs.plus(xp) != 0.0) nonzero += 1.0;
      if (vs.minus(xm) != 0.0) nonzero += 1.0;
    }
    add("vanishing_split_strips", nonzero, 0.0);
  }
  {
    CohomologicalProblem pr;
    pr.a = Eigen::Vector2d(0.5, 2.0).asDiagonal();
    pr.flat_term = FlatTerm{"exp_flat", Eigen::Vector2d(1.0, 0.0)};
    pr.tol = 1e-8;
    SolveOptions opts;
    opts.seed = seed;
    opts.samples = 200;
    const SolveReport rep = solve_cohomological(pr, opts).report;
    add("flat_pipeline_residual", rep.residual, 1e-6);
    add("flat_pipeline_k0", rep.global->k0, rep.global->k0_bound);
  }
  return out;
}

int run_selftest(const RunConfig& cfg, const fs::path& out, std::ostream& log) {
  const std::vector<Check> checks = selftest_checks(cfg.seed);
  Json list = Json::array();
  const Check* first_fail = nullptr;
  for (const Check& c : checks) {
    list.push_back(Json{{"name", c.name},
                        {"value", c.value},
                        {"limit", c.limit},
                        {"passed", c.passed}});
    log << (c.passed ? "PASS " : "FAIL ") << c.name << "  value " << c.value
        << "  limit " << c.limit << '\n';
    if (!c.passed && !first_fail) first_fail = &c;
  }
  emit(out / "selftest.json",
       dump(Json{{"seed", cfg.seed}, {"checks", list},
                 {"passed", first_fail == nullptr}}),
       log);
  if (first_fail) {
    throw CheckFailed(first_fail->name,
                      first_fail->name + " = " + fmt(first_fail->value) +
                          " exceeds " + fmt(first_fail->limit));
  }
  return kOk;
}

Json error_report(const std::string& kind, const std::string& message,
                  int code) {
  return Json{{"status", "error"},
              {"kind", kind},
              {"message", message},
              {"exit_code", code}};
}

void report_error(const Json& report, const RunConfig& cfg, std::ostream& err) {
  err << report.dump() << '\n';
  try {
    write_text_file(resolve_out_dir(cfg) / "error.json", dump(report));
  } catch (...) {
    // The error report on stderr is authoritative.
  }
}

}  // namespace

fs::path resolve_out_dir(const RunConfig& cfg) {
  if (cfg.out) return *cfg.out;
  if (const char* env = std::getenv("BLIDKIT_OUT"); env && *env) {
    return fs::path(env);
  }
  return fs::current_path();
}

int run(const RunConfig& cfg, std::ostream& log, std::ostream& err) {
  try {
    const fs::path out = resolve_out_dir(cfg);
    fs::create_directories(out);
    const auto& c = cfg.command;
    auto is = [&c](std::initializer_list<const char*> words) {
      if (c.size() != words.size()) return false;
      std::size_t i = 0;
      for (const char* w : words) {
        if (c[i++] != w) return false;
      }
      return true;
    };
    if (is({"extend"})) return run_extend(cfg, out, log);
    if (is({"borel"})) return run_borel(cfg, out, log);
    if (is({"cohomo", "solve"})) return run_cohomo_solve(cfg, out, log);
    if (is({"cohomo", "resonances"})) return run_cohomo_resonances(cfg, out, log);
    if (is({"blid", "show"})) return run_blid_show(cfg, out, log);
    if (is({"selftest"})) return run_selftest(cfg, out, log);
    std::string joined;
    for (const auto& w : c) joined += (joined.empty() ? "" : " ") + w;
    throw ParseError("unknown subcommand '" + joined + "'");
  } catch (const CheckFailed& e) {
    Json rep = error_report("CheckFailed", e.what(), kCheckFailed);
    rep["check"] = e.check();
    rep["sample"] = e.sample();
    report_error(rep, cfg, err);
    return kCheckFailed;
  } catch (const ParseError& e) {
    report_error(error_report("ParseError", e.what(), kParseError), cfg, err);
    return kParseError;
  } catch (const SingularResonance& e) {
    Json rep = error_report(e.kind(), e.what(), kCheckFailed);
    rep["resonances"] = e.indices();
    rep["residuals"] = e.residuals();
    report_error(rep, cfg, err);
    return kCheckFailed;
  } catch (const Error& e) {
    report_error(error_report(e.kind(), e.what(), kCheckFailed), cfg, err);
    return kCheckFailed;
  } catch (const std::exception& e) {
    report_error(error_report("InternalError", e.what(), kCheckFailed), cfg, err);
    return kCheckFailed;
  }
}

int main_entry(int argc, char** argv, std::ostream& log, std::ostream& err) {
  CLI::App app{"blidkit: blid maps, germ extension and cohomological equations"};
  app.require_subcommand(1);

  RunConfig cfg;
  std::string input, out;
  double tol = 0.0;
  int samples = 0;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--input", input, "input JSON file");
    sub->add_option("--out", out, "output directory (default $BLIDKIT_OUT or .)");
    sub->add_option("--tol", tol, "tolerance override");
    sub->add_option("--seed", cfg.seed, "random seed");
    sub->add_option("--samples", samples, "sample count");
  };

  std::vector<std::string> command;
  auto leaf = [&](CLI::App* sub, std::vector<std::string> words) {
    add_common(sub);
    sub->callback([&command, words] { command = words; });
  };
  leaf(app.add_subcommand("extend", "germ extension demo on C[0,1]"), {"extend"});
  leaf(app.add_subcommand("borel", "jet realization and jet extraction table"),
       {"borel"});
  CLI::App* cohomo = app.add_subcommand("cohomo", "cohomological equation");
  cohomo->require_subcommand(1);
  leaf(cohomo->add_subcommand("solve", "solve g(Ax) - g(x) = f(x)"),
       {"cohomo", "solve"});
  leaf(cohomo->add_subcommand("resonances", "resonance scan of A"),
       {"cohomo", "resonances"});
  CLI::App* blid = app.add_subcommand("blid", "blid maps");
  blid->require_subcommand(1);
  leaf(blid->add_subcommand("show", "cutoff and scalar blid profile as CSV"),
       {"blid", "show"});
  leaf(app.add_subcommand("selftest", "built-in invariant suite"), {"selftest"});

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, log, err);
  } catch (const CLI::ParseError& e) {
    err << error_report("ParseError", e.what(), kParseError).dump() << '\n';
    return kParseError;
  }

  cfg.command = command;
  auto given = [&app](const char* flag) {
    for (CLI::App* sub : app.get_subcommands()) {
      CLI::App* s = sub;
      while (!s->get_subcommands().empty()) s = s->get_subcommands().front();
      if (s->count(flag) > 0) return true;
    }
    return false;
  };
  if (given("--input")) cfg.input = input;
  if (given("--out")) cfg.out = out;
  if (given("--tol")) cfg.tol = tol;
  if (given("--samples")) cfg.samples = samples;
  return run(cfg, log, err);
}

}  // namespace blidkit::cli
