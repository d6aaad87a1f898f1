#include <optional>
#include <sstream>

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "schwarz_atlas/cli.hpp"
#include "schwarz_atlas/errors.hpp"
#include "schwarz_atlas/exact.hpp"
#include "schwarz_atlas/gauss.hpp"
#include "schwarz_atlas/report.hpp"
#include "schwarz_atlas/roots.hpp"
#include "schwarz_atlas/schwarzcond.hpp"
#include "schwarz_atlas/torus.hpp"
#include "schwarz_atlas/triangle.hpp"

namespace py = pybind11;
using namespace schwarz_atlas;

namespace {

std::string rstr(const Rational& r) { return report::rational(r).get<std::string>(); }

roots::RootSystem system_of(const std::string& family, int rank) {
  return roots::RootSystem::build(roots::RootSystemType::parse(family, rank));
}

std::vector<std::string> names(const std::vector<roots::RootSystemType>& v) {
  std::vector<std::string> out;
  for (const auto& t : v) out.push_back(t.name());
  return out;
}

py::dict monodromy_dict(const gauss::Monodromy& m) {
  py::dict d;
  d["point"] = gauss::point_name(m.point);
  d["matrix"] = Eigen::MatrixXcd(m.matrix);
  d["eigenvalues"] = std::vector<std::complex<double>>(m.eigenvalues.begin(), m.eigenvalues.end());
  d["expected"] = std::vector<std::complex<double>>(m.expected.begin(), m.expected.end());
  d["eigenvalue_residual"] = m.eigenvalue_residual;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Schwarz triangles, root-system hypergeometric systems and Schwarz conditions";

  py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);
  py::register_exception<NumericError>(m, "NumericError", PyExc_ArithmeticError);

  m.attr("SCHEMA_VERSION") = report::kSchemaVersion;

  m.def("run", [](const std::vector<std::string>& args) {
    std::ostringstream out, err;
    int code = cli::dispatch(args, out, err);
    return py::make_tuple(code, out.str(), err.str());
  }, py::arg("args"), "Run one CLI command; returns (exit_code, stdout, stderr).");

  m.def("report_schema", [] { return report::dump(report::schema()); });

  m.def("normalize_rational", [](const std::string& s) { return rstr(Rational::parse(s)); });
  m.def("k_from_p", [](long long p) { return rstr(k_from_p(p)); });

  // roots
  m.def("root_constants", [](const std::string& family, int rank) {
    auto r = system_of(family, rank);
    py::dict d;
    d["name"] = r.type().name();
    d["positive_roots"] = r.positive_coefficients();
    d["gram"] = r.gram();
    d["coxeter_number"] = roots::coxeter_number(r);
    d["theorem_a"] = rstr(roots::theorem_a(r));
    d["hyperbolic_exponent"] = rstr(roots::hyperbolic_exponent(r));
    return d;
  }, py::arg("family"), py::arg("rank"));

  // gauss
  m.def("gauss_monodromy", [](const std::string& a, const std::string& b, const std::string& c) {
    gauss::GaussParams p{Rational::parse(a), Rational::parse(b), Rational::parse(c)};
    auto g = gauss::monodromy_group(p);
    py::dict d;
    d["m0"] = monodromy_dict(g.m0);
    d["m1"] = monodromy_dict(g.m1);
    d["m_inf"] = monodromy_dict(g.m_inf);
    d["relation_residual"] = g.relation_residual;
    return d;
  }, py::arg("alpha"), py::arg("beta"), py::arg("gamma"));

  m.def("vertex_angles", [](const std::string& kappa, const std::string& lambda, const std::string& mu) {
    ExponentTriple t{Rational::parse(kappa), Rational::parse(lambda), Rational::parse(mu)};
    auto va = gauss::vertex_angles(gauss::GaussParams::from_differences(t));
    return std::vector<double>(va.angles.begin(), va.angles.end());
  }, py::arg("kappa"), py::arg("lambda_"), py::arg("mu"));

  m.def("pullback_dictionary", [](const std::string& k1, const std::string& k2, const std::string& lam) {
    auto p = gauss::dictionary({Rational::parse(k1), Rational::parse(k2), Rational::parse(lam)});
    return py::make_tuple(rstr(p.alpha), rstr(p.beta), rstr(p.gamma));
  }, py::arg("k1"), py::arg("k2"), py::arg("lambda_"));

  m.def("pullback_residual", [](const std::string& k1, const std::string& k2, const std::string& lam,
                                std::complex<double> z) {
    return gauss::pullback_ode_residual({Rational::parse(k1), Rational::parse(k2), Rational::parse(lam)}, z);
  }, py::arg("k1"), py::arg("k2"), py::arg("lambda_"), py::arg("z"));

  // triangle
  m.def("classify", [](int k, int l, int mm) { return triangle::geometry_name(triangle::classify(k, l, mm)); });

  m.def("tessellate", [](int k, int l, int mm, int depth, std::size_t max_tiles) {
    triangle::Budget b;
    b.max_depth = depth;
    b.max_tiles = max_tiles;
    auto t = triangle::tessellate(k, l, mm, b);
    py::dict d;
    d["geometry"] = triangle::geometry_name(t.base.geometry);
    d["tile_count"] = t.tiles.size();
    d["closure_reached"] = t.closure_reached;
    d["max_angle_residual"] = triangle::max_angle_residual(t);
    if (t.base.geometry == triangle::Geometry::Hyperbolic) {
      d["max_orthogonality_residual"] = triangle::orthogonal_circle(t).max_residual;
      d["max_vertex_modulus"] = triangle::max_vertex_modulus(t);
    }
    return d;
  }, py::arg("k"), py::arg("l"), py::arg("m"), py::arg("depth") = 64, py::arg("max_tiles") = 200000);

  // torus
  m.def("sample_points", [](const std::string& family, int rank, int count, std::uint64_t seed) {
    return torus::sample_generic(system_of(family, rank), count, seed);
  }, py::arg("family"), py::arg("rank"), py::arg("count"), py::arg("seed") = 0);

  m.def("flatness_residual", [](const std::string& family, int rank, const std::string& k,
                                const Eigen::VectorXcd& z, std::optional<std::string> a) {
    std::optional<Rational> ao;
    if (a) ao = Rational::parse(*a);
    return torus::flatness_residual(system_of(family, rank), Rational::parse(k), z, ao);
  }, py::arg("family"), py::arg("rank"), py::arg("k"), py::arg("z"), py::arg("a_override") = py::none());

  m.def("mirror_monodromy", [](const std::string& family, int rank, const std::string& k,
                               const roots::IntVector& alpha) {
    auto r = system_of(family, rank);
    auto mm = torus::mirror_monodromy(r, Rational::parse(k), torus::default_base(rank), alpha);
    py::dict d;
    d["matrix"] = mm.M;
    d["eigenvalues"] = Eigen::VectorXcd(mm.eigenvalues);
    d["q_squared"] = mm.q_squared;
    d["hecke_residual"] = mm.hecke_residual;
    return d;
  }, py::arg("family"), py::arg("rank"), py::arg("k"), py::arg("alpha"));

  m.def("ball_check", [](const std::string& family, int rank, const std::string& k, int samples, std::uint64_t seed) {
    auto r = system_of(family, rank);
    auto base = torus::default_base(rank);
    auto rep = torus::ball_check(r, Rational::parse(k), base, torus::sample_near(r, base, samples, seed));
    py::dict d;
    d["H"] = rep.form.H;
    d["signature"] = py::make_tuple(rep.form.positive, rep.form.negative);
    d["null_dimension"] = rep.form.null_dimension;
    d["invariance_residual"] = rep.form.residual;
    d["lorentz"] = rep.lorentz;
    d["all_negative"] = rep.all_negative;
    std::vector<double> vals;
    for (const auto& s : rep.samples) vals.push_back(s.value);
    d["values"] = vals;
    return d;
  }, py::arg("family"), py::arg("rank"), py::arg("k"), py::arg("samples") = 10, py::arg("seed") = 0);

  // schwarzcond
  m.def("schwarz_check", [](const std::string& family, int rank, const std::string& k) {
    auto rep = schwarz::check(roots::RootSystemType::parse(family, rank), Rational::parse(k));
    py::list conds;
    for (const auto& c : rep.conditions) {
      py::dict d;
      d["kind"] = schwarz::kind_name(c.kind);
      d["label"] = c.label;
      d["value"] = rstr(c.value);
      d["satisfied"] = c.satisfied;
      d["vacuous"] = c.vacuous;
      conds.append(d);
    }
    py::dict d;
    d["conditions"] = conds;
    d["pass"] = rep.pass;
    return d;
  }, py::arg("family"), py::arg("rank"), py::arg("k"));

  m.def("enumerate", [](long long p_min, long long p_max, int rank_max) {
    auto e = schwarz::enumerate(p_min, p_max, rank_max);
    auto diff = schwarz::corollary_diff(e);
    py::dict rows;
    for (const auto& row : e.rows) rows[py::int_(*row.p)] = names(row.passing);
    py::list items;
    for (const auto& d : diff.items)
      items.append(py::make_tuple(d.p, d.type.name(), d.extra ? "extra" : "missing", d.documented));
    py::dict d;
    d["rows"] = rows;
    d["discrepancies"] = items;
    d["undocumented"] = diff.undocumented;
    return d;
  }, py::arg("p_min") = 3, py::arg("p_max") = 100, py::arg("rank_max") = 13);

  m.def("corollary_table", [] {
    py::dict d;
    for (const auto& [p, types] : schwarz::corollary_table()) d[py::int_(p)] = names(types);
    return d;
  });

  m.def("dm_scan", [](int n_max, long long p_max) {
    auto s = schwarz::dm_equivalence_scan(n_max, p_max);
    py::dict d;
    d["cases"] = s.entries.size();
    d["identity_failures"] = s.identity_failures;
    d["verdict_disagreements"] = s.verdict_disagreements;
    d["hidden_flagged"] = s.hidden_flagged;
    d["hidden_raw"] = s.hidden_raw;
    return d;
  }, py::arg("n_max") = 10, py::arg("p_max") = 60);
}
