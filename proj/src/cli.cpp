#include "schwarz_atlas/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <numbers>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "schwarz_atlas/errors.hpp"
#include "schwarz_atlas/exact.hpp"
#include "schwarz_atlas/gauss.hpp"
#include "schwarz_atlas/parallel.hpp"
#include "schwarz_atlas/report.hpp"
#include "schwarz_atlas/roots.hpp"
#include "schwarz_atlas/schwarzcond.hpp"
#include "schwarz_atlas/torus.hpp"
#include "schwarz_atlas/triangle.hpp"

namespace schwarz_atlas::cli {

namespace {

using report::json;
using roots::RootSystem;
using roots::RootSystemType;

std::string sci(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", x);
  return buf;
}

std::string fixed(double x, int digits = 6) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.*f", digits, x);
  return buf;
}

std::string cstr(std::complex<double> z) { return "(" + fixed(z.real(), 9) + ", " + fixed(z.imag(), 9) + ")"; }

Rational rational_flag(const std::string& name, const std::string& text) {
  try {
    return Rational::parse(text);
  } catch (const ValidationError& e) {
    throw ValidationError("--" + name + ": " + e.what());
  }
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw ValidationError("cannot open '" + path + "' for writing");
  f << content;
  if (!f) throw ValidationError("failed writing '" + path + "'");
}

std::string join(const std::vector<std::string>& v, const std::string& sep) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? sep : "") + v[i];
  return out;
}

std::vector<std::string> type_names(const std::vector<RootSystemType>& types) {
  std::vector<std::string> out;
  for (const auto& t : types) out.push_back(t.name());
  return out;
}

json int_matrix(const roots::IntMatrix& m) {
  json out = json::array();
  for (const auto& row : m) out.push_back(row);
  return out;
}

// Options shared by every leaf command.
struct Common {
  std::string format = "text";
  bool json_flag = false;
  const std::string& fmt() const {
    static const std::string j = "json";
    return json_flag ? j : format;
  }
};

void add_format(CLI::App* sub, Common& c, std::vector<std::string> allowed) {
  sub->add_option("--format", c.format, "output format")->check(CLI::IsMember(std::move(allowed)));
}

// Prints the envelope or the text rendering; returns `code`.
int emit(std::ostream& out, const Common& c, const report::Envelope& env, const std::string& text, int code) {
  if (c.fmt() == "json")
    out << report::dump(report::to_json(env));
  else
    out << text;
  return code;
}

report::Envelope envelope(std::string module, std::string operation) {
  report::Envelope e;
  e.module = std::move(module);
  e.operation = std::move(operation);
  return e;
}

RootSystemType parse_type(const std::string& family, int rank) { return RootSystemType::parse(family, rank); }

// ---------------------------------------------------------------- roots

struct RootsDump {
  Common c;
  std::string family = "A";
  int rank = 2;
};

int run_roots_dump(const RootsDump& o, std::ostream& out) {
  const auto r = RootSystem::build(parse_type(o.family, o.rank));
  const auto& t = r.type();
  auto env = envelope("roots", "dump");
  env.inputs = {{"type", std::string(1, roots::family_letter(t.family))}, {"rank", t.rank}};
  json positive = json::array();
  for (std::size_t i = 0; i < r.positive_roots().size(); ++i) {
    long long height = 0;
    for (long long c : r.positive_coefficients()[i]) height += c;
    positive.push_back({{"coefficients", r.positive_coefficients()[i]},
                        {"ambient", r.positive_roots()[i]},
                        {"height", height}});
  }
  json inv = json::array();
  for (const auto& row : r.inverse_gram()) inv.push_back(report::rationals(row));
  auto& res = env.results;
  res["name"] = t.name();
  res["ambient_dim"] = r.ambient_dim();
  res["ambient_scale"] = r.ambient_scale();
  res["simple_roots"] = r.simple_roots();
  res["cartan_matrix"] = int_matrix(roots::cartan_matrix(t));
  res["gram"] = int_matrix(r.gram());
  res["inverse_gram"] = inv;
  res["positive_roots"] = positive;
  res["root_count"] = 2 * r.positive_roots().size();
  res["highest_root"] = r.highest_root();
  res["coxeter_number"] = roots::coxeter_number(r);
  res["theorem_a"] = report::rational(roots::theorem_a(r));
  res["hyperbolic_exponent"] = report::rational(roots::hyperbolic_exponent(r));
  if (t.family != roots::Family::A) {
    res["toric_d_set"] = roots::toric_d_set(r);
    res["leaf_branch_distances"] = roots::leaf_branch_distances(t);
  }
  env.paper_refs = {"claim:theorem-a-constants", "claim:hyperbolic-exponent"};

  std::ostringstream text;
  text << t.name() << ": " << r.positive_roots().size() << " positive roots, h = " << roots::coxeter_number(r)
       << ", a = " << roots::theorem_a(r).str() << ", m = " << roots::hyperbolic_exponent(r).str() << "\n";
  text << "cartan:\n";
  for (const auto& row : roots::cartan_matrix(t)) {
    text << " ";
    for (long long x : row) text << " " << (x >= 0 ? " " : "") << x;
    text << "\n";
  }
  text << "highest root:";
  for (long long x : r.highest_root()) text << " " << x;
  text << "\n";
  return emit(out, o.c, env, text.str(), kOk);
}

// ---------------------------------------------------------------- gauss

struct GaussMonodromy {
  Common c;
  std::string alpha, beta, gamma;
  double tolerance = 1e-7;
  double eigen_tolerance = 1e-6;
};

json monodromy_json(const gauss::Monodromy& m) {
  return {{"point", gauss::point_name(m.point)},
          {"matrix", report::complex_matrix(m.matrix)},
          {"eigenvalues", json::array({report::complex(m.eigenvalues[0]), report::complex(m.eigenvalues[1])})},
          {"expected", json::array({report::complex(m.expected[0]), report::complex(m.expected[1])})}};
}

int run_gauss_monodromy(const GaussMonodromy& o, std::ostream& out) {
  gauss::GaussParams p{rational_flag("alpha", o.alpha), rational_flag("beta", o.beta),
                       rational_flag("gamma", o.gamma)};
  const auto scheme = gauss::riemann_scheme(p);
  if (scheme.log_case) throw LogCaseError("integer exponent difference: logarithmic case is not supported");
  const auto g = gauss::monodromy_group(p);

  auto env = envelope("gauss", "monodromy");
  env.inputs = {{"alpha", report::rational(p.alpha)}, {"beta", report::rational(p.beta)},
                {"gamma", report::rational(p.gamma)}};
  json exps = json::object();
  for (int i = 0; i < 3; ++i)
    exps[gauss::point_name(scheme.points[i])] = report::rationals({scheme.exponents[i][0], scheme.exponents[i][1]});
  env.results["riemann_scheme"] = exps;
  env.results["differences"] = report::rationals(
      {scheme.differences.kappa, scheme.differences.lambda, scheme.differences.mu});
  env.results["base_point"] = report::complex({0.5, 0.0});
  env.results["m0"] = monodromy_json(g.m0);
  env.results["m1"] = monodromy_json(g.m1);
  env.results["m_inf"] = monodromy_json(g.m_inf);
  env.residuals["relation_residual"] = g.relation_residual;
  env.residuals["m0_eigenvalue_residual"] = g.m0.eigenvalue_residual;
  env.residuals["m1_eigenvalue_residual"] = g.m1.eigenvalue_residual;
  env.residuals["m_inf_eigenvalue_residual"] = g.m_inf.eigenvalue_residual;
  env.paper_refs = {"claim:monodromy-relation", "claim:riemann-scheme"};

  const double eig = std::max({g.m0.eigenvalue_residual, g.m1.eigenvalue_residual, g.m_inf.eigenvalue_residual});
  const bool ok = g.relation_residual <= o.tolerance && eig <= o.eigen_tolerance;
  env.results["pass"] = ok;

  std::ostringstream text;
  for (const auto* m : {&g.m0, &g.m1, &g.m_inf}) {
    text << "M_" << gauss::point_name(m->point) << ":\n";
    for (int i = 0; i < 2; ++i) text << "  " << cstr(m->matrix(i, 0)) << "  " << cstr(m->matrix(i, 1)) << "\n";
    text << "  eigenvalues " << cstr(m->eigenvalues[0]) << " " << cstr(m->eigenvalues[1])
         << "  residual " << sci(m->eigenvalue_residual) << "\n";
  }
  text << "relation residual " << sci(g.relation_residual) << (ok ? "  ok" : "  FAIL") << "\n";
  return emit(out, o.c, env, text.str(), ok ? kOk : kNumeric);
}

struct GaussTriangle {
  Common c;
  std::string kappa, lambda, mu;
  std::string svg_path;
  int samples = 48;
  double tolerance = 1e-4;
};

int run_gauss_triangle(const GaussTriangle& o, std::ostream& out) {
  ExponentTriple d{rational_flag("kappa", o.kappa), rational_flag("lambda", o.lambda), rational_flag("mu", o.mu)};
  if (!d.is_reduced())
    throw ValidationError("exponent differences are not reduced (need each >= 0 and pairwise sums <= 1)");
  if (o.samples < 8) throw ValidationError("--samples must be at least 8");
  const auto p = gauss::GaussParams::from_differences(d);
  const auto va = gauss::vertex_angles(p);
  const std::array<double, 3> want{d.kappa.to_double() * std::numbers::pi, d.lambda.to_double() * std::numbers::pi,
                                   d.mu.to_double() * std::numbers::pi};
  double worst = 0;
  for (int i = 0; i < 3; ++i) worst = std::max(worst, std::abs(va.angles[i] - want[i]));
  const bool ok = worst <= o.tolerance;
  std::string svg;
  if (!o.svg_path.empty() || o.c.fmt() == "svg") svg = gauss::schwarz_triangle_svg(p, o.samples);
  if (!o.svg_path.empty()) write_file(o.svg_path, svg);

  auto env = envelope("gauss", "schwarz-triangle");
  env.inputs = {{"kappa", report::rational(d.kappa)}, {"lambda", report::rational(d.lambda)},
                {"mu", report::rational(d.mu)}};
  env.results["parameters"] = {{"alpha", report::rational(p.alpha)}, {"beta", report::rational(p.beta)},
                               {"gamma", report::rational(p.gamma)}};
  env.results["angles"] = va.angles;
  env.results["expected_angles"] = want;
  json verts = json::array();
  for (auto v : va.vertices) verts.push_back(report::complex(v));
  env.results["vertices"] = verts;
  env.results["pass"] = ok;
  env.residuals["angle_residual"] = worst;
  env.paper_refs = {"claim:schwarz-triangle-angles"};

  if (o.c.fmt() == "svg") {
    out << svg;
    return ok ? kOk : kNumeric;
  }
  std::ostringstream text;
  const char* names[] = {"0", "1", "inf"};
  for (int i = 0; i < 3; ++i)
    text << "angle at image of " << names[i] << ": " << fixed(va.angles[i] / std::numbers::pi, 9) << " pi  (expected "
         << fixed(want[i] / std::numbers::pi, 9) << " pi)\n";
  text << "angle residual " << sci(worst) << (ok ? "  ok" : "  FAIL") << "\n";
  return emit(out, o.c, env, text.str(), ok ? kOk : kNumeric);
}

struct GaussPullback {
  Common c;
  std::string k1, k2, lambda;
  double tolerance = 1e-8;
};

int run_gauss_pullback(const GaussPullback& o, std::ostream& out) {
  gauss::PullbackParams pb{rational_flag("k1", o.k1), rational_flag("k2", o.k2), rational_flag("lambda", o.lambda)};
  const auto p = gauss::dictionary(pb);
  const bool round_trip = gauss::inverse_dictionary(p) == pb;
  const auto ode = gauss::pullback_ode(pb);
  const auto scheme = gauss::pullback_scheme(p);
  double worst = 0;
  for (int a = 0; a < 5; ++a)
    for (int b = 0; b < 5; ++b)
      worst = std::max(worst, gauss::pullback_ode_residual(pb, {0.5 + 0.2 * a, 0.2 + 0.15 * b}));
  const bool ok = round_trip && worst <= o.tolerance;

  auto env = envelope("gauss", "pullback");
  env.inputs = {{"k1", report::rational(pb.k1)}, {"k2", report::rational(pb.k2)},
                {"lambda", report::rational(pb.lambda_pb)}};
  env.results["gauss_parameters"] = {{"alpha", report::rational(p.alpha)}, {"beta", report::rational(p.beta)},
                                     {"gamma", report::rational(p.gamma)}};
  env.results["round_trip"] = round_trip;
  env.results["ode"] = {{"c1", report::rational(ode.c1)}, {"c2", report::rational(ode.c2)},
                        {"c0", report::rational(ode.c0)}};
  json sch = json::object();
  for (int i = 0; i < 4; ++i)
    sch[scheme.points[i]] = report::rationals({scheme.exponents[i][0], scheme.exponents[i][1]});
  env.results["riemann_scheme"] = sch;
  env.results["pass"] = ok;
  env.residuals["ode_residual"] = worst;
  env.paper_refs = {"claim:pullback-dictionary", "claim:pullback-ode"};

  std::ostringstream text;
  text << "alpha = " << p.alpha << ", beta = " << p.beta << ", gamma = " << p.gamma
       << (round_trip ? "  (round trip exact)" : "  (round trip FAILED)") << "\n";
  text << "theta^2 + " << ode.c1 << " (1+1/z)/(1-1/z) theta + " << ode.c2 << " (1+1/z^2)/(1-1/z^2) theta + " << ode.c0
       << "\n";
  text << "ode residual on 5x5 grid " << sci(worst) << (ok ? "  ok" : "  FAIL") << "\n";
  return emit(out, o.c, env, text.str(), ok ? kOk : kNumeric);
}

// ---------------------------------------------------------------- triangle

struct Tessellate {
  Common c;
  int k = 2, l = 3, m = 7;
  std::optional<int> depth;
  std::size_t max_tiles = 200000;
  std::string svg_path;
  std::string json_path;
  double tolerance = 1e-9;
};

int run_tessellate(const Tessellate& o, std::ostream& out) {
  if (o.k < 2 || o.l < 2 || o.m < 2) throw ValidationError("k, l, m must be at least 2");
  const auto geometry = triangle::classify(o.k, o.l, o.m);
  triangle::Budget budget;
  budget.max_depth = o.depth.value_or(geometry == triangle::Geometry::Spherical ? 64 : 8);
  budget.max_tiles = o.max_tiles;
  if (budget.max_depth < 0) throw ValidationError("--depth must be non-negative");
  const auto t = triangle::tessellate(o.k, o.l, o.m, budget);
  const double angle = triangle::max_angle_residual(t);
  std::optional<double> orth;
  std::optional<double> modulus;
  if (geometry == triangle::Geometry::Hyperbolic) {
    orth = triangle::orthogonal_circle(t).max_residual;
    modulus = triangle::max_vertex_modulus(t);
  }
  bool ok = angle <= o.tolerance && (!orth || *orth <= o.tolerance) && (!modulus || *modulus < 1.0);
  std::string svg;
  if (!o.svg_path.empty() || o.c.fmt() == "svg") svg = triangle::export_svg(t);
  if (!o.svg_path.empty()) write_file(o.svg_path, svg);

  auto env = envelope("triangle", "tessellate");
  env.inputs = {{"k", o.k}, {"l", o.l}, {"m", o.m}, {"depth", budget.max_depth}, {"max_tiles", budget.max_tiles}};
  env.results["geometry"] = triangle::geometry_name(geometry);
  env.results["tile_count"] = t.tiles.size();
  env.results["depth_reached"] = t.depth;
  env.results["closure_reached"] = t.closure_reached;
  env.results["budget_exhausted"] = t.budget_exhausted;
  env.results["max_angle_residual"] = angle;
  env.results["max_orthogonality_residual"] = orth ? json(*orth) : json(nullptr);
  if (modulus) env.results["max_vertex_modulus"] = *modulus;
  env.results["pass"] = ok;
  env.residuals["max_angle_residual"] = angle;
  if (orth) env.residuals["max_orthogonality_residual"] = *orth;
  env.paper_refs = {"claim:triangle-group-tessellation"};
  if (orth) env.paper_refs.push_back("claim:orthogonal-circle");
  const json doc = report::to_json(env);
  if (!o.json_path.empty()) write_file(o.json_path, report::dump(doc));

  if (o.c.fmt() == "svg") {
    out << svg;
    return ok ? kOk : kNumeric;
  }
  if (o.c.fmt() == "json") {
    out << report::dump(doc);
    return ok ? kOk : kNumeric;
  }
  std::ostringstream text;
  text << "(" << o.k << "," << o.l << "," << o.m << ") " << triangle::geometry_name(geometry) << ": "
       << t.tiles.size() << " tiles, depth " << t.depth << (t.closure_reached ? ", closed" : "")
       << (t.budget_exhausted ? ", budget exhausted" : "") << "\n";
  text << "max angle residual " << sci(angle) << "\n";
  if (orth) text << "max orthogonality residual " << sci(*orth) << ", max vertex modulus " << fixed(*modulus, 9) << "\n";
  text << (ok ? "ok" : "FAIL") << "\n";
  out << text.str();
  return ok ? kOk : kNumeric;
}

// ---------------------------------------------------------------- torus

struct TorusCommon {
  Common c;
  std::string family = "A";
  int rank = 2;
  std::string k = "1/4";
};

void add_torus_common(CLI::App* sub, TorusCommon& t) {
  sub->add_option("--type", t.family, "root system family (A, D, E)")->required();
  sub->add_option("--rank", t.rank, "rank")->required();
  sub->add_option("--k", t.k, "parameter k as p/q")->required();
  add_format(sub, t.c, {"text", "json"});
  sub->add_flag("--json", t.c.json_flag, "same as --format json");
}

json torus_inputs(const TorusCommon& t, const RootSystem& r, const Rational& k) {
  return {{"type", std::string(1, roots::family_letter(r.type().family))}, {"rank", t.rank},
          {"k", report::rational(k)}};
}

struct TorusFlatness {
  TorusCommon t;
  int samples = 5;
  std::uint64_t seed = 0;
  std::string a_override;
  double tolerance = 1e-8;
};

int run_torus_flatness(const TorusFlatness& o, std::ostream& out) {
  const auto r = RootSystem::build(parse_type(o.t.family, o.t.rank));
  const Rational k = rational_flag("k", o.t.k);
  std::optional<Rational> a;
  if (!o.a_override.empty()) a = rational_flag("a-override", o.a_override);
  if (o.samples < 1) throw ValidationError("--samples must be positive");
  const auto points = torus::sample_generic(r, o.samples, o.seed);
  const auto residuals =
      parallel_map(points.size(), [&](std::size_t i) { return torus::flatness_residual(r, k, points[i], a); });
  const double worst = *std::max_element(residuals.begin(), residuals.end());
  const bool ok = worst <= o.tolerance;

  auto env = envelope("torussystem", "flatness");
  env.inputs = torus_inputs(o.t, r, k);
  env.inputs["samples"] = o.samples;
  env.inputs["seed"] = o.seed;
  env.inputs["a_override"] = a ? report::rational(*a) : json(nullptr);
  env.results["a"] = report::rational(a ? *a : roots::theorem_a(r));
  json pts = json::array();
  for (std::size_t i = 0; i < points.size(); ++i)
    pts.push_back({{"z", report::complex_vector(points[i])}, {"flatness_residual", residuals[i]}});
  env.results["points"] = pts;
  env.results["pass"] = ok;
  env.residuals["max_flatness_residual"] = worst;
  env.paper_refs = {"claim:integrability-constants"};

  std::ostringstream text;
  text << r.type().name() << " k = " << k << " a = " << (a ? *a : roots::theorem_a(r)) << (a ? " (override)" : "")
       << "\n";
  for (std::size_t i = 0; i < points.size(); ++i) text << "  point " << i << ": " << sci(residuals[i]) << "\n";
  text << "max flatness residual " << sci(worst) << (ok ? "  ok" : "  FAIL") << "\n";
  return emit(out, o.t.c, env, text.str(), ok ? kOk : kNumeric);
}

struct TorusMonodromy {
  TorusCommon t;
  int root = 1;
  std::string coeffs;
  double tolerance = 1e-6;
};

roots::IntVector parse_coeffs(const std::string& s) {
  roots::IntVector out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      long long v = std::stoll(item, &used);
      if (used != item.size()) throw std::invalid_argument(item);
      out.push_back(v);
    } catch (const std::exception&) {
      throw ValidationError("--coeffs: malformed entry '" + item + "'");
    }
  }
  return out;
}

int run_torus_monodromy(const TorusMonodromy& o, std::ostream& out) {
  const auto r = RootSystem::build(parse_type(o.t.family, o.t.rank));
  const Rational k = rational_flag("k", o.t.k);
  roots::IntVector alpha;
  if (!o.coeffs.empty()) {
    alpha = parse_coeffs(o.coeffs);
  } else {
    if (o.root < 1 || o.root > r.rank()) throw ValidationError("--root must be between 1 and the rank");
    alpha.assign(r.rank(), 0);
    alpha[o.root - 1] = 1;
  }
  const auto base = torus::default_base(r.rank());
  const auto mm = torus::mirror_monodromy(r, k, base, alpha);
  const bool ok = mm.hecke_residual <= o.tolerance;
  const bool unreliable = torus::boundary_unreliable(r, k);

  auto env = envelope("torussystem", "monodromy");
  env.inputs = torus_inputs(o.t, r, k);
  env.inputs["root"] = alpha;
  env.results["base"] = report::complex_vector(base);
  env.results["matrix"] = report::complex_matrix(mm.M);
  env.results["eigenvalues"] = report::complex_vector(mm.eigenvalues);
  env.results["q_squared"] = report::complex(mm.q_squared);
  env.results["boundary_unreliable"] = unreliable;
  env.results["pass"] = ok;
  env.residuals["hecke_residual"] = mm.hecke_residual;
  env.paper_refs = {"claim:hecke-relation"};

  std::ostringstream text;
  text << r.type().name() << " k = " << k << " loop around the mirror of (";
  for (std::size_t i = 0; i < alpha.size(); ++i) text << (i ? "," : "") << alpha[i];
  text << ")\neigenvalues:";
  for (Eigen::Index i = 0; i < mm.eigenvalues.size(); ++i) text << " " << cstr(mm.eigenvalues(i));
  text << "\nq^2 = " << cstr(mm.q_squared) << "\nhecke residual " << sci(mm.hecke_residual)
       << (ok ? "  ok" : "  FAIL") << "\n";
  if (unreliable) text << "warning: k is close to a boundary of (0, m)\n";
  return emit(out, o.t.c, env, text.str(), ok ? kOk : kNumeric);
}

struct TorusForm {
  TorusCommon t;
  int samples = 10;
  std::uint64_t seed = 0;
  double tolerance = 1e-6;
};

int run_torus_form(const TorusForm& o, std::ostream& out) {
  const auto r = RootSystem::build(parse_type(o.t.family, o.t.rank));
  const Rational k = rational_flag("k", o.t.k);
  if (o.samples < 0) throw ValidationError("--samples must be non-negative");
  const auto base = torus::default_base(r.rank());
  const auto samples = torus::sample_near(r, base, o.samples, o.seed);
  const auto ball = torus::ball_check(r, k, base, samples);
  const Rational m = roots::hyperbolic_exponent(r);
  const bool in_range = k.sign() > 0 && k < m;
  const bool ok = ball.form.residual <= o.tolerance && (!in_range || (ball.lorentz && ball.all_negative));

  auto env = envelope("torussystem", "form");
  env.inputs = torus_inputs(o.t, r, k);
  env.inputs["samples"] = o.samples;
  env.inputs["seed"] = o.seed;
  env.results["H"] = report::complex_matrix(ball.form.H);
  env.results["signature"] = {ball.form.positive, ball.form.negative};
  env.results["null_dimension"] = ball.form.null_dimension;
  env.results["singular_tail"] = ball.form.singular_tail;
  env.results["lorentz"] = ball.lorentz;
  env.results["base_value"] = ball.base_value;
  json vals = json::array();
  for (const auto& s : ball.samples) vals.push_back({{"z", report::complex_vector(s.z)}, {"value", s.value}});
  env.results["samples"] = vals;
  env.results["all_negative"] = ball.all_negative;
  env.results["k_in_hyperbolic_range"] = in_range;
  env.results["pass"] = ok;
  env.residuals["invariance_residual"] = ball.form.residual;
  env.paper_refs = {"claim:lorentz-signature", "claim:ball-containment"};

  std::ostringstream text;
  text << r.type().name() << " k = " << k << " signature (" << ball.form.positive << "," << ball.form.negative
       << ") invariance residual " << sci(ball.form.residual) << "\n";
  text << "base value " << sci(ball.base_value) << ", " << ball.samples.size() << " samples "
       << (ball.all_negative ? "all negative" : "NOT all negative") << "\n";
  text << (ok ? "ok" : "FAIL") << "\n";
  return emit(out, o.t.c, env, text.str(), ok ? kOk : kNumeric);
}

// ---------------------------------------------------------------- schwarz

json condition_json(const schwarz::StratumCondition& c) {
  json j = {{"kind", schwarz::kind_name(c.kind)}, {"label", c.label}, {"value", report::rational(c.value)},
            {"satisfied", c.satisfied}, {"vacuous", c.vacuous}};
  if (c.kind == schwarz::ConditionKind::HyperbolicRange) j["boundary"] = c.boundary;
  if (c.kind == schwarz::ConditionKind::ToricDE) {
    j["d"] = c.d;
    j["multiplicity"] = c.multiplicity;
  }
  return j;
}

struct Enumerate {
  Common c;
  long long p_min = 3;
  long long p_max = 100;
  int rank_max = 13;
  bool include_k_half = false;
};

int run_enumerate(const Enumerate& o, std::ostream& out) {
  if (o.p_min < 3 || o.p_max < o.p_min) throw ValidationError("need 3 <= p-min <= p-max");
  if (o.rank_max < 2 || o.rank_max > 30) throw ValidationError("--rank-max must be in [2, 30]");
  const auto e = schwarz::enumerate(o.p_min, o.p_max, o.rank_max, o.include_k_half);
  const auto diff = schwarz::corollary_diff(e);
  const int code = diff.matches_up_to_documented() ? kOk : kNumeric;

  if (o.c.fmt() == "csv") {
    out << "p,k,types\n";
    for (const auto& row : e.rows) out << *row.p << "," << report::rational(row.k).get<std::string>() << ","
                                       << join(type_names(row.passing), ";") << "\n";
    if (e.k_half)
      out << "," << report::rational(e.k_half->k).get<std::string>() << "," << join(type_names(e.k_half->passing), ";")
          << "\n";
    return code;
  }

  auto env = envelope("schwarzcond", "enumerate");
  env.inputs = {{"p_min", o.p_min}, {"p_max", o.p_max}, {"rank_max", o.rank_max},
                {"include_k_half", o.include_k_half}};
  json rows = json::array();
  for (const auto& row : e.rows)
    rows.push_back({{"p", *row.p}, {"k", report::rational(row.k)}, {"types", type_names(row.passing)}});
  env.results["rows"] = rows;
  if (e.k_half)
    env.results["k_half"] = {{"k", report::rational(e.k_half->k)}, {"types", type_names(e.k_half->passing)}};
  json table = json::array();
  for (const auto& [p, types] : schwarz::corollary_table())
    if (p >= o.p_min && p <= o.p_max) table.push_back({{"p", p}, {"types", type_names(types)}});
  env.results["table"] = table;
  json items = json::array();
  for (const auto& d : diff.items)
    items.push_back({{"p", d.p}, {"type", d.type.name()}, {"kind", d.extra ? "extra" : "missing"},
                     {"documented", d.documented}});
  env.results["discrepancies"] = items;
  env.results["undocumented"] = diff.undocumented;
  env.results["matches_table"] = diff.matches_up_to_documented();
  env.paper_refs = {"claim:corollary-table", "claim:boundary-anomalies"};

  std::ostringstream text;
  for (const auto& row : e.rows)
    text << "p=" << *row.p << " k=" << row.k << ": " << join(type_names(row.passing), " ") << "\n";
  if (e.k_half) text << "k=1/2: " << join(type_names(e.k_half->passing), " ") << "  (outside the p range)\n";
  for (const auto& d : diff.items)
    text << "discrepancy: " << d.type.name() << " at p=" << d.p << (d.extra ? " enumerated, not in table" : " in table, not enumerated")
         << (d.documented ? " (documented boundary case)" : " (UNDOCUMENTED)") << "\n";
  return emit(out, o.c, env, text.str(), code);
}

struct ParamK {
  std::optional<long long> p;
  std::string k;
  Rational resolve() const {
    if (p && !k.empty()) throw ValidationError("give either --p or --k, not both");
    if (p) {
      if (*p < 3) throw ValidationError("--p must be at least 3");
      return k_from_p(*p);
    }
    if (k.empty()) throw ValidationError("one of --p or --k is required");
    return rational_flag("k", k);
  }
};

struct SchwarzCheck {
  Common c;
  std::string family = "A";
  int rank = 2;
  ParamK pk;
};

int run_schwarz_check(const SchwarzCheck& o, std::ostream& out) {
  const auto t = parse_type(o.family, o.rank);
  const Rational k = o.pk.resolve();
  const auto rep = schwarz::check(t, k);
  auto env = envelope("schwarzcond", "check");
  env.inputs = {{"type", std::string(1, roots::family_letter(t.family))}, {"rank", t.rank},
                {"k", report::rational(k)}};
  if (rep.p) env.inputs["p"] = *rep.p;
  json conds = json::array();
  for (const auto& c : rep.conditions) conds.push_back(condition_json(c));
  env.results["conditions"] = conds;
  env.results["pass"] = rep.pass;
  env.paper_refs = {"claim:toric-condition", "claim:mirror-condition", "claim:hyperbolic-range"};
  if (t.family == roots::Family::E && t.rank >= 7) env.paper_refs.push_back("claim:special-points");

  std::ostringstream text;
  text << t.name() << " k = " << k << (rep.p ? " (p = " + std::to_string(*rep.p) + ")" : std::string()) << "\n";
  for (const auto& c : rep.conditions)
    text << "  " << c.label << " = " << c.value << ": "
         << (c.vacuous ? "vacuous" : c.satisfied ? "satisfied" : "violated") << "\n";
  text << (rep.pass ? "pass" : "fail") << "\n";
  return emit(out, o.c, env, text.str(), kOk);
}

json dm_json(const schwarz::DMConditions& d) {
  json pairs = json::array();
  for (const auto& p : d.pairs)
    pairs.push_back({{"i", p.i}, {"j", p.j}, {"value", report::rational(p.value)}, {"equal", p.equal},
                     {"vacuous", p.vacuous}, {"satisfied", p.satisfied}});
  return {{"pairs", pairs}, {"pass", d.pass}};
}

struct SchwarzDM {
  Common c;
  int n = 2;
  ParamK pk;
};

int run_schwarz_dm(const SchwarzDM& o, std::ostream& out) {
  if (o.n < 1 || o.n > 30) throw ValidationError("--n must be in [1, 30]");
  const Rational k = o.pk.resolve();
  const auto mu = schwarz::dm_mu_vector(o.n, k);
  const auto sc = schwarz::check(RootSystemType::make(roots::Family::A, o.n), k);
  auto env = envelope("schwarzcond", "dm");
  env.inputs = {{"n", o.n}, {"k", report::rational(k)}};
  env.results["mu"] = report::rationals(mu.mu);
  env.results["mu_sum"] = report::rational(mu.sum());
  env.results["degenerate"] = mu.degenerate;
  std::optional<schwarz::DMConditions> full, restricted;
  if (!mu.degenerate) {
    full = schwarz::dm_conditions(mu);
    restricted = schwarz::dm_conditions_restricted(mu);
    env.results["dm"] = dm_json(*full);
    env.results["dm_restricted"] = dm_json(*restricted);
  }
  env.results["schwarz_pass"] = sc.pass;
  env.results["hidden_symmetry"] = schwarz::hidden_symmetry(o.n, k);
  env.paper_refs = {"claim:dm-comparison"};

  std::ostringstream text;
  text << "A" << o.n << " k = " << k << "\nmu = (" ;
  for (std::size_t i = 0; i < mu.mu.size(); ++i) text << (i ? ", " : "") << mu.mu[i];
  text << ")" << (mu.degenerate ? " degenerate" : "") << "\n";
  if (full)
    text << "DM condition: " << (full->pass ? "pass" : "fail") << ", restricted: " << (restricted->pass ? "pass" : "fail")
         << "\n";
  text << "Schwarz check: " << (sc.pass ? "pass" : "fail") << "\n";
  if (schwarz::hidden_symmetry(o.n, k)) text << "hidden symmetry: k = 2/(n+3)\n";
  return emit(out, o.c, env, text.str(), kOk);
}

struct SchwarzDMScan {
  Common c;
  int n_max = 10;
  long long p_max = 60;
};

int run_schwarz_dm_scan(const SchwarzDMScan& o, std::ostream& out) {
  const auto s = schwarz::dm_equivalence_scan(o.n_max, o.p_max);
  auto pairs_json = [](const std::vector<std::pair<long long, int>>& v) {
    json a = json::array();
    for (const auto& [p, n] : v) a.push_back({{"p", p}, {"n", n}});
    return a;
  };
  const bool ok = s.identity_failures == 0 && s.verdict_disagreements == 0;
  auto env = envelope("schwarzcond", "dm-scan");
  env.inputs = {{"n_max", o.n_max}, {"p_max", o.p_max}};
  env.results["cases"] = s.entries.size();
  env.results["identity_failures"] = s.identity_failures;
  env.results["verdict_disagreements"] = s.verdict_disagreements;
  env.results["degenerate"] = pairs_json(s.degenerate);
  env.results["hidden_raw"] = pairs_json(s.hidden_raw);
  env.results["hidden_flagged"] = pairs_json(s.hidden_flagged);
  env.results["pass"] = ok;
  env.paper_refs = {"claim:dm-identities", "claim:dm-comparison", "claim:hidden-symmetry"};

  std::ostringstream text;
  text << s.entries.size() << " cases, " << s.identity_failures << " identity failures, " << s.verdict_disagreements
       << " verdict disagreements, " << s.degenerate.size() << " degenerate\n";
  text << "hidden symmetry:";
  for (const auto& [p, n] : s.hidden_flagged) text << " (p=" << p << ",n=" << n << ")";
  text << "\n" << (ok ? "ok" : "FAIL") << "\n";
  return emit(out, o.c, env, text.str(), ok ? kOk : kNumeric);
}

}  // namespace

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Schwarz triangles, root-system hypergeometric systems and their Schwarz conditions",
               "schwarz-atlas"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "schwarz-atlas 0.1.0 (report schema " + std::string(report::kSchemaVersion) + ")");

  std::function<int()> action;
  auto leaf = [&](CLI::App* parent, const std::string& name, const std::string& help, auto& opts, auto run) {
    auto* sub = parent->add_subcommand(name, help);
    sub->callback([&action, &opts, &out, run] { action = [&opts, &out, run] { return run(opts, out); }; });
    return sub;
  };

  auto* roots_cmd = app.add_subcommand("roots", "ADE root systems")->require_subcommand(1);
  RootsDump rd;
  {
    auto* s = leaf(roots_cmd, "dump", "simple and positive roots, Gram matrix, constants", rd, run_roots_dump);
    s->add_option("--type", rd.family, "A, D or E")->required();
    s->add_option("--rank", rd.rank)->required();
    add_format(s, rd.c, {"text", "json"});
  }

  auto* gauss_cmd = app.add_subcommand("gauss", "Euler-Gauss equation")->require_subcommand(1);
  GaussMonodromy gm;
  {
    auto* s = leaf(gauss_cmd, "monodromy", "monodromy around 0, 1, infinity", gm, run_gauss_monodromy);
    s->add_option("--alpha", gm.alpha)->required();
    s->add_option("--beta", gm.beta)->required();
    s->add_option("--gamma", gm.gamma)->required();
    s->add_option("--tolerance", gm.tolerance, "relation tolerance");
    s->add_option("--eigen-tolerance", gm.eigen_tolerance, "spectrum tolerance");
    add_format(s, gm.c, {"text", "json"});
  }
  GaussTriangle gt;
  {
    auto* s = leaf(gauss_cmd, "schwarz-triangle", "image triangle of the Schwarz map", gt, run_gauss_triangle);
    s->add_option("--kappa", gt.kappa)->required();
    s->add_option("--lambda", gt.lambda)->required();
    s->add_option("--mu", gt.mu)->required();
    s->add_option("--svg", gt.svg_path, "write the boundary arcs to this file");
    s->add_option("--samples", gt.samples, "points per side in the SVG");
    s->add_option("--tolerance", gt.tolerance, "angle tolerance");
    add_format(s, gt.c, {"text", "json", "svg"});
  }
  GaussPullback gp;
  {
    auto* s = leaf(gauss_cmd, "pullback", "degree-two pullback dictionary and residual", gp, run_gauss_pullback);
    s->add_option("--k1", gp.k1)->required();
    s->add_option("--k2", gp.k2)->required();
    s->add_option("--lambda", gp.lambda)->required();
    s->add_option("--tolerance", gp.tolerance);
    add_format(s, gp.c, {"text", "json"});
  }

  auto* tri_cmd = app.add_subcommand("triangle", "triangle groups")->require_subcommand(1);
  Tessellate ts;
  {
    auto* s = leaf(tri_cmd, "tessellate", "orbit of the fundamental triangle", ts, run_tessellate);
    s->add_option("--k", ts.k)->required();
    s->add_option("--l", ts.l)->required();
    s->add_option("--m", ts.m)->required();
    s->add_option("--depth", ts.depth, "maximal word length (default 64 spherical, 8 otherwise)");
    s->add_option("--max-tiles", ts.max_tiles);
    s->add_option("--svg", ts.svg_path, "write an SVG rendering");
    s->add_option("--json", ts.json_path, "write the JSON report");
    s->add_option("--tolerance", ts.tolerance);
    add_format(s, ts.c, {"text", "json", "svg"});
  }

  auto* torus_cmd = app.add_subcommand("torus", "root-system system on the torus")->require_subcommand(1);
  TorusFlatness tf;
  {
    auto* s = leaf(torus_cmd, "flatness", "integrability residual at random points", tf, run_torus_flatness);
    add_torus_common(s, tf.t);
    s->add_option("--samples", tf.samples);
    s->add_option("--seed", tf.seed);
    s->add_option("--a-override", tf.a_override, "replace the constant a");
    s->add_option("--tolerance", tf.tolerance);
  }
  TorusMonodromy tm;
  {
    auto* s = leaf(torus_cmd, "monodromy", "mirror loop monodromy and Hecke relation", tm, run_torus_monodromy);
    add_torus_common(s, tm.t);
    auto* root = s->add_option("--root", tm.root, "simple root index, 1-based");
    s->add_option("--coeffs", tm.coeffs, "positive root as comma-separated simple-root coefficients")->excludes(root);
    s->add_option("--tolerance", tm.tolerance);
  }
  TorusForm tfo;
  {
    auto* s = leaf(torus_cmd, "form", "invariant Hermitian form and ball check", tfo, run_torus_form);
    add_torus_common(s, tfo.t);
    s->add_option("--samples", tfo.samples);
    s->add_option("--seed", tfo.seed);
    s->add_option("--tolerance", tfo.tolerance);
  }

  auto* sc_cmd = app.add_subcommand("schwarz", "Schwarz conditions")->require_subcommand(1);
  Enumerate en;
  {
    auto* s = leaf(sc_cmd, "enumerate", "types passing for k = (p-2)/(2p)", en, run_enumerate);
    s->add_option("--p-min", en.p_min);
    s->add_option("--p-max", en.p_max);
    s->add_option("--rank-max", en.rank_max);
    s->add_flag("--include-k-half", en.include_k_half, "also evaluate k = 1/2");
    add_format(s, en.c, {"text", "json", "csv"});
  }
  SchwarzCheck ck;
  {
    auto* s = leaf(sc_cmd, "check", "all conditions for one type", ck, run_schwarz_check);
    s->add_option("--type", ck.family)->required();
    s->add_option("--rank", ck.rank)->required();
    s->add_option("--p", ck.pk.p);
    s->add_option("--k", ck.pk.k);
    add_format(s, ck.c, {"text", "json"});
  }
  SchwarzDM dm;
  {
    auto* s = leaf(sc_cmd, "dm", "Deligne-Mostow comparison for A_n", dm, run_schwarz_dm);
    s->add_option("--n", dm.n)->required();
    s->add_option("--p", dm.pk.p);
    s->add_option("--k", dm.pk.k);
    add_format(s, dm.c, {"text", "json"});
  }
  SchwarzDMScan ds;
  {
    auto* s = leaf(sc_cmd, "dm-scan", "identities and verdict agreement over a range", ds, run_schwarz_dm_scan);
    s->add_option("--n-max", ds.n_max);
    s->add_option("--p-max", ds.p_max);
    add_format(s, ds.c, {"text", "json"});
  }

  app.add_subcommand("report-schema", "print the JSON schema of all reports")->callback([&] {
    action = [&] {
      out << report::dump(report::schema());
      return int(kOk);
    };
  });

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kInvalid;
  }
  if (!action) return kInvalid;
  try {
    return action();
  } catch (const ValidationError& e) {
    err << "schwarz-atlas: invalid input: " << e.what() << "\n";
    return kInvalid;
  } catch (const NumericError& e) {
    err << "schwarz-atlas: numeric failure: " << e.what() << "\n";
    return kNumeric;
  }
}

}  // namespace schwarz_atlas::cli
