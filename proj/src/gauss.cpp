#include "schwarz_atlas/gauss.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <sstream>

#include "schwarz_atlas/errors.hpp"

namespace schwarz_atlas::gauss {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
const cplx I(0.0, 1.0);

struct Coefficients {
  double alpha, beta, gamma;
  explicit Coefficients(const GaussParams& p)
      : alpha(p.alpha.to_double()), beta(p.beta.to_double()), gamma(p.gamma.to_double()) {}
};

cplx unit_phase(const Rational& e) { return std::exp(I * (kTwoPi * e.to_double())); }

struct Jet {
  cplx f, df;
};

// z^rho * sum a_n z^n from the recursion
// (n+rho)(n+rho+gamma-1) a_n = (n-1+rho+alpha)(n-1+rho+beta) a_{n-1}.
Jet frobenius(const Coefficients& c, double rho, cplx z) {
  cplx term(1.0, 0.0);
  cplx s0 = term, s1 = rho * term;
  int quiet = 0;
  for (int n = 1; n < 400000; ++n) {
    double denom = (n + rho) * (n + rho + c.gamma - 1.0);
    if (std::abs(denom) < 1e-300) throw LogCaseError("Frobenius recursion hits a resonance");
    term *= (n - 1 + rho + c.alpha) * (n - 1 + rho + c.beta) / denom * z;
    s0 += term;
    s1 += (n + rho) * term;
    bool small = std::abs(term) <= 1e-17 * std::abs(s0) &&
                 std::abs((n + rho) * term) <= 1e-17 * std::max(std::abs(s1), 1e-300);
    if (term == cplx(0.0, 0.0) || small) {
      if (++quiet >= 3) {
        cplx zr = rho == 0.0 ? cplx(1.0, 0.0) : std::pow(z, rho);
        return {zr * s0, zr * s1 / z};
      }
    } else {
      quiet = 0;
    }
  }
  throw NumericError("Frobenius series did not converge");
}

double segment_distance(cplx a, cplx b, cplx s) {
  cplx d = b - a;
  double len2 = std::norm(d);
  if (len2 == 0.0) return std::abs(s - a);
  double t = std::clamp(((s - a) * std::conj(d)).real() / len2, 0.0, 1.0);
  return std::abs(a + t * d - s);
}

// One segment of y' = (b - a) A(z) y on a 2x2 matrix stored column-major.
void integrate_segment(const Coefficients& c, cplx a, cplx b, numeric::State& y,
                       const numeric::Tolerances& tol) {
  const cplx h = b - a;
  auto rhs = [&](double t, const numeric::State& x, numeric::State& dx) {
    cplx z = a + t * h;
    cplx zz = z * (1.0 - z);
    cplx p = (c.gamma - (c.alpha + c.beta + 1.0) * z) / zz;
    cplx q = c.alpha * c.beta / zz;
    for (int col = 0; col < 2; ++col) {
      cplx f = x[2 * col], df = x[2 * col + 1];
      dx[2 * col] = h * df;
      dx[2 * col + 1] = h * (q * f - p * df);
    }
  };
  numeric::integrate_unit_interval(rhs, y, tol);
}

Matrix2 to_matrix(const numeric::State& y) {
  Matrix2 m;
  m << y[0], y[2], y[1], y[3];
  return m;
}

numeric::State to_state(const Matrix2& m) { return {m(0, 0), m(1, 0), m(0, 1), m(1, 1)}; }

double forward_param(const geometry::GeneralizedCircle& c, cplx origin, cplx dir, double sense,
                     cplx w) {
  if (c.is_line) return 2.0 * std::atan(((w - origin) * std::conj(dir)).real());
  return sense * std::arg(w - c.center);
}

// Candidate met first when moving along `side` from `from` in the direction
// of travel fixed by the three samples.
cplx first_ahead(const geometry::GeneralizedCircle& side, const std::array<cplx, 3>& samples,
                 cplx from, bool forward, const std::vector<cplx>& candidates) {
  if (candidates.empty()) throw NumericError("Schwarz triangle sides do not meet");
  cplx dir = samples[2] - samples[0];
  dir /= std::abs(dir);
  double sense = (samples[1] - samples[0]).real() * (samples[2] - samples[0]).imag() -
                             (samples[1] - samples[0]).imag() * (samples[2] - samples[0]).real() >
                         0.0
                     ? 1.0
                     : -1.0;
  double start = forward_param(side, samples[0], dir, sense, from);
  double best = std::numeric_limits<double>::infinity();
  cplx pick = candidates.front();
  for (cplx cand : candidates) {
    double d = forward_param(side, samples[0], dir, sense, cand) - start;
    if (!forward) d = -d;
    d = std::fmod(d, kTwoPi);
    if (d < 0) d += kTwoPi;
    if (d < best) {
      best = d;
      pick = cand;
    }
  }
  return pick;
}

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6f", x);
  return buf;
}

}  // namespace

ExponentTriple GaussParams::differences() const {
  return exponent_differences(alpha, beta, gamma);
}

bool GaussParams::log_case() const {
  auto d = differences();
  return d.kappa.is_integer() || d.lambda.is_integer() || d.mu.is_integer();
}

GaussParams GaussParams::from_differences(const ExponentTriple& d) {
  GaussParams p;
  p.gamma = Rational(1) - d.kappa;
  p.alpha = (Rational(1) - d.kappa - d.lambda - d.mu) / Rational(2);
  p.beta = (Rational(1) - d.kappa - d.lambda + d.mu) / Rational(2);
  return p;
}

std::string point_name(SingularPoint s) {
  switch (s) {
    case SingularPoint::Zero:
      return "0";
    case SingularPoint::One:
      return "1";
    case SingularPoint::Infinity:
      return "inf";
  }
  return "?";
}

Rational RiemannScheme3::exponent_sum() const {
  Rational s;
  for (const auto& pair : exponents) s += pair[0] + pair[1];
  return s;
}

RiemannScheme3 riemann_scheme(const GaussParams& p) {
  RiemannScheme3 r;
  r.exponents[0] = {Rational(0), Rational(1) - p.gamma};
  r.exponents[1] = {Rational(0), p.gamma - p.alpha - p.beta};
  r.exponents[2] = {p.alpha, p.beta};
  r.differences = p.differences();
  r.log_case = p.log_case();
  return r;
}

GaussParams dictionary(const PullbackParams& pb) {
  Rational half(1, 2);
  Rational shift = half * pb.k1 + pb.k2;
  return {pb.lambda_pb + shift, -pb.lambda_pb + shift, half + pb.k1 + pb.k2};
}

PullbackParams inverse_dictionary(const GaussParams& p) {
  Rational half(1, 2);
  PullbackParams pb;
  pb.k2 = p.alpha + p.beta - p.gamma + half;
  pb.k1 = Rational(2) * p.gamma - Rational(1) - p.alpha - p.beta;
  pb.lambda_pb = (p.alpha - p.beta) * half;
  return pb;
}

RiemannScheme4 pullback_scheme(const GaussParams& p) {
  RiemannScheme4 r;
  r.exponents[0] = {Rational(0), Rational(2) - Rational(2) * p.gamma};
  r.exponents[1] = {Rational(0), Rational(2) * p.gamma - Rational(2) * (p.alpha + p.beta)};
  r.exponents[2] = {p.alpha, p.beta};
  r.exponents[3] = {p.alpha, p.beta};
  return r;
}

PullbackOde pullback_ode(const PullbackParams& pb) {
  Rational shift = Rational(1, 2) * pb.k1 + pb.k2;
  return {pb.k1, Rational(2) * pb.k2, shift * shift - pb.lambda_pb * pb.lambda_pb};
}

cplx pullback_map(cplx z) {
  if (z == cplx(0.0, 0.0)) throw ValidationError("pullback map undefined at z = 0");
  return 0.5 - (z + 1.0 / z) / 4.0;
}

Rational pullback_map(const Rational& z) {
  if (z.is_zero()) throw ValidationError("pullback map undefined at z = 0");
  return Rational(1, 2) - (z + Rational(1) / z) / Rational(4);
}

void validate_path(const Path& path, double clearance) {
  const std::array<cplx, 2> singular{cplx(0.0, 0.0), cplx(1.0, 0.0)};
  for (std::size_t i = 0; i < path.size(); ++i) {
    cplx b = path[i];
    cplx a = i == 0 ? b : path[i - 1];
    for (cplx s : singular) {
      if (segment_distance(a, b, s) < clearance)
        throw ValidationError("path passes within clearance of z = " +
                              std::to_string(static_cast<int>(s.real())));
    }
  }
}

cplx second_derivative(const GaussParams& p, cplx z, cplx f, cplx df) {
  Coefficients c(p);
  cplx zz = z * (1.0 - z);
  return (c.alpha * c.beta * f - (c.gamma - (c.alpha + c.beta + 1.0) * z) * df) / zz;
}

SolutionFrame local_basis_at_zero(const GaussParams& p, cplx z) {
  if (p.log_case()) throw LogCaseError("integer exponent difference: logarithmic case");
  if (std::abs(z) >= 1.0) throw ValidationError("local basis at 0 needs |z| < 1");
  if (z.imag() == 0.0 && z.real() <= 0.0) throw ValidationError("z on the branch cut (-1, 0]");
  Coefficients c(p);
  Jet f1 = frobenius(c, 1.0 - c.gamma, z);
  Jet f2 = frobenius(c, 0.0, z);
  SolutionFrame frame;
  frame.base = z;
  frame.jets << f1.f, f2.f, f1.df, f2.df;
  return frame;
}

Matrix2 transport(const GaussParams& p, const Path& path, const ContinuationOptions& opt) {
  validate_path(path, opt.clearance);
  Coefficients c(p);
  numeric::State y = to_state(Matrix2::Identity());
  for (std::size_t i = 1; i < path.size(); ++i) {
    if (path[i] == path[i - 1]) continue;
    integrate_segment(c, path[i - 1], path[i], y, opt.tolerances);
  }
  return to_matrix(y);
}

SolutionFrame continue_along(const GaussParams& p, const Path& path, const SolutionFrame& frame,
                             const ContinuationOptions& opt) {
  if (path.empty()) return frame;
  if (std::abs(path.front() - frame.base) > 1e-12)
    throw ValidationError("path does not start at the frame base point");
  SolutionFrame out;
  out.base = path.back();
  out.jets = transport(p, path, opt) * frame.jets;
  return out;
}

Path monodromy_loop(SingularPoint s) {
  switch (s) {
    case SingularPoint::Zero:
      return {{0.5, 0.0}, {0.5, 0.25}, {-0.25, 0.25}, {-0.25, -0.25}, {0.5, -0.25}, {0.5, 0.0}};
    case SingularPoint::One:
      return {{0.5, 0.0}, {0.5, -0.25}, {1.25, -0.25}, {1.25, 0.25}, {0.5, 0.25}, {0.5, 0.0}};
    case SingularPoint::Infinity:
      return {{0.5, 0.0},  {0.5, 0.25},  {1.5, 0.25}, {1.5, -0.6},
              {-0.5, -0.6}, {-0.5, 0.25}, {0.5, 0.25}, {0.5, 0.0}};
  }
  return {};
}

double spectrum_distance(const std::array<cplx, 2>& a, const std::array<cplx, 2>& b) {
  double straight = std::max(std::abs(a[0] - b[0]), std::abs(a[1] - b[1]));
  double crossed = std::max(std::abs(a[0] - b[1]), std::abs(a[1] - b[0]));
  return std::min(straight, crossed);
}

Monodromy monodromy_at(const GaussParams& p, SingularPoint s, const ContinuationOptions& opt) {
  if (p.log_case()) throw LogCaseError("integer exponent difference: logarithmic case");
  Monodromy m;
  m.point = s;
  m.matrix = transport(p, monodromy_loop(s), opt);
  Eigen::ComplexEigenSolver<Matrix2> es(m.matrix, false);
  m.eigenvalues = {es.eigenvalues()(0), es.eigenvalues()(1)};
  auto scheme = riemann_scheme(p);
  const auto& e = scheme.exponents[static_cast<int>(s)];
  m.expected = {unit_phase(e[0]), unit_phase(e[1])};
  m.eigenvalue_residual = spectrum_distance(m.eigenvalues, m.expected);
  return m;
}

MonodromyGroup monodromy_group(const GaussParams& p, const ContinuationOptions& opt) {
  MonodromyGroup g;
  g.m0 = monodromy_at(p, SingularPoint::Zero, opt);
  g.m1 = monodromy_at(p, SingularPoint::One, opt);
  g.m_inf = monodromy_at(p, SingularPoint::Infinity, opt);
  Matrix2 rel = g.m_inf.matrix * g.m1.matrix * g.m0.matrix - Matrix2::Identity();
  g.relation_residual = rel.cwiseAbs().maxCoeff();
  return g;
}

Path upper_path(cplx z) {
  if (z.imag() < 0.0) throw ValidationError("point below the real axis");
  if (z.imag() > 0.0) return {{0.5, 0.0}, z};
  return {{0.5, 0.0}, {0.5, 0.5}, {z.real(), 0.5}, z};
}

geometry::ProjPoint schwarz_map(const GaussParams& p, cplx z, const Matrix2& basis) {
  if (p.log_case()) throw LogCaseError("integer exponent difference: logarithmic case");
  SolutionFrame base = local_basis_at_zero(p, {0.5, 0.0});
  SolutionFrame at = continue_along(p, upper_path(z), base);
  Eigen::RowVector2cd values = at.jets.row(0) * basis;
  return {values(0), values(1)};
}

VertexAngles vertex_angles(const GaussParams& p, const Matrix2& basis) {
  if (p.log_case()) throw LogCaseError("integer exponent difference: logarithmic case");
  const std::array<std::array<double, 3>, 3> xs{{{0.25, 0.5, 0.75}, {1.5, 2.5, 4.0}, {-3.0, -1.5, -0.5}}};
  std::array<std::array<geometry::ProjPoint, 3>, 3> raw;
  for (int s = 0; s < 3; ++s)
    for (int j = 0; j < 3; ++j) raw[s][j] = schwarz_map(p, {xs[s][j], 0.0}, basis);

  // Move the samples away from infinity when needed.
  bool far = false;
  std::vector<cplx> finite;
  for (const auto& side : raw)
    for (const auto& q : side) {
      if (q.is_far(1e4)) far = true;
      else finite.push_back(q.value());
    }
  cplx pole(0.0, 0.0);
  if (far) {
    double best = -1.0;
    for (int a = -4; a <= 4; ++a)
      for (int b = -4; b <= 4; ++b) {
        cplx c(a, b);
        double d = std::numeric_limits<double>::infinity();
        for (cplx w : finite) d = std::min(d, std::abs(w - c));
        if (d > best) {
          best = d;
          pole = c;
        }
      }
  }
  std::array<std::array<cplx, 3>, 3> pts;
  for (int s = 0; s < 3; ++s)
    for (int j = 0; j < 3; ++j) {
      const auto& q = raw[s][j];
      pts[s][j] = far ? q.v / (q.u - pole * q.v) : q.value();
    }

  VertexAngles out;
  for (int s = 0; s < 3; ++s) out.sides[s] = geometry::circle_through(pts[s][0], pts[s][1], pts[s][2], 1e-9);

  // Vertex v sits where side v-1 (incoming) meets side v (outgoing); order 0, 1, inf
  // corresponds to sides (-inf,0)->(0,1), (0,1)->(1,inf), (1,inf)->(-inf,0).
  const std::array<int, 3> incoming{2, 0, 1};
  for (int v = 0; v < 3; ++v) {
    int in = incoming[v];
    int outs = v;
    auto candidates = geometry::intersect(out.sides[in], out.sides[outs]);
    cplx a = first_ahead(out.sides[in], pts[in], pts[in][2], true, candidates);
    cplx b = first_ahead(out.sides[outs], pts[outs], pts[outs][0], false, candidates);
    if (std::abs(a - b) > 1e-9 * (1.0 + std::abs(a)))
      throw NumericError("inconsistent vertex location for the Schwarz triangle");
    cplx t_in = geometry::arc_tangent(a, pts[in][2], pts[in][1]);
    cplx t_out = geometry::arc_tangent(a, pts[outs][0], pts[outs][1]);
    out.angles[v] = geometry::angle_between(t_in, t_out);
    out.vertices[v] = far ? 1.0 / a + pole : a;
  }
  return out;
}

bool wronskian_check(const GaussParams& p, const Path& path, const SolutionFrame& frame,
                     const ContinuationOptions& opt) {
  const double w0 = std::abs(frame.wronskian());
  const double scale = frame.jets.cwiseAbs2().sum();
  if (w0 == 0.0 || w0 <= 1e-14 * scale) return false;
  if (path.empty()) return true;
  SolutionFrame cur = frame;
  for (std::size_t i = 1; i < path.size(); ++i) {
    constexpr int pieces = 16;
    for (int j = 1; j <= pieces; ++j) {
      cplx a = path[i - 1] + (path[i] - path[i - 1]) * (double(j - 1) / pieces);
      cplx b = path[i - 1] + (path[i] - path[i - 1]) * (double(j) / pieces);
      cur.base = a;
      cur = continue_along(p, {a, b}, cur, opt);
      if (std::abs(cur.wronskian()) < 1e-12 * w0) return false;
    }
  }
  return true;
}

double pullback_ode_residual(const PullbackParams& pb, cplx z) {
  for (cplx s : {cplx(0.0, 0.0), cplx(1.0, 0.0), cplx(-1.0, 0.0)})
    if (std::abs(z - s) < 1e-3) throw ValidationError("too close to a singular point of the pullback");
  GaussParams p = dictionary(pb);
  if (p.gamma.is_integer() && p.gamma.sign() <= 0)
    throw LogCaseError("holomorphic solution at w = 0 does not exist for gamma in -N");
  cplx w = pullback_map(z);
  if (std::abs(w) >= 0.9) throw ValidationError("pullback point outside the series disc |w| < 0.9");
  Coefficients c(p);
  Jet f = frobenius(c, 0.0, w);
  cplx d2 = second_derivative(p, w, f.f, f.df);
  cplx dw = -(1.0 - 1.0 / (z * z)) / 4.0;
  cplx d2w = -1.0 / (2.0 * z * z * z);
  cplx g = f.f;
  cplx th = z * f.df * dw;
  cplx th2 = th + z * z * (d2 * dw * dw + f.df * d2w);
  PullbackOde ode = pullback_ode(pb);
  cplx zi = 1.0 / z;
  cplx r = th2 + ode.c1.to_double() * (1.0 + zi) / (1.0 - zi) * th +
           ode.c2.to_double() * (1.0 + zi * zi) / (1.0 - zi * zi) * th + ode.c0.to_double() * g;
  double scale = std::max(1.0, std::abs(g) + std::abs(th) + std::abs(th2));
  return std::abs(r) / scale;
}

std::string schwarz_triangle_svg(const GaussParams& p, int samples_per_side) {
  if (samples_per_side < 2) throw ValidationError("need at least two samples per side");
  auto param = [](int side, double t) {
    switch (side) {
      case 0:
        return t;
      case 1:
        return 1.0 / (1.0 - t);
      default:
        return -t / (1.0 - t);
    }
  };
  std::array<std::vector<cplx>, 3> sides;
  for (int s = 0; s < 3; ++s) {
    for (int j = 0; j < samples_per_side; ++j) {
      double t = 0.02 + 0.96 * j / (samples_per_side - 1);
      if (s == 2) t = 0.98 - 0.96 * j / (samples_per_side - 1);
      auto q = schwarz_map(p, {param(s, t), 0.0});
      if (!q.is_far(1e6)) sides[s].push_back(q.value());
    }
  }
  double xmin = 0, xmax = 0, ymin = 0, ymax = 0;
  bool first = true;
  for (const auto& side : sides)
    for (cplx w : side) {
      if (first) {
        xmin = xmax = w.real();
        ymin = ymax = -w.imag();
        first = false;
      }
      xmin = std::min(xmin, w.real());
      xmax = std::max(xmax, w.real());
      ymin = std::min(ymin, -w.imag());
      ymax = std::max(ymax, -w.imag());
    }
  double pad = 0.05 * std::max({xmax - xmin, ymax - ymin, 1e-6});
  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"" << fmt(xmin - pad) << ' '
     << fmt(ymin - pad) << ' ' << fmt(xmax - xmin + 2 * pad) << ' ' << fmt(ymax - ymin + 2 * pad)
     << "\">\n";
  const char* colors[3] = {"#c0392b", "#2471a3", "#1e8449"};
  for (int s = 0; s < 3; ++s) {
    os << "  <polyline fill=\"none\" stroke=\"" << colors[s] << "\" stroke-width=\"" << fmt(pad / 10)
       << "\" points=\"";
    for (std::size_t j = 0; j < sides[s].size(); ++j) {
      if (j) os << ' ';
      os << fmt(sides[s][j].real()) << ',' << fmt(-sides[s][j].imag());
    }
    os << "\"/>\n";
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace schwarz_atlas::gauss
