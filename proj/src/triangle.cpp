#include "schwarz_atlas/triangle.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <deque>
#include <limits>
#include <numbers>
#include <set>
#include <sstream>

#include "schwarz_atlas/errors.hpp"
#include "schwarz_atlas/exact.hpp"

namespace schwarz_atlas::triangle {

namespace {

constexpr double kPi = std::numbers::pi;

double cross(cplx a, cplx b) { return a.real() * b.imag() - a.imag() * b.real(); }

// Circle through Q and R meeting the unit circle at a right angle
// (sign = +1) or through antipodal pairs (sign = -1).
GeneralizedCircle third_side(cplx q, cplx r, double sign) {
  double a11 = 2.0 * q.real(), a12 = 2.0 * q.imag();
  double a21 = 2.0 * r.real(), a22 = 2.0 * r.imag();
  double b1 = std::norm(q) + sign, b2 = std::norm(r) + sign;
  double det = a11 * a22 - a12 * a21;
  if (std::abs(det) < 1e-15) throw NumericError("degenerate fundamental triangle");
  cplx c((b1 * a22 - a12 * b2) / det, (a11 * b2 - b1 * a21) / det);
  double r2 = std::norm(c) - sign;
  return GeneralizedCircle::circle(c, std::sqrt(r2));
}

AntiMobius chart(int which) {
  switch (which) {
    case 1:
      return AntiMobius::mobius(0.0, 1.0, 1.0, 0.0);
    case 2:
      return AntiMobius::mobius(1.0, 1.0, -1.0, 1.0);
    default:
      return AntiMobius::identity();
  }
}

std::array<double, 3> tile_angles(const std::array<cplx, 3>& v, const std::array<cplx, 3>& mid) {
  std::array<double, 3> out{};
  for (int i = 0; i < 3; ++i) {
    int prev = (i + 2) % 3;
    cplx t_next = geometry::arc_tangent(v[i], mid[i], v[(i + 1) % 3]);
    cplx t_prev = geometry::arc_tangent(v[i], mid[prev], v[prev]);
    out[i] = geometry::angle_between(t_next, t_prev);
  }
  return out;
}

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6f", x);
  std::string s = buf;
  if (s == "-0.000000") s = "0.000000";
  return s;
}

}  // namespace

std::string geometry_name(Geometry g) {
  switch (g) {
    case Geometry::Spherical:
      return "spherical";
    case Geometry::Euclidean:
      return "euclidean";
    case Geometry::Hyperbolic:
      return "hyperbolic";
  }
  return "?";
}

Geometry classify(int k, int l, int m) {
  if (k < 2 || l < 2 || m < 2) throw ValidationError("triangle group parameters must be >= 2");
  Rational s = Rational(1, k) + Rational(1, l) + Rational(1, m);
  if (s > Rational(1)) return Geometry::Spherical;
  if (s == Rational(1)) return Geometry::Euclidean;
  return Geometry::Hyperbolic;
}

CircleMatrix circle_matrix(const GeneralizedCircle& c) {
  CircleMatrix m;
  if (c.is_line) {
    cplx b = c.normal / 2.0;
    m << 0.0, b, std::conj(b), -c.offset;
  } else {
    m << 1.0, -c.center, -std::conj(c.center), std::norm(c.center) - c.radius * c.radius;
  }
  return m;
}

CircleMatrix transform(const CircleMatrix& c, const AntiMobius& g) {
  Eigen::Matrix2cd inv = g.m.inverse();
  CircleMatrix src = g.conj ? CircleMatrix(c.conjugate()) : c;
  CircleMatrix out = inv.adjoint() * src * inv;
  out = (out + out.adjoint()) / 2.0;
  double s = out.cwiseAbs().maxCoeff();
  return s > 0 ? CircleMatrix(out / s) : out;
}

double circle_form(const CircleMatrix& c, cplx z) {
  return c(0, 0).real() * std::norm(z) + 2.0 * (c(0, 1) * std::conj(z)).real() + c(1, 1).real();
}

double unit_orthogonality(const CircleMatrix& c) {
  double a = c(0, 0).real(), d = c(1, 1).real();
  double disc = std::norm(c(0, 1)) - a * d;
  if (disc <= 0) throw NumericError("circle matrix does not describe a real circle");
  return std::abs(d - a) / (2.0 * std::sqrt(disc));
}

FundamentalTriangle build_triangle(int k, int l, int m) {
  FundamentalTriangle ft;
  ft.geometry = classify(k, l, m);
  ft.k = k;
  ft.l = l;
  ft.m = m;
  const double a = kPi / k, b = kPi / l, c = kPi / m;
  const cplx dir = std::polar(1.0, a);
  cplx q, r;
  GeneralizedCircle qr;
  switch (ft.geometry) {
    case Geometry::Hyperbolic: {
      double pq = std::acosh((std::cos(c) + std::cos(a) * std::cos(b)) / (std::sin(a) * std::sin(b)));
      double pr = std::acosh((std::cos(b) + std::cos(a) * std::cos(c)) / (std::sin(a) * std::sin(c)));
      q = std::tanh(pq / 2.0);
      r = std::tanh(pr / 2.0) * dir;
      qr = third_side(q, r, 1.0);
      break;
    }
    case Geometry::Spherical: {
      double pq = std::acos((std::cos(c) + std::cos(a) * std::cos(b)) / (std::sin(a) * std::sin(b)));
      double pr = std::acos((std::cos(b) + std::cos(a) * std::cos(c)) / (std::sin(a) * std::sin(c)));
      q = std::tan(pq / 2.0);
      r = std::tan(pr / 2.0) * dir;
      qr = third_side(q, r, -1.0);
      break;
    }
    case Geometry::Euclidean: {
      q = 1.0;
      r = std::sin(b) / std::sin(c) * dir;
      cplx n = cplx(0.0, 1.0) * (r - q) / std::abs(r - q);
      qr = GeneralizedCircle::line(n, (q * std::conj(n)).real());
      break;
    }
  }
  auto& tri = ft.triangle;
  tri.vertices = {cplx(0.0, 0.0), q, r};
  tri.sides = {GeneralizedCircle::line(cplx(0.0, 1.0), 0.0), qr,
               GeneralizedCircle::line(cplx(0.0, 1.0) * dir, 0.0)};
  cplx mid_qr = (q + r) / 2.0;
  if (!qr.is_line) {
    cplx u = mid_qr - qr.center;
    mid_qr = qr.center + qr.radius * u / std::abs(u);
  }
  ft.midpoints = {q / 2.0, mid_qr, r / 2.0};
  for (int i = 0; i < 3; ++i) ft.reflections[i] = AntiMobius::reflection(tri.sides[i]);
  tri.angles = tile_angles(tri.vertices, ft.midpoints);
  ft.interior = mid_qr / 2.0;
  return ft;
}

std::vector<long long> tile_key(Geometry geometry, const Tile& t) {
  constexpr double grid = 1e8;
  std::vector<std::vector<long long>> pts;
  for (const auto& v : t.vertices) {
    std::vector<long long> p;
    if (geometry == Geometry::Spherical) {
      for (double x : v.sphere()) p.push_back(std::llround(x * grid));
    } else {
      cplx z = v.value();
      p = {std::llround(z.real() * grid), std::llround(z.imag() * grid)};
    }
    pts.push_back(std::move(p));
  }
  std::sort(pts.begin(), pts.end());
  std::vector<long long> key;
  for (const auto& p : pts) key.insert(key.end(), p.begin(), p.end());
  return key;
}

namespace {

Tile make_tile(const FundamentalTriangle& ft, const AntiMobius& g, std::vector<int> word) {
  Tile t;
  t.g = g;
  t.word = std::move(word);
  for (int i = 0; i < 3; ++i) {
    t.vertices[i] = g.apply(ProjPoint::finite(ft.triangle.vertices[i]));
    t.midpoints[i] = g.apply(ProjPoint::finite(ft.midpoints[i]));
  }
  return t;
}

}  // namespace

Tessellation tessellate(int k, int l, int m, const Budget& budget) {
  Tessellation t;
  t.base = build_triangle(k, l, m);
  std::set<std::vector<long long>> seen;
  t.tiles.push_back(make_tile(t.base, AntiMobius::identity(), {}));
  seen.insert(tile_key(t.base.geometry, t.tiles.front()));
  bool cut = false;
  bool full = false;
  for (std::size_t idx = 0; idx < t.tiles.size() && !full; ++idx) {
    for (int j = 0; j < 3; ++j) {
      const Tile& cur = t.tiles[idx];
      std::vector<int> word = cur.word;
      word.push_back(j);
      Tile next = make_tile(t.base, cur.g.compose(t.base.reflections[j]), std::move(word));
      auto key = tile_key(t.base.geometry, next);
      if (seen.contains(key)) continue;
      if (static_cast<int>(next.word.size()) > budget.max_depth) {
        cut = true;
        continue;
      }
      if (t.tiles.size() >= budget.max_tiles) {
        full = true;
        break;
      }
      seen.insert(std::move(key));
      t.depth = std::max(t.depth, static_cast<int>(next.word.size()));
      t.tiles.push_back(std::move(next));
    }
  }
  t.budget_exhausted = cut || full;
  t.closure_reached = !t.budget_exhausted;
  return t;
}

std::array<CircleMatrix, 3> tile_sides(const Tessellation& t, std::size_t i) {
  std::array<CircleMatrix, 3> out;
  for (int s = 0; s < 3; ++s)
    out[s] = transform(circle_matrix(t.base.triangle.sides[s]), t.tiles.at(i).g);
  return out;
}

ArcTriangle tile_triangle(const Tessellation& t, std::size_t i) {
  const Tile& tile = t.tiles.at(i);
  int best = 0;
  if (t.base.geometry == Geometry::Spherical) {
    double best_size = std::numeric_limits<double>::infinity();
    for (int c = 0; c < 3; ++c) {
      AntiMobius ch = chart(c);
      double size = 0.0;
      for (int s = 0; s < 3; ++s) {
        for (const auto& p : {tile.vertices[s], tile.midpoints[s]}) {
          ProjPoint q = ch.apply(p);
          size = std::max(size, q.is_far(1e12) ? 1e12 : std::abs(q.value()));
        }
      }
      if (size < best_size) {
        best_size = size;
        best = c;
      }
    }
  }
  AntiMobius ch = chart(best);
  std::array<cplx, 3> v, mid;
  for (int s = 0; s < 3; ++s) {
    v[s] = ch.apply(tile.vertices[s]).value();
    mid[s] = ch.apply(tile.midpoints[s]).value();
  }
  ArcTriangle out;
  out.vertices = v;
  for (int s = 0; s < 3; ++s) out.sides[s] = geometry::circle_through(v[s], mid[s], v[(s + 1) % 3]);
  out.angles = tile_angles(v, mid);
  return out;
}

cplx tile_interior_point(const Tessellation& t, std::size_t i) {
  return t.tiles.at(i).g.apply(t.base.interior);
}

bool tile_contains(const Tessellation& t, std::size_t i, cplx z, double tol) {
  auto sides = tile_sides(t, i);
  cplx ref = tile_interior_point(t, i);
  for (const auto& c : sides) {
    double fr = circle_form(c, ref), fz = circle_form(c, z);
    if (std::abs(fz) <= tol || (fr > 0) != (fz > 0)) return false;
  }
  return true;
}

double max_angle_residual(const Tessellation& t) {
  const std::array<double, 3> target{kPi / t.base.k, kPi / t.base.l, kPi / t.base.m};
  double worst = 0.0;
  for (std::size_t i = 0; i < t.tiles.size(); ++i) {
    auto tri = tile_triangle(t, i);
    for (int s = 0; s < 3; ++s) worst = std::max(worst, std::abs(tri.angles[s] - target[s]));
  }
  return worst;
}

OrthogonalCircleReport orthogonal_circle(const Tessellation& t) {
  if (t.base.geometry != Geometry::Hyperbolic)
    throw ValidationError("orthogonal circle exists only for hyperbolic triangle groups");
  OrthogonalCircleReport rep;
  rep.circle = GeneralizedCircle::circle({0.0, 0.0}, 1.0);
  for (std::size_t i = 0; i < t.tiles.size(); ++i)
    for (const auto& c : tile_sides(t, i))
      rep.max_residual = std::max(rep.max_residual, unit_orthogonality(c));
  return rep;
}

double max_vertex_modulus(const Tessellation& t) {
  double worst = 0.0;
  for (const auto& tile : t.tiles)
    for (const auto& v : tile.vertices)
      worst = std::max(worst, v.is_far(1e300) ? std::numeric_limits<double>::infinity()
                                              : std::abs(v.value()));
  return worst;
}

std::string export_svg(const Tessellation& t) {
  if (t.tiles.empty()) throw ValidationError("empty tessellation");
  AntiMobius view = AntiMobius::identity();
  if (t.base.geometry == Geometry::Spherical) {
    cplx p0 = t.base.interior;
    view = AntiMobius::mobius(std::conj(p0), 1.0, -1.0, p0);
  }
  struct Drawn {
    std::array<cplx, 3> v, mid;
  };
  std::vector<Drawn> drawn;
  drawn.reserve(t.tiles.size());
  double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin, ymin = xmin, ymax = -xmin;
  for (const auto& tile : t.tiles) {
    Drawn d;
    for (int s = 0; s < 3; ++s) {
      cplx a = view.apply(tile.vertices[s]).value();
      cplx b = view.apply(tile.midpoints[s]).value();
      d.v[s] = {a.real(), -a.imag()};
      d.mid[s] = {b.real(), -b.imag()};
      for (cplx w : {d.v[s], d.mid[s]}) {
        xmin = std::min(xmin, w.real());
        xmax = std::max(xmax, w.real());
        ymin = std::min(ymin, w.imag());
        ymax = std::max(ymax, w.imag());
      }
    }
    drawn.push_back(d);
  }
  if (t.base.geometry == Geometry::Hyperbolic) {
    xmin = ymin = -1.0;
    xmax = ymax = 1.0;
  }
  double span = std::max(xmax - xmin, ymax - ymin);
  double pad = 0.05 * span;
  double stroke = 0.002 * span;
  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"" << fmt(xmin - pad) << ' '
     << fmt(ymin - pad) << ' ' << fmt(xmax - xmin + 2 * pad) << ' ' << fmt(ymax - ymin + 2 * pad)
     << "\">\n";
  if (t.base.geometry == Geometry::Hyperbolic)
    os << "  <circle cx=\"0\" cy=\"0\" r=\"1\" fill=\"none\" stroke=\"#000000\" stroke-width=\""
       << fmt(stroke) << "\"/>\n";
  for (std::size_t i = 0; i < drawn.size(); ++i) {
    const auto& d = drawn[i];
    const bool odd = t.tiles[i].word.size() % 2 == 1;
    os << "  <path fill=\"" << (odd ? "#d6e4f0" : "none") << "\" stroke=\"#1b2631\" stroke-width=\""
       << fmt(stroke) << "\" d=\"M " << fmt(d.v[0].real()) << ' ' << fmt(d.v[0].imag());
    for (int s = 0; s < 3; ++s) {
      cplx a = d.v[s], mid = d.mid[s], b = d.v[(s + 1) % 3];
      auto circ = geometry::circle_through(a, mid, b, 1e-9);
      if (circ.is_line) {
        os << " L " << fmt(b.real()) << ' ' << fmt(b.imag());
        continue;
      }
      int sweep = cross(mid - a, b - a) > 0 ? 1 : 0;
      int large = (cross(b - a, mid - a) > 0) == (cross(b - a, circ.center - a) > 0) ? 1 : 0;
      os << " A " << fmt(circ.radius) << ' ' << fmt(circ.radius) << " 0 " << large << ' ' << sweep
         << ' ' << fmt(b.real()) << ' ' << fmt(b.imag());
    }
    os << " Z\"/>\n";
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace schwarz_atlas::triangle
