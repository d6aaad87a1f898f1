#include "schwarz_atlas/circles.hpp"

#include <algorithm>
#include <cmath>

#include "schwarz_atlas/errors.hpp"

namespace schwarz_atlas::geometry {

namespace {

double cross(cplx a, cplx b) { return a.real() * b.imag() - a.imag() * b.real(); }

Eigen::Matrix2cd normalized(const Eigen::Matrix2cd& m) {
  double s = m.cwiseAbs().maxCoeff();
  return s > 0 ? Eigen::Matrix2cd(m / s) : m;
}

}  // namespace

GeneralizedCircle GeneralizedCircle::circle(cplx center, double radius) {
  GeneralizedCircle c;
  c.is_line = false;
  c.center = center;
  c.radius = radius;
  return c;
}

GeneralizedCircle GeneralizedCircle::line(cplx normal, double offset) {
  GeneralizedCircle c;
  c.is_line = true;
  double n = std::abs(normal);
  c.normal = normal / n;
  c.offset = offset / n;
  return c;
}

double GeneralizedCircle::side(cplx z) const {
  if (is_line) return (z * std::conj(normal)).real() - offset;
  return std::abs(z - center) - radius;
}

double GeneralizedCircle::distance(cplx z) const { return std::abs(side(z)); }

GeneralizedCircle circle_through(cplx a, cplx b, cplx c, double collinear_tol) {
  const double d = 2.0 * cross(b - a, c - a);
  const double spread = std::max({std::abs(b - a), std::abs(c - a), std::abs(c - b)});
  if (spread == 0.0) throw ValidationError("circle through coincident points");
  if (std::abs(d) <= collinear_tol * spread * spread) {
    // Use the farthest pair to define the line.
    cplx p = a, q = c;
    if (std::abs(b - a) > std::abs(q - p)) q = b;
    if (std::abs(c - b) > std::abs(q - p)) {
      p = b;
      q = c;
    }
    cplx t = (q - p) / std::abs(q - p);
    cplx n = cplx(0.0, 1.0) * t;
    return GeneralizedCircle::line(n, (p * std::conj(n)).real());
  }
  // Center relative to a.
  cplx ba = b - a, ca = c - a;
  double bb = std::norm(ba), cc = std::norm(ca);
  double ux = (ca.imag() * bb - ba.imag() * cc) / d;
  double uy = (ba.real() * cc - ca.real() * bb) / d;
  cplx center = a + cplx(ux, uy);
  double r = (std::abs(a - center) + std::abs(b - center) + std::abs(c - center)) / 3.0;
  return GeneralizedCircle::circle(center, r);
}

cplx reflect_point(cplx p, const GeneralizedCircle& c) {
  if (c.is_line) {
    double s = (p * std::conj(c.normal)).real() - c.offset;
    return p - 2.0 * s * c.normal;
  }
  cplx d = p - c.center;
  if (std::abs(d) == 0.0) throw ValidationError("inversion center maps to infinity");
  return c.center + c.radius * c.radius / std::conj(d);
}

cplx arc_tangent(cplx a, cplx b, cplx c) {
  GeneralizedCircle circ = circle_through(a, b, c);
  if (circ.is_line) return (b - a) / std::abs(b - a);
  cplx radial = (a - circ.center) / circ.radius;
  const bool ccw = cross(b - a, c - a) > 0.0;
  return ccw ? cplx(0.0, 1.0) * radial : cplx(0.0, -1.0) * radial;
}

double angle_between(cplx t1, cplx t2) {
  double c = (t1 * std::conj(t2)).real() / (std::abs(t1) * std::abs(t2));
  double s = cross(t1, t2) / (std::abs(t1) * std::abs(t2));
  return std::abs(std::atan2(s, c));
}

std::vector<cplx> intersect(const GeneralizedCircle& c1, const GeneralizedCircle& c2) {
  if (c1.is_line && c2.is_line) {
    // Solve Re(z conj n_i) = d_i.
    double a11 = c1.normal.real(), a12 = c1.normal.imag();
    double a21 = c2.normal.real(), a22 = c2.normal.imag();
    double det = a11 * a22 - a12 * a21;
    if (std::abs(det) < 1e-15) return {};
    double x = (c1.offset * a22 - a12 * c2.offset) / det;
    double y = (a11 * c2.offset - c1.offset * a21) / det;
    return {cplx(x, y)};
  }
  if (c1.is_line || c2.is_line) {
    const auto& ln = c1.is_line ? c1 : c2;
    const auto& ci = c1.is_line ? c2 : c1;
    double dist = (ci.center * std::conj(ln.normal)).real() - ln.offset;
    cplx foot = ci.center - dist * ln.normal;
    double h2 = ci.radius * ci.radius - dist * dist;
    if (h2 < 0) return {};
    cplx t = cplx(0.0, 1.0) * ln.normal;
    double h = std::sqrt(h2);
    if (h == 0.0) return {foot};
    return {foot + h * t, foot - h * t};
  }
  cplx d = c2.center - c1.center;
  double dist = std::abs(d);
  if (dist == 0.0) return {};
  double a = (c1.radius * c1.radius - c2.radius * c2.radius + dist * dist) / (2.0 * dist);
  double h2 = c1.radius * c1.radius - a * a;
  if (h2 < 0) return {};
  cplx e = d / dist;
  cplx mid = c1.center + a * e;
  double h = std::sqrt(h2);
  if (h == 0.0) return {mid};
  cplx perp = cplx(0.0, 1.0) * e;
  return {mid + h * perp, mid - h * perp};
}

double unit_circle_orthogonality_residual(const GeneralizedCircle& c) {
  if (c.is_line) return std::abs(c.offset);
  return std::abs(std::norm(c.center) - 1.0 - c.radius * c.radius);
}

bool ProjPoint::is_far(double bound) const {
  return std::abs(v) == 0.0 || std::abs(u) > bound * std::abs(v);
}

std::array<double, 3> ProjPoint::sphere() const {
  double uu = std::norm(u), vv = std::norm(v);
  cplx uv = u * std::conj(v);
  double s = uu + vv;
  return {2.0 * uv.real() / s, 2.0 * uv.imag() / s, (uu - vv) / s};
}

ProjPoint ProjPoint::from_sphere(const std::array<double, 3>& x) {
  // (x + iy) / (1 - z) = (1 + z) / (x - iy) on the unit sphere.
  if (x[2] <= 0.0) return {cplx(x[0], x[1]), cplx(1.0 - x[2], 0.0)};
  return {cplx(1.0 + x[2], 0.0), cplx(x[0], -x[1])};
}

AntiMobius AntiMobius::reflection(const GeneralizedCircle& c) {
  AntiMobius r;
  r.conj = true;
  if (c.is_line) {
    // z -> -n^2 conj(z) + 2 d n
    r.m << -c.normal * c.normal, 2.0 * c.offset * c.normal, 0.0, 1.0;
  } else {
    // z -> (c conj(z) + r^2 - |c|^2) / (conj(z) - conj(c))
    r.m << c.center, c.radius * c.radius - std::norm(c.center), 1.0, -std::conj(c.center);
  }
  r.m = normalized(r.m);
  return r;
}

AntiMobius AntiMobius::mobius(cplx a, cplx b, cplx c, cplx d) {
  AntiMobius r;
  r.m << a, b, c, d;
  r.m = normalized(r.m);
  return r;
}

ProjPoint AntiMobius::apply(const ProjPoint& p) const {
  Eigen::Vector2cd x(conj ? std::conj(p.u) : p.u, conj ? std::conj(p.v) : p.v);
  Eigen::Vector2cd y = m * x;
  double s = std::max(std::abs(y(0)), std::abs(y(1)));
  if (s > 0) y /= s;
  return {y(0), y(1)};
}

AntiMobius AntiMobius::compose(const AntiMobius& other) const {
  AntiMobius r;
  r.m = normalized(m * (conj ? Eigen::Matrix2cd(other.m.conjugate()) : other.m));
  r.conj = conj != other.conj;
  return r;
}

AntiMobius AntiMobius::inverse() const {
  AntiMobius r;
  Eigen::Matrix2cd inv = m.inverse();
  r.m = normalized(conj ? Eigen::Matrix2cd(inv.conjugate()) : inv);
  r.conj = conj;
  return r;
}

}  // namespace schwarz_atlas::geometry
