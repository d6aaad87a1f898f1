#pragma once

// Inversive geometry on the extended complex plane: generalized circles,
// reflections in them, and anti-Moebius maps acting on homogeneous points.

#include <array>
#include <complex>
#include <optional>
#include <vector>

#include <Eigen/Dense>

namespace schwarz_atlas::geometry {

using cplx = std::complex<double>;

/// A circle (center, radius) or a line {z : Re(z * conj(normal)) = offset}.
struct GeneralizedCircle {
  bool is_line = false;
  cplx center{0.0, 0.0};
  double radius = 1.0;
  cplx normal{1.0, 0.0};
  double offset = 0.0;

  static GeneralizedCircle circle(cplx center, double radius);
  /// Normalizes `normal` to modulus one.
  static GeneralizedCircle line(cplx normal, double offset);

  /// Negative inside the circle (or on the side opposite the normal), zero on
  /// the curve, positive outside.
  double side(cplx z) const;
  /// Euclidean distance from z to the curve.
  double distance(cplx z) const;
};

/// Circle through three points; a line when they are collinear to within
/// `collinear_tol` (relative to the spread of the points).
GeneralizedCircle circle_through(cplx a, cplx b, cplx c, double collinear_tol = 1e-12);

/// Inversion in a circle / mirror reflection in a line. Throws
/// ValidationError when p is the center of the circle.
cplx reflect_point(cplx p, const GeneralizedCircle& c);

/// Unit tangent at `a` of the arc traversed a -> b -> c.
cplx arc_tangent(cplx a, cplx b, cplx c);

/// Angle in [0, pi] between two direction vectors.
double angle_between(cplx t1, cplx t2);

/// Intersection points of two generalized circles (0, 1 or 2 points).
std::vector<cplx> intersect(const GeneralizedCircle& c1, const GeneralizedCircle& c2);

/// Residual of orthogonality to the unit circle: | |c|^2 - 1 - r^2 | for a
/// circle, |offset| for a line.
double unit_circle_orthogonality_residual(const GeneralizedCircle& c);

/// A point of the Riemann sphere in homogeneous coordinates [u : v].
struct ProjPoint {
  cplx u{0.0, 0.0};
  cplx v{1.0, 0.0};

  static ProjPoint finite(cplx z) { return {z, cplx(1.0, 0.0)}; }
  static ProjPoint infinity() { return {cplx(1.0, 0.0), cplx(0.0, 0.0)}; }

  /// |u/v| exceeds `bound` (or v vanishes).
  bool is_far(double bound = 1e8) const;
  cplx value() const { return u / v; }
  /// Point on the unit sphere under inverse stereographic projection;
  /// infinity goes to the north pole (0, 0, 1).
  std::array<double, 3> sphere() const;
  static ProjPoint from_sphere(const std::array<double, 3>& x);
};

/// z -> M z or z -> M conj(z), acting on homogeneous coordinates.
struct AntiMobius {
  Eigen::Matrix2cd m = Eigen::Matrix2cd::Identity();
  bool conj = false;

  static AntiMobius identity() { return {}; }
  static AntiMobius reflection(const GeneralizedCircle& c);
  /// Holomorphic map (a z + b) / (c z + d).
  static AntiMobius mobius(cplx a, cplx b, cplx c, cplx d);

  ProjPoint apply(const ProjPoint& p) const;
  cplx apply(cplx z) const { return apply(ProjPoint::finite(z)).value(); }
  /// (*this) o other.
  AntiMobius compose(const AntiMobius& other) const;
  AntiMobius inverse() const;
};

}  // namespace schwarz_atlas::geometry
