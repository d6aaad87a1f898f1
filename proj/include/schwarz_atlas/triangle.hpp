#pragma once

// Coxeter triangle groups (k, l, m): the fundamental circular-arc triangle
// with angles pi/k, pi/l, pi/m and its orbit under the three side
// reflections.

#include <array>
#include <cstddef>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "schwarz_atlas/circles.hpp"

namespace schwarz_atlas::triangle {

using geometry::AntiMobius;
using geometry::cplx;
using geometry::GeneralizedCircle;
using geometry::ProjPoint;

enum class Geometry { Spherical, Euclidean, Hyperbolic };
std::string geometry_name(Geometry g);

/// Exact comparison of 1/k + 1/l + 1/m with 1. Requires k, l, m >= 2.
Geometry classify(int k, int l, int m);

struct ArcTriangle {
  std::array<cplx, 3> vertices;  // angles pi/k, pi/l, pi/m in this order
  std::array<GeneralizedCircle, 3> sides;  // side i joins vertex i and vertex i+1
  std::array<double, 3> angles{};
};

/// Hermitian matrix [[A, B], [conj B, D]] of the curve
/// A|z|^2 + B conj(z) + conj(B) z + D = 0.
using CircleMatrix = Eigen::Matrix2cd;

CircleMatrix circle_matrix(const GeneralizedCircle& c);
/// Image of a circle matrix under an anti-Moebius map.
CircleMatrix transform(const CircleMatrix& c, const AntiMobius& g);
/// Value of the defining form at z (sign tells the side).
double circle_form(const CircleMatrix& c, cplx z);
/// |cos| of the angle between the curve and the unit circle.
double unit_orthogonality(const CircleMatrix& c);

/// First vertex at 0, first side along the positive real axis.
struct FundamentalTriangle {
  Geometry geometry = Geometry::Hyperbolic;
  int k = 2, l = 3, m = 7;
  ArcTriangle triangle;
  /// Points on each side strictly between its endpoints.
  std::array<cplx, 3> midpoints;
  std::array<AntiMobius, 3> reflections;
  cplx interior;
};

FundamentalTriangle build_triangle(int k, int l, int m);

struct Tile {
  AntiMobius g;
  std::vector<int> word;
  std::array<ProjPoint, 3> vertices;
  std::array<ProjPoint, 3> midpoints;
};

struct Budget {
  int max_depth = 64;
  std::size_t max_tiles = 200000;
};

struct Tessellation {
  FundamentalTriangle base;
  std::vector<Tile> tiles;
  int depth = 0;  // longest word present
  bool closure_reached = false;
  bool budget_exhausted = false;
};

/// Breadth-first closure under right multiplication by the side
/// reflections; tiles are in shortlex order of their words.
Tessellation tessellate(int k, int l, int m, const Budget& budget = {});

/// Canonical deduplication key of a tile.
std::vector<long long> tile_key(Geometry geometry, const Tile& t);

/// Side matrices of tile i.
std::array<CircleMatrix, 3> tile_sides(const Tessellation& t, std::size_t i);
/// Tile i drawn in a chart where all of its points are finite (the
/// identity chart except for spherical tiles near infinity).
ArcTriangle tile_triangle(const Tessellation& t, std::size_t i);
cplx tile_interior_point(const Tessellation& t, std::size_t i);
/// z strictly inside tile i, with margin `tol` on the side forms.
bool tile_contains(const Tessellation& t, std::size_t i, cplx z, double tol = 1e-9);

double max_angle_residual(const Tessellation& t);

struct OrthogonalCircleReport {
  GeneralizedCircle circle;
  double max_residual = 0.0;
};

/// Unit circle with its worst orthogonality residual over every tile side.
/// Throws ValidationError for non-hyperbolic tessellations.
OrthogonalCircleReport orthogonal_circle(const Tessellation& t);

/// Largest vertex modulus over all tiles (hyperbolic containment check).
double max_vertex_modulus(const Tessellation& t);

/// One <path> per tile, arcs as SVG elliptical-arc commands.
std::string export_svg(const Tessellation& t);

}  // namespace schwarz_atlas::triangle
