#include <doctest.h>

#include <array>
#include <cmath>
#include <map>
#include <numbers>
#include <set>

#include "schwarz_atlas/errors.hpp"
#include "schwarz_atlas/triangle.hpp"

using namespace schwarz_atlas;
using namespace schwarz_atlas::triangle;
using std::numbers::pi;

namespace {

// Order of the Coxeter group <s0, s1, s2> from its geometric
// representation, by brute-force closure of 3x3 real matrices.
std::size_t coxeter_order(int k, int l, int m) {
  using M3 = std::array<double, 9>;
  double b[3][3];
  const int mij[3][3] = {{1, k, m}, {k, 1, l}, {m, l, 1}};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) b[i][j] = -std::cos(pi / mij[i][j]);
  std::array<M3, 3> gen;
  for (int i = 0; i < 3; ++i) {
    // s_i(v) = v - 2 B(e_i, v) e_i
    M3 s{};
    for (int r = 0; r < 3; ++r)
      for (int c = 0; c < 3; ++c) s[3 * r + c] = (r == c ? 1.0 : 0.0) - (r == i ? 2.0 * b[i][c] : 0.0);
    gen[i] = s;
  }
  auto mul = [](const M3& x, const M3& y) {
    M3 z{};
    for (int r = 0; r < 3; ++r)
      for (int c = 0; c < 3; ++c)
        for (int t = 0; t < 3; ++t) z[3 * r + c] += x[3 * r + t] * y[3 * t + c];
    return z;
  };
  auto key = [](const M3& x) {
    std::array<long long, 9> q{};
    for (int i = 0; i < 9; ++i) q[i] = std::llround(x[i] * 1e6);
    return q;
  };
  M3 id{1, 0, 0, 0, 1, 0, 0, 0, 1};
  std::set<std::array<long long, 9>> seen{key(id)};
  std::vector<M3> frontier{id};
  while (!frontier.empty() && seen.size() < 100000) {
    std::vector<M3> next;
    for (const auto& g : frontier)
      for (const auto& s : gen) {
        M3 h = mul(g, s);
        if (seen.insert(key(h)).second) next.push_back(h);
      }
    frontier = std::move(next);
  }
  return seen.size();
}

}  // namespace

TEST_CASE("classification is exact") {
  CHECK(classify(2, 3, 5) == Geometry::Spherical);
  CHECK(classify(2, 3, 6) == Geometry::Euclidean);
  CHECK(classify(2, 4, 4) == Geometry::Euclidean);
  CHECK(classify(3, 3, 3) == Geometry::Euclidean);
  CHECK(classify(2, 3, 7) == Geometry::Hyperbolic);
  CHECK(classify(2, 2, 1000) == Geometry::Spherical);
  CHECK_THROWS_AS(classify(1, 3, 7), ValidationError);
}

TEST_CASE("fundamental triangles") {
  for (auto [k, l, m] : {std::array{2, 2, 2}, std::array{2, 3, 5}, std::array{2, 4, 4}, std::array{3, 3, 3},
                         std::array{2, 3, 7}, std::array{3, 3, 4}, std::array{4, 5, 6}}) {
    auto ft = build_triangle(k, l, m);
    CAPTURE(k);
    CAPTURE(l);
    CAPTURE(m);
    CHECK(std::abs(ft.triangle.vertices[0]) == 0.0);
    CHECK(std::abs(ft.triangle.vertices[1].imag()) < 1e-15);
    CHECK(ft.triangle.vertices[1].real() > 0);
    const double want[3] = {pi / k, pi / l, pi / m};
    for (int i = 0; i < 3; ++i) {
      CHECK(std::abs(ft.triangle.angles[i] - want[i]) < 1e-10);
      // vertex i lies on sides i and i-1
      CHECK(ft.triangle.sides[i].distance(ft.triangle.vertices[i]) < 1e-10);
      CHECK(ft.triangle.sides[(i + 2) % 3].distance(ft.triangle.vertices[i]) < 1e-10);
    }
    if (ft.geometry == Geometry::Hyperbolic)
      for (const auto& s : ft.triangle.sides) {
        if (s.is_line)
          CHECK(std::abs(s.offset) < 1e-12);
        else
          CHECK(std::abs(std::norm(s.center) - 1.0 - s.radius * s.radius) < 1e-10);
      }
  }
}

TEST_CASE("spherical closure counts match the Coxeter group order") {
  CHECK(coxeter_order(2, 3, 3) == 24);
  for (auto [k, l, m] : {std::array{2, 3, 3}, std::array{2, 3, 4}, std::array{2, 3, 5}, std::array{2, 2, 2},
                         std::array{2, 2, 3}, std::array{2, 2, 5}, std::array{2, 2, 7}}) {
    auto t = tessellate(k, l, m);
    CAPTURE(m);
    CHECK(t.closure_reached);
    CHECK(t.tiles.size() == coxeter_order(k, l, m));
    CHECK(max_angle_residual(t) < 1e-8);
  }
  CHECK(tessellate(2, 3, 3).tiles.size() == 24);
  CHECK(tessellate(2, 3, 4).tiles.size() == 48);
  CHECK(tessellate(2, 3, 5).tiles.size() == 120);
  for (int n = 2; n <= 8; ++n) CHECK(tessellate(2, 2, n).tiles.size() == static_cast<std::size_t>(4 * n));
}

TEST_CASE("hyperbolic tiles stay in the disc") {
  Budget b;
  b.max_depth = 6;
  auto t = tessellate(2, 3, 7, b);
  CHECK_FALSE(t.closure_reached);
  CHECK(t.depth == 6);
  CHECK(max_vertex_modulus(t) < 1.0);
  CHECK(orthogonal_circle(t).max_residual < 1e-9);
  CHECK(max_angle_residual(t) < 1e-8);
  b.max_depth = 5;
  auto u = tessellate(3, 3, 4, b);
  CHECK(orthogonal_circle(u).max_residual < 1e-9);
  CHECK(max_vertex_modulus(u) < 1.0);
  CHECK_THROWS_AS(orthogonal_circle(tessellate(2, 3, 5)), ValidationError);
}

TEST_CASE("tiles are distinct and disjoint") {
  Budget b;
  b.max_depth = 6;
  auto t = tessellate(2, 3, 7, b);
  std::set<std::vector<long long>> keys;
  for (const auto& tile : t.tiles) keys.insert(tile_key(t.base.geometry, tile));
  CHECK(keys.size() == t.tiles.size());
  int overlaps = 0;
  for (std::size_t i = 0; i < t.tiles.size(); ++i) {
    cplx p = tile_interior_point(t, i);
    CHECK(tile_contains(t, i, p));
    for (std::size_t j = 0; j < t.tiles.size(); ++j)
      if (j != i && tile_contains(t, j, p)) ++overlaps;
  }
  CHECK(overlaps == 0);
}

TEST_CASE("spherical tiles are disjoint as well") {
  auto t = tessellate(2, 3, 4);
  int overlaps = 0;
  for (std::size_t i = 0; i < t.tiles.size(); ++i) {
    cplx p = tile_interior_point(t, i);
    for (std::size_t j = 0; j < t.tiles.size(); ++j)
      if (j != i && tile_contains(t, j, p)) ++overlaps;
  }
  CHECK(overlaps == 0);
}

TEST_CASE("shortlex order and budgets") {
  Budget b;
  b.max_depth = 4;
  auto t = tessellate(2, 3, 7, b);
  for (std::size_t i = 1; i < t.tiles.size(); ++i) {
    const auto& a = t.tiles[i - 1].word;
    const auto& c = t.tiles[i].word;
    CHECK((a.size() < c.size() || (a.size() == c.size() && a < c)));
  }
  Budget tiny;
  tiny.max_tiles = 10;
  auto u = tessellate(2, 3, 7, tiny);
  CHECK(u.budget_exhausted);
  CHECK(u.tiles.size() <= 10);
  Budget e;
  e.max_depth = 5;
  auto w = tessellate(2, 3, 6, e);
  CHECK_FALSE(w.closure_reached);
  CHECK(max_angle_residual(w) < 1e-8);
}

TEST_CASE("euclidean tiles are congruent") {
  Budget e;
  e.max_depth = 5;
  auto t = tessellate(2, 4, 4, e);
  auto side = [](const ArcTriangle& a, int i) { return std::abs(a.vertices[(i + 1) % 3] - a.vertices[i]); };
  auto base = tile_triangle(t, 0);
  for (std::size_t i = 0; i < t.tiles.size(); ++i) {
    auto a = tile_triangle(t, i);
    for (int s = 0; s < 3; ++s) CHECK(std::abs(side(a, s) - side(base, s)) < 1e-9);
  }
}

TEST_CASE("SVG export") {
  Budget b;
  b.max_depth = 6;
  auto t = tessellate(2, 3, 7, b);
  auto svg = export_svg(t);
  std::size_t paths = 0;
  for (std::size_t pos = svg.find("<path"); pos != std::string::npos; pos = svg.find("<path", pos + 1)) ++paths;
  CHECK(paths == t.tiles.size());
  CHECK(svg.find("<circle") != std::string::npos);
  CHECK(svg.find(" A ") != std::string::npos);
  CHECK(svg == export_svg(tessellate(2, 3, 7, b)));
  Tessellation empty;
  CHECK_THROWS_AS(export_svg(empty), ValidationError);
  auto s = export_svg(tessellate(2, 3, 4));
  CHECK(s.find("nan") == std::string::npos);
}
