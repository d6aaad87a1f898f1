#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "schwarz_atlas/circles.hpp"
#include "schwarz_atlas/errors.hpp"

using namespace schwarz_atlas;
using namespace schwarz_atlas::geometry;

TEST_CASE("inversion in the unit circle") {
  auto u = GeneralizedCircle::circle(0.0, 1.0);
  CHECK(std::abs(reflect_point(2.0, u) - 0.5) < 1e-15);
  CHECK(std::abs(reflect_point({0.0, 3.0}, u) - cplx(0.0, 1.0 / 3.0)) < 1e-15);
  CHECK(std::abs(reflect_point(std::polar(1.0, 0.7), u) - std::polar(1.0, 0.7)) < 1e-15);
  CHECK_THROWS_AS(reflect_point(0.0, u), ValidationError);
}

TEST_CASE("reflections are involutions") {
  std::mt19937_64 rng(1);
  std::normal_distribution<double> g;
  for (int t = 0; t < 200; ++t) {
    GeneralizedCircle c = t % 2 ? GeneralizedCircle::circle({g(rng), g(rng)}, 0.2 + std::abs(g(rng)))
                                : GeneralizedCircle::line({g(rng), g(rng)}, g(rng));
    cplx z(g(rng), g(rng));
    CHECK(std::abs(reflect_point(reflect_point(z, c), c) - z) < 1e-12 * (1 + std::abs(z)));
    // anti-Moebius form agrees with the direct formula
    CHECK(std::abs(AntiMobius::reflection(c).apply(z) - reflect_point(z, c)) < 1e-12 * (1 + std::abs(z)));
  }
}

TEST_CASE("lines") {
  auto l = GeneralizedCircle::line({0.0, 2.0}, 2.0);  // Im z = 1
  CHECK(std::abs(std::abs(l.normal) - 1.0) < 1e-15);
  CHECK(std::abs(reflect_point({3.0, 0.0}, l) - cplx(3.0, 2.0)) < 1e-15);
  CHECK(l.side({0.0, 2.0}) > 0);
  CHECK(l.side({0.0, 0.0}) < 0);
  CHECK(std::abs(l.distance({5.0, 4.0}) - 3.0) < 1e-15);
}

TEST_CASE("circle through three points") {
  auto c = circle_through(1.0, {0.0, 1.0}, -1.0);
  REQUIRE_FALSE(c.is_line);
  CHECK(std::abs(c.center) < 1e-14);
  CHECK(std::abs(c.radius - 1.0) < 1e-14);
  auto l = circle_through(0.0, {1.0, 1.0}, {2.0, 2.0});
  REQUIRE(l.is_line);
  CHECK(l.distance({3.0, 3.0}) < 1e-14);
  CHECK(circle_through(1.0, 1.0, 2.0).is_line);
  CHECK_THROWS_AS(circle_through(1.0, 1.0, 1.0), ValidationError);
}

TEST_CASE("intersections") {
  auto a = GeneralizedCircle::circle(0.0, 1.0);
  auto b = GeneralizedCircle::circle(1.0, 1.0);
  auto pts = intersect(a, b);
  REQUIRE(pts.size() == 2);
  for (auto p : pts) {
    CHECK(std::abs(std::abs(p) - 1.0) < 1e-14);
    CHECK(std::abs(std::abs(p - 1.0) - 1.0) < 1e-14);
  }
  auto l = GeneralizedCircle::line(1.0, 0.5);
  CHECK(intersect(a, l).size() == 2);
  CHECK(intersect(GeneralizedCircle::line(1.0, 0.0), GeneralizedCircle::line({0.0, 1.0}, 0.0)).size() == 1);
  CHECK(intersect(a, GeneralizedCircle::circle(5.0, 1.0)).empty());
}

TEST_CASE("arc tangents and angles") {
  // counterclockwise along the unit circle from 1 through i: tangent at 1 is +i
  cplx t = arc_tangent(1.0, {0.0, 1.0}, -1.0);
  CHECK(std::abs(t - cplx(0.0, 1.0)) < 1e-14);
  cplx s = arc_tangent(1.0, {0.0, -1.0}, -1.0);
  CHECK(std::abs(s - cplx(0.0, -1.0)) < 1e-14);
  CHECK(std::abs(angle_between(t, s) - std::numbers::pi) < 1e-14);
  CHECK(std::abs(angle_between(1.0, {0.0, 1.0}) - std::numbers::pi / 2) < 1e-15);
  // collinear points: tangent along the line
  CHECK(std::abs(arc_tangent(0.0, 1.0, 2.0) - 1.0) < 1e-14);
}

TEST_CASE("orthogonality residual") {
  CHECK(unit_circle_orthogonality_residual(GeneralizedCircle::circle(2.0, std::sqrt(3.0))) < 1e-15);
  CHECK(unit_circle_orthogonality_residual(GeneralizedCircle::line({0.0, 1.0}, 0.0)) == 0.0);
  CHECK(unit_circle_orthogonality_residual(GeneralizedCircle::circle(2.0, 1.0)) > 0.5);
}

TEST_CASE("anti-Moebius composition") {
  std::mt19937_64 rng(2);
  std::normal_distribution<double> g;
  for (int t = 0; t < 100; ++t) {
    auto f = AntiMobius::reflection(GeneralizedCircle::circle({g(rng), g(rng)}, 0.5 + std::abs(g(rng))));
    auto h = AntiMobius::mobius({g(rng), g(rng)}, {g(rng), g(rng)}, {g(rng), g(rng)}, {g(rng), g(rng)});
    cplx z(g(rng), g(rng));
    auto fh = f.compose(h);
    CHECK(fh.conj == (f.conj != h.conj));
    CHECK(std::abs(fh.apply(z) - f.apply(h.apply(z))) < 1e-9 * (1 + std::abs(f.apply(h.apply(z)))));
    CHECK(std::abs(fh.inverse().apply(fh.apply(z)) - z) < 1e-9 * (1 + std::abs(z)));
  }
}

TEST_CASE("projective points") {
  CHECK(ProjPoint::infinity().is_far());
  CHECK_FALSE(ProjPoint::finite(3.0).is_far());
  auto n = ProjPoint::infinity().sphere();
  CHECK(std::abs(n[2] - 1.0) < 1e-15);
  auto s = ProjPoint::finite(0.0).sphere();
  CHECK(std::abs(s[2] + 1.0) < 1e-15);
  auto e = ProjPoint::finite(1.0).sphere();
  CHECK(std::abs(e[0] - 1.0) < 1e-15);
  for (cplx z : {cplx(0.3, -2.0), cplx(40.0, 1.0), cplx(-1e-3, 1e-4)}) {
    auto x = ProjPoint::finite(z).sphere();
    CHECK(std::abs(x[0] * x[0] + x[1] * x[1] + x[2] * x[2] - 1.0) < 1e-14);
    CHECK(std::abs(ProjPoint::from_sphere(x).value() - z) < 1e-12 * (1 + std::abs(z)));
  }
}
