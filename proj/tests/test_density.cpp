#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "packdens/density.hpp"
#include "packdens/errors.hpp"
#include "packdens/generators.hpp"
#include "test_support.hpp"

using namespace packdens;
using packdens::testing::pt;

namespace {

// Reference values computed to 30 digits with an arbitrary-precision library.
constexpr long double kBound = 0.906899682117108925297039128821L;
constexpr long double kTwoTriangles = 0.841787214476932925143051993633L;
constexpr long double kPi = 3.14159265358979323846264338328L;

Triangulation single(Point a, Point b, Point c) { return delaunay({a, b, c}); }

Configuration square_lattice(long extent) {
  std::vector<Point> pts;
  for (long x = 0; x <= extent; x += 2)
    for (long y = 0; y <= extent; y += 2) pts.push_back(pt(x, y));
  return validate(pts, make_window(0, 0, extent, extent));
}

// Largest angle from floating-point side lengths, as an independent oracle.
double angle_oracle(const Triangulation& t, const Triangle& tri) {
  double best = 0;
  for (int k = 0; k < 3; ++k) {
    const Point& p = t.points[tri.v[k]];
    const Point& q = t.points[tri.v[(k + 1) % 3]];
    const Point& r = t.points[tri.v[(k + 2) % 3]];
    double ux = Scalar(q.x - p.x).get_d(), uy = Scalar(q.y - p.y).get_d();
    double vx = Scalar(r.x - p.x).get_d(), vy = Scalar(r.y - p.y).get_d();
    double cosine = (ux * vx + uy * vy) / (std::hypot(ux, uy) * std::hypot(vx, vy));
    best = std::max(best, std::acos(std::clamp(cosine, -1.0, 1.0)));
  }
  return best;
}

}  // namespace

TEST_CASE("the bound") {
  CHECK(std::fabs(density_bound() - kBound) < 1e-18L);
  CHECK(std::fabs(density_bound() - 0.90690L) < 5e-6L);
}

TEST_CASE("equilateral hex-patch triangle") {
  auto t = delaunay(testing::hex_patch());
  for (std::size_t i = 0; i < t.triangles.size(); ++i) {
    auto s = triangle_stats(t, i);
    CHECK(std::fabs(to_long_double(s.area) - std::sqrt(3.0L)) < 1e-15L);
    CHECK(std::fabs(s.density - kBound) < 1e-12L);
    CHECK(std::fabs(s.largest_angle - kPi / 3) < 1e-12L);
    CHECK(s.near_equilateral);
    CHECK_FALSE(s.is_equilateral_side2);  // sqrt(3) is not rational
    CHECK(s.circum.radius_squared < 4);
  }
}

TEST_CASE("right isoceles triangle") {
  auto t = single(pt(0, 0), pt(2, 0), pt(0, 2));
  auto s = triangle_stats(t, 0);
  CHECK(s.area == 2);
  CHECK(std::fabs(s.density - kPi / 4) < 1e-15L);
  CHECK(std::fabs(s.largest_angle - kPi / 2) < 1e-15L);
  CHECK(s.circum.radius_squared == 2);
  CHECK_FALSE(s.near_equilateral);
}

TEST_CASE("zero-area triangle is rejected") {
  Triangulation t;
  t.points = {pt(0, 0), pt(1, 1), pt(2, 2)};
  t.triangles = {Triangle{{0, 1, 2}}};
  t.neighbors = {{kNoNeighbor, kNoNeighbor, kNoNeighbor}};
  CHECK_THROWS_AS(triangle_stats(t, 0), DegenerateTriangle);
}

TEST_CASE("defining identity and angle oracle on random triangles") {
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 2000; ++trial) {
    auto pts = testing::random_rational_points(rng, 3);
    if (orient2d(pts[0], pts[1], pts[2]) == Sign::Zero) continue;
    auto t = delaunay(pts);
    auto s = triangle_stats(t, 0);
    CHECK(s.area > 0);
    CHECK(std::fabs(s.density * to_long_double(s.area) - kPi / 2) <= 1e-12L);
    CHECK(s.largest_angle >= kPi / 3 - 1e-12L);
    CHECK(s.largest_angle < kPi);
    CHECK(std::fabs(static_cast<double>(s.largest_angle) - angle_oracle(t, s.triangle)) < 1e-7);
    // Sine law: the largest angle is obtuse exactly when the circumcenter is outside.
    CHECK((s.largest_angle > kPi / 2) == (s.side_squared[0] + s.side_squared[1] + s.side_squared[2] <
                                          2 * std::max({s.side_squared[0], s.side_squared[1],
                                                        s.side_squared[2]})));
  }
}

TEST_CASE("lemma 1 examples") {
  auto hex = all_stats(delaunay(testing::hex_patch()));
  auto r = check_lemma1(hex, true);
  CHECK(r.ok);
  CHECK(r.applicable);
  CHECK(r.equality.size() == 6);

  auto square = square_lattice(8);
  auto sq = all_stats(delaunay(square.points));
  auto rs = check_lemma1(sq, true);
  CHECK(rs.ok);
  CHECK(rs.equality.empty());
  for (const auto& s : sq) {
    CHECK(s.circum.radius_squared == 2);
    CHECK(std::fabs(s.largest_angle - kPi / 2) < 1e-15L);
  }

  auto flagged = check_lemma1(all_stats(single(pt(0, -2), pt(0, 2), pt(2, 0))), true);
  CHECK_FALSE(flagged.ok);
  REQUIRE(flagged.violations.size() == 1);
  CHECK(flagged.violations[0].triangle == 0);

  auto unsaturated = check_lemma1(hex, false);
  CHECK_FALSE(unsaturated.applicable);
}

TEST_CASE("lemma 2 examples") {
  auto r = check_lemma2(all_stats(delaunay(testing::hex_patch())));
  CHECK(r.ok);
  CHECK(r.equality.size() == 6);

  auto rs = check_lemma2(all_stats(delaunay(square_lattice(8).points)));
  CHECK(rs.ok);
  CHECK(rs.equality.empty());

  auto s = triangle_stats(single(pt(0, 0), pt(2, 0), pt(0, 2)), 0);
  s.area = Scalar(3, 2);
  s.density = (kPi / 2) / 1.5L;
  CHECK(std::fabs(s.density - 1.047L) < 1e-3L);
  auto fabricated = check_lemma2({s});
  CHECK_FALSE(fabricated.ok);
  CHECK(fabricated.violations.size() == 2);  // density and area^2 < 3
}

TEST_CASE("aggregate examples") {
  auto equilateral = triangle_stats(delaunay(testing::hex_patch()), 0);
  auto right = triangle_stats(single(pt(0, 0), pt(2, 0), pt(0, 2)), 0);
  auto two = aggregate({equilateral, right});
  CHECK(std::fabs(two.overall_density - kTwoTriangles) < 1e-12L);
  CHECK(two.triangle_count == 2);
  CHECK(two.max_circumradius_squared == 2);

  auto hex = aggregate(all_stats(delaunay(testing::hex_patch())));
  CHECK(std::fabs(hex.overall_density - kBound) < 1e-12L);
  CHECK(hex.bound_ok);
  CHECK(hex.lemma1_ok);
  CHECK(hex.lemma2_ok);

  auto one = aggregate({right});
  CHECK(one.overall_density == doctest::Approx(static_cast<double>(right.density)).epsilon(1e-15));

  CHECK_THROWS_AS(aggregate({}), EmptyTriangulation);
}

TEST_CASE("aggregate on saturated configurations") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    GeneratorSpec spec;
    spec.kind = GeneratorKind::RandomDart;
    spec.window = make_window(0, 0, 16, 16);
    spec.seed = seed;
    spec.max_points = 10 + seed;
    auto c = saturate(generate(spec));
    auto t = delaunay(c.points);
    auto stats = all_stats(t);
    auto report = aggregate(stats);
    double area = 0;
    for (std::size_t i = 0; i < t.triangles.size(); ++i) area += triangle_area(t, i).get_d();
    CHECK(report.total_area == convex_hull_area(t));
    CHECK(static_cast<double>(report.overall_density) ==
          doctest::Approx(t.triangles.size() * M_PI / 2 / area).epsilon(1e-12));
    CHECK(report.bound_ok == (report.overall_density <= kBound + 1e-12L));
    CHECK(report.overall_density <= kBound);
    CHECK(report.min_density <= report.mean_density);
    CHECK(report.mean_density <= report.max_density);

    // Away from the window edge both lemmas hold outright.
    auto inner = interior_stats(stats, t, c.window, Scalar(2));
    CHECK(check_lemma1(inner, true).ok);
    CHECK(check_lemma2(inner).ok);
    for (const auto& s : stats)
      CHECK((std::fabs(s.density - kBound) <= 1e-9L) == s.near_equilateral);
  }
}

TEST_CASE("interior selection on a hexagonal lattice") {
  GeneratorSpec spec;
  spec.window = make_window(0, 0, 20, 20);
  auto c = generate(spec);
  auto t = delaunay(c.points);
  auto stats = all_stats(t);
  auto inner = interior_stats(stats, t, c.window, Scalar(4));
  CHECK(inner.size() > 20);
  CHECK(inner.size() < stats.size());
  for (const auto& s : inner) {
    CHECK(s.near_equilateral);
    CHECK(std::fabs(s.density - kBound) < 1e-9L);
  }
  CHECK(interior_stats(stats, t, c.window, Scalar(0)).size() == stats.size());
}

TEST_CASE("wedge coverage") {
  auto equilateral = delaunay(testing::hex_patch());
  auto e = wedge_coverage_check(equilateral, 0, 1000000, 1);
  CHECK(std::fabs(e.covered_area - kPi / 2) < 0.01L);
  CHECK(std::fabs(e.covered_area - kPi / 2) < 3 * e.standard_error);
  CHECK_FALSE(e.degenerate);

  auto right = single(pt(0, 0), pt(2, 0), pt(0, 2));
  auto r = wedge_coverage_check(right, 0, 1000000, 2);
  CHECK(std::fabs(r.covered_area - kPi / 2) < 0.01L);

  auto again = wedge_coverage_check(right, 0, 1000000, 2);
  CHECK(again.covered_area == r.covered_area);

  auto none = wedge_coverage_check(right, 0, 0, 3);
  CHECK(none.degenerate);
  CHECK(none.covered_area == 0);
}
