#include "packdens/density.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "packdens/errors.hpp"

namespace packdens {

namespace {

constexpr long double kPi = std::numbers::pi_v<long double>;

bool near(const Scalar& value, const Scalar& target, const Scalar& tolerance) {
  Scalar diff = value - target;
  return abs(diff) <= tolerance;
}

Scalar from_long_double(long double v) {
  // Exact for every finite double; the tolerances are plain decimals.
  return Scalar(static_cast<double>(v));
}

}  // namespace

long double density_bound() { return kPi / std::sqrt(12.0L); }

TriangleStats triangle_stats(const Triangulation& t, std::size_t i) {
  const Triangle& tri = t.triangles.at(i);
  const Point& a = t.points[tri.v[0]];
  const Point& b = t.points[tri.v[1]];
  const Point& c = t.points[tri.v[2]];
  Scalar twice = twice_signed_area(a, b, c);
  if (sgn(twice) == 0) throw DegenerateTriangle(i);

  TriangleStats s{i, tri, abs(twice) / 2, circumcircle(a, b, c),
                  {distance_squared(b, c), distance_squared(c, a), distance_squared(a, b)},
                  0, 0, false, false};

  // Law of cosines on exact squares: tan C = 4 * area / (a^2 + b^2 - c^2)
  // for the angle C opposite the longest side c.
  const auto& sq = s.side_squared;
  std::size_t k = std::max_element(sq.begin(), sq.end(), [](const Scalar& x, const Scalar& y) {
                    return x < y;
                  }) - sq.begin();
  Scalar cosine_term = sq[(k + 1) % 3] + sq[(k + 2) % 3] - sq[k];
  s.largest_angle = std::atan2(to_long_double(Scalar(4 * s.area)), to_long_double(cosine_term));
  s.density = (kPi / 2) / to_long_double(s.area);

  s.is_equilateral_side2 = sq[0] == 4 && sq[1] == 4 && sq[2] == 4;
  const Scalar tolerance = from_long_double(kEqualityTolerance);
  s.near_equilateral = near(sq[0], 4, tolerance) && near(sq[1], 4, tolerance) &&
                       near(sq[2], 4, tolerance);
  return s;
}

std::vector<TriangleStats> all_stats(const Triangulation& t) {
  std::vector<TriangleStats> out;
  out.reserve(t.triangles.size());
  for (std::size_t i = 0; i < t.triangles.size(); ++i) out.push_back(triangle_stats(t, i));
  return out;
}

std::vector<TriangleStats> interior_stats(const std::vector<TriangleStats>& stats,
                                          const Triangulation& t, const Window& window,
                                          const Scalar& margin) {
  auto deep = [&](const Point& p) {
    return p.x - window.xmin >= margin && window.xmax - p.x >= margin &&
           p.y - window.ymin >= margin && window.ymax - p.y >= margin;
  };
  std::vector<TriangleStats> out;
  for (const auto& s : stats) {
    if (deep(t.points[s.triangle.v[0]]) && deep(t.points[s.triangle.v[1]]) &&
        deep(t.points[s.triangle.v[2]]))
      out.push_back(s);
  }
  return out;
}

CheckResult check_lemma1(const std::vector<TriangleStats>& stats, bool saturated) {
  CheckResult r;
  r.applicable = saturated;
  const long double lower = kPi / 3 - kDensityTolerance;
  for (const auto& s : stats) {
    // The strict upper bound on the angle is decided by R^2 < 4 alone; a float
    // comparison at 2pi/3 would misclassify triangles with R just below 2.
    if (s.circum.radius_squared >= 4)
      r.violations.push_back({s.index, "circumradius_squared " + to_string(s.circum.radius_squared) +
                                           " is not below 4"});
    if (s.largest_angle < lower) r.violations.push_back({s.index, "largest angle below pi/3"});
    if (s.near_equilateral) r.equality.push_back(s.index);
  }
  r.ok = r.violations.empty();
  return r;
}

CheckResult check_lemma2(const std::vector<TriangleStats>& stats) {
  CheckResult r;
  const long double limit = density_bound() + kDensityTolerance;
  for (const auto& s : stats) {
    if (s.density > limit) r.violations.push_back({s.index, "density above pi/sqrt(12)"});
    if (s.area * s.area < 3) r.violations.push_back({s.index, "area below sqrt(3)"});
    if (s.near_equilateral) r.equality.push_back(s.index);
  }
  r.ok = r.violations.empty();
  return r;
}

DensityReport aggregate(const std::vector<TriangleStats>& stats, bool saturated) {
  if (stats.empty()) throw EmptyTriangulation();
  DensityReport r;
  r.triangle_count = stats.size();
  r.bound = density_bound();
  r.min_density = r.max_density = stats[0].density;
  r.max_largest_angle = stats[0].largest_angle;
  r.max_circumradius_squared = stats[0].circum.radius_squared;
  r.min_density_triangle = r.max_density_triangle = stats[0].index;
  r.max_angle_triangle = r.max_circumradius_triangle = stats[0].index;

  long double density_sum = 0, weighted = 0;
  for (const auto& s : stats) {
    r.total_area += s.area;
    density_sum += s.density;
    weighted += to_long_double(s.area) * s.density;
    if (s.density < r.min_density) r.min_density = s.density, r.min_density_triangle = s.index;
    if (s.density > r.max_density) r.max_density = s.density, r.max_density_triangle = s.index;
    if (s.largest_angle > r.max_largest_angle)
      r.max_largest_angle = s.largest_angle, r.max_angle_triangle = s.index;
    if (s.circum.radius_squared > r.max_circumradius_squared) {
      r.max_circumradius_squared = s.circum.radius_squared;
      r.max_circumradius_triangle = s.index;
    }
  }
  const long double total = to_long_double(r.total_area);
  r.mean_density = density_sum / stats.size();
  r.overall_density = (stats.size() * (kPi / 2)) / total;
  const long double weighted_form = weighted / total;
  if (std::fabs(weighted_form - r.overall_density) > kDensityTolerance * r.overall_density)
    throw std::logic_error("weighted density forms disagree");

  r.lemma1 = check_lemma1(stats, saturated);
  r.lemma2 = check_lemma2(stats);
  r.lemma1_ok = r.lemma1.applicable && r.lemma1.ok;
  r.lemma2_ok = r.lemma2.ok;
  r.bound_ok = r.overall_density <= r.bound + kDensityTolerance;
  return r;
}

WedgeEstimate wedge_coverage_check(const Triangulation& t, std::size_t i, std::size_t samples,
                                   std::uint64_t seed) {
  WedgeEstimate e;
  e.samples = samples;
  if (samples == 0) {
    e.degenerate = true;
    return e;
  }
  const Triangle& tri = t.triangles.at(i);
  const Point& a = t.points[tri.v[0]];
  // Work relative to vertex a so large coordinates do not eat precision.
  const long double bx = to_long_double(Scalar(t.points[tri.v[1]].x - a.x));
  const long double by = to_long_double(Scalar(t.points[tri.v[1]].y - a.y));
  const long double cx = to_long_double(Scalar(t.points[tri.v[2]].x - a.x));
  const long double cy = to_long_double(Scalar(t.points[tri.v[2]].y - a.y));
  const long double area = to_long_double(triangle_area(t, i));

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<long double> unit(0.0L, 1.0L);
  std::size_t hits = 0;
  for (std::size_t k = 0; k < samples; ++k) {
    long double u = unit(rng), v = unit(rng);
    if (u + v > 1) u = 1 - u, v = 1 - v;
    const long double x = u * bx + v * cx, y = u * by + v * cy;
    const bool covered = x * x + y * y <= 1 || (x - bx) * (x - bx) + (y - by) * (y - by) <= 1 ||
                         (x - cx) * (x - cx) + (y - cy) * (y - cy) <= 1;
    hits += covered;
  }
  const long double p = static_cast<long double>(hits) / samples;
  e.covered_area = area * p;
  e.standard_error = area * std::sqrt(p * (1 - p) / samples);
  return e;
}

}  // namespace packdens
