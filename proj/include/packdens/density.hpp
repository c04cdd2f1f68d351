#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "packdens/saturation.hpp"
#include "packdens/triangulation.hpp"

namespace packdens {

// Tolerance for comparisons that involve pi. Everything algebraic is exact.
inline constexpr long double kDensityTolerance = 1e-12L;
// Squared sides within this of 4 count as the equilateral equality case.
// Rational coordinates never give an exactly equilateral triangle.
inline constexpr long double kEqualityTolerance = 1e-9L;

// pi / sqrt(12), the hexagonal packing density.
long double density_bound();

struct TriangleStats {
  std::size_t index;  // position in Triangulation::triangles
  Triangle triangle;
  Scalar area;
  Circumcircle circum;
  std::array<Scalar, 3> side_squared;  // side opposite triangle.v[k]
  long double largest_angle;
  long double density;  // (pi/2) / area
  bool is_equilateral_side2;
  bool near_equilateral;
};

// Throws DegenerateTriangle on zero area.
TriangleStats triangle_stats(const Triangulation& t, std::size_t i);
std::vector<TriangleStats> all_stats(const Triangulation& t);

// Triangles whose three vertices all lie at least `margin` inside the window.
std::vector<TriangleStats> interior_stats(const std::vector<TriangleStats>& stats,
                                          const Triangulation& t, const Window& window,
                                          const Scalar& margin);

struct Violation {
  std::size_t triangle;
  std::string reason;
};

struct CheckResult {
  bool applicable = true;  // false when the lemma's hypothesis is not met
  bool ok = true;
  std::vector<Violation> violations;
  std::vector<std::size_t> equality;  // triangles in the equality case
};

// Largest angle at least pi/3 - tol, and R^2 < 4 exactly, which stands in for
// the strict angle bound 2pi/3.
// Without saturation the lemma does not apply; violations are still listed.
CheckResult check_lemma1(const std::vector<TriangleStats>& stats, bool saturated);
// density <= pi/sqrt(12) + tol and area^2 >= 3 exactly.
CheckResult check_lemma2(const std::vector<TriangleStats>& stats);

struct DensityReport {
  std::size_t triangle_count = 0;
  long double min_density = 0, max_density = 0, mean_density = 0;
  long double max_largest_angle = 0;
  Scalar max_circumradius_squared;
  Scalar total_area;
  long double overall_density = 0;
  long double bound = 0;
  bool lemma1_ok = false, lemma2_ok = false, bound_ok = false;
  std::size_t min_density_triangle = 0, max_density_triangle = 0;
  std::size_t max_angle_triangle = 0, max_circumradius_triangle = 0;
  CheckResult lemma1, lemma2;
};

// Weighted-average density of the given triangles. Throws EmptyTriangulation.
DensityReport aggregate(const std::vector<TriangleStats>& stats, bool saturated = true);

struct WedgeEstimate {
  long double covered_area = 0;
  long double standard_error = 0;
  std::size_t samples = 0;
  bool degenerate = false;  // no samples drawn
};

// Monte Carlo estimate of the triangle area covered by the unit disks at its
// vertices. Tends to pi/2 when all sides are >= 2 and R < 2.
WedgeEstimate wedge_coverage_check(const Triangulation& t, std::size_t i, std::size_t samples,
                                   std::uint64_t seed);

}  // namespace packdens
