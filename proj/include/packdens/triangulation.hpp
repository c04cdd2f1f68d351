#pragma once

#include <array>
#include <cstddef>
#include <limits>
#include <vector>

#include "packdens/geometry.hpp"

namespace packdens {

inline constexpr std::size_t kNoNeighbor = std::numeric_limits<std::size_t>::max();

// Vertex indices into Triangulation::points, counterclockwise.
struct Triangle {
  std::array<std::size_t, 3> v;

  friend bool operator==(const Triangle&, const Triangle&) = default;
};

struct Triangulation {
  std::vector<Point> points;
  std::vector<Triangle> triangles;
  // neighbors[t][k] is the triangle across the edge opposite triangles[t].v[k],
  // or kNoNeighbor on the convex hull.
  std::vector<std::array<std::size_t, 3>> neighbors;
};

// Incremental Bowyer-Watson construction over exact predicates.
//
// The hull is closed with ghost triangles sharing a symbolic vertex at
// infinity, so no artificial coordinates ever enter the mesh. Cocircular ties
// are broken by symbolically lowering each lifted point by an infinitesimal
// that is larger for smaller indices; the result is the unique Delaunay
// triangulation of the perturbed set, so it does not depend on insertion
// order, and in a cocircular quadrilateral the diagonal through the lowest
// indexed vertex wins.
class DelaunayBuilder {
 public:
  // Throws TooFewPoints, DuplicatePoint or AllCollinear.
  explicit DelaunayBuilder(std::vector<Point> points);

  // Appends p and returns its index. Throws DuplicatePoint.
  std::size_t insert(Point p);

  const std::vector<Point>& points() const { return points_; }
  Triangulation triangulation() const;

 private:
  struct Face {
    std::array<int, 3> v;  // kGhost marks the vertex at infinity (always v[2])
    std::array<int, 3> n;
  };

  void add_vertex(int p);
  int locate(int p);
  bool conflicts(int face, int p);
  bool in_circle_perturbed(int a, int b, int c, int d);
  Sign orient(int a, int b, int c) const;
  int new_face();

  std::vector<Point> points_;
  std::vector<detail::ApproxPoint> approx_;
  std::vector<Face> faces_;
  std::vector<char> alive_;
  std::vector<int> free_faces_;
  std::vector<unsigned> mark_;
  unsigned epoch_ = 0;
  int last_ = 0;
};

// Throws TooFewPoints, DuplicatePoint or AllCollinear.
Triangulation delaunay(std::vector<Point> points);

struct VerificationResult {
  bool passed = true;
  std::size_t triangle = 0;
  std::size_t point = 0;

  static VerificationResult pass() { return {}; }
  static VerificationResult fail(std::size_t t, std::size_t p) { return {false, t, p}; }
};

// Throws StructureError unless t is a consistently oriented, edge-adjacent
// triangulation of the convex hull of its points using every point.
void check_structure(const Triangulation& t);

// Brute-force empty-circumcircle check of every (triangle, point) pair. The
// witness is the lowest failing triangle index, then the lowest point index.
// Runs check_structure first.
VerificationResult verify_delaunay(const Triangulation& t);

Scalar triangle_area(const Triangulation& t, std::size_t i);

// Exact sum of triangle areas.
Scalar convex_hull_area(const Triangulation& t);

// Vertices of the hull boundary in counterclockwise order, including points
// lying in the interior of hull edges.
std::vector<std::size_t> hull_vertices(const Triangulation& t);

// Worker threads for brute-force passes: PACKDENS_THREADS if set, otherwise
// the hardware concurrency.
unsigned worker_threads();

}  // namespace packdens
