#pragma once

#include <optional>
#include <vector>

#include "packdens/geometry.hpp"
#include "packdens/triangulation.hpp"

namespace packdens {

// Closed axis-aligned rectangle. Windows built by make_window have sides of
// at least 4; validate() itself only rejects inverted windows.
struct Window {
  Scalar xmin;
  Scalar ymin;
  Scalar xmax;
  Scalar ymax;

  friend bool operator==(const Window&, const Window&) = default;
};

// Throws InvalidWindow when a side is shorter than 4.
Window make_window(Scalar xmin, Scalar ymin, Scalar xmax, Scalar ymax);

bool contains(const Window& w, const Point& p);

// Points inside the window, pairwise at distance >= 2.
struct Configuration {
  std::vector<Point> points;
  Window window;
};

// A free spot: a window point at distance >= 2 from every configuration point.
struct Witness {
  Point location;
  // Squared distance to the nearest configuration point; empty when the
  // configuration has no points at all.
  std::optional<Scalar> clearance_squared;
};

// Throws InvalidWindow (inverted), OutOfWindow (first offending index) or
// PairTooClose (lexicographically smallest offending pair).
Configuration validate(std::vector<Point> points, Window window);

// Exact squared distance from p to the nearest point of `points`.
Scalar clearance_squared(const std::vector<Point>& points, const Point& p);

// Exact minimum over all pairs; empty for fewer than two points.
std::optional<Scalar> min_pairwise_distance_squared(const std::vector<Point>& points);

// The maximum-clearance point of the window when that clearance is >= 4,
// ties broken by the lexicographically smallest location; nullopt when the
// configuration is window-saturated.
//
// The maximum of the nearest-site distance over a convex region is attained
// at a Voronoi vertex inside it, where a Voronoi edge crosses the boundary,
// or at a corner. Voronoi vertices are Delaunay circumcenters and Voronoi
// edges lie on bisectors of Delaunay edges, so those three candidate families
// are enumerated exactly. With fewer than three points, or all points on one
// line, the Voronoi diagram is a family of parallel strips and the bisectors
// of consecutive points replace the Delaunay edges.
std::optional<Witness> find_witness(const Configuration& c);

// Same, reusing a Delaunay triangulation of c.points.
std::optional<Witness> find_witness(const Configuration& c, const Triangulation& delaunay);

bool is_saturated(const Configuration& c);

struct Insertion {
  Witness witness;  // clearance measured against the points present before insertion
};

struct SaturationResult {
  Configuration configuration;  // original points first, insertions appended
  std::vector<Insertion> insertions;
};

// Greedy saturation: repeatedly insert the maximum-clearance witness, exactly,
// until none remains. Throws std::logic_error if the disk-packing bound on the
// point count is ever exceeded.
SaturationResult saturate_logged(const Configuration& c);

Configuration saturate(const Configuration& c);

}  // namespace packdens
