#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "packdens/density.hpp"
#include "packdens/saturation.hpp"

namespace packdens {

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line(line) {}
  std::size_t line;
};

// Plain text: "x,y" per line, decimal or p/q literals, '#' starts a comment,
// optional header "window xmin ymin xmax ymax".
struct PointFile {
  std::optional<Window> window;
  std::vector<Point> points;
  std::vector<std::size_t> lines;  // source line of each point, 1-based
};

PointFile read_point_file(std::istream& in);

// Points from index `first_inserted` on are tagged as inserted, with the
// clearance recorded in `insertions` when available.
void write_point_file(std::ostream& out, const Configuration& c, const std::string& comment,
                      std::size_t first_inserted = static_cast<std::size_t>(-1),
                      const std::vector<Insertion>& insertions = {});

struct CertificationReport {
  std::size_t n_points = 0;
  std::size_t n_inserted = 0;
  std::size_t n_triangles = 0;
  std::size_t n_analyzed = 0;
  std::string mode;  // "interior" or "all"
  Scalar interior_margin;
  std::optional<Scalar> min_pairwise_distance_squared;
  std::optional<DensityReport> density;
  bool saturated = false;
  bool delaunay_ok = false;
  std::vector<Witness> witnesses;
  std::vector<std::string> violations;
  std::optional<std::string> error;
};

// JSON with a fixed key order. Exact values are rational strings, approximate
// ones 17 significant digits.
void write_report(std::ostream& out, const CertificationReport& report);

}  // namespace packdens
