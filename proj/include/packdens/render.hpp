#pragma once

#include <optional>
#include <string>

#include "packdens/saturation.hpp"
#include "packdens/triangulation.hpp"

namespace packdens {

struct RenderLayers {
  bool heat = true;
  bool edges = true;
  bool circles = true;
  bool circumcircles = false;
  bool window = true;
};

// Heat color for a density: linear from pi/4 (cold) to pi/sqrt(12) (hot),
// clamped. Returned as "#rrggbb".
std::string heat_color(long double density);

// SVG 1.1 document; deterministic for a given triangulation.
std::string render_svg(const Triangulation& t, const std::optional<Window>& window,
                       const RenderLayers& layers);

}  // namespace packdens
