#include "packdens/render.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <set>
#include <sstream>

#include "packdens/density.hpp"

namespace packdens {

namespace {

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  std::string s = buf;
  s.erase(s.find_last_not_of('0') + 1);
  if (s.back() == '.') s.pop_back();
  return s == "-0" ? "0" : s;
}

}  // namespace

std::string heat_color(long double density) {
  const long double cold = std::numbers::pi_v<long double> / 4;
  long double f = (density - cold) / (density_bound() - cold);
  f = std::clamp(f, 0.0L, 1.0L);
  // Blue to red.
  const int r = static_cast<int>(std::lround(59 + f * (180 - 59)));
  const int g = static_cast<int>(std::lround(76 + f * (4 - 76)));
  const int b = static_cast<int>(std::lround(192 + f * (38 - 192)));
  char buf[8];
  std::snprintf(buf, sizeof buf, "#%02x%02x%02x", r, g, b);
  return buf;
}

std::string render_svg(const Triangulation& t, const std::optional<Window>& window,
                       const RenderLayers& layers) {
  double x0, y0, x1, y1;
  if (window) {
    x0 = window->xmin.get_d(), y0 = window->ymin.get_d();
    x1 = window->xmax.get_d(), y1 = window->ymax.get_d();
  } else {
    x0 = y0 = 1e300, x1 = y1 = -1e300;
    for (const Point& p : t.points) {
      x0 = std::min(x0, p.x.get_d()), x1 = std::max(x1, p.x.get_d());
      y0 = std::min(y0, p.y.get_d()), y1 = std::max(y1, p.y.get_d());
    }
  }
  x0 -= 1, y0 -= 1, x1 += 1, y1 += 1;
  const double scale = 20;
  auto sx = [&](const Scalar& x) { return fmt((x.get_d() - x0) * scale); };
  auto sy = [&](const Scalar& y) { return fmt((y1 - y.get_d()) * scale); };

  std::ostringstream svg;
  svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << fmt((x1 - x0) * scale)
      << "\" height=\"" << fmt((y1 - y0) * scale) << "\">\n";

  if (layers.heat) {
    svg << "<g id=\"heat\" stroke=\"none\">\n";
    for (std::size_t i = 0; i < t.triangles.size(); ++i) {
      const auto s = triangle_stats(t, i);
      svg << "<polygon points=\"";
      for (int k = 0; k < 3; ++k) {
        const Point& p = t.points[s.triangle.v[k]];
        svg << (k ? " " : "") << sx(p.x) << ',' << sy(p.y);
      }
      svg << "\" fill=\"" << heat_color(s.density) << "\"/>\n";
    }
    svg << "</g>\n";
  }
  if (layers.edges) {
    std::set<std::pair<std::size_t, std::size_t>> edges;
    for (const auto& tri : t.triangles)
      for (int k = 0; k < 3; ++k) {
        auto [a, b] = std::minmax(tri.v[k], tri.v[(k + 1) % 3]);
        edges.emplace(a, b);
      }
    svg << "<g id=\"edges\" stroke=\"black\" stroke-width=\"1\">\n";
    for (auto [a, b] : edges)
      svg << "<line x1=\"" << sx(t.points[a].x) << "\" y1=\"" << sy(t.points[a].y) << "\" x2=\""
          << sx(t.points[b].x) << "\" y2=\"" << sy(t.points[b].y) << "\"/>\n";
    svg << "</g>\n";
  }
  if (layers.circles) {
    svg << "<g id=\"circles\" fill=\"none\" stroke=\"#333333\" stroke-width=\"1\">\n";
    for (const Point& p : t.points)
      svg << "<circle cx=\"" << sx(p.x) << "\" cy=\"" << sy(p.y) << "\" r=\"" << fmt(scale) << "\"/>\n";
    svg << "</g>\n";
  }
  if (layers.circumcircles) {
    svg << "<g id=\"circumcircles\" fill=\"none\" stroke=\"#888888\" stroke-dasharray=\"4 3\">\n";
    for (const auto& tri : t.triangles) {
      auto c = circumcircle(t.points[tri.v[0]], t.points[tri.v[1]], t.points[tri.v[2]]);
      svg << "<circle cx=\"" << sx(c.center.x) << "\" cy=\"" << sy(c.center.y) << "\" r=\""
          << fmt(std::sqrt(c.radius_squared.get_d()) * scale) << "\"/>\n";
    }
    svg << "</g>\n";
  }
  if (layers.window && window) {
    svg << "<g id=\"window\" fill=\"none\" stroke=\"green\" stroke-width=\"2\">\n"
        << "<rect x=\"" << sx(window->xmin) << "\" y=\"" << sy(window->ymax) << "\" width=\""
        << fmt(Scalar(window->xmax - window->xmin).get_d() * scale) << "\" height=\""
        << fmt(Scalar(window->ymax - window->ymin).get_d() * scale) << "\"/>\n</g>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace packdens
