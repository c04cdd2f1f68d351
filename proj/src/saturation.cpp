#include "packdens/saturation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <stdexcept>

namespace packdens {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Approx2 {
  double x;
  double y;
};

Approx2 approx(const Point& p) { return {p.x.get_d(), p.y.get_d()}; }

double approx_d2(Approx2 a, Approx2 b) {
  double dx = a.x - b.x, dy = a.y - b.y;
  return dx * dx + dy * dy;
}

enum class Side { XMin, XMax, YMin, YMax };
constexpr Side kSides[] = {Side::XMin, Side::XMax, Side::YMin, Side::YMax};

enum class CandidateKind { Circumcenter, Bisector, Corner };

struct Candidate {
  CandidateKind kind;
  std::array<std::size_t, 3> refs;
  Side side;
  Approx2 where;
  double bound;      // upper bound on the clearance (squared), or kInf
  bool uncertain;    // double image unreliable; always evaluate exactly
};

// Working state for one witness search.
class WitnessSearch {
 public:
  WitnessSearch(const std::vector<Point>& points, const Window& window)
      : points_(points), window_(window) {
    approx_.reserve(points.size());
    for (const Point& p : points) approx_.push_back(approx(p));
    wx0_ = window.xmin.get_d();
    wx1_ = window.xmax.get_d();
    wy0_ = window.ymin.get_d();
    wy1_ = window.ymax.get_d();
    double diam2 = (wx1_ - wx0_) * (wx1_ - wx0_) + (wy1_ - wy0_) * (wy1_ - wy0_);
    double mag = std::max({std::fabs(wx0_), std::fabs(wx1_), std::fabs(wy0_), std::fabs(wy1_), 1.0});
    slack_ = 1e-7 * std::max(1.0, diam2) + 1e-12 * mag * mag;
    position_slack_ = 1e-9 * mag;
  }

  void add_circumcenter(std::size_t a, std::size_t b, std::size_t c) {
    Approx2 pa = approx_[a], pb = approx_[b], pc = approx_[c];
    double bx = pb.x - pa.x, by = pb.y - pa.y, cx = pc.x - pa.x, cy = pc.y - pa.y;
    double d = 2.0 * (bx * cy - by * cx);
    double b2 = bx * bx + by * by, c2 = cx * cx + cy * cy;
    double ux = (cy * b2 - by * c2) / d, uy = (bx * c2 - cx * b2) / d;
    double scale = (b2 + c2) * (std::fabs(bx) + std::fabs(by) + std::fabs(cx) + std::fabs(cy));
    bool uncertain = !std::isfinite(ux) || !std::isfinite(uy) ||
                     1e-13 * scale > 1e-9 * std::fabs(d);
    Candidate cand{CandidateKind::Circumcenter, {a, b, c}, Side::XMin,
                   {pa.x + ux, pa.y + uy}, ux * ux + uy * uy, uncertain};
    push(cand);
  }

  void add_bisector(std::size_t p, std::size_t q) {
    Approx2 a = approx_[p], b = approx_[q];
    double rhs = (b.x * b.x + b.y * b.y) - (a.x * a.x + a.y * a.y);
    double mag = std::max({std::fabs(a.x), std::fabs(a.y), std::fabs(b.x), std::fabs(b.y), 1.0});
    for (Side side : kSides) {
      const bool vertical = side == Side::XMin || side == Side::XMax;
      double fixed = side == Side::XMin ? wx0_ : side == Side::XMax ? wx1_ : side == Side::YMin ? wy0_ : wy1_;
      double den = vertical ? 2.0 * (b.y - a.y) : 2.0 * (b.x - a.x);
      if (den == 0.0 && (vertical ? points_[p].y == points_[q].y : points_[p].x == points_[q].x))
        continue;  // bisector parallel to this side
      double free = vertical ? (rhs - 2.0 * fixed * (b.x - a.x)) / den
                             : (rhs - 2.0 * fixed * (b.y - a.y)) / den;
      Approx2 where = vertical ? Approx2{fixed, free} : Approx2{free, fixed};
      bool uncertain = !std::isfinite(free) || std::fabs(den) < 1e-6 * mag;
      Candidate cand{CandidateKind::Bisector, {p, q, 0}, side, where, approx_d2(where, a), uncertain};
      push(cand);
    }
  }

  void add_corners() {
    for (Side side : {Side::XMin, Side::XMax})
      for (Side other : {Side::YMin, Side::YMax}) {
        Approx2 where{side == Side::XMin ? wx0_ : wx1_, other == Side::YMin ? wy0_ : wy1_};
        Candidate cand{CandidateKind::Corner, {0, 0, 0}, other, where, kInf, false};
        cand.refs[0] = side == Side::XMin ? 0 : 1;
        push(cand);
      }
  }

  std::optional<Witness> best() {
    const double threshold = 4.0 - slack_;
    struct Evaluated {
      Point location;
      double clearance;
    };
    std::vector<Evaluated> live;
    double top = -kInf;
    for (const Candidate& cand : survivors_) {
      std::optional<Point> exact = construct(cand);
      if (!exact || !contains(window_, *exact)) continue;
      Approx2 where = approx(*exact);
      double c = kInf;
      for (Approx2 q : approx_) c = std::min(c, approx_d2(where, q));
      if (c < threshold) continue;
      top = std::max(top, c);
      live.push_back({std::move(*exact), c});
    }
    std::optional<Witness> winner;
    for (Evaluated& e : live) {
      if (e.clearance < top - slack_) continue;
      Scalar clearance = exact_clearance(e.location);
      if (clearance < 4) continue;
      if (!winner || clearance > *winner->clearance_squared ||
          (clearance == *winner->clearance_squared && lex_less(e.location, winner->location)))
        winner = Witness{std::move(e.location), std::move(clearance)};
    }
    return winner;
  }

  Scalar exact_clearance(const Point& p) const {
    Approx2 where = approx(p);
    std::vector<double> d2(points_.size());
    double nearest = kInf;
    for (std::size_t i = 0; i < points_.size(); ++i) {
      d2[i] = approx_d2(where, approx_[i]);
      nearest = std::min(nearest, d2[i]);
    }
    std::optional<Scalar> best;
    for (std::size_t i = 0; i < points_.size(); ++i) {
      if (d2[i] > nearest + slack_ + 1e-9 * nearest) continue;
      Scalar d = distance_squared(points_[i], p);
      if (!best || d < *best) best = std::move(d);
    }
    return *best;
  }

 private:
  void push(const Candidate& cand) {
    if (!cand.uncertain) {
      if (cand.bound < 4.0 - slack_) return;
      if (cand.where.x < wx0_ - position_slack_ || cand.where.x > wx1_ + position_slack_ ||
          cand.where.y < wy0_ - position_slack_ || cand.where.y > wy1_ + position_slack_)
        return;
    }
    survivors_.push_back(cand);
  }

  const Scalar& side_value(Side side) const {
    switch (side) {
      case Side::XMin: return window_.xmin;
      case Side::XMax: return window_.xmax;
      case Side::YMin: return window_.ymin;
      default: return window_.ymax;
    }
  }

  std::optional<Point> construct(const Candidate& cand) const {
    switch (cand.kind) {
      case CandidateKind::Circumcenter: {
        const Point &a = points_[cand.refs[0]], &b = points_[cand.refs[1]],
                    &c = points_[cand.refs[2]];
        if (orient2d(a, b, c) == Sign::Zero) return std::nullopt;
        return circumcircle(a, b, c).center;
      }
      case CandidateKind::Bisector: {
        const Point &p = points_[cand.refs[0]], &q = points_[cand.refs[1]];
        Scalar rhs = (q.x * q.x + q.y * q.y) - (p.x * p.x + p.y * p.y);
        const Scalar& fixed = side_value(cand.side);
        if (cand.side == Side::XMin || cand.side == Side::XMax) {
          Scalar den = 2 * (q.y - p.y);
          if (den == 0) return std::nullopt;
          return Point{fixed, (rhs - 2 * fixed * (q.x - p.x)) / den};
        }
        Scalar den = 2 * (q.x - p.x);
        if (den == 0) return std::nullopt;
        return Point{(rhs - 2 * fixed * (q.y - p.y)) / den, fixed};
      }
      default:
        return Point{cand.refs[0] == 0 ? window_.xmin : window_.xmax, side_value(cand.side)};
    }
  }

  const std::vector<Point>& points_;
  const Window& window_;
  std::vector<Approx2> approx_;
  std::vector<Candidate> survivors_;
  double wx0_, wx1_, wy0_, wy1_;
  double slack_;
  double position_slack_;
};

bool all_collinear(const std::vector<Point>& points) {
  for (std::size_t k = 2; k < points.size(); ++k)
    if (orient2d(points[0], points[1], points[k]) != Sign::Zero) return false;
  return true;
}

std::optional<Witness> search(const std::vector<Point>& points, const Window& window,
                              const Triangulation* delaunay) {
  if (points.empty()) return Witness{Point{window.xmin, window.ymin}, std::nullopt};
  WitnessSearch ws(points, window);
  ws.add_corners();
  if (delaunay) {
    for (std::size_t i = 0; i < delaunay->triangles.size(); ++i) {
      const auto& v = delaunay->triangles[i].v;
      ws.add_circumcenter(v[0], v[1], v[2]);
      for (int k = 0; k < 3; ++k) {
        // Each interior edge once; hull edges have no twin.
        const std::size_t nb = delaunay->neighbors[i][k];
        if (nb == kNoNeighbor || nb > i) ws.add_bisector(v[(k + 1) % 3], v[(k + 2) % 3]);
      }
    }
  } else {
    std::vector<std::size_t> order(points.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return lex_less(points[a], points[b]); });
    for (std::size_t k = 1; k < order.size(); ++k) ws.add_bisector(order[k - 1], order[k]);
  }
  return ws.best();
}

std::optional<Witness> search(const std::vector<Point>& points, const Window& window) {
  if (points.size() >= 3 && !all_collinear(points)) {
    Triangulation t = delaunay(points);
    return search(points, window, &t);
  }
  return search(points, window, nullptr);
}

// Close pairs by an x-sorted sweep with a double prefilter; exact on survivors.
template <typename Visit>
void for_each_close_pair(const std::vector<Point>& points, double radius2, Visit visit) {
  const std::size_t n = points.size();
  std::vector<Approx2> a(n);
  double mag = 1.0;
  for (std::size_t i = 0; i < n; ++i) {
    a[i] = approx(points[i]);
    mag = std::max({mag, std::fabs(a[i].x), std::fabs(a[i].y)});
  }
  const double slack = 1e-6 + 1e-12 * mag * mag;
  const double reach = std::sqrt(radius2 + slack) + 1e-9 * mag;
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
    return a[i].x < a[j].x || (a[i].x == a[j].x && i < j);
  });
  for (std::size_t s = 0; s < n; ++s) {
    const std::size_t i = order[s];
    for (std::size_t t = s + 1; t < n; ++t) {
      const std::size_t j = order[t];
      if (a[j].x - a[i].x > reach) break;
      if (approx_d2(a[i], a[j]) <= radius2 + slack) visit(std::min(i, j), std::max(i, j));
    }
  }
}

}  // namespace

Window make_window(Scalar xmin, Scalar ymin, Scalar xmax, Scalar ymax) {
  if (xmax - xmin < 4 || ymax - ymin < 4)
    throw InvalidWindow("window sides must be at least 4 long");
  return Window{std::move(xmin), std::move(ymin), std::move(xmax), std::move(ymax)};
}

bool contains(const Window& w, const Point& p) {
  return p.x >= w.xmin && p.x <= w.xmax && p.y >= w.ymin && p.y <= w.ymax;
}

Configuration validate(std::vector<Point> points, Window window) {
  if (window.xmax < window.xmin || window.ymax < window.ymin)
    throw InvalidWindow("window is inverted");
  for (std::size_t i = 0; i < points.size(); ++i)
    if (!contains(window, points[i])) throw OutOfWindow(i);
  std::optional<std::pair<std::size_t, std::size_t>> worst;
  std::optional<Scalar> worst_d2;
  for_each_close_pair(points, 4.0, [&](std::size_t i, std::size_t j) {
    Scalar d2 = distance_squared(points[i], points[j]);
    if (d2 >= 4) return;
    if (!worst || std::make_pair(i, j) < *worst) {
      worst = std::make_pair(i, j);
      worst_d2 = d2;
    }
  });
  if (worst) throw PairTooClose(worst->first, worst->second, *worst_d2);
  return Configuration{std::move(points), std::move(window)};
}

Scalar clearance_squared(const std::vector<Point>& points, const Point& p) {
  if (points.empty()) throw std::invalid_argument("clearance of an empty point set");
  Scalar best = distance_squared(points[0], p);
  for (std::size_t i = 1; i < points.size(); ++i) {
    Scalar d = distance_squared(points[i], p);
    if (d < best) best = std::move(d);
  }
  return best;
}

std::optional<Scalar> min_pairwise_distance_squared(const std::vector<Point>& points) {
  if (points.size() < 2) return std::nullopt;
  // The nearest pair is within the nearest approximate pair distance.
  double nearest = std::numeric_limits<double>::infinity();
  std::vector<Approx2> a;
  for (const Point& p : points) a.push_back(approx(p));
  std::vector<std::size_t> order(points.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) { return a[i].x < a[j].x; });
  for (std::size_t s = 0; s < order.size(); ++s)
    for (std::size_t t = s + 1; t < order.size(); ++t) {
      double dx = a[order[t]].x - a[order[s]].x;
      if (dx * dx > nearest) break;
      nearest = std::min(nearest, approx_d2(a[order[s]], a[order[t]]));
    }
  std::optional<Scalar> best;
  for_each_close_pair(points, nearest, [&](std::size_t i, std::size_t j) {
    Scalar d = distance_squared(points[i], points[j]);
    if (!best || d < *best) best = std::move(d);
  });
  return best;
}

std::optional<Witness> find_witness(const Configuration& c) { return search(c.points, c.window); }

std::optional<Witness> find_witness(const Configuration& c, const Triangulation& delaunay) {
  return search(c.points, c.window, &delaunay);
}

bool is_saturated(const Configuration& c) { return !find_witness(c).has_value(); }

SaturationResult saturate_logged(const Configuration& c) {
  SaturationResult result{c, {}};
  std::vector<Point>& points = result.configuration.points;
  const Window& window = c.window;
  const double width = Scalar(window.xmax - window.xmin).get_d();
  const double height = Scalar(window.ymax - window.ymin).get_d();
  // Every point owns an interior-disjoint unit disk inside the window grown by 1.
  const double cap = (width + 2.0) * (height + 2.0) / std::numbers::pi + 1.0;

  std::optional<DelaunayBuilder> builder;
  while (true) {
    if (!builder && points.size() >= 3 && !all_collinear(points)) builder.emplace(points);
    std::optional<Witness> w;
    if (builder) {
      Triangulation t = builder->triangulation();
      w = search(points, window, &t);
    } else {
      w = search(points, window, nullptr);
    }
    if (!w) break;
    if (w->clearance_squared && *w->clearance_squared < 4)
      throw std::logic_error("witness closer than 2 to an existing point");
    points.push_back(w->location);
    if (builder) builder->insert(w->location);
    result.insertions.push_back(Insertion{std::move(*w)});
    if (static_cast<double>(points.size()) > cap)
      throw std::logic_error("saturation exceeded the disk-packing bound");
  }
  return result;
}

Configuration saturate(const Configuration& c) { return saturate_logged(c).configuration; }

}  // namespace packdens
