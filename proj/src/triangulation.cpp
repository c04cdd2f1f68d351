#include "packdens/triangulation.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <numeric>
#include <string>
#include <thread>

namespace packdens {
namespace {

constexpr int kGhost = -1;

int next(int k) { return k == 2 ? 0 : k + 1; }
int prev(int k) { return k == 0 ? 2 : k - 1; }

// Strictly between a and b, given p collinear with them.
bool strictly_between(const Point& a, const Point& b, const Point& p) {
  Scalar t1 = (p.x - a.x) * (b.x - a.x) + (p.y - a.y) * (b.y - a.y);
  Scalar t2 = (p.x - b.x) * (a.x - b.x) + (p.y - b.y) * (a.y - b.y);
  return sgn(t1) > 0 && sgn(t2) > 0;
}

void reject_duplicates(const std::vector<Point>& points) {
  std::vector<std::size_t> order(points.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
    if (points[i] == points[j]) return i < j;
    return lex_less(points[i], points[j]);
  });
  for (std::size_t k = 1; k < order.size(); ++k)
    if (points[order[k - 1]] == points[order[k]])
      throw DuplicatePoint(std::min(order[k - 1], order[k]), std::max(order[k - 1], order[k]));
}

}  // namespace

DelaunayBuilder::DelaunayBuilder(std::vector<Point> points) : points_(std::move(points)) {
  const int n = static_cast<int>(points_.size());
  if (n < 3) throw TooFewPoints(points_.size());
  reject_duplicates(points_);
  approx_.reserve(points_.size());
  for (const Point& p : points_) approx_.push_back(detail::approximate(p));

  int third = -1;
  for (int k = 2; k < n; ++k) {
    if (orient(0, 1, k) != Sign::Zero) {
      third = k;
      break;
    }
  }
  if (third < 0) throw AllCollinear();

  int a = 0, b = 1, c = third;
  if (orient(a, b, c) == Sign::Negative) std::swap(a, b);
  // One real face and three ghosts, wired by shared directed edges.
  faces_ = {Face{{a, b, c}, {-1, -1, -1}}, Face{{c, b, kGhost}, {-1, -1, -1}},
            Face{{a, c, kGhost}, {-1, -1, -1}}, Face{{b, a, kGhost}, {-1, -1, -1}}};
  alive_.assign(4, 1);
  std::map<std::pair<int, int>, std::pair<int, int>> edges;
  for (int f = 0; f < 4; ++f)
    for (int k = 0; k < 3; ++k)
      edges[{faces_[f].v[next(k)], faces_[f].v[prev(k)]}] = {f, k};
  for (int f = 0; f < 4; ++f)
    for (int k = 0; k < 3; ++k)
      faces_[f].n[k] = edges.at({faces_[f].v[prev(k)], faces_[f].v[next(k)]}).first;
  last_ = 0;

  for (int p = 2; p < n; ++p)
    if (p != third) add_vertex(p);
}

Sign DelaunayBuilder::orient(int a, int b, int c) const {
  return detail::orient2d(approx_[a], approx_[b], approx_[c], points_[a], points_[b],
                          points_[c]);
}

bool DelaunayBuilder::in_circle_perturbed(int a, int b, int c, int d) {
  Sign s = detail::incircle_det(approx_[a], approx_[b], approx_[c], approx_[d], points_[a],
                                points_[b], points_[c], points_[d]);
  if (s != Sign::Zero) return s == Sign::Positive;
  // Cocircular: the lowest index whose symbolic height shift has a nonzero
  // coefficient decides. Lowering the query point pushes it inside; lowering
  // a triangle vertex tilts the circle by the orientation of the other three.
  std::array<std::pair<int, int>, 4> order{{{a, 0}, {b, 1}, {c, 2}, {d, 3}}};
  std::sort(order.begin(), order.end());
  for (auto [index, role] : order) {
    Sign coef;
    switch (role) {
      case 0: coef = -orient(d, b, c); break;
      case 1: coef = -orient(d, c, a); break;
      case 2: coef = -orient(d, a, b); break;
      default: coef = orient(a, b, c); break;
    }
    if (coef != Sign::Zero) return coef == Sign::Positive;
  }
  return false;
}

bool DelaunayBuilder::conflicts(int face, int p) {
  const Face& f = faces_[face];
  if (f.v[2] == kGhost) {
    Sign s = orient(f.v[0], f.v[1], p);
    if (s == Sign::Positive) return true;
    return s == Sign::Zero && strictly_between(points_[f.v[0]], points_[f.v[1]], points_[p]);
  }
  return in_circle_perturbed(f.v[0], f.v[1], f.v[2], p);
}

int DelaunayBuilder::locate(int p) {
  int f = last_;
  if (!alive_[f]) f = 0;
  while (!alive_[f]) ++f;
  if (faces_[f].v[2] == kGhost) f = faces_[f].n[2];

  const std::size_t cap = 4 * faces_.size() + 16;
  int rotation = 0;
  for (std::size_t step = 0; step < cap; ++step) {
    const Face& face = faces_[f];
    int moved = -1;
    for (int i = 0; i < 3; ++i) {
      int k = (i + rotation) % 3;
      if (orient(face.v[next(k)], face.v[prev(k)], p) == Sign::Negative) {
        moved = face.n[k];
        break;
      }
    }
    rotation = (rotation + 1) % 3;
    if (moved < 0) {
      for (int v : face.v)
        if (points_[v] == points_[p])
          throw DuplicatePoint(static_cast<std::size_t>(v), static_cast<std::size_t>(p));
      return f;
    }
    f = moved;
    if (faces_[f].v[2] == kGhost) return f;
  }

  // The walk is guaranteed to finish on a Delaunay mesh; scan as a fallback.
  for (int q = 0; q < p; ++q)
    if (points_[q] == points_[p])
      throw DuplicatePoint(static_cast<std::size_t>(q), static_cast<std::size_t>(p));
  for (int g = 0; g < static_cast<int>(faces_.size()); ++g)
    if (alive_[g] && conflicts(g, p)) return g;
  throw GeometryError("point location failed");
}

int DelaunayBuilder::new_face() {
  if (!free_faces_.empty()) {
    int f = free_faces_.back();
    free_faces_.pop_back();
    alive_[f] = 1;
    return f;
  }
  faces_.push_back(Face{});
  alive_.push_back(1);
  return static_cast<int>(faces_.size()) - 1;
}

void DelaunayBuilder::add_vertex(int p) {
  const int seed = locate(p);
  if (mark_.size() < faces_.size()) mark_.resize(faces_.size() * 2, 0);
  if (++epoch_ == 0) {
    std::fill(mark_.begin(), mark_.end(), 0);
    epoch_ = 1;
  }
  // mark_[f] == epoch_ flags faces in conflict with p.
  std::vector<int> cavity{seed};
  mark_[seed] = epoch_;
  struct Rim {
    int a, b, outer;
  };
  std::vector<Rim> rim;
  for (std::size_t i = 0; i < cavity.size(); ++i) {
    const int f = cavity[i];
    for (int k = 0; k < 3; ++k) {
      const int nb = faces_[f].n[k];
      bool inside = mark_[nb] == epoch_;
      if (!inside && conflicts(nb, p)) {
        mark_[nb] = epoch_;
        cavity.push_back(nb);
        inside = true;
      }
      if (!inside) rim.push_back({faces_[f].v[next(k)], faces_[f].v[prev(k)], nb});
    }
  }

  for (int f : cavity) {
    alive_[f] = 0;
    free_faces_.push_back(f);
  }
  std::vector<int> ids(rim.size());
  for (int& id : ids) id = new_face();
  if (mark_.size() < faces_.size()) mark_.resize(faces_.size() * 2, 0);

  auto find_by = [&](auto pred) {
    for (std::size_t j = 0; j < rim.size(); ++j)
      if (pred(rim[j])) return ids[j];
    throw GeometryError("cavity boundary is not a closed loop");
  };
  for (std::size_t j = 0; j < rim.size(); ++j) {
    const Rim& r = rim[j];
    std::array<int, 3> v{r.a, r.b, p};
    std::array<int, 3> n{find_by([&](const Rim& o) { return o.a == r.b; }),
                         find_by([&](const Rim& o) { return o.b == r.a; }), r.outer};
    int rot = 0;
    if (v[0] == kGhost) rot = 1;
    if (v[1] == kGhost) rot = 2;
    Face& face = faces_[ids[j]];
    for (int i = 0; i < 3; ++i) {
      face.v[i] = v[(i + rot) % 3];
      face.n[i] = n[(i + rot) % 3];
    }
    Face& outer = faces_[r.outer];
    for (int i = 0; i < 3; ++i)
      if (outer.v[i] != r.a && outer.v[i] != r.b) outer.n[i] = ids[j];
    if (face.v[2] != kGhost) last_ = ids[j];
    mark_[ids[j]] = 0;
  }
}

std::size_t DelaunayBuilder::insert(Point p) {
  points_.push_back(std::move(p));
  approx_.push_back(detail::approximate(points_.back()));
  const int index = static_cast<int>(points_.size()) - 1;
  try {
    add_vertex(index);
  } catch (...) {
    points_.pop_back();
    approx_.pop_back();
    throw;
  }
  return static_cast<std::size_t>(index);
}

Triangulation DelaunayBuilder::triangulation() const {
  Triangulation t;
  t.points = points_;
  std::vector<std::size_t> remap(faces_.size(), kNoNeighbor);
  for (std::size_t f = 0; f < faces_.size(); ++f) {
    if (!alive_[f] || faces_[f].v[2] == kGhost) continue;
    remap[f] = t.triangles.size();
    const auto& v = faces_[f].v;
    t.triangles.push_back(Triangle{{static_cast<std::size_t>(v[0]), static_cast<std::size_t>(v[1]),
                                    static_cast<std::size_t>(v[2])}});
  }
  t.neighbors.reserve(t.triangles.size());
  for (std::size_t f = 0; f < faces_.size(); ++f) {
    if (remap[f] == kNoNeighbor) continue;
    std::array<std::size_t, 3> n;
    for (int k = 0; k < 3; ++k) n[k] = remap[faces_[f].n[k]];
    t.neighbors.push_back(n);
  }
  return t;
}

Triangulation delaunay(std::vector<Point> points) {
  return DelaunayBuilder(std::move(points)).triangulation();
}

Scalar triangle_area(const Triangulation& t, std::size_t i) {
  const auto& v = t.triangles.at(i).v;
  return twice_signed_area(t.points[v[0]], t.points[v[1]], t.points[v[2]]) / 2;
}

Scalar convex_hull_area(const Triangulation& t) {
  Scalar sum = 0;
  for (std::size_t i = 0; i < t.triangles.size(); ++i) sum += triangle_area(t, i);
  return sum;
}

std::vector<std::size_t> hull_vertices(const Triangulation& t) {
  // Boundary edges keep the interior on their left; chain them by start vertex.
  std::map<std::size_t, std::size_t> successor;
  for (std::size_t i = 0; i < t.triangles.size(); ++i)
    for (int k = 0; k < 3; ++k)
      if (t.neighbors[i][k] == kNoNeighbor)
        successor[t.triangles[i].v[next(k)]] = t.triangles[i].v[prev(k)];
  std::vector<std::size_t> loop;
  if (successor.empty()) return loop;
  const std::size_t start = successor.begin()->first;
  std::size_t v = start;
  do {
    loop.push_back(v);
    auto it = successor.find(v);
    if (it == successor.end() || loop.size() > successor.size())
      throw StructureError("hull boundary is not a simple loop");
    v = it->second;
  } while (v != start);
  return loop;
}

void check_structure(const Triangulation& t) {
  const std::size_t n = t.points.size();
  if (t.triangles.empty()) throw StructureError("no triangles");
  if (t.neighbors.size() != t.triangles.size())
    throw StructureError("adjacency size does not match triangle count");
  std::vector<char> used(n, 0);
  std::map<std::pair<std::size_t, std::size_t>, std::pair<std::size_t, int>> directed;
  for (std::size_t i = 0; i < t.triangles.size(); ++i) {
    const auto& v = t.triangles[i].v;
    for (std::size_t x : v)
      if (x >= n) throw StructureError("triangle " + std::to_string(i) + " index out of range");
    if (v[0] == v[1] || v[1] == v[2] || v[0] == v[2])
      throw StructureError("triangle " + std::to_string(i) + " repeats a vertex");
    if (orient2d(t.points[v[0]], t.points[v[1]], t.points[v[2]]) != Sign::Positive)
      throw StructureError("triangle " + std::to_string(i) + " is not counterclockwise");
    for (int k = 0; k < 3; ++k) {
      used[v[k]] = 1;
      auto key = std::make_pair(v[next(k)], v[prev(k)]);
      if (!directed.emplace(key, std::make_pair(i, k)).second)
        throw StructureError("directed edge used twice; triangles overlap");
    }
  }
  for (std::size_t p = 0; p < n; ++p)
    if (!used[p]) throw StructureError("point " + std::to_string(p) + " is not a vertex");
  for (std::size_t i = 0; i < t.triangles.size(); ++i) {
    const auto& v = t.triangles[i].v;
    for (int k = 0; k < 3; ++k) {
      auto twin = directed.find({v[prev(k)], v[next(k)]});
      const std::size_t expected = twin == directed.end() ? kNoNeighbor : twin->second.first;
      if (t.neighbors[i][k] != expected)
        throw StructureError("adjacency of triangle " + std::to_string(i) +
                             " disagrees with shared edges");
    }
  }
  // A convex boundary loop enclosing every point, with matching area, means
  // the triangles tile the convex hull exactly once.
  auto hull = hull_vertices(t);
  std::size_t boundary_edges = 0;
  for (const auto& nb : t.neighbors)
    for (std::size_t x : nb) boundary_edges += x == kNoNeighbor;
  if (boundary_edges != hull.size()) throw StructureError("boundary has more than one loop");
  Scalar shoelace = 0;
  for (std::size_t k = 0; k < hull.size(); ++k) {
    const Point& a = t.points[hull[k]];
    const Point& b = t.points[hull[(k + 1) % hull.size()]];
    shoelace += a.x * b.y - b.x * a.y;
    for (std::size_t p = 0; p < n; ++p)
      if (orient2d(a, b, t.points[p]) == Sign::Negative)
        throw StructureError("boundary is not the convex hull");
  }
  if (shoelace / 2 != convex_hull_area(t))
    throw StructureError("triangles do not tile the hull");
}

unsigned worker_threads() {
  if (const char* env = std::getenv("PACKDENS_THREADS")) {
    int v = std::atoi(env);
    if (v >= 1) return static_cast<unsigned>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

VerificationResult verify_delaunay(const Triangulation& t) {
  check_structure(t);
  const std::size_t m = t.triangles.size();
  const std::size_t n = t.points.size();
  std::vector<detail::ApproxPoint> approx;
  approx.reserve(n);
  for (const Point& p : t.points) approx.push_back(detail::approximate(p));

  // First offending point per triangle; kNoNeighbor when clean.
  std::vector<std::size_t> offender(m, kNoNeighbor);
  auto scan = [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      const auto& v = t.triangles[i].v;
      for (std::size_t p = 0; p < n; ++p) {
        if (p == v[0] || p == v[1] || p == v[2]) continue;
        if (detail::incircle_det(approx[v[0]], approx[v[1]], approx[v[2]], approx[p],
                                 t.points[v[0]], t.points[v[1]], t.points[v[2]],
                                 t.points[p]) == Sign::Positive) {
          offender[i] = p;
          break;
        }
      }
    }
  };
  const unsigned threads = std::min<unsigned>(worker_threads(),
                                              static_cast<unsigned>(m * n / 20000 + 1));
  if (threads <= 1) {
    scan(0, m);
  } else {
    std::vector<std::thread> pool;
    const std::size_t chunk = (m + threads - 1) / threads;
    for (unsigned w = 0; w < threads; ++w) {
      std::size_t begin = w * chunk, end = std::min(m, begin + chunk);
      if (begin < end) pool.emplace_back(scan, begin, end);
    }
    for (auto& th : pool) th.join();
  }
  for (std::size_t i = 0; i < m; ++i)
    if (offender[i] != kNoNeighbor) return VerificationResult::fail(i, offender[i]);
  return VerificationResult::pass();
}

}  // namespace packdens
