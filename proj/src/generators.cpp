#include "packdens/generators.hpp"

#include <cmath>
#include <map>
#include <random>

namespace packdens {
namespace {

constexpr unsigned kGridBits = 20;

Scalar pow10(long exponent) {
  mpz_class p;
  mpz_ui_pow_ui(p.get_mpz_t(), 10, static_cast<unsigned long>(std::labs(exponent)));
  Scalar r = exponent >= 0 ? Scalar(p) : Scalar(mpz_class(1), p);
  r.canonicalize();
  return r;
}

void check_spec(const GeneratorSpec& spec) {
  if (spec.window.xmax - spec.window.xmin < 4 || spec.window.ymax - spec.window.ymin < 4)
    throw InvalidSpec("window sides must be at least 4 long");
  if (spec.spacing < 2) throw InvalidSpec("spacing must be at least 2");
  if (spec.perturbation < 0) throw InvalidSpec("perturbation must be non-negative");
}

std::vector<Point> lattice(const GeneratorSpec& spec, bool hexagonal) {
  const Window& w = spec.window;
  const Scalar pitch = hexagonal ? Scalar(spec.spacing + pow10(-20)) : spec.spacing;
  const Scalar row_pitch = hexagonal ? Scalar(spec.spacing * half_sqrt3_lower()) : spec.spacing;
  std::vector<Point> points;
  std::size_t row = 0;
  for (Scalar y = w.ymin; y <= w.ymax; y += row_pitch, ++row) {
    Scalar x = w.xmin;
    if (hexagonal && row % 2 == 1) x += pitch / 2;
    for (; x <= w.xmax; x += pitch) points.push_back(Point{x, y});
  }
  return points;
}

// A uniformly random multiple of span / 2^20 in [-span, span].
Scalar dyadic_offset(std::mt19937_64& rng, const Scalar& span) {
  std::uniform_int_distribution<long> k(-(1L << kGridBits), 1L << kGridBits);
  Scalar r(k(rng), 1L << kGridBits);
  r.canonicalize();
  return r * span;
}

Scalar dyadic_in(std::mt19937_64& rng, const Scalar& lo, const Scalar& hi) {
  std::uniform_int_distribution<long> k(0, 1L << kGridBits);
  Scalar r(k(rng), 1L << kGridBits);
  r.canonicalize();
  return lo + (hi - lo) * r;
}

std::vector<Point> random_dart(const GeneratorSpec& spec) {
  const Window& w = spec.window;
  std::mt19937_64 rng(spec.seed);
  const Scalar min_d2 = spec.spacing * spec.spacing;
  const double reach = spec.spacing.get_d();
  const double lo = min_d2.get_d() * (1 - 1e-9), hi = min_d2.get_d() * (1 + 1e-9);
  // Buckets of side `reach`: conflicts live in the 3x3 neighbourhood.
  std::map<std::pair<long, long>, std::vector<std::size_t>> grid;
  const double x0 = w.xmin.get_d(), y0 = w.ymin.get_d();
  auto cell = [&](double x, double y) {
    return std::make_pair(static_cast<long>(std::floor((x - x0) / reach)),
                          static_cast<long>(std::floor((y - y0) / reach)));
  };
  std::vector<Point> points;
  std::vector<std::pair<double, double>> approx;
  std::size_t failures = 0;
  while (failures < spec.failure_budget &&
         (spec.max_points == 0 || points.size() < spec.max_points)) {
    Point p{dyadic_in(rng, w.xmin, w.xmax), dyadic_in(rng, w.ymin, w.ymax)};
    const double px = p.x.get_d(), py = p.y.get_d();
    auto [cx, cy] = cell(px, py);
    bool ok = true;
    for (long dx = -1; dx <= 1 && ok; ++dx)
      for (long dy = -1; dy <= 1 && ok; ++dy) {
        auto it = grid.find({cx + dx, cy + dy});
        if (it == grid.end()) continue;
        for (std::size_t j : it->second) {
          double ex = approx[j].first - px, ey = approx[j].second - py;
          double d2 = ex * ex + ey * ey;
          if (d2 < lo || (d2 <= hi && distance_squared(points[j], p) < min_d2)) {
            ok = false;
            break;
          }
        }
      }
    if (!ok) {
      ++failures;
      continue;
    }
    failures = 0;
    grid[{cx, cy}].push_back(points.size());
    points.push_back(std::move(p));
    approx.emplace_back(px, py);
  }
  return points;
}

}  // namespace

Scalar half_sqrt3_lower() {
  // floor(sqrt(3) * 10^50) / (2 * 10^50)
  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, 50);
  mpz_class radicand = 3 * scale * scale;
  mpz_class root;
  mpz_sqrt(root.get_mpz_t(), radicand.get_mpz_t());
  Scalar r(root, 2 * scale);
  r.canonicalize();
  return r;
}

Configuration generate(const GeneratorSpec& spec) {
  check_spec(spec);
  std::vector<Point> points;
  switch (spec.kind) {
    case GeneratorKind::Hexagonal:
      points = lattice(spec, true);
      break;
    case GeneratorKind::Square:
      points = lattice(spec, false);
      break;
    case GeneratorKind::PerturbedHex: {
      points = lattice(spec, true);
      std::mt19937_64 rng(spec.seed);
      const Window& w = spec.window;
      for (Point& p : points) {
        p.x += dyadic_offset(rng, spec.perturbation);
        p.y += dyadic_offset(rng, spec.perturbation);
        if (p.x < w.xmin) p.x = w.xmin;
        if (p.x > w.xmax) p.x = w.xmax;
        if (p.y < w.ymin) p.y = w.ymin;
        if (p.y > w.ymax) p.y = w.ymax;
      }
      try {
        return validate(std::move(points), spec.window);
      } catch (const PairTooClose& e) {
        throw PerturbationTooLarge(std::string("perturbation breaks the distance constraint: ") +
                                   e.what());
      }
    }
    case GeneratorKind::RandomDart:
      points = random_dart(spec);
      break;
  }
  try {
    return validate(std::move(points), spec.window);
  } catch (const PairTooClose& e) {
    throw InvalidSpec(std::string("generated points violate the distance constraint: ") +
                      e.what());
  }
}

}  // namespace packdens
