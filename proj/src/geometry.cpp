#include "packdens/geometry.hpp"

#include <array>
#include <cmath>
#include <initializer_list>

namespace packdens {
namespace {

constexpr double kUnitRoundoff = 0x1p-53;
constexpr double kFilterMax = 1e60;
constexpr double kFilterMin = 1e-60;

// A double carrying an absolute error bound.
struct Approx {
  double v;
  double e;
};

Approx operator+(Approx a, Approx b) {
  double v = a.v + b.v;
  return {v, a.e + b.e + std::fabs(v) * kUnitRoundoff};
}
Approx operator-(Approx a, Approx b) {
  double v = a.v - b.v;
  return {v, a.e + b.e + std::fabs(v) * kUnitRoundoff};
}
Approx operator*(Approx a, Approx b) {
  double v = a.v * b.v;
  return {v, std::fabs(a.v) * b.e + std::fabs(b.v) * a.e + a.e * b.e +
                 std::fabs(v) * kUnitRoundoff};
}

std::optional<Sign> decide(Approx r) {
  if (!std::isfinite(r.v) || !std::isfinite(r.e)) return std::nullopt;
  // The bound itself was accumulated with rounding; inflate it slightly.
  if (std::fabs(r.v) > r.e * (1.0 + 1e-10)) return r.v > 0 ? Sign::Positive : Sign::Negative;
  if (r.v == 0.0 && r.e == 0.0) return Sign::Zero;
  return std::nullopt;
}

Sign sign_of(const mpz_class& v) {
  int s = sgn(v);
  return s > 0 ? Sign::Positive : (s < 0 ? Sign::Negative : Sign::Zero);
}

// Coordinates of the given points scaled by the lcm of all denominators.
template <std::size_t N>
std::array<std::array<mpz_class, 2>, N> integerize(const std::array<const Point*, N>& pts) {
  mpz_class scale = 1;
  for (const Point* p : pts) {
    mpz_lcm(scale.get_mpz_t(), scale.get_mpz_t(), p->x.get_den_mpz_t());
    mpz_lcm(scale.get_mpz_t(), scale.get_mpz_t(), p->y.get_den_mpz_t());
  }
  std::array<std::array<mpz_class, 2>, N> out;
  for (std::size_t i = 0; i < N; ++i) {
    out[i][0] = pts[i]->x.get_num() * (scale / pts[i]->x.get_den());
    out[i][1] = pts[i]->y.get_num() * (scale / pts[i]->y.get_den());
  }
  return out;
}

}  // namespace

namespace detail {

ApproxPoint approximate(const Point& p) {
  ApproxPoint a;
  a.x = p.x.get_d();
  a.y = p.y.get_d();
  // mpq get_d truncates: at most one ulp, i.e. 2u relative.
  a.ex = std::fabs(a.x) * 2.0 * kUnitRoundoff;
  a.ey = std::fabs(a.y) * 2.0 * kUnitRoundoff;
  auto in_range = [](double v, const Scalar& exact) {
    if (exact == 0) return true;
    double m = std::fabs(v);
    return m < kFilterMax && m > kFilterMin;
  };
  a.usable = in_range(a.x, p.x) && in_range(a.y, p.y);
  return a;
}

Sign orient2d_exact(const Point& a, const Point& b, const Point& c) {
  auto q = integerize<3>({&a, &b, &c});
  mpz_class det = (q[1][0] - q[0][0]) * (q[2][1] - q[0][1]) -
                  (q[1][1] - q[0][1]) * (q[2][0] - q[0][0]);
  return sign_of(det);
}

Sign incircle_det_exact(const Point& a, const Point& b, const Point& c, const Point& d) {
  auto q = integerize<4>({&a, &b, &c, &d});
  mpz_class adx = q[0][0] - q[3][0], ady = q[0][1] - q[3][1];
  mpz_class bdx = q[1][0] - q[3][0], bdy = q[1][1] - q[3][1];
  mpz_class cdx = q[2][0] - q[3][0], cdy = q[2][1] - q[3][1];
  mpz_class ad2 = adx * adx + ady * ady;
  mpz_class bd2 = bdx * bdx + bdy * bdy;
  mpz_class cd2 = cdx * cdx + cdy * cdy;
  mpz_class det = adx * (bdy * cd2 - cdy * bd2) - ady * (bdx * cd2 - cdx * bd2) +
                  ad2 * (bdx * cdy - cdx * bdy);
  return sign_of(det);
}

Sign orient2d(const ApproxPoint& fa, const ApproxPoint& fb, const ApproxPoint& fc,
              const Point& a, const Point& b, const Point& c) {
  if (fa.usable && fb.usable && fc.usable) {
    Approx ax{fa.x, fa.ex}, ay{fa.y, fa.ey};
    Approx bx{fb.x, fb.ex}, by{fb.y, fb.ey};
    Approx cx{fc.x, fc.ex}, cy{fc.y, fc.ey};
    if (auto s = decide((bx - ax) * (cy - ay) - (by - ay) * (cx - ax))) return *s;
  }
  return orient2d_exact(a, b, c);
}

Sign incircle_det(const ApproxPoint& fa, const ApproxPoint& fb, const ApproxPoint& fc,
                  const ApproxPoint& fd, const Point& a, const Point& b, const Point& c,
                  const Point& d) {
  if (fa.usable && fb.usable && fc.usable && fd.usable) {
    Approx dx{fd.x, fd.ex}, dy{fd.y, fd.ey};
    Approx adx = Approx{fa.x, fa.ex} - dx, ady = Approx{fa.y, fa.ey} - dy;
    Approx bdx = Approx{fb.x, fb.ex} - dx, bdy = Approx{fb.y, fb.ey} - dy;
    Approx cdx = Approx{fc.x, fc.ex} - dx, cdy = Approx{fc.y, fc.ey} - dy;
    Approx ad2 = adx * adx + ady * ady;
    Approx bd2 = bdx * bdx + bdy * bdy;
    Approx cd2 = cdx * cdx + cdy * cdy;
    Approx det = adx * (bdy * cd2 - cdy * bd2) - ady * (bdx * cd2 - cdx * bd2) +
                 ad2 * (bdx * cdy - cdx * bdy);
    if (auto s = decide(det)) return *s;
  }
  return incircle_det_exact(a, b, c, d);
}

}  // namespace detail

Sign orient2d(const Point& a, const Point& b, const Point& c) {
  return detail::orient2d(detail::approximate(a), detail::approximate(b),
                          detail::approximate(c), a, b, c);
}

Sign incircle(const Point& a, const Point& b, const Point& c, const Point& d) {
  auto fa = detail::approximate(a), fb = detail::approximate(b), fc = detail::approximate(c);
  Sign orientation = detail::orient2d(fa, fb, fc, a, b, c);
  if (orientation == Sign::Zero) throw CollinearTriangle();
  return orientation * detail::incircle_det(fa, fb, fc, detail::approximate(d), a, b, c, d);
}

Sign orient3d(const LiftedPoint& a, const LiftedPoint& b, const LiftedPoint& c,
              const LiftedPoint& d) {
  Scalar bx = b.x - a.x, by = b.y - a.y, bz = b.z - a.z;
  Scalar cx = c.x - a.x, cy = c.y - a.y, cz = c.z - a.z;
  Scalar dx = d.x - a.x, dy = d.y - a.y, dz = d.z - a.z;
  Scalar det = bx * (cy * dz - cz * dy) - by * (cx * dz - cz * dx) + bz * (cx * dy - cy * dx);
  return sign_of(det);
}

Circumcircle circumcircle(const Point& a, const Point& b, const Point& c) {
  Scalar bx = b.x - a.x, by = b.y - a.y;
  Scalar cx = c.x - a.x, cy = c.y - a.y;
  Scalar d = 2 * (bx * cy - by * cx);
  if (d == 0) throw CollinearTriangle();
  Scalar b2 = bx * bx + by * by;
  Scalar c2 = cx * cx + cy * cy;
  Scalar ux = (cy * b2 - by * c2) / d;
  Scalar uy = (bx * c2 - cx * b2) / d;
  Scalar r2 = ux * ux + uy * uy;
  return {Point{a.x + ux, a.y + uy}, r2};
}

LiftedPoint lift(const Point& p) { return {p.x, p.y, p.x * p.x + p.y * p.y}; }

Scalar distance_squared(const Point& a, const Point& b) {
  Scalar dx = a.x - b.x, dy = a.y - b.y;
  return dx * dx + dy * dy;
}

Scalar twice_signed_area(const Point& a, const Point& b, const Point& c) {
  return (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x);
}

}  // namespace packdens
