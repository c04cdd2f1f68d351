#pragma once

#include <optional>

#include "packdens/errors.hpp"
#include "packdens/scalar.hpp"

namespace packdens {

enum class Sign { Negative = -1, Zero = 0, Positive = 1 };

inline Sign operator-(Sign s) { return static_cast<Sign>(-static_cast<int>(s)); }
inline Sign operator*(Sign a, Sign b) {
  return static_cast<Sign>(static_cast<int>(a) * static_cast<int>(b));
}

inline Sign sign_of(const Scalar& v) {
  int s = sgn(v);
  return s > 0 ? Sign::Positive : (s < 0 ? Sign::Negative : Sign::Zero);
}

// Circle center in units of the circle radius.
struct Point {
  Scalar x;
  Scalar y;

  friend bool operator==(const Point&, const Point&) = default;
};

// Lexicographic (x, then y).
inline bool lex_less(const Point& a, const Point& b) {
  return a.x < b.x || (a.x == b.x && a.y < b.y);
}

// Point on the paraboloid z = x^2 + y^2.
struct LiftedPoint {
  Scalar x;
  Scalar y;
  Scalar z;
};

struct Circumcircle {
  Point center;
  Scalar radius_squared;
};

// Sign of the signed area of (a, b, c); Positive means counterclockwise.
Sign orient2d(const Point& a, const Point& b, const Point& c);

// Positive iff d lies strictly inside the circle through a, b, c, Zero iff the
// four points are cocircular. The result does not depend on the orientation
// of (a, b, c). Throws CollinearTriangle when a, b, c are collinear.
Sign incircle(const Point& a, const Point& b, const Point& c, const Point& d);

// Sign of det[b - a; c - a; d - a]. Positive when d lies above the plane of
// a, b, c whose projection is counterclockwise.
Sign orient3d(const LiftedPoint& a, const LiftedPoint& b, const LiftedPoint& c,
              const LiftedPoint& d);

Circumcircle circumcircle(const Point& a, const Point& b, const Point& c);

LiftedPoint lift(const Point& p);

Scalar distance_squared(const Point& a, const Point& b);

// Twice the signed area of (a, b, c).
Scalar twice_signed_area(const Point& a, const Point& b, const Point& c);

namespace detail {

// Double-precision image of a Point with an absolute error bound per
// coordinate. `usable` is false when the magnitude is outside the range where
// the filter's error analysis holds.
struct ApproxPoint {
  double x = 0.0;
  double y = 0.0;
  double ex = 0.0;
  double ey = 0.0;
  bool usable = false;
};

ApproxPoint approximate(const Point& p);

// Filtered predicates: the double path answers only when its error bound
// certifies the sign, otherwise the exact path decides.
Sign orient2d(const ApproxPoint& fa, const ApproxPoint& fb, const ApproxPoint& fc,
              const Point& a, const Point& b, const Point& c);

// Raw in-circle determinant sign: Positive iff d is inside for a
// counterclockwise (a, b, c). No collinearity check.
Sign incircle_det(const ApproxPoint& fa, const ApproxPoint& fb, const ApproxPoint& fc,
                  const ApproxPoint& fd, const Point& a, const Point& b, const Point& c,
                  const Point& d);

Sign orient2d_exact(const Point& a, const Point& b, const Point& c);
Sign incircle_det_exact(const Point& a, const Point& b, const Point& c, const Point& d);

}  // namespace detail
}  // namespace packdens
