#pragma once

#include <cmath>
#include <cstdint>

namespace sketchrec {

using Coord = std::int64_t;

/// Integer pixel position. Screen convention: y grows downward.
struct Point {
  Coord x = 0;
  Coord y = 0;

  friend bool operator==(const Point&, const Point&) = default;
};

/// Real-valued 2D vector used for measurements and beautified output.
struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  constexpr Vec2() = default;
  constexpr Vec2(double x_, double y_) : x(x_), y(y_) {}
  constexpr explicit Vec2(Point p) : x(static_cast<double>(p.x)), y(static_cast<double>(p.y)) {}

  friend constexpr Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
  friend constexpr Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
  friend constexpr Vec2 operator-(Vec2 a) { return {-a.x, -a.y}; }
  friend constexpr Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }
  friend constexpr Vec2 operator*(Vec2 a, double s) { return {s * a.x, s * a.y}; }
  friend constexpr Vec2 operator/(Vec2 a, double s) { return {a.x / s, a.y / s}; }
  Vec2& operator+=(Vec2 o) { x += o.x; y += o.y; return *this; }
  Vec2& operator-=(Vec2 o) { x -= o.x; y -= o.y; return *this; }

  friend bool operator==(const Vec2&, const Vec2&) = default;
};

constexpr double kPi = 3.14159265358979323846;

constexpr double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
constexpr double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Vec2 a) { return std::hypot(a.x, a.y); }
inline double distance(Vec2 a, Vec2 b) { return norm(b - a); }

constexpr double to_radians(double deg) { return deg * kPi / 180.0; }
constexpr double to_degrees(double rad) { return rad * 180.0 / kPi; }

/// Unsigned angle between two vectors in degrees, in [0, 180].
inline double angle_between_deg(Vec2 a, Vec2 b) {
  return to_degrees(std::atan2(std::abs(cross(a, b)), dot(a, b)));
}

/// Perpendicular distance from `p` to the infinite line through `a` and `b`.
/// Falls back to the distance to `a` when the chord is degenerate.
inline double perpendicular_distance(Vec2 p, Vec2 a, Vec2 b) {
  const Vec2 chord = b - a;
  const double len = norm(chord);
  if (len == 0.0)
    return distance(p, a);
  return std::abs(cross(chord, p - a)) / len;
}

inline Vec2 unit_from_degrees(double deg) {
  const double r = to_radians(deg);
  return {std::cos(r), std::sin(r)};
}

/// Direction of `v` in degrees, in (-180, 180].
inline double heading_deg(Vec2 v) { return to_degrees(std::atan2(v.y, v.x)); }

} // namespace sketchrec
