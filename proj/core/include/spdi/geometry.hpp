#pragma once

#include <cmath>
#include <optional>
#include <span>
#include <vector>

namespace spdi {

// Tolerance shared by every geometric predicate.
inline constexpr double kEps = 1e-9;

struct Vector2 {
  double dx = 0.0;
  double dy = 0.0;

  friend bool operator==(const Vector2&, const Vector2&) = default;
};

struct Point2 {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point2&, const Point2&) = default;
};

inline Vector2 operator-(Point2 a, Point2 b) { return {a.x - b.x, a.y - b.y}; }
inline Point2 operator+(Point2 p, Vector2 v) { return {p.x + v.dx, p.y + v.dy}; }
inline Point2 operator-(Point2 p, Vector2 v) { return {p.x - v.dx, p.y - v.dy}; }
inline Vector2 operator+(Vector2 a, Vector2 b) { return {a.dx + b.dx, a.dy + b.dy}; }
inline Vector2 operator-(Vector2 a, Vector2 b) { return {a.dx - b.dx, a.dy - b.dy}; }
inline Vector2 operator-(Vector2 v) { return {-v.dx, -v.dy}; }
inline Vector2 operator*(double s, Vector2 v) { return {s * v.dx, s * v.dy}; }

inline double cross(Vector2 u, Vector2 v) { return u.dx * v.dy - u.dy * v.dx; }
inline double dot(Vector2 u, Vector2 v) { return u.dx * v.dx + u.dy * v.dy; }
inline double norm(Vector2 v) { return std::hypot(v.dx, v.dy); }
inline double distance(Point2 a, Point2 b) { return norm(a - b); }

// Unit vector; the zero vector maps to itself.
Vector2 normalized(Vector2 v);

// Rotation by +90 degrees.
inline Vector2 perp(Vector2 v) { return {-v.dy, v.dx}; }

// Lexicographic (x, y) order used for canonical edge orientation.
inline bool lex_less(Point2 a, Point2 b) {
  return a.x < b.x || (a.x == b.x && a.y < b.y);
}

struct Segment {
  Point2 a;
  Point2 b;

  Vector2 direction() const { return b - a; }
  double length() const { return norm(b - a); }
};

// The closed half-plane {p : n . p <= c}.
struct HalfPlane {
  Vector2 n;
  double c = 0.0;

  double eval(Point2 p) const { return n.dx * p.x + n.dy * p.y - c; }
};

struct RayHit {
  double t = 0.0;  // ray parameter, origin + t * dir
  double u = 0.0;  // segment parameter in [0, 1], a + u * (b - a)
};

struct RaySegmentResult {
  std::optional<RayHit> hit;
  // Set when the ray runs along the segment's supporting line and overlaps it.
  bool collinear_overlap = false;
};

RaySegmentResult ray_segment_param(Point2 origin, Vector2 dir, const Segment& seg);

// Same as ray_segment_param but against the unbounded supporting line; u is
// not restricted to [0, 1]. Returns nullopt for parallel lines or t <= eps.
std::optional<RayHit> ray_line_param(Point2 origin, Vector2 dir, const Segment& line);

// True iff v lies in the closed cone swept counterclockwise from r to l.
// Throws ConeOrientationError when cross(r, l) < 0 or either bound is zero.
bool in_cone(Vector2 v, Vector2 l, Vector2 r);

using Polygon = std::vector<Point2>;

double signed_area(std::span<const Point2> poly);

// Convex and counterclockwise, allowing collinear consecutive vertices.
bool is_convex_ccw(std::span<const Point2> poly);

// Convex, counterclockwise, and no two consecutive edges collinear.
bool is_strictly_convex_ccw(std::span<const Point2> poly);

// poly intersected with hp; empty when the result is degenerate.
// Throws GeometryError for non-convex input.
Polygon clip_convex(std::span<const Point2> poly, const HalfPlane& hp);

Point2 centroid(std::span<const Point2> poly);

}  // namespace spdi
