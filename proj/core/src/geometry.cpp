#include "spdi/geometry.hpp"

#include <algorithm>
#include <cmath>

#include "spdi/error.hpp"

namespace spdi {

Vector2 normalized(Vector2 v) {
  const double n = norm(v);
  if (n == 0.0) return v;
  return {v.dx / n, v.dy / n};
}

RaySegmentResult ray_segment_param(Point2 origin, Vector2 dir, const Segment& seg) {
  RaySegmentResult result;
  const Vector2 w = seg.direction();
  const Vector2 ao = seg.a - origin;
  const double denom = cross(dir, w);
  const double scale = norm(dir) * norm(w);
  if (std::abs(denom) <= kEps * scale) {
    // Parallel. Overlap only when the origin is on the supporting line and
    // the segment lies ahead of it.
    if (std::abs(cross(ao, dir)) <= kEps * norm(dir) * std::max(1.0, norm(ao))) {
      const double ta = dot(ao, dir);
      const double tb = dot(seg.b - origin, dir);
      if (ta > 0.0 || tb > 0.0) result.collinear_overlap = true;
    }
    return result;
  }
  const double t = cross(ao, w) / denom;
  double u = cross(ao, dir) / denom;
  if (t <= kEps || u < -kEps || u > 1.0 + kEps) return result;
  u = std::clamp(u, 0.0, 1.0);
  result.hit = RayHit{t, u};
  return result;
}

std::optional<RayHit> ray_line_param(Point2 origin, Vector2 dir, const Segment& line) {
  const Vector2 w = line.direction();
  const double denom = cross(dir, w);
  if (std::abs(denom) <= kEps * norm(dir) * norm(w)) return std::nullopt;
  const Vector2 ao = line.a - origin;
  const double t = cross(ao, w) / denom;
  if (t <= kEps) return std::nullopt;
  return RayHit{t, cross(ao, dir) / denom};
}

bool in_cone(Vector2 v, Vector2 l, Vector2 r) {
  if (norm(l) == 0.0 || norm(r) == 0.0) {
    throw ConeOrientationError("cone bound is the zero vector");
  }
  const Vector2 lh = normalized(l);
  const Vector2 rh = normalized(r);
  if (cross(rh, lh) < -kEps) {
    throw ConeOrientationError("cone must open counterclockwise from r to l");
  }
  if (cross(rh, lh) <= kEps && dot(rh, lh) < 0.0) {
    throw ConeOrientationError("cone bounds point in opposite directions");
  }
  const Vector2 vh = normalized(v);
  if (norm(vh) == 0.0) return false;
  return cross(rh, vh) >= -kEps && cross(vh, lh) >= -kEps && dot(vh, rh + lh) > 0.0;
}

double signed_area(std::span<const Point2> poly) {
  double twice = 0.0;
  const std::size_t n = poly.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Point2& p = poly[i];
    const Point2& q = poly[(i + 1) % n];
    twice += p.x * q.y - q.x * p.y;
  }
  return 0.5 * twice;
}

namespace {

// Sine of the turn at vertex i.
double turn(std::span<const Point2> poly, std::size_t i) {
  const std::size_t n = poly.size();
  const Vector2 e1 = normalized(poly[i] - poly[(i + n - 1) % n]);
  const Vector2 e2 = normalized(poly[(i + 1) % n] - poly[i]);
  return cross(e1, e2);
}

}  // namespace

bool is_convex_ccw(std::span<const Point2> poly) {
  if (poly.size() < 3) return false;
  if (signed_area(poly) <= 0.0) return false;
  for (std::size_t i = 0; i < poly.size(); ++i) {
    if (turn(poly, i) < -kEps) return false;
  }
  return true;
}

bool is_strictly_convex_ccw(std::span<const Point2> poly) {
  if (poly.size() < 3) return false;
  if (signed_area(poly) <= 0.0) return false;
  for (std::size_t i = 0; i < poly.size(); ++i) {
    if (distance(poly[i], poly[(i + 1) % poly.size()]) <= kEps) return false;
    if (turn(poly, i) <= kEps) return false;
  }
  return true;
}

Polygon clip_convex(std::span<const Point2> poly, const HalfPlane& hp) {
  if (poly.empty()) return {};
  if (!is_convex_ccw(poly)) throw GeometryError("clip_convex: input is not convex CCW");
  const double nn = norm(hp.n);
  if (nn == 0.0) throw GeometryError("clip_convex: half-plane normal is zero");

  Polygon out;
  const std::size_t n = poly.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Point2 p = poly[i];
    const Point2 q = poly[(i + 1) % n];
    const double fp = hp.eval(p) / nn;
    const double fq = hp.eval(q) / nn;
    const bool p_in = fp <= kEps;
    const bool q_in = fq <= kEps;
    if (p_in) out.push_back(p);
    if (p_in != q_in && std::abs(fp - fq) > 0.0) {
      const double s = fp / (fp - fq);
      if (s > 0.0 && s < 1.0) out.push_back(p + s * (q - p));
    }
  }

  // Drop coincident, collinear and reflex vertices left by cuts near vertices.
  bool changed = true;
  while (changed && out.size() >= 3) {
    changed = false;
    for (std::size_t i = 0; i < out.size(); ++i) {
      const std::size_t m = out.size();
      const Point2 prev = out[(i + m - 1) % m];
      const Point2 cur = out[i];
      const Point2 next = out[(i + 1) % m];
      if (distance(prev, cur) <= kEps ||
          cross(normalized(cur - prev), normalized(next - cur)) <= kEps) {
        out.erase(out.begin() + static_cast<std::ptrdiff_t>(i));
        changed = true;
        break;
      }
    }
  }
  if (out.size() < 3 || signed_area(out) < kEps * kEps) return {};
  return out;
}

Point2 centroid(std::span<const Point2> poly) {
  const double a = signed_area(poly);
  if (std::abs(a) <= kEps * kEps) {
    Point2 c;
    for (const auto& p : poly) {
      c.x += p.x;
      c.y += p.y;
    }
    return {c.x / static_cast<double>(poly.size()), c.y / static_cast<double>(poly.size())};
  }
  double cx = 0.0;
  double cy = 0.0;
  const std::size_t n = poly.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Point2& p = poly[i];
    const Point2& q = poly[(i + 1) % n];
    const double w = p.x * q.y - q.x * p.y;
    cx += (p.x + q.x) * w;
    cy += (p.y + q.y) * w;
  }
  return {cx / (6.0 * a), cy / (6.0 * a)};
}

}  // namespace spdi
