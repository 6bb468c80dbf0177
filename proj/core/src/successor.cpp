#include "spdi/successor.hpp"

#include <cmath>
#include <limits>

#include "spdi/error.hpp"

namespace spdi {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::size_t edge_slot(const Spdi& spdi, std::size_t region, EdgeId e) {
  const auto& re = spdi.region_edges(region);
  for (std::size_t k = 0; k < re.size(); ++k) {
    if (re[k].edge == e) return k;
  }
  throw SignatureError("edge " + spdi.edge(e).name + " is not on the boundary of region " +
                       std::to_string(spdi.region(region).id));
}

// True when c leaves the region through the supporting line of slot k.
bool crosses_out(const Spdi& spdi, std::size_t region, std::size_t k, Vector2 c) {
  return dot(normalized(spdi.outward_normal(region, k)), normalized(c)) > kEps;
}

std::optional<Interval> preimage(const AffineMap1& f, const Interval& target) {
  if (f.a == 0.0) {
    if (target.contains(f.b)) return Interval{-kInf, kInf};
    return std::nullopt;
  }
  Interval r{(target.lo - f.b) / f.a, (target.hi - f.b) / f.a};
  if (f.a < 0.0) std::swap(r.lo, r.hi);
  return r;
}

// Domain of f restricted to inputs in [0,1] with outputs in [0,1].
std::optional<Interval> unit_domain(const AffineMap1& f) {
  auto pre = preimage(f, {0.0, 1.0});
  if (!pre) return Interval{1.0, 0.0};
  return intersect(*pre, {0.0, 1.0});
}

}  // namespace

bool AffineMap1::finite() const { return std::isfinite(a) && std::isfinite(b); }

AffineMap1 compose(const AffineMap1& outer, const AffineMap1& inner) {
  AffineMap1 r;
  r.a = outer.a * inner.a;
  if (outer.a == 0.0) {
    r.b = outer.b;
  } else if (inner.a == 0.0) {
    r.a = 0.0;
    r.b = outer(inner.b);
  } else {
    r.b = outer.a * inner.b + outer.b;
  }
  if (inner.dom && outer.dom) {
    Interval d = *inner.dom;
    if (!d.empty()) {
      auto pre = preimage(inner, *outer.dom);
      d = pre ? intersect(d, *pre) : Interval{1.0, 0.0};
    }
    r.dom = d;
  }
  return r;
}

Interval IntervalMap::apply_raw(const Interval& iv) const {
  if (flips) return {lower(iv.hi), upper(iv.lo)};
  return {lower(iv.lo), upper(iv.hi)};
}

std::optional<Interval> IntervalMap::apply(const Interval& iv) const {
  const Interval img = clamp_unit(apply_raw(iv));
  if (img.empty()) return std::nullopt;
  return img;
}

IntervalMap compose(const IntervalMap& second, const IntervalMap& first) {
  IntervalMap r;
  r.flips = first.flips != second.flips;
  if (!second.flips) {
    r.lower = compose(second.lower, first.lower);
    r.upper = compose(second.upper, first.upper);
  } else {
    r.lower = compose(second.lower, first.upper);
    r.upper = compose(second.upper, first.lower);
  }
  return r;
}

std::optional<double> succ_point(const Spdi& spdi, std::size_t region, EdgeId e_in, EdgeId e_out,
                                 Vector2 c, double lambda) {
  const Region& r = spdi.region(region);
  if (!in_cone(c, r.dyn_l, r.dyn_r)) {
    throw GeometryError("vector is outside the dynamics cone of region " + std::to_string(r.id));
  }
  const Point2 p = point_at(spdi.edge(e_in), lambda);
  const RaySegmentResult res = ray_segment_param(p, c, spdi.edge(e_out).segment());
  if (!res.hit) return std::nullopt;
  return res.hit->u;
}

std::optional<Interval> succ_interval(const Spdi& spdi, std::size_t region, EdgeId e_in,
                                      EdgeId e_out, const Interval& iv) {
  if (e_in == e_out || iv.empty()) return std::nullopt;
  const std::size_t k_in = edge_slot(spdi, region, e_in);
  const std::size_t k_out = edge_slot(spdi, region, e_out);
  if (spdi.role(region, k_in) != EdgeRole::kEntry) return std::nullopt;

  const Region& r = spdi.region(region);
  const Edge& in = spdi.edge(e_in);
  const Edge& out = spdi.edge(e_out);
  const Vector2 w = out.v1 - out.v0;
  const Vector2 bounds[2] = {r.dyn_l, r.dyn_r};
  const bool hits[2] = {crosses_out(spdi, region, k_out, r.dyn_l),
                        crosses_out(spdi, region, k_out, r.dyn_r)};
  if (!hits[0] && !hits[1]) return std::nullopt;

  double lo = kInf;
  double hi = -kInf;
  for (int i = 0; i < 2; ++i) {
    if (!hits[i]) continue;
    for (double x : {iv.lo, iv.hi}) {
      const Point2 p = point_at(in, x);
      double u;
      if (auto h = ray_line_param(p, bounds[i], out.segment())) {
        u = h->u;
      } else {
        // The point already lies on the exit line (a shared vertex).
        u = dot(p - out.v0, w) / dot(w, w);
      }
      lo = std::min(lo, u);
      hi = std::max(hi, u);
    }
  }
  if (hits[0] != hits[1]) {
    // Between the two bounds the cone turns parallel to the exit line, so the
    // image runs off to infinity along whichever of +w, -w the cone contains.
    if (in_cone(w, r.dyn_l, r.dyn_r)) {
      hi = kInf;
    } else {
      lo = -kInf;
    }
  }
  const Interval img = clamp_unit({lo, hi});
  if (img.empty()) return std::nullopt;
  return img;
}

IntervalMap succ_affine(const Spdi& spdi, std::size_t region, EdgeId e_in, EdgeId e_out) {
  const std::size_t k_in = edge_slot(spdi, region, e_in);
  const std::size_t k_out = edge_slot(spdi, region, e_out);
  const AffineMap1 never_lo{0.0, kInf, Interval{1.0, 0.0}};
  const AffineMap1 never_hi{0.0, -kInf, Interval{1.0, 0.0}};
  if (e_in == e_out || spdi.role(region, k_in) != EdgeRole::kEntry) {
    return {never_lo, never_hi, false};
  }

  const Region& r = spdi.region(region);
  const Edge& in = spdi.edge(e_in);
  const Edge& out = spdi.edge(e_out);
  const Vector2 w_in = in.v1 - in.v0;
  const Vector2 w_out = out.v1 - out.v0;

  // Projection along c from the line of e_in onto the line of e_out:
  // u = cross(p - out.v0, c) / cross(w_out, c) with p = in.v0 + lambda * w_in.
  auto project = [&](Vector2 c) {
    const double d = cross(w_out, c);
    AffineMap1 m{cross(w_in, c) / d, cross(in.v0 - out.v0, c) / d, std::nullopt};
    m.dom = unit_domain(m);
    return m;
  };

  const bool hit_l = crosses_out(spdi, region, k_out, r.dyn_l);
  const bool hit_r = crosses_out(spdi, region, k_out, r.dyn_r);
  if (!hit_l && !hit_r) return {never_lo, never_hi, false};

  if (hit_l && hit_r) {
    const AffineMap1 ml = project(r.dyn_l);
    const AffineMap1 mr = project(r.dyn_r);
    const double slope = ml.a + mr.a;
    const bool ml_low = ml(0.5) <= mr(0.5);
    IntervalMap m;
    m.flips = slope < 0.0;
    m.lower = ml_low ? ml : mr;
    m.upper = ml_low ? mr : ml;
    return m;
  }

  const AffineMap1 mh = project(hit_l ? r.dyn_l : r.dyn_r);
  IntervalMap m;
  m.flips = mh.a < 0.0;
  if (in_cone(w_out, r.dyn_l, r.dyn_r)) {
    m.lower = mh;
    m.upper = {0.0, kInf, Interval{0.0, 1.0}};
  } else {
    m.lower = {0.0, -kInf, Interval{0.0, 1.0}};
    m.upper = mh;
  }
  return m;
}

std::vector<SignatureStep> resolve_signature(const Spdi& spdi, std::span<const EdgeId> sigma) {
  std::vector<SignatureStep> steps;
  for (std::size_t i = 0; i + 1 < sigma.size(); ++i) {
    const EdgeId from = sigma[i];
    const EdgeId to = sigma[i + 1];
    if (from >= spdi.edges().size() || to >= spdi.edges().size()) {
      throw SignatureError("signature references an unknown edge");
    }
    std::optional<std::size_t> chosen;
    for (std::size_t r : spdi.adjacent_regions(from)) {
      if (!spdi.role_of(r, to)) continue;
      if (!chosen || spdi.role_of(r, from) == EdgeRole::kEntry) chosen = r;
    }
    if (!chosen) {
      throw SignatureError("edges " + spdi.edge(from).name + " and " + spdi.edge(to).name +
                           " do not share a region");
    }
    steps.push_back({*chosen, from, to});
  }
  return steps;
}

IntervalMap compose_signature(const Spdi& spdi, std::span<const EdgeId> sigma) {
  IntervalMap m = IntervalMap::identity();
  for (const SignatureStep& s : resolve_signature(spdi, sigma)) {
    m = compose(succ_affine(spdi, s.region, s.from, s.to), m);
  }
  return m;
}

std::optional<Interval> succ_signature(const Spdi& spdi, std::span<const EdgeId> sigma,
                                       const Interval& iv) {
  std::optional<Interval> cur = iv;
  if (iv.empty()) return std::nullopt;
  for (const SignatureStep& s : resolve_signature(spdi, sigma)) {
    cur = succ_interval(spdi, s.region, s.from, s.to, *cur);
    if (!cur) return std::nullopt;
  }
  return cur;
}

TransitionIndex::TransitionIndex(const Spdi& spdi) : by_edge_(spdi.edges().size()) {
  for (const Edge& e : spdi.edges()) {
    for (std::size_t r : spdi.adjacent_regions(e.id)) {
      if (spdi.role_of(r, e.id) != EdgeRole::kEntry) continue;
      const auto& re = spdi.region_edges(r);
      for (std::size_t k = 0; k < re.size(); ++k) {
        if (re[k].edge == e.id || spdi.role(r, k) != EdgeRole::kExit) continue;
        by_edge_[e.id].push_back({r, re[k].edge, succ_affine(spdi, r, e.id, re[k].edge)});
      }
    }
  }
}

const Transition* TransitionIndex::find(EdgeId from, EdgeId to) const {
  for (const Transition& t : by_edge_.at(from)) {
    if (t.to == to) return &t;
  }
  return nullptr;
}

}  // namespace spdi
