#pragma once

#include <optional>
#include <span>
#include <vector>

#include "spdi/interval.hpp"
#include "spdi/model.hpp"

namespace spdi {

// x -> a * x + b on edge coordinates. A constant map (a == 0) may carry an
// infinite offset, standing for an image that is unbounded on one side.
struct AffineMap1 {
  double a = 1.0;
  double b = 0.0;
  // Inputs in [0,1] whose image also lies in [0,1]; nullopt = not tracked.
  std::optional<Interval> dom;

  double operator()(double x) const { return a == 0.0 ? b : a * x + b; }
  bool finite() const;
};

// outer o inner.
AffineMap1 compose(const AffineMap1& outer, const AffineMap1& inner);

// Closed form of an interval successor. Without flips the image of [lo, hi]
// is [lower(lo), upper(hi)]; with flips (orientation-reversing projection)
// it is [lower(hi), upper(lo)]. Images are clamped to [0, 1] on application.
struct IntervalMap {
  AffineMap1 lower;
  AffineMap1 upper;
  bool flips = false;

  static IntervalMap identity() { return {{1.0, 0.0, Interval{0.0, 1.0}}, {1.0, 0.0, Interval{0.0, 1.0}}, false}; }

  // Untruncated image.
  Interval apply_raw(const Interval& iv) const;
  // Clamped image; nullopt when empty.
  std::optional<Interval> apply(const Interval& iv) const;
};

// second o first.
IntervalMap compose(const IntervalMap& second, const IntervalMap& first);

// Coordinate on e_out where the ray from point_at(e_in, lambda) along c crosses
// e_out, or nullopt when it misses. Throws GeometryError if c is outside the
// region's cone.
std::optional<double> succ_point(const Spdi& spdi, std::size_t region, EdgeId e_in, EdgeId e_out,
                                 Vector2 c, double lambda);

// Interval of e_out reachable from iv on e_in under the region's dynamics;
// nullopt when empty. Only edges the region enters through produce images.
std::optional<Interval> succ_interval(const Spdi& spdi, std::size_t region, EdgeId e_in,
                                      EdgeId e_out, const Interval& iv);

// Closed-form lift of succ_interval for one region crossing.
IntervalMap succ_affine(const Spdi& spdi, std::size_t region, EdgeId e_in, EdgeId e_out);

struct SignatureStep {
  std::size_t region = 0;
  EdgeId from = 0;
  EdgeId to = 0;
};

// Region of every consecutive edge pair. Throws SignatureError when two
// consecutive edges do not share a region.
std::vector<SignatureStep> resolve_signature(const Spdi& spdi, std::span<const EdgeId> sigma);

IntervalMap compose_signature(const Spdi& spdi, std::span<const EdgeId> sigma);

// Stepwise succ_interval along sigma; nullopt as soon as a step is empty.
std::optional<Interval> succ_signature(const Spdi& spdi, std::span<const EdgeId> sigma,
                                       const Interval& iv);

// One admissible crossing: enter `region` through the source edge, leave
// through the exit edge `to`.
struct Transition {
  std::size_t region = 0;
  EdgeId to = 0;
  IntervalMap map;
};

// Precomputed successor structure: for every edge, the crossings available
// from it (through each region it is an entry edge of, to each exit edge).
class TransitionIndex {
 public:
  explicit TransitionIndex(const Spdi& spdi);

  std::span<const Transition> from(EdgeId e) const { return by_edge_.at(e); }
  const Transition* find(EdgeId from, EdgeId to) const;

 private:
  std::vector<std::vector<Transition>> by_edge_;
};

}  // namespace spdi
