#pragma once

#include <algorithm>
#include <optional>
#include <vector>

namespace spdi {

// Closed interval [lo, hi]; empty when lo > hi.
struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  bool empty() const { return lo > hi; }
  double width() const { return empty() ? 0.0 : hi - lo; }
  bool contains(double x) const { return lo <= x && x <= hi; }
  bool contains(const Interval& o) const { return o.empty() || (lo <= o.lo && o.hi <= hi); }

  friend bool operator==(const Interval&, const Interval&) = default;
};

inline Interval intersect(const Interval& a, const Interval& b) {
  return {std::max(a.lo, b.lo), std::min(a.hi, b.hi)};
}

inline bool overlaps(const Interval& a, const Interval& b) { return !intersect(a, b).empty(); }

inline Interval hull(const Interval& a, const Interval& b) {
  if (a.empty()) return b;
  if (b.empty()) return a;
  return {std::min(a.lo, b.lo), std::max(a.hi, b.hi)};
}

// Clamp to the unit edge-coordinate range; may produce an empty interval.
inline Interval clamp_unit(const Interval& iv) {
  return {std::max(0.0, iv.lo), std::min(1.0, iv.hi)};
}

// Finite union of disjoint closed intervals kept sorted by lower bound.
class IntervalSet {
 public:
  IntervalSet() = default;
  explicit IntervalSet(Interval iv) { add(iv); }

  // Adds iv, merging with every part it overlaps or touches.
  void add(Interval iv);
  void add(const IntervalSet& other);

  bool empty() const { return parts_.empty(); }
  const std::vector<Interval>& parts() const { return parts_; }
  std::size_t size() const { return parts_.size(); }

  Interval hull() const;
  double measure() const;
  bool contains(double x) const;
  bool contains(const Interval& iv) const;
  bool contains(const IntervalSet& other, double tol = 0.0) const;
  std::optional<Interval> first_overlap(const Interval& iv) const;

 private:
  std::vector<Interval> parts_;
};

// Hausdorff distance between two non-empty unions; +inf if exactly one is empty.
double hausdorff(const IntervalSet& a, const IntervalSet& b);

}  // namespace spdi
