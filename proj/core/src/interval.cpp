#include "spdi/interval.hpp"

#include <cmath>
#include <limits>

namespace spdi {

void IntervalSet::add(Interval iv) {
  if (iv.empty()) return;
  std::vector<Interval> merged;
  merged.reserve(parts_.size() + 1);
  bool placed = false;
  for (const Interval& p : parts_) {
    if (p.hi < iv.lo) {
      merged.push_back(p);
    } else if (iv.hi < p.lo) {
      if (!placed) {
        merged.push_back(iv);
        placed = true;
      }
      merged.push_back(p);
    } else {
      iv = spdi::hull(iv, p);
    }
  }
  if (!placed) merged.push_back(iv);
  std::sort(merged.begin(), merged.end(),
            [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
  parts_ = std::move(merged);
}

void IntervalSet::add(const IntervalSet& other) {
  for (const Interval& p : other.parts_) add(p);
}

Interval IntervalSet::hull() const {
  if (parts_.empty()) return {1.0, 0.0};
  return {parts_.front().lo, parts_.back().hi};
}

double IntervalSet::measure() const {
  double m = 0.0;
  for (const Interval& p : parts_) m += p.width();
  return m;
}

bool IntervalSet::contains(double x) const {
  return std::any_of(parts_.begin(), parts_.end(), [x](const Interval& p) { return p.contains(x); });
}

bool IntervalSet::contains(const Interval& iv) const {
  if (iv.empty()) return true;
  return std::any_of(parts_.begin(), parts_.end(),
                     [&iv](const Interval& p) { return p.contains(iv); });
}

bool IntervalSet::contains(const IntervalSet& other, double tol) const {
  for (const Interval& q : other.parts_) {
    const Interval shrunk{q.lo + tol, q.hi - tol};
    if (shrunk.empty()) {
      const double mid = 0.5 * (q.lo + q.hi);
      bool near = std::any_of(parts_.begin(), parts_.end(), [&](const Interval& p) {
        return p.lo - tol <= mid && mid <= p.hi + tol;
      });
      if (!near) return false;
      continue;
    }
    bool inside = std::any_of(parts_.begin(), parts_.end(), [&](const Interval& p) {
      return p.lo - tol <= shrunk.lo && shrunk.hi <= p.hi + tol;
    });
    if (!inside) return false;
  }
  return true;
}

std::optional<Interval> IntervalSet::first_overlap(const Interval& iv) const {
  for (const Interval& p : parts_) {
    const Interval x = intersect(p, iv);
    if (!x.empty()) return x;
  }
  return std::nullopt;
}

namespace {

double point_distance(double x, const IntervalSet& s) {
  double best = std::numeric_limits<double>::infinity();
  for (const Interval& p : s.parts()) {
    if (p.contains(x)) return 0.0;
    best = std::min(best, std::min(std::abs(x - p.lo), std::abs(x - p.hi)));
  }
  return best;
}

// sup over x in a of dist(x, b). The supremum is attained at an endpoint of
// a or at the midpoint of a gap of b, clipped into a.
double directed(const IntervalSet& a, const IntervalSet& b) {
  double worst = 0.0;
  std::vector<double> candidates;
  for (const Interval& p : a.parts()) {
    candidates.push_back(p.lo);
    candidates.push_back(p.hi);
  }
  const auto& bp = b.parts();
  for (std::size_t i = 0; i + 1 < bp.size(); ++i) {
    const double mid = 0.5 * (bp[i].hi + bp[i + 1].lo);
    for (const Interval& p : a.parts()) {
      candidates.push_back(std::clamp(mid, p.lo, p.hi));
    }
  }
  for (double x : candidates) worst = std::max(worst, point_distance(x, b));
  return worst;
}

}  // namespace

double hausdorff(const IntervalSet& a, const IntervalSet& b) {
  if (a.empty() && b.empty()) return 0.0;
  if (a.empty() || b.empty()) return std::numeric_limits<double>::infinity();
  return std::max(directed(a, b), directed(b, a));
}

}  // namespace spdi
