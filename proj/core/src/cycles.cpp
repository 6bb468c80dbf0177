#include "spdi/cycles.hpp"

#include <cmath>
#include <limits>
#include <set>
#include <string_view>

#include "spdi/error.hpp"

namespace spdi {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr std::size_t kMaxClassifierSteps = 10'000'000;
constexpr double kTailTolerance = 1e-12;

void require_positive_slopes(const IntervalMap& im) {
  if (im.flips) throw GeometryError("cycle map reverses orientation");
  if (!(im.lower.a > 0.0) || !(im.upper.a > 0.0) || !im.lower.finite() || !im.upper.finite()) {
    throw GeometryError("cycle endpoint maps must have finite positive slope");
  }
}

CycleType type_from(bool left, bool right) {
  if (left && right) return CycleType::kExitBoth;
  if (left) return CycleType::kExitLeft;
  if (right) return CycleType::kExitRight;
  return CycleType::kStay;
}

void add_clamped(IntervalSet& set, double lo, double hi) {
  const Interval c = clamp_unit({lo, hi});
  if (!c.empty()) set.add(c);
}

// No later iterate can cross and consecutive iterates keep overlapping.
bool settled(double l, double u, const EndpointLimit& el, const EndpointLimit& eu) {
  const bool l_up = el.direction == Drift::kIncreasing;
  const bool u_up = eu.direction == Drift::kIncreasing;
  const bool l_down = el.direction == Drift::kDecreasing;
  const bool u_down = eu.direction == Drift::kDecreasing;
  if (!l_up && !u_down) return true;
  if (l_up && u_down) return el.limit <= eu.limit;
  if (l_up && u_up) return u >= el.limit;
  if (l_down && u_down) return eu.limit >= l;
  return false;
}

}  // namespace

const char* to_string(CycleType t) {
  switch (t) {
    case CycleType::kStay: return "STAY";
    case CycleType::kExitLeft: return "EXIT_LEFT";
    case CycleType::kExitRight: return "EXIT_RIGHT";
    case CycleType::kExitBoth: return "EXIT_BOTH";
    case CycleType::kDie: return "DIE";
  }
  return "?";
}

std::optional<CycleType> parse_cycle_type(std::string_view s) {
  for (CycleType t : {CycleType::kStay, CycleType::kExitLeft, CycleType::kExitRight,
                      CycleType::kExitBoth, CycleType::kDie}) {
    if (s == to_string(t)) return t;
  }
  return std::nullopt;
}

EndpointLimit endpoint_limit(const AffineMap1& m, double x0) {
  if (!(m.a > 0.0)) throw GeometryError("endpoint map must have positive slope");
  EndpointLimit r;
  const double next = m(x0);
  r.direction = next > x0 ? Drift::kIncreasing : (next < x0 ? Drift::kDecreasing : Drift::kStationary);
  if (m.a != 1.0) r.fixpoint = m.b / (1.0 - m.a);
  if (m.a < 1.0) {
    r.limit = *r.fixpoint;
  } else if (m.a == 1.0) {
    r.limit = m.b == 0.0 ? x0 : (m.b > 0.0 ? kInf : -kInf);
  } else if (r.direction == Drift::kStationary) {
    r.limit = x0;
  } else {
    r.limit = r.direction == Drift::kIncreasing ? kInf : -kInf;
  }
  return r;
}

CycleAnalysis classify_cycle(const IntervalMap& im, const Interval& entry) {
  require_positive_slopes(im);
  if (entry.empty()) throw GeometryError("cycle entry interval is empty");

  CycleAnalysis out;
  out.swept_first_edge.add(entry);
  double l = entry.lo;
  double u = entry.hi;
  bool left = false;
  bool right = false;

  for (;;) {
    const EndpointLimit el = endpoint_limit(im.lower, l);
    const EndpointLimit eu = endpoint_limit(im.upper, u);
    const bool escaped = left || right;
    const bool negligible_tail = std::isfinite(el.limit) && std::isfinite(eu.limit) &&
                                 std::abs(l - el.limit) <= kTailTolerance &&
                                 std::abs(u - eu.limit) <= kTailTolerance;
    if (escaped || settled(l, u, el, eu) || negligible_tail ||
        out.iterations_used >= kMaxClassifierSteps) {
      const bool l_leaves = left || (el.direction == Drift::kDecreasing && el.limit < 0.0);
      const bool u_leaves = right || (eu.direction == Drift::kIncreasing && eu.limit > 1.0);
      const double inf_l = std::min(l, el.limit);
      const double sup_u = std::max(u, eu.limit);
      if (left && right) {
        add_clamped(out.swept_first_edge, 0.0, 1.0);
      } else if (left) {
        add_clamped(out.swept_first_edge, 0.0, sup_u);
      } else if (right) {
        add_clamped(out.swept_first_edge, inf_l, 1.0);
      } else {
        add_clamped(out.swept_first_edge, inf_l, sup_u);
      }
      out.type = type_from(l_leaves, u_leaves);
      return out;
    }

    const double nl = im.lower(l);
    const double nu = im.upper(u);
    ++out.iterations_used;
    if (nl > nu) {
      out.type = CycleType::kDie;
      return out;
    }
    if (nl < 0.0) left = true;
    if (nu > 1.0) right = true;
    add_clamped(out.swept_first_edge, nl, nu);
    l = nl;
    u = nu;
  }
}

IntervalSet OracleResult::swept() const {
  IntervalSet s;
  for (const Interval& iv : trace) s.add(iv);
  return s;
}

OracleResult iterate_cycle_oracle(const IntervalMap& im, const Interval& entry,
                                  std::size_t max_iter, double eps) {
  OracleResult out;
  out.trace.push_back(entry);
  double l = entry.lo;
  double u = entry.hi;
  bool left = false;
  bool right = false;
  for (std::size_t k = 1; k <= max_iter; ++k) {
    const double nl = im.lower(l);
    const double nu = im.upper(u);
    out.iterations = k;
    if (!left && !right && nl > nu) {
      out.type = CycleType::kDie;
      return out;
    }
    if (nl < 0.0) left = true;
    if (nu > 1.0) right = true;
    const Interval c = clamp_unit({nl, nu});
    if (!c.empty()) out.trace.push_back(c);
    const bool l_done = nl < 0.0 || nl > 1.0 || std::abs(nl - l) < eps;
    const bool u_done = nu < 0.0 || nu > 1.0 || std::abs(nu - u) < eps;
    l = nl;
    u = nu;
    if (l_done && u_done) {
      out.type = type_from(left, right);
      return out;
    }
  }
  return out;
}

CycleImages test_cycle_and_get_final_images(std::span<const EdgeId> cycle,
                                            std::span<const IntervalMap> steps,
                                            const Interval& entry,
                                            std::span<const EdgeInterval> finals) {
  if (cycle.empty() || steps.size() != cycle.size()) {
    throw SignatureError("cycle needs one step map per edge");
  }
  IntervalMap m = IntervalMap::identity();
  for (const IntervalMap& s : steps) m = compose(s, m);

  CycleImages out;
  out.analysis = classify_cycle(m, entry);
  auto& per_edge = out.analysis.per_edge_swept;
  per_edge.assign(cycle.size(), {});
  per_edge[0] = out.analysis.swept_first_edge;
  for (std::size_t k = 1; k < cycle.size(); ++k) {
    for (const Interval& piece : per_edge[k - 1].parts()) {
      if (auto img = steps[k - 1].apply(piece)) per_edge[k].add(*img);
    }
  }

  for (std::size_t k = 0; k < cycle.size() && !out.hit; ++k) {
    for (const EdgeInterval& f : finals) {
      if (f.edge != cycle[k]) continue;
      if (auto x = per_edge[k].first_overlap(f.interval())) {
        out.hit = CycleHit{k, cycle[k], *x};
        break;
      }
    }
  }
  for (const Interval& piece : per_edge[0].parts()) {
    out.images.push_back({cycle[0], piece.lo, piece.hi});
  }
  return out;
}

CycleImages test_cycle_and_get_final_images(const Spdi& spdi, std::span<const EdgeId> cycle,
                                            const EdgeInterval& entry, const ReachTask& task) {
  if (cycle.empty()) throw SignatureError("empty cycle");
  if (entry.edge != cycle[0]) throw SignatureError("cycle entry must lie on the first cycle edge");
  std::set<EdgeId> seen(cycle.begin(), cycle.end());
  if (seen.size() != cycle.size()) throw SignatureError("cycle repeats an edge");

  std::vector<EdgeId> closed(cycle.begin(), cycle.end());
  closed.push_back(cycle[0]);
  std::vector<IntervalMap> steps;
  for (const SignatureStep& s : resolve_signature(spdi, closed)) {
    steps.push_back(succ_affine(spdi, s.region, s.from, s.to));
  }
  return test_cycle_and_get_final_images(cycle, steps, entry.interval(), task.final);
}

}  // namespace spdi
