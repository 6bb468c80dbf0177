#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "spdi/interval.hpp"
#include "spdi/model.hpp"
#include "spdi/successor.hpp"

namespace spdi {

enum class CycleType { kStay, kExitLeft, kExitRight, kExitBoth, kDie };

const char* to_string(CycleType t);
std::optional<CycleType> parse_cycle_type(std::string_view s);

enum class Drift { kIncreasing, kDecreasing, kStationary };

struct EndpointLimit {
  std::optional<double> fixpoint;  // b / (1 - a) when a != 1
  Drift direction = Drift::kStationary;
  double limit = 0.0;  // may be +/-inf
};

// Limit of x_{k+1} = m(x_k) from x0. Throws GeometryError for a <= 0.
EndpointLimit endpoint_limit(const AffineMap1& m, double x0);

struct CycleAnalysis {
  CycleType type = CycleType::kStay;
  IntervalSet swept_first_edge;
  std::vector<IntervalSet> per_edge_swept;  // filled by test_cycle_and_get_final_images
  std::size_t iterations_used = 0;
};

// Iterates the cycle map on the untruncated endpoint sequences l_k, u_k.
// The interval dies when l_k > u_k before either endpoint has left [0,1];
// afterwards a left exit is l_k < 0 and a right exit is u_k > 1. The type is
// settled as soon as a certificate rules out later crossings, using the
// endpoint limits; the swept set is the union of the clamped iterates.
// Throws GeometryError unless both endpoint maps have positive slope and the
// map preserves orientation.
CycleAnalysis classify_cycle(const IntervalMap& im, const Interval& entry);

struct OracleResult {
  std::vector<Interval> trace;        // clamped non-empty iterates, entry first
  std::optional<CycleType> type;      // nullopt: not terminated within max_iter
  std::size_t iterations = 0;

  bool terminated() const { return type.has_value(); }
  IntervalSet swept() const;
};

// Brute-force iteration of the cycle map with the same event semantics as
// classify_cycle; convergence means both endpoints moved less than eps.
OracleResult iterate_cycle_oracle(const IntervalMap& im, const Interval& entry,
                                  std::size_t max_iter, double eps = kEps);

struct CycleHit {
  std::size_t offset = 0;  // position in the cycle
  EdgeId edge = 0;
  Interval intersection;
};

struct CycleImages {
  std::optional<CycleHit> hit;
  std::vector<EdgeInterval> images;  // continuation set on the first cycle edge
  CycleAnalysis analysis;
};

// Analyses a closed cycle given its per-step maps: steps[k] maps cycle[k] to
// cycle[(k + 1) % n]. finals lists the target intervals on any edge.
CycleImages test_cycle_and_get_final_images(std::span<const EdgeId> cycle,
                                            std::span<const IntervalMap> steps,
                                            const Interval& entry,
                                            std::span<const EdgeInterval> finals);

// Same, deriving the step maps from the SPDI. Throws SignatureError when the
// edge list is not a closed signature.
CycleImages test_cycle_and_get_final_images(const Spdi& spdi, std::span<const EdgeId> cycle,
                                            const EdgeInterval& entry, const ReachTask& task);

}  // namespace spdi
