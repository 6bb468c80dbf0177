#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "spdi/explorer.hpp"
#include "spdi/interval.hpp"
#include "spdi/model.hpp"
#include "spdi/rng.hpp"

namespace oracles {

struct Crossing {
  spdi::EdgeId edge = 0;
  double lambda = 0.0;
  spdi::Point2 p;
};

// First boundary edge of the region hit by the ray, ignoring `from`.
std::optional<Crossing> region_exit(const spdi::Spdi& s, std::size_t region, spdi::Point2 p,
                                    spdi::Vector2 dir, spdi::EdgeId from);

// Uniform direction between dyn_r and dyn_l.
spdi::Vector2 sample_cone(const spdi::Region& r, spdi::SeededRng& rng);

struct SampleReport {
  std::size_t trajectories = 0;
  std::size_t reached = 0;
  std::size_t capped = 0;  // ran into the crossing cap
};

// Piecewise-straight trajectories from random start points, one random cone
// direction per region visit, each region crossed exactly.
SampleReport sample_trajectories(const spdi::Spdi& s, const spdi::ReachTask& task, std::size_t n,
                                 std::uint64_t seed, std::size_t max_crossings = 1000);

// Hull of succ_point over n random (point, cone vector) pairs plus the four
// corner combinations; nullopt if none lands on e_out.
std::optional<spdi::Interval> sampled_image(const spdi::Spdi& s, std::size_t region,
                                            spdi::EdgeId e_in, spdi::EdgeId e_out,
                                            const spdi::Interval& iv, std::size_t n,
                                            spdi::SeededRng& rng);

struct Replay {
  bool ok = false;
  std::string why;
  spdi::Interval final_hit;
};

// Replays a witness with stepwise succ_interval and brute-force cycle
// iteration; ok when every step is nonempty and the end meets task.final.
Replay replay_witness(const spdi::Spdi& s, const spdi::ReachTask& task, const spdi::Witness& w,
                      double tol = 1e-9);

}  // namespace oracles
