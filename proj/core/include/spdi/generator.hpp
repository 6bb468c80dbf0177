#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "spdi/geometry.hpp"
#include "spdi/model.hpp"
#include "spdi/rng.hpp"

namespace spdi {

struct GenConfig {
  std::size_t n_regions = 10;
  std::uint64_t seed = 1;
  double side = 1000.0;
  std::size_t max_retries = 20;
};

// Voronoi cells of the sites inside [0, side]^2, one CCW polygon per site in
// site order, with shared vertices snapped together. Returns nullopt when a
// cell degenerates.
std::optional<std::vector<Polygon>> voronoi_partition(std::span<const Point2> sites, double side);

// Shared-vertex form of a partition: vertices numbered from 1 in first
// appearance order, regions numbered from 1 with zero dynamics.
struct Partition {
  std::vector<Vertex> vertices;
  std::vector<Region> regions;
};

Partition index_partition(std::span<const Polygon> cells, double snap_tol);

// Picks each region's exit run and cone, most constrained region first,
// repairing dead ends by evicting owners. nullopt signals FAILURE.
std::optional<Spdi> assign_dynamics(const Partition& partition, SeededRng& rng);

// Throws GenerationError once every attempt failed.
Spdi generate_spdi(const GenConfig& cfg);

// Sites for one attempt, pairwise at least side * 1e-6 apart.
std::vector<Point2> sample_sites(std::size_t n, double side, SeededRng& rng);

// count == 100 covers every (s, f) in {1..10}^2 once, in row-major order.
std::vector<ReachTask> generate_tasks(const Spdi& spdi, std::size_t count, SeededRng& rng);

}  // namespace spdi
