#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "spdi/geometry.hpp"
#include "spdi/interval.hpp"

namespace spdi {

using VertexId = std::int64_t;
using RegionId = std::int64_t;
using EdgeId = std::uint32_t;

struct Vertex {
  VertexId id = 0;
  Point2 p;
};

// One convex polygon of the partition with its dynamics cone, which opens
// counterclockwise from dyn_r to dyn_l.
struct Region {
  RegionId id = 0;
  std::vector<VertexId> vertex_ids;  // CCW
  std::vector<Point2> vertices;      // filled in by Spdi::build
  Vector2 dyn_l;
  Vector2 dyn_r;
};

// Edges are oriented v0 -> v1 with v0 lexicographically smaller. The left
// region traverses the edge v0 -> v1 on its CCW boundary, the right region
// traverses it v1 -> v0. Guards are the edges themselves and resets are the
// identity, so neither needs a separate representation.
struct Edge {
  EdgeId id = 0;
  std::string name;
  VertexId vid0 = 0;
  VertexId vid1 = 0;
  Point2 v0;
  Point2 v1;
  std::optional<std::size_t> left_region;
  std::optional<std::size_t> right_region;

  Segment segment() const { return {v0, v1}; }
  bool boundary() const { return !left_region || !right_region; }
};

// Edge of a region's boundary in CCW order; forward is true when the region
// traverses it v0 -> v1.
struct RegionEdge {
  EdgeId edge = 0;
  bool forward = true;
};

enum class EdgeRole { kEntry, kExit, kTangent, kMixed };

const char* to_string(EdgeRole role);

struct EdgeInterval {
  EdgeId edge = 0;
  double lo = 0.0;
  double hi = 1.0;

  Interval interval() const { return {lo, hi}; }
  friend bool operator==(const EdgeInterval&, const EdgeInterval&) = default;
};

struct ReachTask {
  std::vector<EdgeInterval> start;
  std::vector<EdgeInterval> final;
};

struct BoundingBox {
  double xmin = 0.0;
  double ymin = 0.0;
  double xmax = 0.0;
  double ymax = 0.0;

  double width() const { return xmax - xmin; }
  double height() const { return ymax - ymin; }
};

// Immutable SPDI: regions plus the derived edge and adjacency index.
class Spdi {
 public:
  // Derives the edge index. Throws ValidationError for structurally unusable
  // input (duplicate ids, unknown vertex references, fewer than 3 vertices);
  // geometric problems are left to validate_spdi.
  static Spdi build(std::vector<Vertex> vertices, std::vector<Region> regions);

  const std::vector<Vertex>& vertices() const { return vertices_; }
  const std::vector<Region>& regions() const { return regions_; }
  const std::vector<Edge>& edges() const { return edges_; }
  const Edge& edge(EdgeId id) const { return edges_.at(id); }
  const Region& region(std::size_t index) const { return regions_.at(index); }
  const BoundingBox& bbox() const { return bbox_; }

  const std::vector<RegionEdge>& region_edges(std::size_t region) const {
    return region_edges_.at(region);
  }
  // Role of the k-th boundary edge of a region.
  EdgeRole role(std::size_t region, std::size_t k) const { return roles_.at(region).at(k); }
  // Role of edge e seen from region, or nullopt if e is not on its boundary.
  std::optional<EdgeRole> role_of(std::size_t region, EdgeId e) const;
  // Outward normal (not normalized) of the k-th boundary edge of a region.
  Vector2 outward_normal(std::size_t region, std::size_t k) const;

  std::optional<EdgeId> find_edge(const std::string& name) const;
  std::optional<EdgeId> find_edge(VertexId a, VertexId b) const;
  std::optional<std::size_t> find_region(RegionId id) const;

  // Regions on either side of e (one or two).
  std::vector<std::size_t> adjacent_regions(EdgeId e) const;

  // Problems found while indexing (edges traversed twice in one direction).
  const std::vector<std::string>& structural_issues() const { return issues_; }

 private:
  std::vector<Vertex> vertices_;
  std::vector<Region> regions_;
  std::vector<Edge> edges_;
  std::vector<std::vector<RegionEdge>> region_edges_;
  std::vector<std::vector<EdgeRole>> roles_;
  std::unordered_map<std::string, EdgeId> edge_by_name_;
  BoundingBox bbox_;
  std::vector<std::string> issues_;
};

std::string edge_name(VertexId a, VertexId b);

// p(lambda) = (1 - lambda) v0 + lambda v1.
Point2 point_at(const Edge& e, double lambda);
// Inverse of point_at; throws GeometryError if p is farther than eps from e.
double coord_of(const Edge& e, Point2 p);

// Role of every boundary edge of a region. Throws GoodnessViolation naming the
// region and edge when the cone straddles an edge.
std::map<EdgeId, EdgeRole> classify_region_edges(const Spdi& spdi, std::size_t region);

struct Violation {
  enum class Kind { kStructure, kConvexity, kTiling, kCone, kGoodness, kOwnership };
  Kind kind;
  std::string message;
};

const char* to_string(Violation::Kind kind);

// Structural and goodness checks; empty result means the SPDI is valid.
std::vector<Violation> validate_spdi(const Spdi& spdi);

// Throws ValidationError when a task references unknown edges or holds an
// invalid interval.
void validate_task(const Spdi& spdi, const ReachTask& task);

}  // namespace spdi
