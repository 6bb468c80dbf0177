#include "spdi/model.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "spdi/error.hpp"

namespace spdi {

const char* to_string(EdgeRole role) {
  switch (role) {
    case EdgeRole::kEntry: return "ENTRY";
    case EdgeRole::kExit: return "EXIT";
    case EdgeRole::kTangent: return "TANGENT";
    case EdgeRole::kMixed: return "MIXED";
  }
  return "?";
}

const char* to_string(Violation::Kind kind) {
  switch (kind) {
    case Violation::Kind::kStructure: return "structure";
    case Violation::Kind::kConvexity: return "convexity";
    case Violation::Kind::kTiling: return "tiling";
    case Violation::Kind::kCone: return "cone";
    case Violation::Kind::kGoodness: return "goodness";
    case Violation::Kind::kOwnership: return "ownership";
  }
  return "?";
}

std::string edge_name(VertexId a, VertexId b) {
  return "e" + std::to_string(std::min(a, b)) + "_" + std::to_string(std::max(a, b));
}

namespace {

int tol_sign(double x) {
  if (x > kEps) return 1;
  if (x < -kEps) return -1;
  return 0;
}

EdgeRole classify(Vector2 outward, Vector2 l, Vector2 r) {
  const Vector2 n = normalized(outward);
  const int sl = tol_sign(dot(n, normalized(l)));
  const int sr = tol_sign(dot(n, normalized(r)));
  if ((sl > 0 && sr < 0) || (sl < 0 && sr > 0)) return EdgeRole::kMixed;
  if (sl > 0 || sr > 0) return EdgeRole::kExit;
  if (sl < 0 || sr < 0) return EdgeRole::kEntry;
  return EdgeRole::kTangent;
}

}  // namespace

Spdi Spdi::build(std::vector<Vertex> vertices, std::vector<Region> regions) {
  Spdi s;
  std::unordered_map<VertexId, Point2> points;
  for (const Vertex& v : vertices) {
    if (!points.emplace(v.id, v.p).second) {
      throw ValidationError("duplicate vertex id " + std::to_string(v.id));
    }
  }
  std::set<RegionId> region_ids;
  for (Region& r : regions) {
    if (!region_ids.insert(r.id).second) {
      throw ValidationError("duplicate region id " + std::to_string(r.id));
    }
    if (r.vertex_ids.size() < 3) {
      throw ValidationError("region " + std::to_string(r.id) + " has fewer than 3 vertices");
    }
    r.vertices.clear();
    for (VertexId vid : r.vertex_ids) {
      auto it = points.find(vid);
      if (it == points.end()) {
        throw ValidationError("region " + std::to_string(r.id) + " references unknown vertex " +
                              std::to_string(vid));
      }
      r.vertices.push_back(it->second);
    }
  }

  std::map<std::pair<VertexId, VertexId>, EdgeId> by_pair;
  s.region_edges_.resize(regions.size());
  for (std::size_t ri = 0; ri < regions.size(); ++ri) {
    const Region& r = regions[ri];
    const std::size_t m = r.vertex_ids.size();
    for (std::size_t k = 0; k < m; ++k) {
      const VertexId a = r.vertex_ids[k];
      const VertexId b = r.vertex_ids[(k + 1) % m];
      if (a == b) {
        throw ValidationError("region " + std::to_string(r.id) + " repeats vertex " +
                              std::to_string(a));
      }
      const auto key = std::minmax(a, b);
      auto [it, inserted] = by_pair.try_emplace({key.first, key.second},
                                                static_cast<EdgeId>(s.edges_.size()));
      if (inserted) {
        Edge e;
        e.id = it->second;
        e.name = edge_name(a, b);
        const Point2 pa = points.at(a);
        const Point2 pb = points.at(b);
        const bool a_first = lex_less(pa, pb) || (pa == pb && a < b);
        e.vid0 = a_first ? a : b;
        e.vid1 = a_first ? b : a;
        e.v0 = a_first ? pa : pb;
        e.v1 = a_first ? pb : pa;
        s.edges_.push_back(std::move(e));
      }
      Edge& e = s.edges_[it->second];
      const bool forward = (a == e.vid0);
      auto& side = forward ? e.left_region : e.right_region;
      if (side) {
        s.issues_.push_back("edge " + e.name + " traversed in the same direction by regions " +
                            std::to_string(regions[*side].id) + " and " + std::to_string(r.id));
      } else {
        side = ri;
      }
      s.region_edges_[ri].push_back({e.id, forward});
    }
  }
  for (const Edge& e : s.edges_) s.edge_by_name_.emplace(e.name, e.id);

  if (!vertices.empty()) {
    s.bbox_ = {vertices[0].p.x, vertices[0].p.y, vertices[0].p.x, vertices[0].p.y};
    for (const Vertex& v : vertices) {
      s.bbox_.xmin = std::min(s.bbox_.xmin, v.p.x);
      s.bbox_.ymin = std::min(s.bbox_.ymin, v.p.y);
      s.bbox_.xmax = std::max(s.bbox_.xmax, v.p.x);
      s.bbox_.ymax = std::max(s.bbox_.ymax, v.p.y);
    }
  }
  s.vertices_ = std::move(vertices);
  s.regions_ = std::move(regions);

  s.roles_.resize(s.regions_.size());
  for (std::size_t ri = 0; ri < s.regions_.size(); ++ri) {
    const Region& r = s.regions_[ri];
    for (std::size_t k = 0; k < s.region_edges_[ri].size(); ++k) {
      s.roles_[ri].push_back(classify(s.outward_normal(ri, k), r.dyn_l, r.dyn_r));
    }
  }
  return s;
}

std::optional<EdgeRole> Spdi::role_of(std::size_t region, EdgeId e) const {
  const auto& re = region_edges_.at(region);
  for (std::size_t k = 0; k < re.size(); ++k) {
    if (re[k].edge == e) return roles_[region][k];
  }
  return std::nullopt;
}

Vector2 Spdi::outward_normal(std::size_t region, std::size_t k) const {
  const RegionEdge& re = region_edges_.at(region).at(k);
  const Edge& e = edges_.at(re.edge);
  const Vector2 d = re.forward ? (e.v1 - e.v0) : (e.v0 - e.v1);
  // For a CCW boundary the interior is on the left of d.
  return {d.dy, -d.dx};
}

std::optional<EdgeId> Spdi::find_edge(const std::string& name) const {
  auto it = edge_by_name_.find(name);
  if (it == edge_by_name_.end()) return std::nullopt;
  return it->second;
}

std::optional<EdgeId> Spdi::find_edge(VertexId a, VertexId b) const {
  return find_edge(edge_name(a, b));
}

std::optional<std::size_t> Spdi::find_region(RegionId id) const {
  for (std::size_t i = 0; i < regions_.size(); ++i) {
    if (regions_[i].id == id) return i;
  }
  return std::nullopt;
}

std::vector<std::size_t> Spdi::adjacent_regions(EdgeId e) const {
  std::vector<std::size_t> out;
  const Edge& edge = edges_.at(e);
  if (edge.left_region) out.push_back(*edge.left_region);
  if (edge.right_region) out.push_back(*edge.right_region);
  return out;
}

Point2 point_at(const Edge& e, double lambda) {
  return {(1.0 - lambda) * e.v0.x + lambda * e.v1.x, (1.0 - lambda) * e.v0.y + lambda * e.v1.y};
}

double coord_of(const Edge& e, Point2 p) {
  const Vector2 w = e.v1 - e.v0;
  const double len2 = dot(w, w);
  const double lambda = dot(p - e.v0, w) / len2;
  const double scale = std::max(1.0, std::sqrt(len2));
  if (lambda < -kEps || lambda > 1.0 + kEps ||
      std::abs(cross(w, p - e.v0)) / std::sqrt(len2) > kEps * scale) {
    throw GeometryError("point is not on edge " + e.name);
  }
  return std::clamp(lambda, 0.0, 1.0);
}

std::map<EdgeId, EdgeRole> classify_region_edges(const Spdi& spdi, std::size_t region) {
  std::map<EdgeId, EdgeRole> out;
  const auto& re = spdi.region_edges(region);
  for (std::size_t k = 0; k < re.size(); ++k) {
    const EdgeRole role = spdi.role(region, k);
    if (role == EdgeRole::kMixed) {
      throw GoodnessViolation("region " + std::to_string(spdi.region(region).id) +
                              ": dynamics cone straddles edge " + spdi.edge(re[k].edge).name);
    }
    out.emplace(re[k].edge, role);
  }
  return out;
}

namespace {

bool on_bbox_boundary(const Edge& e, const BoundingBox& bb, double tol) {
  auto same = [tol](double a, double b) { return std::abs(a - b) <= tol; };
  return (same(e.v0.x, bb.xmin) && same(e.v1.x, bb.xmin)) ||
         (same(e.v0.x, bb.xmax) && same(e.v1.x, bb.xmax)) ||
         (same(e.v0.y, bb.ymin) && same(e.v1.y, bb.ymin)) ||
         (same(e.v0.y, bb.ymax) && same(e.v1.y, bb.ymax));
}

}  // namespace

std::vector<Violation> validate_spdi(const Spdi& spdi) {
  std::vector<Violation> out;
  using K = Violation::Kind;
  auto region_name = [&](std::size_t ri) { return "region " + std::to_string(spdi.region(ri).id); };

  for (const std::string& issue : spdi.structural_issues()) out.push_back({K::kStructure, issue});
  if (spdi.regions().empty()) {
    out.push_back({K::kStructure, "SPDI has no regions"});
    return out;
  }

  // (a) convexity
  for (std::size_t ri = 0; ri < spdi.regions().size(); ++ri) {
    if (!is_strictly_convex_ccw(spdi.region(ri).vertices)) {
      out.push_back({K::kConvexity, region_name(ri) + " is not strictly convex CCW"});
    }
  }

  // (b) tiling and edge-to-edge
  const BoundingBox& bb = spdi.bbox();
  const double diag = std::hypot(bb.width(), bb.height());
  const double scale = std::max(1.0, diag);
  const double len_tol = kEps * scale;
  double area_sum = 0.0;
  for (const Region& r : spdi.regions()) area_sum += signed_area(r.vertices);
  const double bbox_area = bb.width() * bb.height();
  const double perimeter = 2.0 * (bb.width() + bb.height());
  if (std::abs(area_sum - bbox_area) > kEps * perimeter * scale) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "region areas sum to " << area_sum << " but the bounding box has area " << bbox_area;
    out.push_back({K::kTiling, msg.str()});
  }
  for (const Edge& e : spdi.edges()) {
    if (e.boundary() && !on_bbox_boundary(e, bb, len_tol)) {
      out.push_back({K::kTiling, "edge " + e.name + " has one adjacent region but is interior"});
    }
  }
  for (const Edge& e : spdi.edges()) {
    const double xmin = std::min(e.v0.x, e.v1.x) - len_tol;
    const double xmax = std::max(e.v0.x, e.v1.x) + len_tol;
    const double ymin = std::min(e.v0.y, e.v1.y) - len_tol;
    const double ymax = std::max(e.v0.y, e.v1.y) + len_tol;
    const Vector2 w = e.v1 - e.v0;
    const double len = norm(w);
    for (const Vertex& v : spdi.vertices()) {
      if (v.id == e.vid0 || v.id == e.vid1) continue;
      if (v.p.x < xmin || v.p.x > xmax || v.p.y < ymin || v.p.y > ymax) continue;
      const double along = dot(v.p - e.v0, w) / len;
      const double off = std::abs(cross(w, v.p - e.v0)) / len;
      if (off <= len_tol && along > len_tol && along < len - len_tol) {
        out.push_back({K::kTiling, "T-junction: vertex " + std::to_string(v.id) +
                                       " lies inside edge " + e.name});
      }
    }
  }

  // (c) cones
  for (std::size_t ri = 0; ri < spdi.regions().size(); ++ri) {
    const Region& r = spdi.region(ri);
    if (norm(r.dyn_l) == 0.0 || norm(r.dyn_r) == 0.0) {
      out.push_back({K::kCone, region_name(ri) + " has a zero dynamics vector"});
      continue;
    }
    const Vector2 l = normalized(r.dyn_l);
    const Vector2 rr = normalized(r.dyn_r);
    if (cross(rr, l) < -kEps || (cross(rr, l) <= kEps && dot(rr, l) < 0.0)) {
      out.push_back({K::kCone, region_name(ri) + " has a cone that does not open CCW from r to l"});
    }
  }

  // (d) goodness
  for (std::size_t ri = 0; ri < spdi.regions().size(); ++ri) {
    const auto& re = spdi.region_edges(ri);
    for (std::size_t k = 0; k < re.size(); ++k) {
      if (spdi.role(ri, k) == EdgeRole::kMixed) {
        out.push_back({K::kGoodness, region_name(ri) + ": dynamics cone straddles edge " +
                                         spdi.edge(re[k].edge).name});
      }
    }
  }

  // (e) single ownership of output edges
  for (const Edge& e : spdi.edges()) {
    if (!e.left_region || !e.right_region) continue;
    const auto a = spdi.role_of(*e.left_region, e.id);
    const auto b = spdi.role_of(*e.right_region, e.id);
    if (a == EdgeRole::kExit && b == EdgeRole::kExit) {
      out.push_back({K::kOwnership, "edge " + e.name + " is an exit edge of both " +
                                        region_name(*e.left_region) + " and " +
                                        region_name(*e.right_region)});
    }
  }
  return out;
}

void validate_task(const Spdi& spdi, const ReachTask& task) {
  if (task.start.empty()) throw ValidationError("task has no start intervals");
  if (task.final.empty()) throw ValidationError("task has no final intervals");
  auto check = [&](const EdgeInterval& ei, const char* what) {
    if (ei.edge >= spdi.edges().size()) {
      throw ValidationError(std::string(what) + " interval references unknown edge " +
                            std::to_string(ei.edge));
    }
    if (!(ei.lo >= 0.0 && ei.hi <= 1.0 && ei.lo <= ei.hi)) {
      throw ValidationError(std::string(what) + " interval on " + spdi.edge(ei.edge).name +
                            " is not a valid sub-interval of [0,1]");
    }
  };
  for (const auto& s : task.start) check(s, "start");
  for (const auto& f : task.final) check(f, "final");
}

}  // namespace spdi
