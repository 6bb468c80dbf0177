#include "spdi/generator.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <set>

#include "spdi/error.hpp"

namespace spdi {

namespace {

constexpr double kConeMargin = 1e-3;  // rad
constexpr double kTwoPi = 2.0 * std::numbers::pi;

double wrap_2pi(double a) {
  a = std::fmod(a, kTwoPi);
  return a < 0 ? a + kTwoPi : a;
}

double angle_of(Vector2 v) { return std::atan2(v.dy, v.dx); }

Vector2 unit_at(double a) { return {std::cos(a), std::sin(a)}; }

using EdgeKey = std::pair<VertexId, VertexId>;

EdgeKey key_of(VertexId a, VertexId b) { return a < b ? EdgeKey{a, b} : EdgeKey{b, a}; }

}  // namespace

std::optional<std::vector<Polygon>> voronoi_partition(std::span<const Point2> sites, double side) {
  const Polygon square{{0, 0}, {side, 0}, {side, side}, {0, side}};
  std::vector<Polygon> cells;
  cells.reserve(sites.size());
  for (std::size_t i = 0; i < sites.size(); ++i) {
    Polygon cell = square;
    const Point2 si = sites[i];
    for (std::size_t j = 0; j < sites.size() && !cell.empty(); ++j) {
      if (j == i) continue;
      const Point2 sj = sites[j];
      HalfPlane hp{{sj.x - si.x, sj.y - si.y},
                   0.5 * ((sj.x * sj.x + sj.y * sj.y) - (si.x * si.x + si.y * si.y))};
      cell = clip_convex(cell, hp);
    }
    if (cell.size() < 3 || std::abs(signed_area(cell)) < kEps * kEps) return std::nullopt;
    cells.push_back(std::move(cell));
  }
  return cells;
}

Partition index_partition(std::span<const Polygon> cells, double snap_tol) {
  Partition out;
  const double tol2 = snap_tol * snap_tol;
  auto vertex_for = [&](Point2 p) -> VertexId {
    for (const Vertex& v : out.vertices) {
      double dx = v.p.x - p.x, dy = v.p.y - p.y;
      if (dx * dx + dy * dy <= tol2) return v.id;
    }
    VertexId id = static_cast<VertexId>(out.vertices.size()) + 1;
    out.vertices.push_back({id, p});
    return id;
  };
  for (std::size_t i = 0; i < cells.size(); ++i) {
    Region r;
    r.id = static_cast<RegionId>(i) + 1;
    for (Point2 p : cells[i]) {
      VertexId id = vertex_for(p);
      if (r.vertex_ids.empty() || r.vertex_ids.back() != id) r.vertex_ids.push_back(id);
    }
    while (r.vertex_ids.size() > 1 && r.vertex_ids.front() == r.vertex_ids.back()) {
      r.vertex_ids.pop_back();
    }
    out.regions.push_back(std::move(r));
  }
  return out;
}

namespace {

struct RegionGeo {
  std::vector<Vector2> d;
  std::vector<EdgeKey> keys;
};

struct ExitOption {
  double base = 0, g0 = 0, g1 = 0;
  std::vector<EdgeKey> exits;
};

std::vector<ExitOption> exit_options(const RegionGeo& g, const std::set<EdgeKey>& owned) {
  const std::size_t m = g.d.size();
  auto at = [m](std::size_t k, std::size_t off) { return (k + off) % m; };
  std::vector<bool> free(m);
  for (std::size_t k = 0; k < m; ++k) free[k] = owned.count(g.keys[k]) == 0;

  std::vector<ExitOption> out;
  for (std::size_t s = 0; s < m; ++s) {
    if (!free[s]) continue;
    const Vector2 pre = g.d[at(s, m - 1)];
    const double base = angle_of(pre);
    for (std::size_t len = 1; len + 2 <= m && free[at(s, len - 1)]; ++len) {
      const Vector2 post = g.d[at(s, len)];
      const Vector2 neg_post{-post.dx, -post.dy};
      if (cross(pre, neg_post) <= kEps) continue;
      const double width = std::atan2(cross(pre, neg_post), dot(pre, neg_post));
      std::vector<double> cuts{0.0, width};
      for (std::size_t j = 0; j < len; ++j) {
        double a = wrap_2pi(angle_of(g.d[at(s, j)]) - base);
        for (double c : {a, wrap_2pi(a + std::numbers::pi)}) {
          if (c > 0.0 && c < width) cuts.push_back(c);
        }
      }
      std::sort(cuts.begin(), cuts.end());
      for (std::size_t j = 0; j + 1 < cuts.size(); ++j) {
        if (cuts[j + 1] - cuts[j] <= 2.0 * kConeMargin) continue;
        ExitOption opt{base, cuts[j], cuts[j + 1], {}};
        const Vector2 mid = unit_at(base + 0.5 * (cuts[j] + cuts[j + 1]));
        for (std::size_t k = 0; k < m; ++k) {
          if (dot(Vector2{g.d[k].dy, -g.d[k].dx}, mid) > 0.0) opt.exits.push_back(g.keys[k]);
        }
        out.push_back(std::move(opt));
      }
    }
  }
  return out;
}

}  // namespace

std::optional<Spdi> assign_dynamics(const Partition& partition, SeededRng& rng) {
  std::map<VertexId, Point2> pos;
  for (const Vertex& v : partition.vertices) pos[v.id] = v.p;

  std::vector<Region> regions = partition.regions;
  const std::size_t n = regions.size();
  std::vector<RegionGeo> geo(n);
  std::map<EdgeKey, std::vector<std::size_t>> sides;
  for (std::size_t ri = 0; ri < n; ++ri) {
    const auto& ids = regions[ri].vertex_ids;
    const std::size_t m = ids.size();
    if (m < 3) return std::nullopt;
    for (std::size_t k = 0; k < m; ++k) {
      VertexId a = ids[k], b = ids[(k + 1) % m];
      geo[ri].d.push_back(normalized(pos.at(b) - pos.at(a)));
      geo[ri].keys.push_back(key_of(a, b));
      sides[key_of(a, b)].push_back(ri);
    }
  }

  // Shuffled rank breaks ties; the most constrained region goes first.
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  rng.shuffle(std::span<std::size_t>(order));
  std::vector<std::size_t> rank(n);
  for (std::size_t i = 0; i < n; ++i) rank[order[i]] = i;

  std::set<EdgeKey> owned;
  std::map<EdgeKey, std::size_t> owner;
  std::vector<std::vector<EdgeKey>> claimed(n);
  std::vector<bool> done(n, false);
  std::vector<std::vector<ExitOption>> opts(n);
  for (std::size_t ri = 0; ri < n; ++ri) opts[ri] = exit_options(geo[ri], owned);

  auto neighbours = [&](const std::vector<EdgeKey>& exits, std::size_t self) {
    std::set<std::size_t> out;
    for (const EdgeKey& k : exits) {
      for (std::size_t r : sides.at(k)) {
        if (r != self && !done[r]) out.insert(r);
      }
    }
    return out;
  };

  auto refresh = [&](const std::vector<EdgeKey>& keys) {
    std::set<std::size_t> touched;
    for (const EdgeKey& k : keys) {
      for (std::size_t r : sides.at(k)) {
        if (!done[r]) touched.insert(r);
      }
    }
    for (std::size_t r : touched) opts[r] = exit_options(geo[r], owned);
  };

  // bounded repair budget
  std::size_t remaining = n;
  auto assign = [&](std::size_t ri, const ExitOption& opt) {
    double x = rng.uniform(opt.g0 + kConeMargin, opt.g1 - kConeMargin);
    double y = rng.uniform(opt.g0 + kConeMargin, opt.g1 - kConeMargin);
    if (x > y) std::swap(x, y);
    regions[ri].dyn_r = unit_at(opt.base + x);
    regions[ri].dyn_l = unit_at(opt.base + y);
    done[ri] = true;
    --remaining;
    claimed[ri] = opt.exits;
    for (const EdgeKey& k : opt.exits) {
      owned.insert(k);
      owner[k] = ri;
    }
    refresh(opt.exits);
  };

  const std::size_t budget = 50 * n + 100;
  for (std::size_t step = 0; remaining > 0; ++step) {
    if (step >= budget) return std::nullopt;
    std::size_t ri = n;
    for (std::size_t r : order) {
      if (done[r]) continue;
      if (ri == n || opts[r].size() < opts[ri].size() ||
          (opts[r].size() == opts[ri].size() && rank[r] < rank[ri])) {
        ri = r;
      }
    }
    std::vector<ExitOption>& cand = opts[ri];
    if (cand.empty()) {
      // Min-conflicts repair: take the run that collides with the fewest
      // owners (sometimes a random one) and evict those owners.
      std::vector<ExitOption> all = exit_options(geo[ri], {});
      if (all.empty()) return std::nullopt;
      auto conflicts = [&](const ExitOption& o) {
        std::set<std::size_t> out;
        for (const EdgeKey& k : o.exits) {
          if (auto it = owner.find(k); it != owner.end()) out.insert(it->second);
        }
        return out;
      };
      std::size_t pick = rng.below(all.size());
      if (rng.uniform01() >= 0.3) {
        std::size_t best = conflicts(all[pick]).size();
        for (std::size_t i = 0; i < all.size(); ++i) {
          std::size_t c = conflicts(all[i]).size();
          if (c < best) {
            best = c;
            pick = i;
          }
        }
      }
      std::vector<EdgeKey> freed;
      for (std::size_t r : conflicts(all[pick])) {
        done[r] = false;
        ++remaining;
        for (const EdgeKey& k : claimed[r]) {
          owned.erase(k);
          owner.erase(k);
          freed.push_back(k);
        }
        claimed[r].clear();
        opts[r] = exit_options(geo[r], owned);
      }
      refresh(freed);
      assign(ri, all[pick]);
      continue;
    }

    std::vector<std::size_t> tries(cand.size());
    for (std::size_t i = 0; i < tries.size(); ++i) tries[i] = i;
    rng.shuffle(std::span<std::size_t>(tries));

    // Forward check: keep every untouched neighbour assignable.
    std::size_t chosen = tries.front();
    for (std::size_t i : tries) {
      std::set<EdgeKey> trial = owned;
      trial.insert(cand[i].exits.begin(), cand[i].exits.end());
      bool ok = true;
      for (std::size_t r : neighbours(cand[i].exits, ri)) {
        if (exit_options(geo[r], trial).empty()) {
          ok = false;
          break;
        }
      }
      if (ok) {
        chosen = i;
        break;
      }
    }

    assign(ri, cand[chosen]);
  }

  try {
    Spdi spdi = Spdi::build(partition.vertices, std::move(regions));
    if (!validate_spdi(spdi).empty()) return std::nullopt;
    return spdi;
  } catch (const Error&) {
    return std::nullopt;
  }
}

std::vector<Point2> sample_sites(std::size_t n, double side, SeededRng& rng) {
  const double min_sep2 = (side * 1e-6) * (side * 1e-6);
  std::vector<Point2> sites;
  sites.reserve(n);
  while (sites.size() < n) {
    Point2 p{rng.uniform(0.0, side), rng.uniform(0.0, side)};
    bool clash = std::any_of(sites.begin(), sites.end(), [&](Point2 q) {
      double dx = p.x - q.x, dy = p.y - q.y;
      return dx * dx + dy * dy < min_sep2;
    });
    if (!clash) sites.push_back(p);
  }
  return sites;
}

Spdi generate_spdi(const GenConfig& cfg) {
  if (cfg.n_regions < 1) throw GenerationError("n_regions must be at least 1", 0);
  if (!(cfg.side > 0.0)) throw GenerationError("side must be positive", 0);
  const std::size_t attempts = cfg.max_retries + 1;
  for (std::size_t attempt = 0; attempt < attempts; ++attempt) {
    SeededRng rng(cfg.seed ^ static_cast<std::uint64_t>(attempt));
    std::vector<Point2> sites = sample_sites(cfg.n_regions, cfg.side, rng);
    auto cells = voronoi_partition(sites, cfg.side);
    if (!cells) continue;
    Partition part = index_partition(*cells, 1e-9 * cfg.side);
    if (auto spdi = assign_dynamics(part, rng)) return std::move(*spdi);
  }
  throw GenerationError("generation failed after " + std::to_string(attempts) + " attempts",
                        attempts);
}

std::vector<ReachTask> generate_tasks(const Spdi& spdi, std::size_t count, SeededRng& rng) {
  if (count < 1) throw GenerationError("task count must be at least 1", 0);
  std::vector<std::pair<std::size_t, std::size_t>> shapes;
  if (count == 100) {
    for (std::size_t s = 1; s <= 10; ++s) {
      for (std::size_t f = 1; f <= 10; ++f) shapes.emplace_back(s, f);
    }
  } else {
    for (std::size_t i = 0; i < count; ++i) {
      auto s = static_cast<std::size_t>(rng.between(1, 10));
      auto f = static_cast<std::size_t>(rng.between(1, 10));
      shapes.emplace_back(s, f);
    }
  }
  const std::size_t n_edges = spdi.edges().size();
  std::vector<EdgeId> ids(n_edges);
  for (std::size_t i = 0; i < n_edges; ++i) ids[i] = static_cast<EdgeId>(i);

  auto pick = [&](std::size_t k) {
    if (k > n_edges) {
      throw GenerationError("SPDI has " + std::to_string(n_edges) + " edges, task needs " +
                                std::to_string(k),
                            0);
    }
    for (std::size_t i = 0; i < k; ++i) {
      std::swap(ids[i], ids[i + rng.below(n_edges - i)]);
    }
    std::vector<EdgeInterval> out;
    for (std::size_t i = 0; i < k; ++i) {
      double lo = 0, hi = 0;
      do {
        lo = rng.uniform01();
        hi = rng.uniform01();
        if (lo > hi) std::swap(lo, hi);
      } while (hi - lo < 0.01);
      out.push_back({ids[i], lo, hi});
    }
    return out;
  };

  std::vector<ReachTask> tasks;
  tasks.reserve(shapes.size());
  for (auto [s, f] : shapes) {
    ReachTask t;
    t.start = pick(s);
    t.final = pick(f);
    tasks.push_back(std::move(t));
  }
  return tasks;
}

}  // namespace spdi
