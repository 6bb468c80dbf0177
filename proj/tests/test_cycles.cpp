#include <doctest.h>

#include "fixtures.hpp"
#include "spdi/cycles.hpp"
#include "spdi/error.hpp"
#include "spdi/rng.hpp"

using namespace spdi;

namespace {

IntervalMap maps(double la, double lb, double ua, double ub) {
  return {{la, lb, std::nullopt}, {ua, ub, std::nullopt}, false};
}

IntervalSet one(double lo, double hi) {
  IntervalSet s;
  s.add({lo, hi});
  return s;
}

}  // namespace

TEST_CASE("endpoint_limit") {
  auto c = endpoint_limit({0.5, 0.1}, 0.9);
  CHECK(c.limit == doctest::Approx(0.2));
  CHECK(c.direction == Drift::kDecreasing);
  auto d = endpoint_limit({1.0, 0.1}, 0.0);
  CHECK(std::isinf(d.limit));
  CHECK(d.limit > 0);
  CHECK(d.direction == Drift::kIncreasing);
  auto id = endpoint_limit({1.0, 0.0}, 0.4);
  CHECK(id.limit == 0.4);
  CHECK(id.direction == Drift::kStationary);
  auto rep = endpoint_limit({2.0, -0.5}, 0.6);  // fixpoint 0.5, repelling
  CHECK(rep.direction == Drift::kIncreasing);
  CHECK(std::isinf(rep.limit));
  CHECK_THROWS_AS(endpoint_limit({0.0, 0.1}, 0.5), GeometryError);
  CHECK_THROWS_AS(endpoint_limit({-1.0, 0.1}, 0.5), GeometryError);
}

TEST_CASE("classify_cycle examples agree with the oracle") {
  SUBCASE("STAY") {
    IntervalMap m = maps(0.5, 0.1, 0.5, 0.3);
    CycleAnalysis a = classify_cycle(m, {0.2, 0.4});
    CHECK(a.type == CycleType::kStay);
    CHECK(hausdorff(a.swept_first_edge, one(0.2, 0.6)) < 1e-12);
    OracleResult o = iterate_cycle_oracle(m, {0.2, 0.4}, 100000);
    REQUIRE(o.terminated());
    CHECK(*o.type == CycleType::kStay);
    CHECK(hausdorff(o.swept(), one(0.2, 0.6)) < 1e-8);
  }
  SUBCASE("EXIT_RIGHT") {
    IntervalMap m = maps(1.0, 0.1, 1.0, 0.1);
    CycleAnalysis a = classify_cycle(m, {0.1, 0.2});
    CHECK(a.type == CycleType::kExitRight);
    CHECK(hausdorff(a.swept_first_edge, one(0.1, 1.0)) < 1e-12);
    OracleResult o = iterate_cycle_oracle(m, {0.1, 0.2}, 100000);
    REQUIRE(o.terminated());
    CHECK(*o.type == CycleType::kExitRight);
  }
  SUBCASE("DIE after one iterate") {
    IntervalMap m = maps(0.5, 0.4, 0.5, 0.1);
    CycleAnalysis a = classify_cycle(m, {0.3, 0.6});
    CHECK(a.type == CycleType::kDie);
    CHECK(a.iterations_used == 1);
    CHECK(hausdorff(a.swept_first_edge, one(0.3, 0.6)) < 1e-15);
    OracleResult o = iterate_cycle_oracle(m, {0.3, 0.6}, 100000);
    REQUIRE(o.terminated());
    CHECK(*o.type == CycleType::kDie);
    CHECK(o.iterations == 1);
  }
  SUBCASE("EXIT_LEFT and EXIT_BOTH") {
    CHECK(classify_cycle(maps(1.0, -0.1, 1.0, -0.05), {0.5, 0.9}).type == CycleType::kExitLeft);
    CHECK(classify_cycle(maps(1.5, -0.25, 1.5, -0.25), {0.4, 0.6}).type == CycleType::kExitBoth);
  }
  SUBCASE("flipping or flat maps are rejected") {
    IntervalMap flip = maps(0.5, 0.1, 0.5, 0.3);
    flip.flips = true;
    CHECK_THROWS_AS(classify_cycle(flip, {0.2, 0.4}), GeometryError);
    CHECK_THROWS_AS(classify_cycle(maps(0.0, 0.1, 0.5, 0.3), {0.2, 0.4}), GeometryError);
  }
}

TEST_CASE("iterate_cycle_oracle edge cases") {
  OracleResult id = iterate_cycle_oracle(maps(1, 0, 1, 0), {0.3, 0.4}, 10);
  REQUIRE(id.terminated());
  CHECK(*id.type == CycleType::kStay);
  for (const Interval& iv : id.trace) CHECK(iv == Interval{0.3, 0.4});
  CHECK_FALSE(iterate_cycle_oracle(maps(0.99, 0.001, 0.99, 0.005), {0.0, 0.1}, 1).terminated());
}

TEST_CASE("classifier properties on random maps") {
  SeededRng rng(101);
  std::size_t terminated = 0, total = 1000;
  for (std::size_t i = 0; i < total; ++i) {
    IntervalMap m = maps(rng.uniform(1e-9, 2.0), rng.uniform(-1, 1), rng.uniform(1e-9, 2.0), rng.uniform(-1, 1));
    double x = rng.uniform01(), y = rng.uniform01();
    Interval entry{std::min(x, y), std::max(x, y)};
    CycleAnalysis a = classify_cycle(m, entry);
    CHECK(a.swept_first_edge.contains(entry));
    if (a.type == CycleType::kDie) CHECK(a.iterations_used < 10'000'000);

    Interval inner{entry.lo + 0.25 * entry.width(), entry.hi - 0.25 * entry.width()};
    CycleAnalysis b = classify_cycle(m, inner);
    if (a.type != CycleType::kDie && b.type != CycleType::kDie) {
      CHECK(a.swept_first_edge.contains(b.swept_first_edge, 1e-9));
    }

    OracleResult o = iterate_cycle_oracle(m, entry, 100000);
    if (!o.terminated()) continue;
    ++terminated;
    CHECK(*o.type == a.type);
    CHECK(hausdorff(o.swept(), a.swept_first_edge) <= 1e-6);
  }
  CHECK(terminated >= 990);
}

TEST_CASE("spinbox cycle images") {
  Spdi s = fixtures::spinbox();
  std::vector<EdgeId> cyc{fixtures::edge(s, "e2_5"), fixtures::edge(s, "e3_5"), fixtures::edge(s, "e4_5"),
                          fixtures::edge(s, "e1_5")};
  EdgeInterval entry{cyc[0], 0.7, 0.75};
  std::vector<EdgeId> closed = cyc;
  closed.push_back(cyc[0]);
  IntervalMap m = compose_signature(s, closed);
  OracleResult o = iterate_cycle_oracle(m, entry.interval(), 100000);
  REQUIRE(o.terminated());

  // Oracle sweep on the second edge: one stepwise successor of each iterate.
  auto steps = resolve_signature(s, closed);
  IntervalSet second;
  for (const Interval& iv : o.trace) {
    if (auto img = succ_interval(s, steps[0].region, steps[0].from, steps[0].to, iv)) second.add(*img);
  }

  SUBCASE("final inside the second edge's sweep") {
    Interval band = second.parts().back();
    double mid = 0.5 * (band.lo + band.hi);
    ReachTask task{{entry}, {{cyc[1], mid - 1e-4, mid + 1e-4}}};
    CycleImages r = test_cycle_and_get_final_images(s, cyc, entry, task);
    REQUIRE(r.hit);
    CHECK(r.hit->offset == 1);
    CHECK(r.hit->edge == cyc[1]);
    CHECK(r.hit->intersection.lo >= mid - 1e-4);
    CHECK(r.analysis.type == CycleType::kStay);
  }
  SUBCASE("final elsewhere") {
    ReachTask task{{entry}, {{fixtures::edge(s, "e1_2"), 0.1, 0.9}}};
    CycleImages r = test_cycle_and_get_final_images(s, cyc, entry, task);
    CHECK_FALSE(r.hit);
    REQUIRE(r.analysis.per_edge_swept.size() == 4);
    for (const IntervalSet& e : r.analysis.per_edge_swept) CHECK_FALSE(e.empty());
    CHECK(hausdorff(r.analysis.per_edge_swept[0], o.swept()) < 1e-6);
    CHECK(hausdorff(r.analysis.per_edge_swept[1], second) < 1e-6);
    CHECK_FALSE(r.images.empty());
  }
  SUBCASE("open edge list is rejected") {
    std::vector<EdgeId> open{cyc[0], cyc[1], cyc[2]};
    ReachTask task{{entry}, {{cyc[1], 0.1, 0.2}}};
    CHECK_THROWS_AS(test_cycle_and_get_final_images(s, open, entry, task), SignatureError);
  }
}

TEST_CASE("dying cycle from explicit step maps") {
  // Two steps whose composition is L=(0.5,0.4), U=(0.5,0.1).
  std::vector<EdgeId> cyc{0, 1};
  std::vector<IntervalMap> steps{maps(0.5, 0.4, 0.5, 0.1), IntervalMap::identity()};
  std::vector<EdgeInterval> finals{{5, 0.0, 1.0}};
  CycleImages r = test_cycle_and_get_final_images(cyc, steps, {0.3, 0.6}, finals);
  CHECK(r.analysis.type == CycleType::kDie);
  CHECK(r.analysis.iterations_used == 1);
  REQUIRE(r.images.size() == 1);
  CHECK(r.images[0].lo == 0.3);
  CHECK(r.images[0].hi == 0.6);
  // The very first step already empties the interval.
  CHECK(r.analysis.per_edge_swept[1].empty());
}
