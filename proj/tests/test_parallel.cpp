#include <doctest.h>

#include <atomic>
#include <mutex>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "spdi/error.hpp"
#include "spdi/generator.hpp"
#include "spdi/io.hpp"
#include "spdi/parallel.hpp"

using namespace spdi;

namespace {

struct Instance {
  Spdi spdi;
  std::vector<ReachTask> tasks;
};

Instance make_instance(std::size_t n, std::uint64_t seed, std::size_t count) {
  Spdi g = generate_spdi({n, seed});
  SeededRng rng(seed + 1000);
  auto tasks = generate_tasks(g, count, rng);
  return {std::move(g), std::move(tasks)};
}

// The task of an instance with the most sequential search steps.
std::size_t heaviest(const Instance& inst, bool unreachable_only = false) {
  std::size_t best = 0;
  std::uint64_t most = 0;
  for (std::size_t i = 0; i < inst.tasks.size(); ++i) {
    auto r = solve_sequential(inst.spdi, inst.tasks[i]);
    if (unreachable_only && r.verdict != Verdict::kUnreachable) continue;
    if (r.stats.steps > most) {
      most = r.stats.steps;
      best = i;
    }
  }
  return best;
}

}  // namespace

TEST_CASE("one worker reproduces the sequential run exactly") {
  for (std::uint64_t seed = 1; seed <= 6; ++seed) {
    Instance inst = make_instance(20, seed, 15);
    for (const ReachTask& t : inst.tasks) {
      ReachResult seq = solve_sequential(inst.spdi, t);
      EngineConfig cfg;
      ReachResult par = solve_parallel(inst.spdi, t, cfg);
      REQUIRE(par.verdict == seq.verdict);
      if (seq.verdict == Verdict::kReachable) {
        CHECK(write_witness(inst.spdi, par) == write_witness(inst.spdi, seq));
      }
      CHECK(par.stats.steps == seq.stats.steps);
    }
  }
}

TEST_CASE("verdicts do not depend on the worker count") {
  for (std::uint64_t seed = 1; seed <= 6; ++seed) {
    Instance inst = make_instance(10 + 10 * (seed % 3), seed, 10);
    for (const ReachTask& t : inst.tasks) {
      Verdict expected = solve_sequential(inst.spdi, t).verdict;
      for (unsigned w : {2u, 4u, 8u}) {
        EngineConfig cfg;
        cfg.workers = w;
        EngineStats stats;
        ReachResult r = solve_parallel(inst.spdi, t, cfg, &stats);
        CHECK(r.verdict == expected);
        CHECK(stats.final_idle == w);
        CHECK_FALSE(stats.idle_went_negative);
        CHECK(stats.items_explored + stats.items_cancelled == stats.items_enqueued + t.start.size());
        if (r.verdict == Verdict::kReachable) {
          auto replay = oracles::replay_witness(inst.spdi, t, *r.witness);
          CHECK_MESSAGE(replay.ok, replay.why);
        }
      }
    }
  }
}

TEST_CASE("workers stop within one poll interval of the flag") {
  Instance inst = make_instance(60, 2, 20);
  const ReachTask& task = inst.tasks[heaviest(inst, true)];
  REQUIRE(solve_sequential(inst.spdi, task).verdict == Verdict::kUnreachable);
  REQUIRE(solve_sequential(inst.spdi, task).stats.steps > 200);

  for (unsigned workers : {1u, 4u}) {
    std::atomic<bool> flag{false};
    std::atomic<std::uint64_t> total{0};
    std::mutex mu;
    std::vector<std::uint64_t> seen(workers, 0), last(workers, 0);
    EngineConfig cfg;
    cfg.workers = workers;
    cfg.poll_interval = 64;
    cfg.external_stop = &flag;
    cfg.on_step = [&](unsigned w, std::uint64_t step) {
      if (total.fetch_add(1) + 1 == 100) flag.store(true);
      std::lock_guard lk(mu);
      if (flag.load() && seen[w] == 0) seen[w] = step;
      last[w] = step;
    };
    ReachResult r = solve_parallel(inst.spdi, task, cfg);
    CHECK(r.verdict == Verdict::kUnknown);
    for (unsigned w = 0; w < workers; ++w) {
      if (seen[w] == 0) continue;
      CHECK(last[w] - seen[w] + 1 <= cfg.poll_interval);
    }
  }
}

TEST_CASE("deadline, step cap and worker failures") {
  Instance inst = make_instance(40, 3, 10);
  const ReachTask& task = inst.tasks[heaviest(inst)];
  EngineConfig past;
  past.workers = 2;
  past.poll_interval = 1;
  past.deadline = std::chrono::steady_clock::now() - std::chrono::seconds(1);
  CHECK(solve_parallel(inst.spdi, task, past).verdict == Verdict::kUnknown);

  EngineConfig capped;
  capped.workers = 2;
  capped.poll_interval = 1;
  capped.max_steps = 3;
  if (solve_sequential(inst.spdi, task).stats.steps > 10) {
    CHECK_THROWS_AS(solve_parallel(inst.spdi, task, capped), SearchLimitError);
  }

  EngineConfig boom;
  boom.workers = 3;
  boom.on_step = [](unsigned, std::uint64_t step) {
    if (step == 2) throw std::runtime_error("injected");
  };
  CHECK_THROWS_AS(solve_parallel(inst.spdi, task, boom), EngineError);

  EngineConfig none;
  none.workers = 0;
  CHECK_THROWS_AS(solve_parallel(inst.spdi, task, none), EngineError);
}
