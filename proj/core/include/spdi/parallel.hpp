#pragma once

#include <atomic>
#include <chrono>
#include <cstdint>
#include <functional>
#include <optional>

#include "spdi/explorer.hpp"

namespace spdi {

struct EngineConfig {
  unsigned workers = 1;
  unsigned poll_interval = 64;       // steps between checks of the shared stop flags
  std::size_t queue_capacity = 4096;  // handoff is refused beyond this
  std::uint64_t max_steps = 10'000'000;  // across all workers; 0 disables
  std::optional<std::chrono::steady_clock::time_point> deadline;
  const std::atomic<bool>* external_stop = nullptr;
  // Instrumentation: (worker index, steps taken by that worker so far).
  std::function<void(unsigned, std::uint64_t)> on_step;
};

struct EngineStats {
  std::uint64_t steps = 0;
  std::uint64_t cycles_analysed = 0;
  std::uint64_t items_enqueued = 0;  // handed-off branches
  std::uint64_t items_explored = 0;  // including the start intervals
  std::uint64_t items_cancelled = 0;
  unsigned final_idle = 0;
  bool idle_went_negative = false;
};

// Multi-worker search sharing a work queue. Idle workers receive branches
// handed off at branch points; the first witness wins and stops the rest.
// With one worker the exploration order and witness match solve_sequential.
ReachResult solve_parallel(const Spdi& spdi, const ReachTask& task, const EngineConfig& config,
                           EngineStats* stats = nullptr);

}  // namespace spdi
