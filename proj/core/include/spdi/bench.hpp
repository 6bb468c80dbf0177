#pragma once

#include <chrono>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "spdi/explorer.hpp"
#include "spdi/model.hpp"

namespace spdi {

// (spdi, task, workers, deadline) -> result; UNKNOWN means the deadline hit.
using BenchSolver = std::function<ReachResult(const Spdi&, const ReachTask&, unsigned,
                                              std::chrono::steady_clock::time_point)>;

BenchSolver parallel_solver();

struct BenchConfig {
  std::vector<unsigned> threads{1, 2, 3, 4, 5, 6, 7, 8};
  double timeout_s = 5.0;
  unsigned reps = 1;
  bool warmup = true;
};

struct BenchCell {
  double seconds = 0.0;  // clipped to timeout_s, averaged over reps
  bool timed_out = false;
  Verdict verdict = Verdict::kUnknown;
};

struct BenchReport {
  std::string name;
  std::vector<unsigned> threads;
  std::vector<std::vector<BenchCell>> cells;  // [task][thread index]
  std::vector<std::size_t> excluded;          // tasks timing out at any thread count
  std::vector<double> mean_s;                 // NaN when every task is excluded
  std::vector<double> speedup;                // mean at the first thread count / mean_k
  unsigned hardware_threads = 0;
  std::string compiler;
};

// Times every task at every thread count, one cell at a time. Throws
// BenchError when two thread counts disagree on a finished verdict.
BenchReport run_bench(const Spdi& spdi, std::span<const ReachTask> tasks, const BenchConfig& cfg,
                      const BenchSolver& solver = parallel_solver(), std::string name = "spdi");

std::string format_table(std::span<const BenchReport> reports);
std::string format_csv(std::span<const BenchReport> reports);

}  // namespace spdi
