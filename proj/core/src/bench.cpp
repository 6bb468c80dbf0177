#include "spdi/bench.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>
#include <thread>

#include "spdi/error.hpp"
#include "spdi/parallel.hpp"

namespace spdi {

BenchSolver parallel_solver() {
  return [](const Spdi& spdi, const ReachTask& task, unsigned workers,
            std::chrono::steady_clock::time_point deadline) {
    EngineConfig cfg;
    cfg.workers = workers;
    cfg.deadline = deadline;
    cfg.max_steps = 0;
    return solve_parallel(spdi, task, cfg);
  };
}

namespace {

using Clock = std::chrono::steady_clock;

std::string compiler_id() {
#if defined(__clang__)
  return "clang " __clang_version__;
#elif defined(__GNUC__)
  return "gcc " __VERSION__;
#else
  return "unknown";
#endif
}

std::string fixed(double v, int prec) {
  if (std::isnan(v)) return "n/a";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", prec, v);
  return buf;
}

}  // namespace

BenchReport run_bench(const Spdi& spdi, std::span<const ReachTask> tasks, const BenchConfig& cfg,
                      const BenchSolver& solver, std::string name) {
  if (tasks.empty()) throw BenchError("no tasks to run");
  if (cfg.threads.empty()) throw BenchError("no thread counts given");
  if (!(cfg.timeout_s > 0.0)) throw BenchError("timeout must be positive");
  const unsigned reps = std::max(1u, cfg.reps);
  const auto timeout = std::chrono::duration_cast<Clock::duration>(
      std::chrono::duration<double>(cfg.timeout_s));

  BenchReport report;
  report.name = std::move(name);
  report.threads = cfg.threads;
  report.hardware_threads = std::thread::hardware_concurrency();
  report.compiler = compiler_id();
  report.cells.assign(tasks.size(), std::vector<BenchCell>(cfg.threads.size()));

  for (std::size_t ti = 0; ti < cfg.threads.size(); ++ti) {
    const unsigned k = cfg.threads[ti];
    if (cfg.warmup) (void)solver(spdi, tasks[0], k, Clock::now() + timeout);
    for (std::size_t t = 0; t < tasks.size(); ++t) {
      BenchCell& cell = report.cells[t][ti];
      double total = 0.0;
      for (unsigned r = 0; r < reps; ++r) {
        const auto t0 = Clock::now();
        ReachResult res = solver(spdi, tasks[t], k, t0 + timeout);
        double secs = std::chrono::duration<double>(Clock::now() - t0).count();
        if (res.verdict == Verdict::kUnknown || secs >= cfg.timeout_s) {
          cell.timed_out = true;
          secs = cfg.timeout_s;
        } else if (cell.verdict != Verdict::kUnknown && cell.verdict != res.verdict) {
          throw BenchError("task " + std::to_string(t) + ": verdict changed between repetitions");
        } else {
          cell.verdict = res.verdict;
        }
        total += secs;
      }
      cell.seconds = total / reps;
    }
  }

  for (std::size_t t = 0; t < tasks.size(); ++t) {
    std::optional<Verdict> seen;
    bool any_timeout = false;
    for (std::size_t ti = 0; ti < cfg.threads.size(); ++ti) {
      const BenchCell& c = report.cells[t][ti];
      any_timeout = any_timeout || c.timed_out;
      if (c.verdict == Verdict::kUnknown) continue;
      if (seen && *seen != c.verdict) {
        throw BenchError("task " + std::to_string(t) + ": verdict " + to_string(*seen) + " at " +
                         std::to_string(cfg.threads[0]) + " threads but " + to_string(c.verdict) +
                         " at " + std::to_string(cfg.threads[ti]));
      }
      seen = c.verdict;
    }
    if (any_timeout) report.excluded.push_back(t);
  }

  std::vector<bool> skip(tasks.size(), false);
  for (std::size_t t : report.excluded) skip[t] = true;
  const std::size_t used = tasks.size() - report.excluded.size();
  for (std::size_t ti = 0; ti < cfg.threads.size(); ++ti) {
    if (used == 0) {
      report.mean_s.push_back(std::numeric_limits<double>::quiet_NaN());
      continue;
    }
    double sum = 0.0;
    for (std::size_t t = 0; t < tasks.size(); ++t) {
      if (!skip[t]) sum += report.cells[t][ti].seconds;
    }
    report.mean_s.push_back(sum / static_cast<double>(used));
  }
  for (double m : report.mean_s) report.speedup.push_back(report.mean_s[0] / m);
  return report;
}

std::string format_table(std::span<const BenchReport> reports) {
  std::ostringstream out;
  if (reports.empty()) return "";
  const auto& threads = reports[0].threads;
  std::size_t name_w = 4;
  for (const BenchReport& r : reports) name_w = std::max(name_w, r.name.size());
  auto pad = [](std::string s, std::size_t w, bool right) {
    if (s.size() >= w) return s;
    return right ? std::string(w - s.size(), ' ') + s : s + std::string(w - s.size(), ' ');
  };
  const std::size_t col = 9;

  out << "Absolute testing time, mean value (s)\n";
  out << pad("SPDI", name_w, false);
  for (unsigned k : threads) out << " | " << pad(std::to_string(k), col, true);
  out << '\n';
  for (const BenchReport& r : reports) {
    out << pad(r.name, name_w, false);
    for (double m : r.mean_s) out << " | " << pad(fixed(m, 4), col, true);
    out << '\n';
  }
  out << "\nRelative speed-up\n";
  out << pad("SPDI", name_w, false);
  for (unsigned k : threads) out << " | " << pad(std::to_string(k), col, true);
  out << '\n';
  for (const BenchReport& r : reports) {
    out << pad(r.name, name_w, false);
    for (double s : r.speedup) out << " | " << pad(fixed(s, 2), col, true);
    out << '\n';
  }
  out << '\n';
  for (const BenchReport& r : reports) {
    out << r.name << ": " << r.cells.size() - r.excluded.size() << " of " << r.cells.size()
        << " tasks in means";
    if (!r.excluded.empty()) {
      out << ", excluded (timeout):";
      for (std::size_t t : r.excluded) out << ' ' << t;
    }
    out << '\n';
  }
  out << "host: " << reports[0].hardware_threads << " hardware threads, " << reports[0].compiler
      << '\n';
  return out.str();
}

std::string format_csv(std::span<const BenchReport> reports) {
  std::ostringstream out;
  out << "spdi,threads,mean_s,speedup,tasks_used,tasks_excluded\n";
  for (const BenchReport& r : reports) {
    for (std::size_t ti = 0; ti < r.threads.size(); ++ti) {
      out << r.name << ',' << r.threads[ti] << ',' << fixed(r.mean_s[ti], 6) << ','
          << fixed(r.speedup[ti], 4) << ',' << r.cells.size() - r.excluded.size() << ','
          << r.excluded.size() << '\n';
    }
  }
  return out.str();
}

}  // namespace spdi
