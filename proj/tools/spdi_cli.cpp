#include <CLI11.hpp>

#include <chrono>
#include <iostream>
#include <sstream>

#include "spdi/bench.hpp"
#include "spdi/error.hpp"
#include "spdi/explorer.hpp"
#include "spdi/generator.hpp"
#include "spdi/io.hpp"
#include "spdi/parallel.hpp"
#include "spdi/plot.hpp"

namespace {

enum Exit : int { kDone = 0, kUnreachable = 1, kUsage = 2, kInternal = 3 };

std::vector<unsigned> parse_thread_list(const std::string& s) {
  std::vector<unsigned> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    auto dash = item.find('-');
    try {
      if (dash != std::string::npos) {
        unsigned a = std::stoul(item.substr(0, dash)), b = std::stoul(item.substr(dash + 1));
        for (unsigned k = a; k <= b; ++k) out.push_back(k);
      } else {
        out.push_back(static_cast<unsigned>(std::stoul(item)));
      }
    } catch (const std::logic_error&) {
      throw spdi::ValidationError("bad thread list '" + s + "'");
    }
  }
  for (unsigned k : out) {
    if (k == 0) throw spdi::ValidationError("thread counts must be positive");
  }
  if (out.empty()) throw spdi::ValidationError("empty thread list");
  return out;
}

void write_output(const std::string& path, const std::string& content) {
  if (path.empty() || path == "-") {
    std::cout << content;
  } else {
    spdi::write_file(path, content);
  }
}

std::vector<spdi::ReachTask> parse_task_series(const std::string& text, const spdi::Spdi& spdi) {
  // Task files may hold several tasks, each starting with its header line.
  std::vector<spdi::ReachTask> tasks;
  std::size_t pos = 0;
  std::size_t line_offset = 0;
  while (pos < text.size()) {
    std::size_t next = text.find("\ntask v1", pos + 1);
    std::size_t end = next == std::string::npos ? text.size() : next + 1;
    std::string_view chunk(text.data() + pos, end - pos);
    try {
      tasks.push_back(spdi::parse_task(chunk, spdi));
    } catch (const spdi::ParseError& e) {
      throw spdi::ParseError(e.line() + line_offset,
                             std::string(e.what()).substr(std::string(e.what()).find(": ") + 2));
    }
    line_offset += static_cast<std::size_t>(std::count(chunk.begin(), chunk.end(), '\n'));
    pos = end;
  }
  if (tasks.empty()) throw spdi::ParseError(1, "no tasks");
  return tasks;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"SPDI reachability: validate, solve, generate, benchmark and plot"};
  app.require_subcommand(1);

  auto* validate = app.add_subcommand("validate", "check an SPDI file for well-formedness");
  std::string v_spdi;
  validate->add_option("spdi", v_spdi, "SPDI file")->required();

  auto* solve = app.add_subcommand("solve", "decide reachability for a task");
  std::string s_spdi, s_task, s_witness;
  unsigned s_threads = 1;
  bool s_seq = false;
  double s_timeout = 0.0;
  solve->add_option("spdi", s_spdi, "SPDI file")->required();
  solve->add_option("task", s_task, "task file")->required();
  solve->add_option("--threads", s_threads, "worker threads")->check(CLI::PositiveNumber);
  solve->add_option("--witness", s_witness, "write the witness here when reachable");
  solve->add_flag("--seq", s_seq, "use the sequential explorer");
  solve->add_option("--timeout", s_timeout, "give up after this many seconds (0: none)");

  auto* gen = app.add_subcommand("gen", "generate a random SPDI");
  spdi::GenConfig g_cfg;
  std::string g_out;
  gen->add_option("--regions", g_cfg.n_regions, "number of regions")->required()->check(CLI::PositiveNumber);
  gen->add_option("--seed", g_cfg.seed, "random seed")->required();
  gen->add_option("--side", g_cfg.side, "square side length")->check(CLI::PositiveNumber);
  gen->add_option("--max-retries", g_cfg.max_retries, "extra attempts on failure");
  gen->add_option("-o,--output", g_out, "output file (default stdout)");

  auto* gen_tasks = app.add_subcommand("gen-tasks", "generate reachability tasks for an SPDI");
  std::string t_spdi, t_out;
  std::size_t t_count = 100;
  std::uint64_t t_seed = 1;
  gen_tasks->add_option("--spdi", t_spdi, "SPDI file")->required();
  gen_tasks->add_option("--count", t_count, "number of tasks")->check(CLI::PositiveNumber);
  gen_tasks->add_option("--seed", t_seed, "random seed")->required();
  gen_tasks->add_option("-o,--output", t_out, "output file (default stdout)");

  auto* bench = app.add_subcommand("bench", "time a task series across thread counts");
  std::string b_spdi, b_tasks, b_threads = "1-8", b_csv, b_name;
  spdi::BenchConfig b_cfg;
  bench->add_option("--spdi", b_spdi, "SPDI file")->required();
  bench->add_option("--tasks", b_tasks, "task series file")->required();
  bench->add_option("--threads", b_threads, "thread counts, e.g. 1,2,4,8 or 1-8");
  bench->add_option("--timeout", b_cfg.timeout_s, "per-run timeout in seconds")->check(CLI::PositiveNumber);
  bench->add_option("--reps", b_cfg.reps, "repetitions per cell")->check(CLI::PositiveNumber);
  bench->add_option("--csv", b_csv, "also write CSV here");
  bench->add_option("--name", b_name, "row label (default: file name)");

  auto* plot = app.add_subcommand("plot", "render an SPDI as SVG");
  std::string p_spdi, p_task, p_witness, p_out;
  plot->add_option("--spdi", p_spdi, "SPDI file")->required();
  plot->add_option("--task", p_task, "task file");
  plot->add_option("--witness", p_witness, "witness file");
  plot->add_option("-o,--output", p_out, "output SVG")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kDone : kUsage;
  }

  try {
    if (*validate) {
      spdi::Spdi s = spdi::parse_spdi(spdi::read_file(v_spdi));
      auto violations = spdi::validate_spdi(s);
      for (const auto& v : violations) std::cerr << v.message << '\n';
      if (!violations.empty()) return kUsage;
      std::cout << "ok: " << s.regions().size() << " regions, " << s.edges().size() << " edges\n";
      return kDone;
    }
    if (*solve) {
      spdi::Spdi s = spdi::parse_spdi(spdi::read_file(s_spdi));
      spdi::ReachTask task = spdi::parse_task(spdi::read_file(s_task), s);
      std::optional<std::chrono::steady_clock::time_point> deadline;
      if (s_timeout > 0) {
        deadline = std::chrono::steady_clock::now() +
                   std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                       std::chrono::duration<double>(s_timeout));
      }
      spdi::ReachResult r;
      if (s_seq) {
        spdi::SearchOptions opts;
        opts.deadline = deadline;
        r = spdi::solve_sequential(s, task, opts);
      } else {
        spdi::EngineConfig cfg;
        cfg.workers = s_threads;
        cfg.deadline = deadline;
        r = spdi::solve_parallel(s, task, cfg);
      }
      std::cout << spdi::to_string(r.verdict) << '\n';
      if (r.verdict == spdi::Verdict::kReachable) {
        std::string w = spdi::write_witness(s, r);
        if (!s_witness.empty()) write_output(s_witness, w);
        return kDone;
      }
      return r.verdict == spdi::Verdict::kUnreachable ? kUnreachable : kInternal;
    }
    if (*gen) {
      write_output(g_out, spdi::write_spdi(spdi::generate_spdi(g_cfg)));
      return kDone;
    }
    if (*gen_tasks) {
      spdi::Spdi s = spdi::parse_spdi(spdi::read_file(t_spdi));
      spdi::SeededRng rng(t_seed);
      std::string out;
      for (const auto& t : spdi::generate_tasks(s, t_count, rng)) out += spdi::write_task(s, t);
      write_output(t_out, out);
      return kDone;
    }
    if (*bench) {
      spdi::Spdi s = spdi::parse_spdi(spdi::read_file(b_spdi));
      auto tasks = parse_task_series(spdi::read_file(b_tasks), s);
      b_cfg.threads = parse_thread_list(b_threads);
      if (b_name.empty()) b_name = b_spdi.substr(b_spdi.find_last_of('/') + 1);
      std::vector<spdi::BenchReport> reports{spdi::run_bench(s, tasks, b_cfg, spdi::parallel_solver(), b_name)};
      std::cout << spdi::format_table(reports);
      if (!b_csv.empty()) write_output(b_csv, spdi::format_csv(reports));
      return kDone;
    }
    if (*plot) {
      spdi::Spdi s = spdi::parse_spdi(spdi::read_file(p_spdi));
      std::optional<spdi::ReachTask> task;
      std::optional<spdi::Witness> witness;
      if (!p_task.empty()) task = spdi::parse_task(spdi::read_file(p_task), s);
      if (!p_witness.empty()) witness = spdi::parse_witness(spdi::read_file(p_witness), s);
      spdi::PlotLayers layers{task ? &*task : nullptr, witness ? &*witness : nullptr};
      spdi::write_file(p_out, spdi::render_plot(s, layers));
      return kDone;
    }
  } catch (const spdi::ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return kUsage;
  } catch (const spdi::ValidationError& e) {
    std::cerr << "invalid input: " << e.what() << '\n';
    return kUsage;
  } catch (const spdi::IoError& e) {
    std::cerr << e.what() << '\n';
    return kUsage;
  } catch (const spdi::GoodnessViolation& e) {
    std::cerr << "invalid input: " << e.what() << '\n';
    return kUsage;
  } catch (const spdi::GenerationError& e) {
    std::cerr << "generation failed: " << e.what() << '\n';
    return kInternal;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInternal;
  }
  return kUsage;
}
