#include "spdi/parallel.hpp"

#include <condition_variable>
#include <deque>
#include <exception>
#include <memory>
#include <mutex>
#include <thread>

#include "spdi/error.hpp"

namespace spdi {

namespace {

// Candidates handed off together share one snapshot of the path state.
struct WorkItem {
  std::shared_ptr<const ExplorationState> state;
  Candidate root;
};

class Engine {
 public:
  Engine(const Spdi& spdi, const ReachTask& task, const EngineConfig& cfg)
      : spdi_(spdi), task_(task), cfg_(cfg), transitions_(spdi),
        idle_(static_cast<int>(cfg.workers)) {}

  ReachResult run(EngineStats* stats);

 private:
  class Hooks final : public ExplorerHooks {
   public:
    Hooks(Engine& e, unsigned id) : engine_(e), id_(id) {}
    bool on_step() override;
    bool try_handoff(const ExplorationState& state, std::span<const Candidate> rest) override;

   private:
    Engine& engine_;
    unsigned id_;
    std::uint64_t steps_ = 0;
  };

  void worker(unsigned id);
  bool should_stop();

  const Spdi& spdi_;
  const ReachTask& task_;
  const EngineConfig& cfg_;
  TransitionIndex transitions_;

  std::mutex mu_;
  std::condition_variable cv_;
  std::deque<WorkItem> queue_;
  unsigned active_ = 0;
  bool finished_ = false;

  std::atomic<int> idle_;
  std::atomic<bool> stop_{false};
  std::atomic<bool> success_{false};
  std::atomic<bool> timed_out_{false};
  std::atomic<std::uint64_t> global_steps_{0};
  std::atomic<bool> idle_negative_{false};

  // Guarded by mu_.
  std::optional<Witness> witness_;
  std::exception_ptr error_;
  unsigned error_worker_ = 0;
  SearchStats search_stats_;
  std::uint64_t enqueued_ = 0;
  std::uint64_t explored_ = 0;
  std::uint64_t cancelled_ = 0;
};

bool Engine::should_stop() {
  if (stop_.load(std::memory_order_acquire)) return true;
  if ((cfg_.external_stop && cfg_.external_stop->load(std::memory_order_acquire)) ||
      (cfg_.deadline && std::chrono::steady_clock::now() >= *cfg_.deadline)) {
    timed_out_.store(true);
    stop_.store(true, std::memory_order_release);
    cv_.notify_all();
    return true;
  }
  return false;
}

bool Engine::Hooks::on_step() {
  ++steps_;
  if (engine_.cfg_.on_step) engine_.cfg_.on_step(id_, steps_);
  const unsigned poll = std::max(1u, engine_.cfg_.poll_interval);
  if (steps_ % poll != 0) return false;
  std::uint64_t total = engine_.global_steps_.fetch_add(poll) + poll;
  if (engine_.cfg_.max_steps != 0 && total > engine_.cfg_.max_steps) {
    throw SearchLimitError("search exceeded " + std::to_string(engine_.cfg_.max_steps) + " steps");
  }
  return engine_.should_stop();
}

bool Engine::Hooks::try_handoff(const ExplorationState& state, std::span<const Candidate> rest) {
  if (engine_.idle_.load(std::memory_order_acquire) <= 0) return false;
  std::size_t wake = 0;
  {
    std::lock_guard lk(engine_.mu_);
    if (engine_.finished_ || engine_.stop_.load()) return false;
    // Idle workers with items already waiting for them are not starving.
    const auto idle = static_cast<std::size_t>(std::max(0, engine_.idle_.load()));
    if (engine_.queue_.size() >= idle) return false;
    if (engine_.queue_.size() + rest.size() > engine_.cfg_.queue_capacity) return false;
    auto snapshot = std::make_shared<const ExplorationState>(state);
    for (const Candidate& c : rest) engine_.queue_.push_back({snapshot, c});
    engine_.enqueued_ += rest.size();
    wake = std::min(rest.size(), idle);
  }
  for (std::size_t i = 0; i < wake; ++i) engine_.cv_.notify_one();
  return true;
}

void Engine::worker(unsigned id) {
  Hooks hooks(*this, id);
  SignatureExplorer explorer(spdi_, transitions_, task_, &hooks);
  for (;;) {
    std::unique_lock lk(mu_);
    cv_.wait(lk, [&] { return !queue_.empty() || finished_ || stop_.load(); });
    if (stop_.load() || queue_.empty()) break;
    WorkItem item = std::move(queue_.front());
    queue_.pop_front();
    ++active_;
    ++explored_;
    if (idle_.fetch_sub(1) - 1 < 0) idle_negative_.store(true);
    lk.unlock();

    Outcome r = Outcome::kFailure;
    try {
      ExplorationState state = *item.state;
      item.state.reset();
      r = explorer.explore(state, item.root);
    } catch (...) {
      std::lock_guard g(mu_);
      if (!error_) {
        error_ = std::current_exception();
        error_worker_ = id;
      }
      stop_.store(true);
    }

    lk.lock();
    if (r == Outcome::kSuccess && !witness_) {
      witness_ = explorer.witness();
      success_.store(true);
      stop_.store(true);
    }
    --active_;
    idle_.fetch_add(1);
    if (queue_.empty() && active_ == 0) finished_ = true;
    const bool wake_all = finished_ || stop_.load();
    lk.unlock();
    if (wake_all) cv_.notify_all();
  }
  std::lock_guard g(mu_);
  search_stats_.steps += explorer.stats().steps;
  search_stats_.cycles_analysed += explorer.stats().cycles_analysed;
}

ReachResult Engine::run(EngineStats* stats) {
  auto empty = std::make_shared<const ExplorationState>(spdi_.edges().size());
  for (const EdgeInterval& s : task_.start) {
    queue_.push_back({empty, {s.edge, s.interval(), std::nullopt}});
  }
  {
    std::vector<std::jthread> pool;
    pool.reserve(cfg_.workers);
    for (unsigned i = 0; i < cfg_.workers; ++i) pool.emplace_back([this, i] { worker(i); });
  }
  cancelled_ = queue_.size();
  queue_.clear();

  if (stats) {
    stats->steps = search_stats_.steps;
    stats->cycles_analysed = search_stats_.cycles_analysed;
    stats->items_enqueued = enqueued_;
    stats->items_explored = explored_;
    stats->items_cancelled = cancelled_;
    stats->final_idle = static_cast<unsigned>(std::max(0, idle_.load()));
    stats->idle_went_negative = idle_negative_.load();
  }

  if (error_) {
    try {
      std::rethrow_exception(error_);
    } catch (const SearchLimitError&) {
      throw;
    } catch (const std::exception& e) {
      throw EngineError("worker " + std::to_string(error_worker_) + " failed: " + e.what());
    }
  }

  ReachResult result;
  result.stats = search_stats_;
  if (success_.load()) {
    result.verdict = Verdict::kReachable;
    result.witness = witness_;
  } else if (timed_out_.load()) {
    result.verdict = Verdict::kUnknown;
  } else {
    result.verdict = Verdict::kUnreachable;
  }
  return result;
}

}  // namespace

ReachResult solve_parallel(const Spdi& spdi, const ReachTask& task, const EngineConfig& config,
                           EngineStats* stats) {
  if (config.workers < 1) throw EngineError("workers must be at least 1");
  require_valid(spdi, task);
  Engine engine(spdi, task, config);
  return engine.run(stats);
}

}  // namespace spdi
