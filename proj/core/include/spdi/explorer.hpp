#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <set>
#include <span>
#include <variant>
#include <vector>

#include "spdi/cycles.hpp"
#include "spdi/model.hpp"
#include "spdi/successor.hpp"

namespace spdi {

struct WitnessEdge {
  EdgeId edge = 0;
  Interval interval;

  friend bool operator==(const WitnessEdge&, const WitnessEdge&) = default;
};

// An accelerated simple cycle; each edge carries the hull of its swept set.
struct WitnessCycle {
  std::vector<WitnessEdge> edges;
  CycleType type = CycleType::kStay;

  friend bool operator==(const WitnessCycle&, const WitnessCycle&) = default;
};

using WitnessItem = std::variant<WitnessEdge, WitnessCycle>;

// Replayable certificate of reachability: paths and cycles in traversal
// order, then the intersection with the final set.
struct Witness {
  std::vector<WitnessItem> items;
  EdgeId hit_edge = 0;
  Interval hit;

  friend bool operator==(const Witness&, const Witness&) = default;
};

// r_1 s_1 r_2 ... s_n r_{n+1}; paths.size() == cycles.size() + 1.
struct SignatureType {
  std::vector<std::vector<EdgeId>> paths;
  std::vector<std::vector<EdgeId>> cycles;
};

SignatureType signature_type(const Witness& w);

enum class Verdict { kReachable, kUnreachable, kUnknown };

const char* to_string(Verdict v);

struct SearchStats {
  std::uint64_t steps = 0;
  std::uint64_t cycles_analysed = 0;
};

struct ReachResult {
  Verdict verdict = Verdict::kUnreachable;
  std::optional<Witness> witness;
  SearchStats stats;
};

struct PathFrame {
  EdgeId edge = 0;
  Interval interval;
};

struct CycleRecord {
  std::size_t begin = 0;  // first frame of the cycle
  std::size_t end = 0;    // one past its last frame
  CycleType type = CycleType::kStay;
  std::vector<IntervalSet> per_edge_swept;
  std::size_t exit_offset = 0;  // cycle edge the current continuation leaves from
};

// Per-branch DFS state. Everything here is path-scoped and undone on
// backtrack, so a copy is a self-contained starting point for a sub-tree.
class ExplorationState {
 public:
  explicit ExplorationState(std::size_t edge_count) : position_(edge_count, -1) {}

  const std::vector<PathFrame>& frames() const { return frames_; }
  const std::vector<CycleRecord>& cycles() const { return cycles_; }
  std::size_t path_mark() const { return mark_; }
  bool on_path(EdgeId e) const { return position_.at(e) >= 0; }
  std::optional<std::size_t> position(EdgeId e) const;
  bool cycle_visited(const std::vector<EdgeId>& sorted_edges) const {
    return visited_cycles_.count(sorted_edges) != 0;
  }

  void push_frame(EdgeId e, const Interval& iv);
  void pop_frame();
  void push_cycle(CycleRecord record, std::vector<EdgeId> sorted_edges);
  void pop_cycle(const std::vector<EdgeId>& sorted_edges, std::size_t previous_mark);
  void set_exit_offset(std::size_t offset) { cycles_.back().exit_offset = offset; }

 private:
  std::vector<PathFrame> frames_;
  std::vector<CycleRecord> cycles_;
  std::vector<std::int32_t> position_;
  std::set<std::vector<EdgeId>> visited_cycles_;
  std::size_t mark_ = 0;
};

// Stack suffix from the previous occurrence of e to the top, in traversal
// order. Throws Error if e is not on the current path.
std::vector<EdgeId> restore_cycle(const ExplorationState& state, EdgeId e);

// A branch root: arrive on `edge` with `interval`. cycle_exit is set when the
// branch leaves an accelerated cycle from that cycle offset.
struct Candidate {
  EdgeId edge = 0;
  Interval interval;
  std::optional<std::size_t> cycle_exit;
};

class ExplorerHooks {
 public:
  virtual ~ExplorerHooks() = default;
  // Called once per DFS step; returning true abandons the search.
  virtual bool on_step() = 0;
  // Offered the leading candidates of a branch point with at least two; true
  // means they were taken over and the caller continues with the last only.
  virtual bool try_handoff(const ExplorationState& state, std::span<const Candidate> rest) = 0;
};

enum class Outcome { kSuccess, kFailure, kAborted };

// DFS over feasible signature types with simultaneous interval propagation.
// Paths stay disjoint and cycles simple and unique; a revisited edge closes a
// cycle only inside the latest path, and closed cycles are accelerated
// analytically before the search continues from every cycle edge.
class SignatureExplorer {
 public:
  SignatureExplorer(const Spdi& spdi, const TransitionIndex& transitions, const ReachTask& task,
                    ExplorerHooks* hooks = nullptr);

  Outcome explore(ExplorationState& state, const Candidate& root);

  const std::optional<Witness>& witness() const { return witness_; }
  const SearchStats& stats() const { return stats_; }

 private:
  Outcome explore_cycle(ExplorationState& state, const Candidate& c, std::size_t pos);
  Outcome explore_all(ExplorationState& state, std::vector<Candidate>& candidates);
  void record_witness(const ExplorationState& state, std::optional<WitnessEdge> arrival,
                      EdgeId hit_edge, const Interval& hit);

  const Spdi& spdi_;
  const TransitionIndex& transitions_;
  ExplorerHooks* hooks_;
  std::vector<std::vector<Interval>> finals_by_edge_;
  std::optional<Witness> witness_;
  SearchStats stats_;
};

struct SearchOptions {
  std::uint64_t max_steps = 10'000'000;  // 0 disables the cap
  std::optional<std::chrono::steady_clock::time_point> deadline;
};

// Validates the SPDI and task, then explores from every start interval in
// task order; the first success wins.
ReachResult solve_sequential(const Spdi& spdi, const ReachTask& task,
                             const SearchOptions& options = {});

// Throws ValidationError describing the first violation, if any.
void require_valid(const Spdi& spdi, const ReachTask& task);

}  // namespace spdi
