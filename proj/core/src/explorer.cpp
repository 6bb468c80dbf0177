#include "spdi/explorer.hpp"

#include <algorithm>

#include "spdi/error.hpp"

namespace spdi {

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::kReachable: return "REACHABLE";
    case Verdict::kUnreachable: return "UNREACHABLE";
    case Verdict::kUnknown: return "UNKNOWN";
  }
  return "?";
}

SignatureType signature_type(const Witness& w) {
  SignatureType t;
  t.paths.emplace_back();
  for (const WitnessItem& item : w.items) {
    if (const auto* e = std::get_if<WitnessEdge>(&item)) {
      t.paths.back().push_back(e->edge);
    } else {
      const auto& c = std::get<WitnessCycle>(item);
      std::vector<EdgeId> edges;
      for (const WitnessEdge& ce : c.edges) edges.push_back(ce.edge);
      t.cycles.push_back(std::move(edges));
      t.paths.emplace_back();
    }
  }
  return t;
}

std::optional<std::size_t> ExplorationState::position(EdgeId e) const {
  std::int32_t p = position_.at(e);
  if (p < 0) return std::nullopt;
  return static_cast<std::size_t>(p);
}

void ExplorationState::push_frame(EdgeId e, const Interval& iv) {
  if (position_.at(e) >= 0) throw Error("edge already on the current path");
  position_[e] = static_cast<std::int32_t>(frames_.size());
  frames_.push_back({e, iv});
}

void ExplorationState::pop_frame() {
  position_[frames_.back().edge] = -1;
  frames_.pop_back();
}

void ExplorationState::push_cycle(CycleRecord record, std::vector<EdgeId> sorted_edges) {
  visited_cycles_.insert(std::move(sorted_edges));
  cycles_.push_back(std::move(record));
  mark_ = frames_.size();
}

void ExplorationState::pop_cycle(const std::vector<EdgeId>& sorted_edges,
                                 std::size_t previous_mark) {
  visited_cycles_.erase(sorted_edges);
  cycles_.pop_back();
  mark_ = previous_mark;
}

std::vector<EdgeId> restore_cycle(const ExplorationState& state, EdgeId e) {
  auto p = state.position(e);
  if (!p) throw Error("restore_cycle: edge is not on the current path");
  std::vector<EdgeId> out;
  for (std::size_t i = *p; i < state.frames().size(); ++i) out.push_back(state.frames()[i].edge);
  return out;
}

SignatureExplorer::SignatureExplorer(const Spdi& spdi, const TransitionIndex& transitions,
                                     const ReachTask& task, ExplorerHooks* hooks)
    : spdi_(spdi), transitions_(transitions), hooks_(hooks),
      finals_by_edge_(spdi.edges().size()) {
  for (const EdgeInterval& f : task.final) finals_by_edge_.at(f.edge).push_back(f.interval());
}

Outcome SignatureExplorer::explore(ExplorationState& state, const Candidate& c) {
  if (c.cycle_exit) state.set_exit_offset(*c.cycle_exit);
  ++stats_.steps;
  if (hooks_ && hooks_->on_step()) return Outcome::kAborted;

  for (const Interval& f : finals_by_edge_[c.edge]) {
    Interval x = intersect(c.interval, f);
    if (!x.empty()) {
      record_witness(state, WitnessEdge{c.edge, c.interval}, c.edge, x);
      return Outcome::kSuccess;
    }
  }

  if (auto pos = state.position(c.edge)) return explore_cycle(state, c, *pos);

  state.push_frame(c.edge, c.interval);
  std::vector<Candidate> next;
  for (const Transition& t : transitions_.from(c.edge)) {
    if (auto img = t.map.apply(c.interval)) next.push_back({t.to, *img, std::nullopt});
  }
  Outcome r = explore_all(state, next);
  state.pop_frame();
  return r;
}

Outcome SignatureExplorer::explore_cycle(ExplorationState& state, const Candidate& c,
                                         std::size_t pos) {
  if (pos < state.path_mark()) return Outcome::kFailure;
  std::vector<EdgeId> cycle = restore_cycle(state, c.edge);
  std::vector<EdgeId> key = cycle;
  std::sort(key.begin(), key.end());
  if (state.cycle_visited(key)) return Outcome::kFailure;

  const std::size_t n = cycle.size();
  std::vector<IntervalMap> steps;
  steps.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    const Transition* t = transitions_.find(cycle[k], cycle[(k + 1) % n]);
    if (!t) throw Error("cycle step without a transition");
    steps.push_back(t->map);
  }
  std::vector<EdgeInterval> finals;
  for (std::size_t k = 0; k < n; ++k) {
    for (const Interval& f : finals_by_edge_[cycle[k]]) finals.push_back({cycle[k], f.lo, f.hi});
  }
  CycleImages images =
      test_cycle_and_get_final_images(cycle, steps, state.frames()[pos].interval, finals);
  ++stats_.cycles_analysed;

  CycleRecord record;
  record.begin = pos;
  record.end = state.frames().size();
  record.type = images.analysis.type;
  record.per_edge_swept = images.analysis.per_edge_swept;
  const std::size_t previous_mark = state.path_mark();
  state.push_cycle(std::move(record), key);

  Outcome r = Outcome::kFailure;
  if (images.hit) {
    state.set_exit_offset(images.hit->offset);
    record_witness(state, std::nullopt, images.hit->edge, images.hit->intersection);
    r = Outcome::kSuccess;
  } else {
    std::vector<Candidate> next;
    const auto& per_edge = state.cycles().back().per_edge_swept;
    for (std::size_t k = 0; k < n; ++k) {
      EdgeId inside = cycle[(k + 1) % n];
      for (const Transition& t : transitions_.from(cycle[k])) {
        if (t.to == inside) continue;
        for (const Interval& piece : per_edge[k].parts()) {
          if (auto img = t.map.apply(piece)) next.push_back({t.to, *img, k});
        }
      }
    }
    r = explore_all(state, next);
  }
  state.pop_cycle(key, previous_mark);
  return r;
}

Outcome SignatureExplorer::explore_all(ExplorationState& state, std::vector<Candidate>& next) {
  if (next.empty()) return Outcome::kFailure;
  if (next.size() >= 2 && hooks_ &&
      hooks_->try_handoff(state, std::span<const Candidate>(next.data(), next.size() - 1))) {
    return explore(state, next.back());
  }
  for (const Candidate& c : next) {
    Outcome r = explore(state, c);
    if (r != Outcome::kFailure) return r;
  }
  return Outcome::kFailure;
}

void SignatureExplorer::record_witness(const ExplorationState& state,
                                       std::optional<WitnessEdge> arrival, EdgeId hit_edge,
                                       const Interval& hit) {
  Witness w;
  const auto& frames = state.frames();
  std::size_t i = 0;
  for (const CycleRecord& c : state.cycles()) {
    for (; i < c.begin; ++i) w.items.push_back(WitnessEdge{frames[i].edge, frames[i].interval});
    WitnessCycle wc;
    wc.type = c.type;
    for (std::size_t k = c.begin; k < c.end; ++k) {
      wc.edges.push_back({frames[k].edge, c.per_edge_swept[k - c.begin].hull()});
    }
    w.items.push_back(std::move(wc));
    i = c.end;
  }
  for (; i < frames.size(); ++i) w.items.push_back(WitnessEdge{frames[i].edge, frames[i].interval});
  if (arrival && !w.items.empty()) w.items.push_back(*arrival);
  w.hit_edge = hit_edge;
  w.hit = hit;
  witness_ = std::move(w);
}

void require_valid(const Spdi& spdi, const ReachTask& task) {
  auto violations = validate_spdi(spdi);
  if (!violations.empty()) {
    throw ValidationError("invalid SPDI: " + violations.front().message);
  }
  validate_task(spdi, task);
}

namespace {

class SequentialHooks final : public ExplorerHooks {
 public:
  explicit SequentialHooks(const SearchOptions& o) : options_(o) {}

  bool on_step() override {
    ++steps_;
    if (options_.max_steps != 0 && steps_ > options_.max_steps) {
      throw SearchLimitError("search exceeded " + std::to_string(options_.max_steps) + " steps");
    }
    if (options_.deadline && steps_ % 64 == 0 &&
        std::chrono::steady_clock::now() >= *options_.deadline) {
      timed_out_ = true;
      return true;
    }
    return false;
  }

  bool try_handoff(const ExplorationState&, std::span<const Candidate>) override { return false; }

  bool timed_out() const { return timed_out_; }

 private:
  SearchOptions options_;
  std::uint64_t steps_ = 0;
  bool timed_out_ = false;
};

}  // namespace

ReachResult solve_sequential(const Spdi& spdi, const ReachTask& task,
                             const SearchOptions& options) {
  require_valid(spdi, task);
  TransitionIndex transitions(spdi);
  SequentialHooks hooks(options);
  SignatureExplorer explorer(spdi, transitions, task, &hooks);

  ReachResult result;
  for (const EdgeInterval& s : task.start) {
    ExplorationState state(spdi.edges().size());
    Outcome r = explorer.explore(state, {s.edge, s.interval(), std::nullopt});
    if (r == Outcome::kSuccess) {
      result.verdict = Verdict::kReachable;
      result.witness = explorer.witness();
      break;
    }
    if (r == Outcome::kAborted) {
      result.verdict = Verdict::kUnknown;
      break;
    }
  }
  result.stats = explorer.stats();
  return result;
}

}  // namespace spdi
