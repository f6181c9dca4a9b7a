#include "robocache/simulator.hpp"

#include <chrono>
#include <deque>
#include <functional>
#include <queue>
#include <stdexcept>
#include <string>

#include "robocache/digest.hpp"
#include "robocache/errors.hpp"
#include "robocache/random.hpp"

namespace robocache {

std::string_view to_string(MethodKind method) noexcept {
  switch (method) {
    case MethodKind::baseline:
      return "baseline";
    case MethodKind::cached:
      return "cached";
  }
  return "unknown";
}

MethodKind parse_method(std::string_view text) {
  if (text == "baseline") return MethodKind::baseline;
  if (text == "cached") return MethodKind::cached;
  throw ValidationError("unknown method '" + std::string(text) +
                        "' (expected baseline or cached)");
}

void SimParams::validate(MethodKind method) const {
  link.validate();
  if (method == MethodKind::cached && cache_capacity == 0) {
    throw ConfigError("cache_capacity must be positive for the cached method");
  }
  if (!(cache_probe_time.count() >= 0) || !(db_probe_time.count() >= 0)) {
    throw ConfigError("probe times must be >= 0");
  }
}

namespace {

struct Robot {
  RobotState state;
  Rng rng;
  std::deque<std::size_t> waiting;
  bool busy = false;
};

struct Event {
  Millis at;
  std::uint64_t order;
  bool completion;
  std::size_t scan;

  bool operator>(const Event& other) const {
    if (at != other.at) return at > other.at;
    return order > other.order;
  }
};

class Engine {
 public:
  Engine(MethodKind method, const Trace& trace, const KnowledgeBase& kb,
         const SimParams& params)
      : method_(method),
        trace_(trace),
        kb_(kb),
        params_(params),
        link_(params.link) {
    std::uint32_t max_id = 0;
    for (const auto& ev : trace) max_id = std::max(max_id, ev.robot_id);
    robots_.reserve(max_id + 1);
    for (std::uint32_t id = 0; id <= max_id; ++id) {
      Robot r{RobotState{id, std::nullopt, 0, {}}, make_stream(params.seed, id),
              {}, false};
      if (method == MethodKind::cached) {
        r.state.cache.emplace(params.cache_capacity);
      }
      robots_.push_back(std::move(r));
    }
    outcomes_.resize(trace.size());
    latencies_.resize(trace.size());
  }

  RunResult run() {
    schedule(Millis(static_cast<double>(trace_[0].issued_at_ms)), false, 0);
    while (!events_.empty()) {
      Event ev = events_.top();
      events_.pop();
      if (ev.at < clock_) throw std::logic_error("simulated clock went back");
      clock_ = ev.at;
      if (ev.completion) {
        complete(ev.scan);
      } else {
        arrive(ev.scan);
      }
    }
    return finish();
  }

 private:
  void schedule(Millis at, bool completion, std::size_t scan) {
    events_.push(Event{at, next_order_++, completion, scan});
  }

  void arrive(std::size_t i) {
    if (i + 1 < trace_.size()) {
      schedule(Millis(static_cast<double>(trace_[i + 1].issued_at_ms)), false,
               i + 1);
    }
    Robot& robot = robots_[trace_[i].robot_id];
    if (robot.busy) {
      robot.waiting.push_back(i);
    } else {
      start(robot, i);
    }
  }

  void start(Robot& robot, std::size_t i) {
    robot.busy = true;
    ScanOutcome out = serve(robot, trace_[i].barcode, clock_);
    outcomes_[i] = out;
    schedule(out.decided_at, true, i);
  }

  ScanOutcome serve(Robot& robot, const Barcode& barcode, Millis now) {
    ScanOutcome out;
    out.started_at = now;
    Millis t = now;
    if (robot.state.cache) {
      auto hit = robot.state.cache->lookup(barcode);
      out.cache_comparisons = static_cast<std::uint32_t>(hit.comparisons);
      t += static_cast<double>(hit.comparisons) * params_.cache_probe_time;
      if (hit.hit()) {
        out.cache_hit = true;
        out.decided_at = t;
        return out;
      }
    }
    auto tx = link_.transmit(t, robot.rng);
    auto res = kb_.resolve(barcode);
    out.losses = tx.losses;
    out.lock_stall = tx.lock_stall_applied;
    out.db_comparisons = res.db_comparisons;
    out.found = res.found();
    out.decided_at = tx.delivered_at +
                     static_cast<double>(res.db_comparisons) *
                         params_.db_probe_time;
    if (robot.state.cache && res.found()) {
      robot.state.cache->insert(barcode, *res.payload);
    }
    return out;
  }

  void complete(std::size_t i) {
    const ScanEvent& scan = trace_[i];
    Robot& robot = robots_[scan.robot_id];
    const ScanOutcome& out = outcomes_[i];

    std::optional<DecisionPayload> payload;
    if (out.found) {
      if (const auto* rec = kb_.find(scan.barcode)) payload = rec->decision();
    }
    robot.state.routing_log.push_back(
        RoutingEntry{scan.barcode, std::move(payload), clock_});
    ++robot.state.decisions_made;
    latencies_[i] = clock_ - Millis(static_cast<double>(scan.issued_at_ms));

    robot.busy = false;
    if (!robot.waiting.empty()) {
      std::size_t next = robot.waiting.front();
      robot.waiting.pop_front();
      start(robot, next);
    }
  }

  RunResult finish() {
    RunResult result;
    result.method = method_;
    RunCounters& c = result.counters;
    c.scans = trace_.size();
    for (const auto& out : outcomes_) {
      c.cache_comparisons += out.cache_comparisons;
      c.db_comparisons += out.db_comparisons;
      if (out.cache_hit) {
        ++c.cache_hits;
      } else {
        ++c.station_messages;
        if (!out.found) ++c.db_not_found;
      }
    }
    if (method_ == MethodKind::cached) c.cache_misses = c.scans - c.cache_hits;
    c.per_scan_latencies = std::move(latencies_);
    c.link_stats = link_.stats();
    c.first_issued_at = Millis(static_cast<double>(trace_.front().issued_at_ms));
    c.final_clock = clock_;

    result.outcomes = std::move(outcomes_);
    for (auto& robot : robots_) {
      if (robot.state.cache) {
        result.snapshots.push_back(robot.state.cache->snapshot(clock_));
      }
      result.robots.push_back(std::move(robot.state));
    }
    result.digest = run_digest(result);
    return result;
  }

  MethodKind method_;
  const Trace& trace_;
  const KnowledgeBase& kb_;
  const SimParams& params_;
  SatelliteLink link_;
  std::vector<Robot> robots_;
  std::vector<ScanOutcome> outcomes_;
  std::vector<Millis> latencies_;
  std::priority_queue<Event, std::vector<Event>, std::greater<>> events_;
  std::uint64_t next_order_ = 0;
  Millis clock_{0};
};

void check_inputs(const Trace& trace, const KnowledgeBase& kb,
                  const SimParams& params) {
  if (trace.empty()) throw ValidationError("trace is empty");
  for (std::size_t i = 1; i < trace.size(); ++i) {
    if (trace[i].issued_at_ms < trace[i - 1].issued_at_ms) {
      throw ValidationError("trace event " + std::to_string(i) +
                            " is issued before its predecessor");
    }
  }
  if (kb.empty()) throw ConfigError("knowledge base is empty");
  if (!params.allow_unknown_barcodes) {
    for (const auto& ev : trace) {
      if (kb.find(ev.barcode) == nullptr) {
        throw DataError("barcode " + ev.barcode.str() +
                        " is not in the knowledge base");
      }
    }
  }
}

}  // namespace

RunResult run(MethodKind method, const Trace& trace, const KnowledgeBase& kb,
              const SimParams& params) {
  params.validate(method);
  check_inputs(trace, kb, params);
  auto started = std::chrono::steady_clock::now();
  RunResult result = Engine(method, trace, kb, params).run();
  result.counters.wall_clock_of_run =
      std::chrono::steady_clock::now() - started;
  return result;
}

RunResult replay_deterministic(MethodKind method, const Trace& trace,
                               const KnowledgeBase& kb,
                               const SimParams& params) {
  RunResult first = run(method, trace, kb, params);
  RunResult second = run(method, trace, kb, params);
  if (first.digest != second.digest) {
    throw std::logic_error("replay diverged: " + digest_hex(first.digest) +
                           " vs " + digest_hex(second.digest));
  }
  return first;
}

std::uint64_t run_digest(const RunResult& result) {
  Fnv1a h;
  h.bytes(to_string(result.method));
  for (const auto& out : result.outcomes) {
    h.u64(out.cache_hit);
    h.u64(out.found);
    h.u64(out.cache_comparisons);
    h.u64(out.db_comparisons);
    h.u64(out.losses);
    h.f64(out.lock_stall.count());
    h.f64(out.started_at.count());
    h.f64(out.decided_at.count());
  }
  const auto& c = result.counters;
  h.u64(c.scans);
  h.u64(c.cache_hits);
  h.u64(c.cache_misses);
  h.u64(c.cache_comparisons);
  h.u64(c.db_comparisons);
  h.u64(c.station_messages);
  h.u64(c.db_not_found);
  h.u64(c.link_stats.messages_sent);
  h.u64(c.link_stats.messages_lost);
  h.u64(c.link_stats.lock_events);
  h.f64(c.final_clock.count());
  return h.value();
}

}  // namespace robocache
