#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "robocache/hit_ordered_cache.hpp"
#include "robocache/knowledge_base.hpp"
#include "robocache/netlink.hpp"
#include "robocache/sim_time.hpp"
#include "robocache/workload.hpp"

namespace robocache {

enum class MethodKind { baseline, cached };

std::string_view to_string(MethodKind method) noexcept;
/// Accepts "baseline" or "cached"; throws ValidationError otherwise.
MethodKind parse_method(std::string_view text);

/// Simulation tunables. Time costs are per probe.
struct SimParams {
  LinkConfig link;
  std::size_t cache_capacity = 0;
  Millis cache_probe_time{0.01};
  Millis db_probe_time{0};
  // When false every trace key must exist in the knowledge base.
  bool allow_unknown_barcodes = false;
  std::uint64_t seed = 0;

  void validate(MethodKind method) const;
};

struct RoutingEntry {
  Barcode barcode;
  std::optional<DecisionPayload> payload;  // empty for unknown barcodes
  Millis decided_at{0};
};

struct RobotState {
  std::uint32_t robot_id = 0;
  std::optional<HitOrderedCache> cache;  // cached method only
  std::uint64_t decisions_made = 0;
  std::vector<RoutingEntry> routing_log;
};

/// What happened to one scan, in trace order.
struct ScanOutcome {
  bool cache_hit = false;
  bool found = true;
  std::uint32_t cache_comparisons = 0;
  std::uint32_t db_comparisons = 0;
  std::uint32_t losses = 0;
  Millis lock_stall{0};
  Millis started_at{0};
  Millis decided_at{0};

  friend bool operator==(const ScanOutcome&, const ScanOutcome&) = default;
};

struct RunCounters {
  std::uint64_t scans = 0;
  std::uint64_t cache_hits = 0;
  std::uint64_t cache_misses = 0;
  std::uint64_t cache_comparisons = 0;
  std::uint64_t db_comparisons = 0;
  std::uint64_t station_messages = 0;  // requests, before retransmission
  std::uint64_t db_not_found = 0;
  std::vector<Millis> per_scan_latencies;  // trace order
  LinkStats link_stats;
  Millis first_issued_at{0};
  Millis final_clock{0};
  Millis wall_clock_of_run{0};  // host time, informational only
};

struct RunResult {
  MethodKind method = MethodKind::baseline;
  RunCounters counters;
  std::vector<ScanOutcome> outcomes;
  std::vector<RobotState> robots;  // indexed by robot_id
  std::vector<HitSnapshot> snapshots;  // end-of-run holding area per robot
  std::uint64_t digest = 0;
};

/// Runs a trace through one method on a discrete-event clock.
///
/// Each robot handles its scans one at a time in issue order; a scan that
/// arrives while its robot is busy waits. Baseline sends every scan to the
/// station. The cached method probes the robot's local cache first and goes
/// to the station only on a miss, caching the answer. Robots share nothing
/// but the read-only knowledge base and the link's counters.
///
/// Throws ValidationError for an empty or unordered trace and DataError for
/// a barcode missing from the knowledge base unless unknown barcodes are
/// allowed.
RunResult run(MethodKind method, const Trace& trace, const KnowledgeBase& kb,
              const SimParams& params);

/// Runs twice and throws std::logic_error if the two digests differ.
RunResult replay_deterministic(MethodKind method, const Trace& trace,
                               const KnowledgeBase& kb,
                               const SimParams& params);

/// Digest over every per-scan outcome and the run totals.
std::uint64_t run_digest(const RunResult& result);

}  // namespace robocache
