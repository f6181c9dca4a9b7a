#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>

#include "robocache/netlink.hpp"
#include "robocache/sim_time.hpp"
#include "robocache/simulator.hpp"
#include "robocache/workload.hpp"

namespace robocache {

/// Every experiment tunable, loaded from an INI file:
///
///   [experiment] seed, output_dir, kb_path, trace_path,
///                alert_threshold_minutes
///   [workload]   total_scans, unique_barcodes, skew, robots,
///                inter_arrival_ms
///   [link]       one_way_latency_ms, loss_probability, lock_probability,
///                lock_stall_ms, retransmit_timeout_ms
///   [cache]      capacity, probe_time_ms
///   [station]    db_probe_time_ms, allow_unknown_barcodes
///
/// seed and cache capacity have no defaults. kb_path and trace_path are
/// resolved against output_dir when relative.
struct SimConfig {
  WorkloadConfig workload;
  LinkConfig link;
  std::size_t cache_capacity = 0;
  Millis cache_probe_time{0.01};
  Millis db_probe_time{0};
  bool allow_unknown_barcodes = false;
  Minutes alert_threshold{20};
  std::uint64_t seed = 0;
  std::filesystem::path output_dir{"out"};
  std::filesystem::path kb_path{"kb.dat"};
  std::filesystem::path trace_path{"trace.csv"};

  /// Replaces the master seed everywhere it is used.
  void set_seed(std::uint64_t value);

  std::filesystem::path resolved_kb_path() const;
  std::filesystem::path resolved_trace_path() const;
  SimParams sim_params() const;

  void validate() const;
};

/// Throws ConfigError on a missing required key or a bad value.
SimConfig parse_sim_config(std::istream& in);
SimConfig load_sim_config(const std::filesystem::path& path);

}  // namespace robocache
