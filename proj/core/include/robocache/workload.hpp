#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <vector>

#include "robocache/barcode.hpp"
#include "robocache/knowledge_base.hpp"
#include "robocache/random.hpp"

namespace robocache {

struct ScanEvent {
  std::uint32_t robot_id = 0;
  Barcode barcode;
  std::uint64_t issued_at_ms = 0;

  friend bool operator==(const ScanEvent&, const ScanEvent&) = default;
};

/// Scan events in issue order; issued_at_ms is non-decreasing.
using Trace = std::vector<ScanEvent>;

struct WorkloadConfig {
  std::uint64_t total_scans = 0;
  std::uint64_t unique_barcodes = 0;
  double skew = 0.0;  // Zipf exponent, 0 = uniform
  std::uint32_t robots = 1;
  double inter_arrival_ms = 1.0;  // mean of the exponential gap
  std::uint64_t seed = 0;

  /// Throws ValidationError listing every offending field.
  void validate() const;
};

/// Draws 0-based popularity ranks with P(rank k) proportional to
/// (k + 1)^-skew, by inverse-CDF lookup over a precomputed table.
class ZipfSampler {
 public:
  ZipfSampler(std::uint64_t n, double skew);

  std::uint64_t operator()(Rng& rng) const;
  double probability(std::uint64_t rank) const;
  std::uint64_t size() const noexcept { return cdf_.size(); }

 private:
  std::vector<double> cdf_;
};

/// Bijective map from a popularity rank to a 14-digit barcode.
Barcode barcode_for_key(std::uint64_t key_index);

/// Deterministic trace: Zipf-distributed keys, exponential arrivals floored
/// to whole milliseconds, events assigned round-robin to robots.
Trace generate(const WorkloadConfig& config);

/// Synthetic station records for every key of the workload, in rank order.
KnowledgeBase make_knowledge_base(const WorkloadConfig& config);

// Trace CSV: header `robot_id,barcode,issued_at_ms`, then one event per line.
Trace load_trace(std::istream& in);
void write_trace(std::ostream& out, const Trace& trace);

/// FNV-1a digest of the canonical trace encoding.
std::uint64_t trace_digest(const Trace& trace);

}  // namespace robocache
