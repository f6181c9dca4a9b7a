#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

#include "robocache/sim_time.hpp"
#include "robocache/simulator.hpp"

namespace robocache {

/// The four headline measurements of one run of one method.
struct MetricsReport {
  MethodKind method = MethodKind::baseline;
  Minutes decision_latency_mean{0};
  Minutes first_decision_latency{0};
  Minutes total_processing_time{0};
  double disruption_rate = 0.0;  // (locks + losses) per million scans
  std::uint64_t total_comparisons = 0;  // cache + database probes
  std::uint64_t trace_digest = 0;
  std::uint64_t run_digest = 0;
  RunCounters raw;  // empty when read back from a report file
};

/// Throws DataError if the run recorded no decisions.
MetricsReport summarize(const RunCounters& counters, MethodKind method);
MetricsReport summarize(const RunResult& result, std::uint64_t trace_digest);

/// cached / baseline for each row; empty where the baseline value is zero.
struct ComparisonRatios {
  std::optional<double> latency;
  std::optional<double> processing;
  std::optional<double> disruption;
  std::optional<double> comparisons;
};

struct ComparisonTable {
  MetricsReport baseline;
  MetricsReport cached;
  ComparisonRatios ratios;
};

/// Throws DataError if the reports come from different traces.
ComparisonTable compare(const MetricsReport& baseline,
                        const MetricsReport& cached);

struct AlertPolicy {
  Minutes threshold{20};
};

struct AlertResult {
  bool raised = false;
  Minutes overrun{0};
};

/// Raised only when processing time is strictly above the threshold.
AlertResult check_alert(const MetricsReport& report, const AlertPolicy& policy);

// File formats. Numbers use the shortest text that round-trips exactly.
std::string format_number(double value);

void write_report_csv(std::ostream& out, const MetricsReport& report);
/// Reads the headline fields back; `raw` stays empty.
MetricsReport read_report_csv(std::istream& in);
/// Every RunCounters field except host wall-clock time.
void write_raw_json(std::ostream& out, const MetricsReport& report);

void write_comparison_csv(std::ostream& out, const ComparisonTable& table);
std::string format_comparison_text(const ComparisonTable& table);

}  // namespace robocache
