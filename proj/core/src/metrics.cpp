#include "robocache/metrics.hpp"

#include <charconv>
#include <cstdio>
#include <istream>
#include <map>
#include <nlohmann/json.hpp>
#include <ostream>
#include <sstream>
#include <vector>

#include "robocache/digest.hpp"
#include "robocache/errors.hpp"

namespace robocache {

MetricsReport summarize(const RunCounters& counters, MethodKind method) {
  if (counters.per_scan_latencies.empty() || counters.scans == 0) {
    throw DataError("run produced no decisions");
  }
  MetricsReport r;
  r.method = method;
  Millis sum{0};
  for (auto l : counters.per_scan_latencies) sum += l;
  r.decision_latency_mean =
      sum / static_cast<double>(counters.per_scan_latencies.size());
  r.first_decision_latency = counters.per_scan_latencies.front();
  r.total_processing_time = counters.final_clock - counters.first_issued_at;
  r.disruption_rate = static_cast<double>(counters.link_stats.lock_events +
                                          counters.link_stats.messages_lost) *
                      1e6 / static_cast<double>(counters.scans);
  r.total_comparisons = counters.cache_comparisons + counters.db_comparisons;
  r.raw = counters;
  return r;
}

MetricsReport summarize(const RunResult& result, std::uint64_t trace_digest) {
  MetricsReport r = summarize(result.counters, result.method);
  r.trace_digest = trace_digest;
  r.run_digest = result.digest;
  return r;
}

namespace {

std::optional<double> ratio(double cached, double baseline) {
  if (!(baseline > 0)) return std::nullopt;
  return cached / baseline;
}

struct Row {
  const char* key;
  const char* label;
  double baseline;
  double cached;
  std::optional<double> ratio;
};

std::vector<Row> rows(const ComparisonTable& t) {
  return {
      {"decision_latency_mean_min", "Decision making capability (min)",
       t.baseline.decision_latency_mean.count(),
       t.cached.decision_latency_mean.count(), t.ratios.latency},
      {"total_processing_time_min", "Time for image processing (min)",
       t.baseline.total_processing_time.count(),
       t.cached.total_processing_time.count(), t.ratios.processing},
      {"disruption_per_million", "Message loss / resource locks (per 1M)",
       t.baseline.disruption_rate, t.cached.disruption_rate,
       t.ratios.disruption},
      {"total_comparisons", "Number of comparisons",
       static_cast<double>(t.baseline.total_comparisons),
       static_cast<double>(t.cached.total_comparisons), t.ratios.comparisons},
  };
}

}  // namespace

ComparisonTable compare(const MetricsReport& baseline,
                        const MetricsReport& cached) {
  if (baseline.trace_digest != cached.trace_digest) {
    throw DataError("reports come from different traces (" +
                    digest_hex(baseline.trace_digest) + " vs " +
                    digest_hex(cached.trace_digest) + ")");
  }
  ComparisonTable t{baseline, cached, {}};
  t.ratios.latency = ratio(cached.decision_latency_mean.count(),
                           baseline.decision_latency_mean.count());
  t.ratios.processing = ratio(cached.total_processing_time.count(),
                              baseline.total_processing_time.count());
  t.ratios.disruption = ratio(cached.disruption_rate, baseline.disruption_rate);
  t.ratios.comparisons =
      ratio(static_cast<double>(cached.total_comparisons),
            static_cast<double>(baseline.total_comparisons));
  return t;
}

AlertResult check_alert(const MetricsReport& report,
                        const AlertPolicy& policy) {
  if (!(policy.threshold.count() > 0)) {
    throw ConfigError("alert threshold must be > 0");
  }
  AlertResult a;
  a.raised = report.total_processing_time > policy.threshold;
  if (a.raised) a.overrun = report.total_processing_time - policy.threshold;
  return a;
}

std::string format_number(double value) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, ptr);
}

void write_report_csv(std::ostream& out, const MetricsReport& r) {
  out << "metric,value\n"
      << "method," << to_string(r.method) << '\n'
      << "trace_digest," << digest_hex(r.trace_digest) << '\n'
      << "run_digest," << digest_hex(r.run_digest) << '\n'
      << "decision_latency_mean_min,"
      << format_number(r.decision_latency_mean.count()) << '\n'
      << "total_processing_time_min,"
      << format_number(r.total_processing_time.count()) << '\n'
      << "disruption_per_million," << format_number(r.disruption_rate) << '\n'
      << "total_comparisons," << r.total_comparisons << '\n'
      << "first_decision_latency_min,"
      << format_number(r.first_decision_latency.count()) << '\n';
}

MetricsReport read_report_csv(std::istream& in) {
  std::map<std::string, std::string> fields;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line_no == 1) {
      if (line != "metric,value") throw ParseError(1, "not a run report");
      continue;
    }
    auto comma = line.find(',');
    if (comma == std::string::npos) throw ParseError(line_no, "missing comma");
    fields[line.substr(0, comma)] = line.substr(comma + 1);
  }
  auto need = [&](const char* key) -> const std::string& {
    auto it = fields.find(key);
    if (it == fields.end()) {
      throw ValidationError(std::string("report is missing '") + key + "'");
    }
    return it->second;
  };
  auto number = [&](const char* key) {
    const std::string& text = need(key);
    double v = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc{} || ptr != text.data() + text.size()) {
      throw ValidationError(std::string("bad number for '") + key + "'");
    }
    return v;
  };

  MetricsReport r;
  r.method = parse_method(need("method"));
  r.trace_digest = parse_digest_hex(need("trace_digest"));
  r.run_digest = parse_digest_hex(need("run_digest"));
  r.decision_latency_mean = Minutes(number("decision_latency_mean_min"));
  r.total_processing_time = Minutes(number("total_processing_time_min"));
  r.disruption_rate = number("disruption_per_million");
  r.total_comparisons = static_cast<std::uint64_t>(number("total_comparisons"));
  r.first_decision_latency = Minutes(number("first_decision_latency_min"));
  return r;
}

void write_raw_json(std::ostream& out, const MetricsReport& r) {
  const RunCounters& c = r.raw;
  nlohmann::ordered_json latencies = nlohmann::ordered_json::array();
  for (auto l : c.per_scan_latencies) latencies.push_back(l.count());
  nlohmann::ordered_json doc = {
      {"method", to_string(r.method)},
      {"trace_digest", digest_hex(r.trace_digest)},
      {"run_digest", digest_hex(r.run_digest)},
      {"scans", c.scans},
      {"cache_hits", c.cache_hits},
      {"cache_misses", c.cache_misses},
      {"cache_comparisons", c.cache_comparisons},
      {"db_comparisons", c.db_comparisons},
      {"station_messages", c.station_messages},
      {"db_not_found", c.db_not_found},
      {"link_stats",
       {{"messages_sent", c.link_stats.messages_sent},
        {"messages_delivered", c.link_stats.messages_delivered},
        {"messages_lost", c.link_stats.messages_lost},
        {"retransmissions", c.link_stats.retransmissions},
        {"lock_events", c.link_stats.lock_events},
        {"total_stall_time_ms", c.link_stats.total_stall_time.count()}}},
      {"first_issued_at_ms", c.first_issued_at.count()},
      {"final_clock_ms", c.final_clock.count()},
      {"first_decision_latency_ms",
       c.per_scan_latencies.empty() ? 0.0 : c.per_scan_latencies.front().count()},
      {"per_scan_latencies_ms", std::move(latencies)},
  };
  out << doc.dump(1) << '\n';
}

void write_comparison_csv(std::ostream& out, const ComparisonTable& table) {
  out << "metric,baseline,cached,ratio\n";
  for (const auto& row : rows(table)) {
    out << row.key << ',' << format_number(row.baseline) << ','
        << format_number(row.cached) << ','
        << (row.ratio ? format_number(*row.ratio) : std::string("NA")) << '\n';
  }
}

std::string format_comparison_text(const ComparisonTable& table) {
  std::ostringstream out;
  char line[160];
  std::snprintf(line, sizeof line, "%-40s %16s %16s %8s\n", "metric",
                "baseline", "cached", "ratio");
  out << line;
  for (const auto& row : rows(table)) {
    char ratio_text[32] = "NA";
    if (row.ratio) std::snprintf(ratio_text, sizeof ratio_text, "%.3f", *row.ratio);
    std::snprintf(line, sizeof line, "%-40s %16.4f %16.4f %8s\n", row.label,
                  row.baseline, row.cached, ratio_text);
    out << line;
  }
  return out.str();
}

}  // namespace robocache
