#include "commands.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <fstream>
#include <ostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "robocache/digest.hpp"
#include "robocache/errors.hpp"
#include "robocache/knowledge_base.hpp"
#include "robocache/metrics.hpp"
#include "robocache/sim_config.hpp"
#include "robocache/workload.hpp"

namespace robocache::cli {
namespace fs = std::filesystem;

namespace {

// Input files the user has to fix, as opposed to internal failures.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

SimConfig load_config(const CommonOptions& opts) {
  SimConfig config = load_sim_config(opts.config);
  if (opts.seed) config.set_seed(*opts.seed);
  if (opts.out) config.output_dir = *opts.out;
  return config;
}

std::ofstream open_output(const fs::path& path) {
  std::error_code ec;
  if (path.has_parent_path()) fs::create_directories(path.parent_path(), ec);
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw InputError("cannot write " + path.string());
  return file;
}

std::ifstream open_input(const fs::path& path, const char* what) {
  std::ifstream file(path, std::ios::binary);
  if (!file) throw InputError(std::string("missing ") + what + " " + path.string());
  return file;
}

template <typename Fn>
void write_file(const fs::path& path, Fn&& fn) {
  auto file = open_output(path);
  fn(file);
  file.flush();
  if (!file) throw InputError("failed writing " + path.string());
}

template <typename Fn>
int guarded(std::ostream& err, Fn&& fn) {
  try {
    return fn();
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  }
}

void emit_alert(std::ostream& err, const MetricsReport& report,
                const AlertResult& alert) {
  err << "ALERT overrun_minutes=" << format_number(alert.overrun.count())
      << " method=" << to_string(report.method) << '\n';
}

struct MethodOutput {
  MetricsReport report;
  RunResult result;
};

MethodOutput run_method(MethodKind method, const Trace& trace,
                        const KnowledgeBase& kb, const SimConfig& config) {
  RunResult result = run(method, trace, kb, config.sim_params());
  MetricsReport report = summarize(result, trace_digest(trace));
  return {std::move(report), std::move(result)};
}

void write_reports(const fs::path& dir, const MetricsReport& report) {
  std::string stem(to_string(report.method));
  write_file(dir / (stem + "_report.csv"),
             [&](std::ostream& f) { write_report_csv(f, report); });
  write_file(dir / (stem + "_raw.json"),
             [&](std::ostream& f) { write_raw_json(f, report); });
}

}  // namespace

int cmd_generate(const CommonOptions& opts, std::ostream& out,
                 std::ostream& err) {
  return guarded(err, [&] {
    SimConfig config = load_config(opts);
    Trace trace = generate(config.workload);
    KnowledgeBase kb = make_knowledge_base(config.workload);

    auto trace_path = config.resolved_trace_path();
    auto kb_path = config.resolved_kb_path();
    write_file(trace_path, [&](std::ostream& f) { write_trace(f, trace); });
    write_file(kb_path, [&](std::ostream& f) { export_records(f, kb); });

    out << "trace " << trace_path.string() << " events=" << trace.size()
        << " digest=" << digest_hex(trace_digest(trace)) << '\n'
        << "kb " << kb_path.string() << " records=" << kb.size() << '\n';
    return kOk;
  });
}

int cmd_run(const CommonOptions& opts, MethodKind method, bool snapshots,
            std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    SimConfig config = load_config(opts);
    auto trace_in = open_input(config.resolved_trace_path(), "trace");
    Trace trace = load_trace(trace_in);
    auto kb_in = open_input(config.resolved_kb_path(), "knowledge base");
    KnowledgeBase kb = ingest(kb_in);

    auto [report, result] = run_method(method, trace, kb, config);
    write_reports(config.output_dir, report);
    if (snapshots && method == MethodKind::cached) {
      for (std::size_t i = 0; i < result.snapshots.size(); ++i) {
        auto id = result.robots[i].robot_id;
        write_file(config.output_dir / "holding_area" /
                       ("robot_" + std::to_string(id) + ".csv"),
                   [&](std::ostream& f) {
                     write_snapshot_csv(f, result.snapshots[i]);
                   });
      }
    }

    out << to_string(method) << " scans=" << report.raw.scans
        << " hits=" << report.raw.cache_hits
        << " station_messages=" << report.raw.station_messages
        << " run_digest=" << digest_hex(report.run_digest) << '\n';
    err << "wall_clock_ms=" << format_number(result.counters.wall_clock_of_run.count())
        << '\n';

    AlertResult alert = check_alert(report, AlertPolicy{config.alert_threshold});
    if (alert.raised) {
      emit_alert(err, report, alert);
      return kAlert;
    }
    return kOk;
  });
}

int cmd_compare(const fs::path& baseline_report, const fs::path& cached_report,
                const std::optional<fs::path>& out_dir, std::ostream& out,
                std::ostream& err) {
  return guarded(err, [&] {
    auto b_in = open_input(baseline_report, "report");
    auto c_in = open_input(cached_report, "report");
    MetricsReport baseline = read_report_csv(b_in);
    MetricsReport cached = read_report_csv(c_in);
    if (baseline.method != MethodKind::baseline ||
        cached.method != MethodKind::cached) {
      throw InputError("expected a baseline report followed by a cached report");
    }
    ComparisonTable table = compare(baseline, cached);

    fs::path dir = out_dir ? *out_dir : cached_report.parent_path();
    write_file(dir / "comparison.csv",
               [&](std::ostream& f) { write_comparison_csv(f, table); });
    out << format_comparison_text(table);
    return kOk;
  });
}

int cmd_report(const CommonOptions& opts, unsigned jobs, unsigned sweep,
               std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    if (sweep == 0) throw InputError("--sweep must be >= 1");
    SimConfig base = load_config(opts);

    struct SeedResult {
      std::uint64_t seed = 0;
      ComparisonTable table;
      std::string alerts;
      std::exception_ptr failure;
    };
    std::vector<SeedResult> results(sweep);
    std::atomic<unsigned> next{0};

    auto worker = [&] {
      for (unsigned i = next++; i < sweep; i = next++) {
        SeedResult& slot = results[i];
        try {
          SimConfig config = base;
          config.set_seed(base.seed + i);
          if (sweep > 1) {
            config.output_dir /= "seed-" + std::to_string(config.seed);
          }
          slot.seed = config.seed;
          Trace trace = generate(config.workload);
          KnowledgeBase kb = make_knowledge_base(config.workload);
          auto b = run_method(MethodKind::baseline, trace, kb, config);
          auto c = run_method(MethodKind::cached, trace, kb, config);
          write_reports(config.output_dir, b.report);
          write_reports(config.output_dir, c.report);
          slot.table = compare(b.report, c.report);
          write_file(config.output_dir / "comparison.csv", [&](std::ostream& f) {
            write_comparison_csv(f, slot.table);
          });
          std::ostringstream alerts;
          for (const auto* r : {&b.report, &c.report}) {
            auto alert = check_alert(*r, AlertPolicy{config.alert_threshold});
            if (alert.raised) emit_alert(alerts, *r, alert);
          }
          slot.alerts = alerts.str();
        } catch (...) {
          slot.failure = std::current_exception();
        }
      }
    };

    unsigned threads = std::clamp(jobs, 1u, sweep);
    {
      std::vector<std::jthread> pool;
      for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
      worker();
    }

    bool any_alert = false;
    for (auto& r : results) {
      if (r.failure) std::rethrow_exception(r.failure);
      if (sweep > 1) out << "seed " << r.seed << '\n';
      out << format_comparison_text(r.table);
      err << r.alerts;
      any_alert = any_alert || !r.alerts.empty();
    }
    if (sweep > 1) {
      auto cell = [](const std::optional<double>& v) {
        return v ? format_number(*v) : std::string("NA");
      };
      write_file(base.output_dir / "sweep.csv", [&](std::ostream& f) {
        f << "seed,latency_ratio,processing_ratio,disruption_ratio,"
             "comparisons_ratio\n";
        for (const auto& r : results) {
          f << r.seed << ',' << cell(r.table.ratios.latency) << ','
            << cell(r.table.ratios.processing) << ','
            << cell(r.table.ratios.disruption) << ','
            << cell(r.table.ratios.comparisons) << '\n';
        }
      });
    }
    return any_alert ? kAlert : kOk;
  });
}

}  // namespace robocache::cli
