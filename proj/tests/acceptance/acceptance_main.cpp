// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any
// criterion fails. Pass criterion names (A1 ... A7) to run a subset.

#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <unordered_map>
#include <vector>

#include "reference_cache.hpp"
#include "fixtures.hpp"
#include "robocache/hit_ordered_cache.hpp"
#include "robocache/knowledge_base.hpp"
#include "robocache/metrics.hpp"
#include "robocache/sim_config.hpp"
#include "robocache/simulator.hpp"
#include "robocache/workload.hpp"

namespace {

using namespace robocache;
using robocache::testing::ReferenceCache;
namespace fs = std::filesystem;

struct Outcome {
  bool pass = true;
  std::string detail;
};

// Collects the first failure message; later ones are dropped.
class Check {
 public:
  void expect(bool cond, const std::string& what) {
    if (!cond && ok_) {
      ok_ = false;
      first_ = what;
    }
  }
  bool ok() const { return ok_; }
  Outcome result(const std::string& summary) const {
    return ok_ ? Outcome{true, summary} : Outcome{false, first_};
  }

 private:
  bool ok_ = true;
  std::string first_;
};

Barcode key_barcode(std::uint64_t k) { return Barcode::from_value(k + 1); }

DecisionPayload payload_for(std::uint64_t k) {
  return DecisionPayload{"T" + std::to_string(k), "GRND", false};
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
      .count();
}

std::string fmt(double v, int precision = 3) {
  std::ostringstream s;
  s.precision(precision);
  s << std::fixed << v;
  return s.str();
}

// A1: HitOrderedCache against the full-sort reference on random traces.
Outcome a1_oracle_equivalence() {
  const auto start = std::chrono::steady_clock::now();
  std::mt19937_64 gen(0xA1);
  Check check;
  std::uint64_t ops = 0, evictions = 0;
  constexpr int kTraces = 10'000;
  for (int t = 0; t < kTraces && check.ok(); ++t) {
    const std::size_t capacity = 1 + gen() % 16;
    const std::uint64_t keyspace = 1 + gen() % 64;
    const std::size_t length = 1 + gen() % 1000;
    HitOrderedCache cache(capacity);
    ReferenceCache ref(capacity);
    const std::string where = "trace " + std::to_string(t) + ", op ";
    for (std::size_t i = 0; i < length && check.ok(); ++i, ++ops) {
      const std::uint64_t k = gen() % keyspace;
      auto got = cache.lookup(key_barcode(k));
      auto want = ref.lookup(k);
      check.expect(got.hit() == want.hit, where + std::to_string(i) + ": hit/miss");
      check.expect(got.comparisons == want.comparisons,
                   where + std::to_string(i) + ": comparisons");
      if (!want.hit) {
        auto evicted = cache.insert(key_barcode(k), payload_for(k));
        auto victim = ref.insert(k);
        check.expect(evicted.evicted.has_value() == victim.has_value(),
                     where + std::to_string(i) + ": eviction presence");
        if (evicted.evicted && victim) {
          ++evictions;
          check.expect(*evicted.evicted == key_barcode(*victim),
                       where + std::to_string(i) + ": eviction victim");
        }
      }
    }
    const auto& rows = ref.rows();
    auto entries = cache.entries();
    check.expect(rows.size() == entries.size(), where + "end: size");
    for (std::size_t i = 0; i < std::min(rows.size(), entries.size()); ++i) {
      check.expect(entries[i].barcode == key_barcode(rows[i].key),
                   where + "end: key at " + std::to_string(i));
      check.expect(entries[i].hits == rows[i].hits,
                   where + "end: hits at " + std::to_string(i));
    }
  }
  const double secs = seconds_since(start);
  check.expect(secs < 30.0, "runtime " + fmt(secs) + " s exceeds 30 s");
  return check.result(std::to_string(kTraces) + " traces, " + std::to_string(ops) +
                      " lookups, " + std::to_string(evictions) + " evictions, " +
                      fmt(secs) + " s");
}

// A2: station traffic. The unqualified statement "any repeated key gives
// strictly fewer messages" does not hold (a repeat the cache no longer holds
// still goes to the station), so the property is checked in its retention
// form and the counterexample is asserted separately.
Outcome a2_station_traffic() {
  std::mt19937_64 gen(0xA2);
  Check check;
  const KnowledgeBase kb = make_knowledge_base(WorkloadConfig{1, 64, 0.0, 1, 1.0, 0});
  int strict = 0, equal = 0, trials = 0;
  for (int t = 0; t < 2000 && check.ok(); ++t, ++trials) {
    SimParams p = robocache::testing::quiet_params();
    p.cache_capacity = 1 + gen() % 8;
    p.seed = gen();
    if (t % 2 == 1) {
      p.link.loss_probability = 0.2;
      p.link.lock_probability = 0.1;
      p.link.lock_stall = Millis(300);
    }
    const std::uint32_t robots = 1 + gen() % 4;
    const std::uint64_t keyspace = 1 + gen() % 64;
    const std::size_t length = 1 + gen() % 200;
    // Every fourth trace draws keys without replacement, so no key repeats.
    const bool distinct = t % 4 == 0;
    std::vector<std::uint64_t> pool(64);
    std::iota(pool.begin(), pool.end(), 0);
    std::shuffle(pool.begin(), pool.end(), gen);

    Trace trace;
    std::uint64_t clock = 0;
    for (std::size_t i = 0; i < (distinct ? std::min<std::size_t>(length, 64) : length); ++i) {
      clock += gen() % 400;
      const std::uint64_t k = distinct ? pool[i] : gen() % keyspace;
      trace.push_back(ScanEvent{static_cast<std::uint32_t>(gen() % robots),
                                barcode_for_key(k), clock});
    }

    // Independent facts about the trace.
    std::set<Barcode> seen;
    bool repeats = false;
    bool back_to_back = false;
    std::map<std::uint32_t, Barcode> last_on_robot;
    std::map<std::uint32_t, ReferenceCache> replay;
    bool any_retained_hit = false;
    for (const auto& ev : trace) {
      repeats |= !seen.insert(ev.barcode).second;
      auto last = last_on_robot.find(ev.robot_id);
      back_to_back |= last != last_on_robot.end() && last->second == ev.barcode;
      last_on_robot.insert_or_assign(ev.robot_id, ev.barcode);
      auto& ref = replay.try_emplace(ev.robot_id, p.cache_capacity).first->second;
      if (ref.lookup(ev.barcode.value()).hit) {
        any_retained_hit = true;
      } else {
        ref.insert(ev.barcode.value());
      }
    }

    const auto base = run(MethodKind::baseline, trace, kb, p).counters.station_messages;
    const auto cached = run(MethodKind::cached, trace, kb, p).counters.station_messages;
    const std::string where = "trace " + std::to_string(t) + ": ";
    check.expect(base == trace.size(), where + "baseline sends one request per scan");
    check.expect(cached <= base, where + "cached exceeds baseline");
    if (!repeats) check.expect(cached == base, where + "no repeats but fewer messages");
    check.expect((cached < base) == any_retained_hit,
                 where + "strict reduction disagrees with retained repeats");
    if (back_to_back) check.expect(cached < base, where + "back-to-back repeat not served locally");
    (cached < base ? strict : equal)++;
  }

  // Counterexample to the unqualified form: capacity 1, A,B,A.
  SimParams p = robocache::testing::quiet_params();
  p.cache_capacity = 1;
  Trace aba;
  for (std::uint64_t k : {0, 1, 0}) {
    aba.push_back(ScanEvent{0, barcode_for_key(k), 1000 * aba.size()});
  }
  const auto base = run(MethodKind::baseline, aba, kb, p).counters.station_messages;
  const auto cached = run(MethodKind::cached, aba, kb, p).counters.station_messages;
  check.expect(base == 3 && cached == 3, "A,B,A at capacity 1 should tie at 3 messages");

  return check.result(std::to_string(trials) + " traces (" + std::to_string(strict) +
                      " strictly fewer, " + std::to_string(equal) +
                      " equal); A,B,A at capacity 1 ties as documented");
}

// A3: the shipped 1/100-scale preset reproduces the four column ratios.
Outcome a3_calibration() {
  const auto start = std::chrono::steady_clock::now();
  Check check;
  const SimConfig cfg =
      load_sim_config(robocache::testing::preset_path("calibration_1in100.ini"));
  const Trace trace = generate(cfg.workload);
  const KnowledgeBase kb = make_knowledge_base(cfg.workload);
  const std::uint64_t digest = trace_digest(trace);
  const SimParams params = cfg.sim_params();
  const auto baseline = summarize(run(MethodKind::baseline, trace, kb, params), digest);
  const auto cached = summarize(run(MethodKind::cached, trace, kb, params), digest);
  const ComparisonTable table = compare(baseline, cached);

  struct Row {
    const char* name;
    std::optional<double> got;
    double target;
  };
  const Row rows[] = {{"latency", table.ratios.latency, 0.65},
                      {"processing", table.ratios.processing, 0.833},
                      {"disruption", table.ratios.disruption, 0.556},
                      {"comparisons", table.ratios.comparisons, 0.771}};
  std::string summary;
  for (const auto& row : rows) {
    check.expect(row.got.has_value(), std::string(row.name) + " ratio undefined");
    if (!row.got) continue;
    const double rel = *row.got / row.target - 1.0;
    check.expect(std::abs(rel) <= 0.15, std::string(row.name) + " ratio " +
                                            fmt(*row.got) + " outside 15% of " +
                                            fmt(row.target));
    summary += std::string(row.name) + "=" + fmt(*row.got) + " ";
  }
  const double secs = seconds_since(start);
  check.expect(secs < 60.0, "runtime " + fmt(secs) + " s exceeds 60 s");
  return check.result(summary + "(" + std::to_string(trace.size()) + " scans, " +
                      fmt(secs) + " s)");
}

int run_cli(const std::string& args, const fs::path& log) {
  const std::string cmd =
      std::string(ROBOCACHE_CLI) + " " + args + " >" + log.string() + " 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

// A4: two invocations of `run` write byte-identical files, with loss and
// lock enabled.
Outcome a4_determinism() {
  Check check;
  const fs::path dir = fs::temp_directory_path() /
                       ("robocache_accept_a4_" + std::to_string(::getpid()));
  fs::remove_all(dir);
  fs::create_directories(dir);
  const std::string preset =
      robocache::testing::preset_path("calibration_1in100.ini").string();
  const std::string common = "--config " + preset + " --seed 3 --out " + dir.string();
  const fs::path log = dir / "cli.log";

  check.expect(run_cli("generate " + common, log) == 0, "generate failed: " + slurp(log));
  std::size_t files = 0;
  for (const char* method : {"baseline", "cached"}) {
    std::map<std::string, std::string> first;
    for (int pass = 0; pass < 2 && check.ok(); ++pass) {
      const int code = run_cli(std::string("run ") + common + " --method " + method +
                                   " --snapshot",
                               log);
      check.expect(code == 0 || code == 2, std::string("run ") + method + " failed: " + slurp(log));
      std::vector<fs::path> outputs{dir / (std::string(method) + "_report.csv"),
                                    dir / (std::string(method) + "_raw.json")};
      if (std::string(method) == "cached") {
        for (const auto& e : fs::directory_iterator(dir / "holding_area")) {
          outputs.push_back(e.path());
        }
      }
      for (const auto& path : outputs) {
        std::string bytes = slurp(path);
        check.expect(!bytes.empty(), path.filename().string() + " is empty");
        if (pass == 0) {
          first[path.string()] = std::move(bytes);
        } else {
          ++files;
          check.expect(first[path.string()] == bytes,
                       path.filename().string() + " differs between runs");
        }
      }
      // Make sure the second pass really rewrites the files.
      if (pass == 0) {
        for (const auto& [path, _] : first) fs::remove(path);
      }
    }
  }
  fs::remove_all(dir);
  return check.result(std::to_string(files) +
                      " files byte-identical across two runs of each method "
                      "(loss 0.01, lock 0.01)");
}

// A5: ordering, stability and hit conservation after every operation.
Outcome a5_ordering_invariant() {
  std::mt19937_64 gen(0xA5);
  Check check;
  constexpr std::uint64_t kTarget = 1'000'000;
  std::uint64_t ops = 0, evictions = 0;
  while (ops < kTarget && check.ok()) {
    const std::size_t capacity = 1 + gen() % 32;
    const std::uint64_t keyspace = 1 + gen() % 96;
    HitOrderedCache cache(capacity);
    // Hits held by the cache must equal inserts + successful lookups minus
    // the counters carried away by evicted entries.
    std::uint64_t inserts = 0, hits = 0, evicted_hits = 0;
    for (int i = 0; i < 2000 && check.ok(); ++i, ++ops) {
      const Barcode key = key_barcode(gen() % keyspace);
      if (gen() % 3 == 0 && !cache.contains(key)) {
        if (cache.size() == cache.capacity()) evicted_hits += cache.entries().back().hits;
        auto report = cache.insert(key, DecisionPayload{});
        evictions += report.evicted.has_value();
        ++inserts;
      } else {
        hits += cache.lookup(key).hit();
      }
      auto entries = cache.entries();
      check.expect(entries.size() <= capacity, "size exceeds capacity");
      std::uint64_t total = 0;
      for (std::size_t j = 0; j < entries.size(); ++j) {
        total += entries[j].hits;
        check.expect(entries[j].hits >= 1, "entry with zero hits");
        check.expect(cache.contains(entries[j].barcode), "index out of sync");
        if (j == 0) continue;
        check.expect(entries[j - 1].hits >= entries[j].hits, "hits not descending");
        if (entries[j - 1].hits == entries[j].hits) {
          check.expect(entries[j - 1].seq < entries[j].seq, "equal hits out of seq order");
        }
      }
      check.expect(total + evicted_hits == inserts + hits, "hit conservation violated");
    }
  }
  return check.result(std::to_string(ops) + " operations checked, " +
                      std::to_string(evictions) + " evictions");
}

// A6: alert strictly above the threshold only.
Outcome a6_alert() {
  Check check;
  int probes = 0;
  for (double threshold : {20.0, 1.0, 0.5, 1440.0}) {
    const AlertPolicy policy{Minutes(threshold)};
    const double eps_values[] = {1e-6, std::nextafter(threshold, 1e300) - threshold};
    for (double eps : eps_values) {
      for (double delta : {-eps, 0.0, eps}) {
        MetricsReport report;
        report.total_processing_time = Minutes(threshold + delta);
        const AlertResult alert = check_alert(report, policy);
        ++probes;
        const std::string where = "threshold " + fmt(threshold) + " delta " +
                                  std::to_string(delta) + ": ";
        check.expect(alert.raised == (delta > 0), where + "wrong raise decision");
        if (alert.raised) {
          check.expect(alert.overrun.count() > 0, where + "overrun not positive");
        } else {
          check.expect(alert.overrun.count() == 0, where + "overrun without alert");
        }
      }
    }
  }
  return check.result(std::to_string(probes) +
                      " probes at threshold-eps / threshold / threshold+eps");
}

// A7: file round trips and Zipf partial masses.
Outcome a7_round_trips() {
  Check check;
  using robocache::testing::fixture_path;

  // Fixed-width knowledge base: hand-written fixture and a generated one.
  {
    const std::string original = slurp(fixture_path("kb_10.dat"));
    std::istringstream in(original);
    std::ostringstream out;
    export_records(out, ingest(in));
    check.expect(out.str() == original, "kb_10.dat ingest/export differs");

    std::ostringstream gen_out;
    export_records(gen_out, make_knowledge_base(WorkloadConfig{1, 5000, 1.0, 1, 1.0, 4}));
    std::istringstream gen_in(gen_out.str());
    std::ostringstream again;
    export_records(again, ingest(gen_in));
    check.expect(again.str() == gen_out.str(), "generated kb ingest/export differs");
  }

  // Trace CSV: reviewed golden file and a large generated trace.
  {
    const std::string original = slurp(fixture_path("trace_golden_5.csv"));
    std::istringstream in(original);
    std::ostringstream out;
    write_trace(out, load_trace(in));
    check.expect(out.str() == original, "trace_golden_5.csv load/write differs");

    std::ostringstream gen_out;
    write_trace(gen_out, generate(WorkloadConfig{50'000, 2000, 1.2, 16, 3.0, 9}));
    std::istringstream gen_in(gen_out.str());
    std::ostringstream again;
    write_trace(again, load_trace(gen_in));
    check.expect(again.str() == gen_out.str(), "generated trace load/write differs");
  }

  // Zipf partial masses at 10^6 samples, measured through the generator.
  std::string worst;
  double worst_rel = 0;
  for (double skew : {0.8, 1.0, 1.3}) {
    constexpr std::uint64_t kKeys = 1000;
    constexpr std::uint64_t kSamples = 1'000'000;
    const Trace trace = generate(WorkloadConfig{kSamples, kKeys, skew, 8, 1.0, 21});
    std::unordered_map<Barcode, std::uint64_t> rank_of;
    for (std::uint64_t k = 0; k < kKeys; ++k) rank_of.emplace(barcode_for_key(k), k);
    std::vector<std::uint64_t> counts(kKeys, 0);
    for (const auto& ev : trace) ++counts[rank_of.at(ev.barcode)];

    double norm = 0;
    for (std::uint64_t k = 1; k <= kKeys; ++k) norm += std::pow(double(k), -skew);
    for (std::uint64_t prefix : {1, 5, 10, 50, 100, 500}) {
      double analytic = 0;
      for (std::uint64_t k = 1; k <= prefix; ++k) analytic += std::pow(double(k), -skew);
      analytic /= norm;
      std::uint64_t observed = 0;
      for (std::uint64_t k = 0; k < prefix; ++k) observed += counts[k];
      const double empirical = double(observed) / double(kSamples);
      const double rel = std::abs(empirical / analytic - 1.0);
      check.expect(rel <= 0.02, "zipf skew " + fmt(skew, 1) + " top-" +
                                    std::to_string(prefix) + " mass " + fmt(empirical, 4) +
                                    " vs " + fmt(analytic, 4));
      if (rel > worst_rel) {
        worst_rel = rel;
        worst = "skew " + fmt(skew, 1) + " top-" + std::to_string(prefix);
      }
    }
  }
  return check.result("kb and trace byte-identical; worst Zipf deviation " +
                      fmt(100 * worst_rel, 2) + "% (" + worst + ")");
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"A1", a1_oracle_equivalence}, {"A2", a2_station_traffic},
      {"A3", a3_calibration},        {"A4", a4_determinism},
      {"A5", a5_ordering_invariant}, {"A6", a6_alert},
      {"A7", a7_round_trips}};
  const std::set<std::string> only(argv + 1, argv + argc);

  int failures = 0;
  for (const auto& [name, fn] : criteria) {
    if (!only.empty() && !only.contains(name)) continue;
    Outcome outcome;
    try {
      outcome = fn();
    } catch (const std::exception& e) {
      outcome = Outcome{false, std::string("exception: ") + e.what()};
    }
    failures += !outcome.pass;
    std::cout << name << ' ' << (outcome.pass ? "PASS" : "FAIL") << "  "
              << outcome.detail << std::endl;
  }
  return failures == 0 ? 0 : 1;
}
