#include "robocache/sim_config.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <fstream>
#include <string>

#include "robocache/errors.hpp"

namespace robocache {
namespace {

namespace pt = boost::property_tree;

template <typename T>
T required(const pt::ptree& tree, const std::string& key) {
  auto node = tree.get_optional<std::string>(key);
  if (!node) throw ConfigError("missing required key '" + key + "'");
  auto value = tree.get_optional<T>(key);
  if (!value) throw ConfigError("bad value for '" + key + "': " + *node);
  return *value;
}

template <typename T>
T optional(const pt::ptree& tree, const std::string& key, T fallback) {
  if (!tree.get_optional<std::string>(key)) return fallback;
  return required<T>(tree, key);
}

}  // namespace

void SimConfig::set_seed(std::uint64_t value) {
  seed = value;
  workload.seed = value;
}

std::filesystem::path SimConfig::resolved_kb_path() const {
  return kb_path.is_absolute() ? kb_path : output_dir / kb_path;
}

std::filesystem::path SimConfig::resolved_trace_path() const {
  return trace_path.is_absolute() ? trace_path : output_dir / trace_path;
}

SimParams SimConfig::sim_params() const {
  SimParams p;
  p.link = link;
  p.cache_capacity = cache_capacity;
  p.cache_probe_time = cache_probe_time;
  p.db_probe_time = db_probe_time;
  p.allow_unknown_barcodes = allow_unknown_barcodes;
  p.seed = seed;
  return p;
}

void SimConfig::validate() const {
  try {
    workload.validate();
  } catch (const ValidationError& e) {
    throw ConfigError(e.what());
  }
  link.validate();
  if (cache_capacity == 0) throw ConfigError("cache.capacity must be >= 1");
  if (!(cache_probe_time.count() >= 0)) {
    throw ConfigError("cache.probe_time_ms must be >= 0");
  }
  if (!(db_probe_time.count() >= 0)) {
    throw ConfigError("station.db_probe_time_ms must be >= 0");
  }
  if (!(alert_threshold.count() > 0)) {
    throw ConfigError("experiment.alert_threshold_minutes must be > 0");
  }
}

SimConfig parse_sim_config(std::istream& in) {
  pt::ptree tree;
  try {
    pt::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }

  SimConfig c;
  c.set_seed(required<std::uint64_t>(tree, "experiment.seed"));
  c.output_dir = optional<std::string>(tree, "experiment.output_dir", "out");
  c.kb_path = optional<std::string>(tree, "experiment.kb_path", "kb.dat");
  c.trace_path =
      optional<std::string>(tree, "experiment.trace_path", "trace.csv");
  c.alert_threshold =
      Minutes(optional(tree, "experiment.alert_threshold_minutes", 20.0));

  c.workload.total_scans = required<std::uint64_t>(tree, "workload.total_scans");
  c.workload.unique_barcodes =
      required<std::uint64_t>(tree, "workload.unique_barcodes");
  c.workload.skew = required<double>(tree, "workload.skew");
  c.workload.robots = required<std::uint32_t>(tree, "workload.robots");
  c.workload.inter_arrival_ms =
      required<double>(tree, "workload.inter_arrival_ms");

  c.link.one_way_latency = Millis(required<double>(tree, "link.one_way_latency_ms"));
  c.link.loss_probability = optional(tree, "link.loss_probability", 0.0);
  c.link.lock_probability = optional(tree, "link.lock_probability", 0.0);
  c.link.lock_stall = Millis(optional(tree, "link.lock_stall_ms", 0.0));
  c.link.retransmit_timeout = Millis(optional(
      tree, "link.retransmit_timeout_ms", 2.0 * c.link.one_way_latency.count()));

  c.cache_capacity = required<std::size_t>(tree, "cache.capacity");
  c.cache_probe_time = Millis(optional(tree, "cache.probe_time_ms", 0.01));
  c.db_probe_time = Millis(optional(tree, "station.db_probe_time_ms", 0.0));
  c.allow_unknown_barcodes =
      optional(tree, "station.allow_unknown_barcodes", false);

  c.validate();
  return c;
}

SimConfig load_sim_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config " + path.string());
  return parse_sim_config(in);
}

}  // namespace robocache
