#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "robocache/knowledge_base.hpp"
#include "robocache/simulator.hpp"
#include "robocache/workload.hpp"

namespace robocache::testing {

inline std::filesystem::path fixture_path(const std::string& name) {
  return std::filesystem::path(ROBOCACHE_TEST_FIXTURES) / name;
}

inline std::filesystem::path preset_path(const std::string& name) {
  return std::filesystem::path(ROBOCACHE_PRESETS) / name;
}

inline Barcode bc(const char* text) { return Barcode::parse(text); }

inline BarcodeRecord record(const char* code, const char* terminal,
                            const char* exceptions = "") {
  return BarcodeRecord{bc(code), "SHIP000001", "GRND", terminal, exceptions};
}

// Keys of the A,B,A,C,A walkthrough.
inline const Barcode kA = Barcode::parse("10000000000001");
inline const Barcode kB = Barcode::parse("20000000000002");
inline const Barcode kC = Barcode::parse("30000000000003");

inline KnowledgeBase abc_kb() {
  KnowledgeBase kb;
  kb.add(record("10000000000001", "TRM00001"));
  kb.add(record("20000000000002", "TRM00002"));
  kb.add(record("30000000000003", "TRM00003", "DAMAGED"));
  return kb;
}

/// A,B,A,C,A on robot 0, one scan per second.
inline Trace abaca_trace() {
  std::vector<Barcode> keys{kA, kB, kA, kC, kA};
  Trace trace;
  for (std::size_t i = 0; i < keys.size(); ++i) {
    trace.push_back(ScanEvent{0, keys[i], 1000 * i});
  }
  return trace;
}

/// Zero loss/lock, 250 ms one way, capacity 2.
inline SimParams quiet_params() {
  SimParams p;
  p.link.one_way_latency = Millis(250);
  p.link.retransmit_timeout = Millis(500);
  p.cache_capacity = 2;
  p.cache_probe_time = Millis(0.01);
  p.db_probe_time = Millis(5);
  p.seed = 7;
  return p;
}

}  // namespace robocache::testing
