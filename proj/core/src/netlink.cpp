#include "robocache/netlink.hpp"

#include <string>
#include <vector>

#include "robocache/errors.hpp"

namespace robocache {

void LinkConfig::validate() const {
  std::vector<std::string> problems;
  if (!(one_way_latency.count() > 0)) {
    problems.emplace_back("one_way_latency must be > 0");
  }
  if (!(loss_probability >= 0.0 && loss_probability < 1.0)) {
    problems.emplace_back("loss_probability must be in [0, 1)");
  }
  if (!(lock_probability >= 0.0 && lock_probability < 1.0)) {
    problems.emplace_back("lock_probability must be in [0, 1)");
  }
  if (!(lock_stall.count() >= 0)) {
    problems.emplace_back("lock_stall must be >= 0");
  }
  if (!(retransmit_timeout >= 2 * one_way_latency)) {
    problems.emplace_back("retransmit_timeout must be >= 2 * one_way_latency");
  }
  if (!problems.empty()) {
    std::string msg = "invalid link config:";
    for (const auto& p : problems) msg += " " + p + ";";
    throw ConfigError(msg);
  }
}

LinkStats& LinkStats::operator+=(const LinkStats& other) {
  messages_sent += other.messages_sent;
  messages_delivered += other.messages_delivered;
  messages_lost += other.messages_lost;
  retransmissions += other.retransmissions;
  lock_events += other.lock_events;
  total_stall_time += other.total_stall_time;
  return *this;
}

SatelliteLink::SatelliteLink(LinkConfig config) : config_(config) {
  config_.validate();
}

TransmitOutcome SatelliteLink::transmit(Millis now, Rng& rng) {
  TransmitOutcome out;
  ++stats_.messages_sent;
  while (uniform01(rng) < config_.loss_probability) {
    ++out.losses;
    ++stats_.messages_lost;
    ++stats_.retransmissions;
    ++stats_.messages_sent;
  }
  ++stats_.messages_delivered;
  if (uniform01(rng) < config_.lock_probability) {
    out.lock_stall_applied = config_.lock_stall;
    ++stats_.lock_events;
    stats_.total_stall_time += config_.lock_stall;
  }
  out.delivered_at = now + static_cast<double>(out.losses) *
                               config_.retransmit_timeout +
                     2.0 * config_.one_way_latency + out.lock_stall_applied;
  return out;
}

}  // namespace robocache
