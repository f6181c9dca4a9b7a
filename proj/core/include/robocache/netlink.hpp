#pragma once

#include <cstdint>

#include "robocache/random.hpp"
#include "robocache/sim_time.hpp"

namespace robocache {

struct LinkConfig {
  Millis one_way_latency{250};
  double loss_probability = 0.0;  // per transmission attempt
  double lock_probability = 0.0;  // per message serviced at the station
  Millis lock_stall{0};
  Millis retransmit_timeout{500};

  /// Throws ConfigError naming every violated constraint.
  void validate() const;
};

struct LinkStats {
  std::uint64_t messages_sent = 0;  // attempts, including retransmissions
  std::uint64_t messages_delivered = 0;
  std::uint64_t messages_lost = 0;
  std::uint64_t retransmissions = 0;
  std::uint64_t lock_events = 0;
  Millis total_stall_time{0};

  LinkStats& operator+=(const LinkStats& other);
  friend bool operator==(const LinkStats&, const LinkStats&) = default;
};

struct TransmitOutcome {
  Millis delivered_at{0};
  std::uint32_t losses = 0;
  Millis lock_stall_applied{0};

  friend bool operator==(const TransmitOutcome&,
                         const TransmitOutcome&) = default;
};

/// Request/response exchange between a robot and the station over the
/// satellite link.
///
/// Each attempt is lost with `loss_probability` and resent after
/// `retransmit_timeout`, without limit. A delivered request meets a
/// resource lock with `lock_probability`, which stalls that request (not
/// the whole station) by `lock_stall`. Station service time is charged by
/// the caller; the outcome covers only link and lock time:
///
///   delivered_at = now + losses * retransmit_timeout
///                      + 2 * one_way_latency + lock_stall_applied
class SatelliteLink {
 public:
  explicit SatelliteLink(LinkConfig config);

  TransmitOutcome transmit(Millis now, Rng& rng);

  const LinkConfig& config() const noexcept { return config_; }
  const LinkStats& stats() const noexcept { return stats_; }

 private:
  LinkConfig config_;
  LinkStats stats_;
};

}  // namespace robocache
