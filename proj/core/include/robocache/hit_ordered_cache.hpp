#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string_view>
#include <unordered_set>
#include <utility>
#include <vector>

#include "robocache/barcode.hpp"
#include "robocache/decision.hpp"
#include "robocache/sim_time.hpp"

namespace robocache {

struct CacheEntry {
  Barcode barcode;
  DecisionPayload payload;
  std::uint64_t hits = 0;
  std::uint64_t seq = 0;
};

enum class LookupOutcome { hit, miss };

struct LookupResult {
  LookupOutcome outcome = LookupOutcome::miss;
  std::optional<DecisionPayload> payload;
  // Number of entries probed, top-down.
  std::size_t comparisons = 0;

  bool hit() const noexcept { return outcome == LookupOutcome::hit; }
};

struct EvictionReport {
  std::optional<Barcode> evicted;
};

/// Read-only copy of the cache's (barcode, hits) rows in cache order.
struct HitSnapshot {
  std::vector<std::pair<Barcode, std::uint64_t>> rows;
  Millis taken_at{0};

  friend bool operator==(const HitSnapshot&, const HitSnapshot&) = default;
};

/// Capacity-bounded cache kept ordered from most to least hits.
///
/// Entries are ranked by (hits descending, seq ascending), so the most used
/// entry sits at position 0 and, among equally used entries, the older one
/// ranks higher. Lookup is a linear top-down scan and reports how many
/// entries it probed. A hit increments the entry's counter and moves it up
/// to its new rank immediately. Inserts enter with one hit at the bottom; a
/// full cache first drops its bottom entry.
///
/// Not thread-safe. One instance belongs to one simulated robot.
class HitOrderedCache {
 public:
  /// Throws ConfigError if capacity is zero.
  explicit HitOrderedCache(std::size_t capacity);

  LookupResult lookup(const Barcode& barcode);
  /// Validates the key first; a malformed key throws ValidationError.
  LookupResult lookup(std::string_view barcode);

  /// Throws ContractError if the barcode is already cached.
  EvictionReport insert(const Barcode& barcode, DecisionPayload payload);

  HitSnapshot snapshot(Millis now) const;

  bool contains(const Barcode& barcode) const {
    return index_.contains(barcode);
  }
  std::span<const CacheEntry> entries() const noexcept { return entries_; }
  std::size_t size() const noexcept { return entries_.size(); }
  std::size_t capacity() const noexcept { return capacity_; }
  bool empty() const noexcept { return entries_.empty(); }

 private:
  void promote(std::size_t position);

  std::vector<CacheEntry> entries_;
  std::unordered_set<Barcode> index_;
  std::size_t capacity_;
  std::uint64_t next_seq_ = 0;
};

/// One `barcode,hits` line per row, in cache order.
void write_snapshot_csv(std::ostream& out, const HitSnapshot& snapshot);

}  // namespace robocache
