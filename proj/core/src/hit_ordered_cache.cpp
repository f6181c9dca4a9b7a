#include "robocache/hit_ordered_cache.hpp"

#include <algorithm>
#include <ostream>

#include "robocache/errors.hpp"

namespace robocache {
namespace {

bool ranks_above(const CacheEntry& a, const CacheEntry& b) {
  return a.hits > b.hits || (a.hits == b.hits && a.seq < b.seq);
}

}  // namespace

HitOrderedCache::HitOrderedCache(std::size_t capacity) : capacity_(capacity) {
  if (capacity == 0) {
    throw ConfigError("cache capacity must be positive");
  }
  entries_.reserve(capacity);
  index_.reserve(capacity);
}

LookupResult HitOrderedCache::lookup(std::string_view barcode) {
  return lookup(Barcode::parse(barcode));
}

LookupResult HitOrderedCache::lookup(const Barcode& barcode) {
  LookupResult result;
  if (!index_.contains(barcode)) {
    // A full scan would probe every entry without a match.
    result.comparisons = entries_.size();
    return result;
  }
  std::size_t pos = 0;
  while (entries_[pos].barcode != barcode) ++pos;
  result.outcome = LookupOutcome::hit;
  result.comparisons = pos + 1;
  result.payload = entries_[pos].payload;
  ++entries_[pos].hits;
  promote(pos);
  return result;
}

void HitOrderedCache::promote(std::size_t position) {
  auto first = entries_.begin();
  auto moved = first + static_cast<std::ptrdiff_t>(position);
  auto target = moved;
  while (target != first && ranks_above(*moved, *(target - 1))) --target;
  if (target != moved) std::rotate(target, moved, moved + 1);
}

EvictionReport HitOrderedCache::insert(const Barcode& barcode,
                                       DecisionPayload payload) {
  if (index_.contains(barcode)) {
    throw ContractError("barcode " + barcode.str() + " is already cached");
  }
  EvictionReport report;
  if (entries_.size() == capacity_) {
    report.evicted = entries_.back().barcode;
    index_.erase(entries_.back().barcode);
    entries_.pop_back();
  }
  // hits=1 with the newest seq ranks below every resident entry.
  entries_.push_back(CacheEntry{barcode, std::move(payload), 1, next_seq_++});
  index_.insert(barcode);
  return report;
}

HitSnapshot HitOrderedCache::snapshot(Millis now) const {
  HitSnapshot snap;
  snap.taken_at = now;
  snap.rows.reserve(entries_.size());
  for (const auto& e : entries_) snap.rows.emplace_back(e.barcode, e.hits);
  return snap;
}

void write_snapshot_csv(std::ostream& out, const HitSnapshot& snapshot) {
  for (const auto& [barcode, hits] : snapshot.rows) {
    out << barcode.str() << ',' << hits << '\n';
  }
}

}  // namespace robocache
