#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "robocache/barcode.hpp"
#include "robocache/decision.hpp"

namespace robocache {

/// One station database row.
struct BarcodeRecord {
  Barcode barcode;
  std::string shipper_number;
  std::string service_type;
  std::string destination_terminal;
  std::string delivery_exceptions;  // empty means none

  std::string location() const { return barcode.location(); }
  std::string destination() const { return barcode.destination(); }
  DecisionPayload decision() const;

  friend bool operator==(const BarcodeRecord&, const BarcodeRecord&) = default;
};

struct ResolveResult {
  std::optional<DecisionPayload> payload;
  std::uint32_t db_comparisons = 0;

  bool found() const noexcept { return payload.has_value(); }
};

/// Probes charged for an indexed search over `n` records: ceil(log2 n),
/// never less than one.
std::uint32_t indexed_search_cost(std::size_t n) noexcept;

/// The station's centralized barcode database. Read-only once built, so a
/// single instance may be shared by concurrent simulation runs.
class KnowledgeBase {
 public:
  /// Throws DataError on a duplicate barcode.
  void add(BarcodeRecord record);

  /// Throws ConfigError when the knowledge base is empty. Unknown barcodes
  /// return a not-found result charged the same search cost.
  ResolveResult resolve(const Barcode& barcode) const;

  const BarcodeRecord* find(const Barcode& barcode) const;
  std::size_t size() const noexcept { return records_.size(); }
  bool empty() const noexcept { return records_.empty(); }
  /// Records in insertion order.
  std::span<const BarcodeRecord> records() const noexcept { return records_; }

 private:
  std::vector<BarcodeRecord> records_;
  std::unordered_map<Barcode, std::size_t> by_barcode_;
};

// Fixed-width record line, 56 columns:
//   1-14 barcode, 15-24 shipper number, 25-28 service type,
//   29-36 destination terminal, 37-56 delivery exceptions.
// Text fields are left-justified and space-padded; trailing spaces are not
// part of the value.
inline constexpr std::size_t kRecordWidth = 56;

BarcodeRecord parse_record_line(std::string_view line, std::size_t line_no);
/// Throws ValidationError if a field does not fit its column.
std::string format_record_line(const BarcodeRecord& record);

/// Reads one record per line. Errors carry the 1-based line number.
KnowledgeBase ingest(std::istream& in);
void export_records(std::ostream& out, const KnowledgeBase& kb);

}  // namespace robocache
