#include "robocache/knowledge_base.hpp"

#include <algorithm>
#include <bit>
#include <istream>
#include <ostream>

#include "robocache/errors.hpp"

namespace robocache {
namespace {

struct Column {
  const char* name;
  std::size_t offset;
  std::size_t width;
};

constexpr Column kShipper{"shipper_number", 14, 10};
constexpr Column kService{"service_type", 24, 4};
constexpr Column kTerminal{"destination_terminal", 28, 8};
constexpr Column kExceptions{"delivery_exceptions", 36, 20};

bool printable(char c) { return c >= 0x20 && c < 0x7f; }

std::string take_field(std::string_view line, const Column& col) {
  auto raw = line.substr(col.offset, col.width);
  auto end = raw.find_last_not_of(' ');
  return std::string(end == std::string_view::npos ? std::string_view{}
                                                   : raw.substr(0, end + 1));
}

void put_field(std::string& line, const Column& col, const std::string& value) {
  if (value.size() > col.width) {
    throw ValidationError(std::string(col.name) + " '" + value +
                          "' exceeds " + std::to_string(col.width) +
                          " columns");
  }
  if (!std::all_of(value.begin(), value.end(), printable)) {
    throw ValidationError(std::string(col.name) +
                          " contains non-printable characters");
  }
  line.replace(col.offset, value.size(), value);
}

}  // namespace

DecisionPayload BarcodeRecord::decision() const {
  return DecisionPayload{destination_terminal, service_type,
                         !delivery_exceptions.empty()};
}

std::uint32_t indexed_search_cost(std::size_t n) noexcept {
  if (n <= 1) return 1;
  return static_cast<std::uint32_t>(std::bit_width(n - 1));
}

void KnowledgeBase::add(BarcodeRecord record) {
  auto [it, inserted] = by_barcode_.emplace(record.barcode, records_.size());
  if (!inserted) {
    throw DataError("duplicate barcode " + record.barcode.str());
  }
  records_.push_back(std::move(record));
}

ResolveResult KnowledgeBase::resolve(const Barcode& barcode) const {
  if (records_.empty()) {
    throw ConfigError("cannot resolve against an empty knowledge base");
  }
  ResolveResult result;
  result.db_comparisons = indexed_search_cost(records_.size());
  if (const auto* rec = find(barcode)) result.payload = rec->decision();
  return result;
}

const BarcodeRecord* KnowledgeBase::find(const Barcode& barcode) const {
  auto it = by_barcode_.find(barcode);
  return it == by_barcode_.end() ? nullptr : &records_[it->second];
}

BarcodeRecord parse_record_line(std::string_view line, std::size_t line_no) {
  if (line.size() != kRecordWidth) {
    throw ParseError(line_no, "expected " + std::to_string(kRecordWidth) +
                                  " columns, got " +
                                  std::to_string(line.size()));
  }
  if (!std::all_of(line.begin(), line.end(), printable)) {
    throw ParseError(line_no, "non-printable character");
  }
  auto code = line.substr(0, Barcode::kDigits);
  if (!Barcode::is_well_formed(code)) {
    throw ParseError(line_no, "barcode '" + std::string(code) +
                                  "' is not 14 digits");
  }
  return BarcodeRecord{Barcode::parse(code), take_field(line, kShipper),
                       take_field(line, kService), take_field(line, kTerminal),
                       take_field(line, kExceptions)};
}

std::string format_record_line(const BarcodeRecord& record) {
  std::string line(kRecordWidth, ' ');
  line.replace(0, Barcode::kDigits, record.barcode.str());
  put_field(line, kShipper, record.shipper_number);
  put_field(line, kService, record.service_type);
  put_field(line, kTerminal, record.destination_terminal);
  put_field(line, kExceptions, record.delivery_exceptions);
  return line;
}

KnowledgeBase ingest(std::istream& in) {
  KnowledgeBase kb;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    auto record = parse_record_line(line, line_no);
    if (kb.find(record.barcode) != nullptr) {
      throw ParseError(line_no, "duplicate barcode " + record.barcode.str());
    }
    kb.add(std::move(record));
  }
  return kb;
}

void export_records(std::ostream& out, const KnowledgeBase& kb) {
  for (const auto& record : kb.records()) {
    out << format_record_line(record) << '\n';
  }
}

}  // namespace robocache
