#include "robocache/workload.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>
#include <string>
#include <string_view>

#include "robocache/digest.hpp"
#include "robocache/errors.hpp"

namespace robocache {
namespace {

constexpr std::string_view kTraceHeader = "robot_id,barcode,issued_at_ms";

__extension__ using u128 = unsigned __int128;

// Multiplier is coprime to 10, so k -> a*k + b (mod 10^14) is a bijection.
constexpr u128 kKeyMultiplier = 7'394'027'153'817ULL;
constexpr u128 kKeyOffset = 40'213'500'000'017ULL;

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

template <typename T>
bool parse_uint(std::string_view text, T& out) {
  if (text.empty()) return false;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
  return ec == std::errc{} && ptr == text.data() + text.size();
}

}  // namespace

void WorkloadConfig::validate() const {
  std::string problems;
  auto flag = [&](const char* field, const char* why) {
    problems += std::string(problems.empty() ? "" : "; ") + field + " " + why;
  };
  if (total_scans < 1) flag("total_scans", "must be >= 1");
  if (unique_barcodes < 1) flag("unique_barcodes", "must be >= 1");
  if (unique_barcodes >= Barcode::kLimit) {
    flag("unique_barcodes", "exceeds the 14-digit key space");
  }
  if (!(skew >= 0.0) || !std::isfinite(skew)) flag("skew", "must be >= 0");
  if (robots < 1) flag("robots", "must be >= 1");
  if (!(inter_arrival_ms >= 0.0) || !std::isfinite(inter_arrival_ms)) {
    flag("inter_arrival_ms", "must be >= 0");
  }
  if (!problems.empty()) {
    throw ValidationError("invalid workload config: " + problems);
  }
}

ZipfSampler::ZipfSampler(std::uint64_t n, double skew) {
  if (n == 0) throw ValidationError("zipf support must be nonempty");
  cdf_.resize(n);
  double total = 0.0;
  for (std::uint64_t k = 0; k < n; ++k) {
    total += std::pow(static_cast<double>(k + 1), -skew);
    cdf_[k] = total;
  }
  for (auto& c : cdf_) c /= total;
  cdf_.back() = 1.0;
}

std::uint64_t ZipfSampler::operator()(Rng& rng) const {
  double u = uniform01(rng);
  auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
  return static_cast<std::uint64_t>(it - cdf_.begin());
}

double ZipfSampler::probability(std::uint64_t rank) const {
  if (rank >= cdf_.size()) return 0.0;
  return rank == 0 ? cdf_[0] : cdf_[rank] - cdf_[rank - 1];
}

Barcode barcode_for_key(std::uint64_t key_index) {
  auto v = (kKeyMultiplier * key_index + kKeyOffset) % Barcode::kLimit;
  return Barcode::from_value(static_cast<std::uint64_t>(v));
}

Trace generate(const WorkloadConfig& config) {
  config.validate();
  ZipfSampler zipf(config.unique_barcodes, config.skew);
  Rng key_rng = make_stream(config.seed, 0);
  Rng gap_rng = make_stream(config.seed, 1);

  Trace trace;
  trace.reserve(config.total_scans);
  double clock = 0.0;
  for (std::uint64_t i = 0; i < config.total_scans; ++i) {
    if (i > 0) {
      clock += -config.inter_arrival_ms * std::log1p(-uniform01(gap_rng));
    }
    trace.push_back(ScanEvent{static_cast<std::uint32_t>(i % config.robots),
                              barcode_for_key(zipf(key_rng)),
                              static_cast<std::uint64_t>(std::floor(clock))});
  }
  return trace;
}

KnowledgeBase make_knowledge_base(const WorkloadConfig& config) {
  config.validate();
  static constexpr std::array<const char*, 4> kServices{"GRND", "EXPR",
                                                        "2DAY", "FRGT"};
  static constexpr std::array<const char*, 3> kExceptions{
      "ADDRESS CORRECTION", "DAMAGED", "REFUSED"};

  KnowledgeBase kb;
  for (std::uint64_t k = 0; k < config.unique_barcodes; ++k) {
    std::uint64_t h = splitmix64(config.seed ^ splitmix64(k));
    BarcodeRecord rec;
    rec.barcode = barcode_for_key(k);
    rec.shipper_number = std::to_string(1'000'000'000ULL + h % 9'000'000'000ULL);
    rec.service_type = kServices[(h >> 36) % kServices.size()];
    rec.destination_terminal =
        "TRM" + std::to_string(10'000 + (h >> 40) % 90'000);
    // About one record in sixteen carries a delivery exception.
    if (((h >> 56) & 0xf) == 0) {
      rec.delivery_exceptions = kExceptions[(h >> 60) % kExceptions.size()];
    }
    kb.add(std::move(rec));
  }
  return kb;
}

Trace load_trace(std::istream& in) {
  Trace trace;
  std::string line;
  std::size_t line_no = 0;
  if (!std::getline(in, line)) return trace;
  ++line_no;
  if (line != kTraceHeader) {
    throw ParseError(line_no, "expected header '" + std::string(kTraceHeader) +
                                  "'");
  }
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view view(line);
    auto c1 = view.find(',');
    auto c2 = c1 == std::string_view::npos ? c1 : view.find(',', c1 + 1);
    if (c2 == std::string_view::npos ||
        view.find(',', c2 + 1) != std::string_view::npos) {
      throw ParseError(line_no, "expected 3 comma-separated fields");
    }
    ScanEvent ev;
    if (!parse_uint(view.substr(0, c1), ev.robot_id)) {
      throw ParseError(line_no, "bad robot_id");
    }
    auto code = view.substr(c1 + 1, c2 - c1 - 1);
    if (!Barcode::is_well_formed(code)) {
      throw ParseError(line_no, "barcode '" + std::string(code) +
                                    "' is not 14 digits");
    }
    ev.barcode = Barcode::parse(code);
    if (!parse_uint(view.substr(c2 + 1), ev.issued_at_ms)) {
      throw ParseError(line_no, "bad issued_at_ms");
    }
    if (!trace.empty() && ev.issued_at_ms < trace.back().issued_at_ms) {
      throw ParseError(line_no, "issued_at_ms decreases");
    }
    trace.push_back(ev);
  }
  return trace;
}

void write_trace(std::ostream& out, const Trace& trace) {
  out << kTraceHeader << '\n';
  for (const auto& ev : trace) {
    out << ev.robot_id << ',' << ev.barcode.str() << ',' << ev.issued_at_ms
        << '\n';
  }
}

std::uint64_t trace_digest(const Trace& trace) {
  Fnv1a h;
  h.u64(trace.size());
  for (const auto& ev : trace) {
    h.u64(ev.robot_id);
    h.u64(ev.barcode.value());
    h.u64(ev.issued_at_ms);
  }
  return h.value();
}

}  // namespace robocache
