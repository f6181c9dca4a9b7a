#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>

namespace robocache {

/// A 14-digit numeric shipment barcode.
///
/// Stored as its numeric value; leading zeros are significant in the text
/// form and restored by str(). The location subfield is digits 1-4 and the
/// destination subfield digits 7-14 (1-based), overlapping the same key.
class Barcode {
 public:
  static constexpr std::size_t kDigits = 14;
  static constexpr std::uint64_t kLimit = 100'000'000'000'000ULL;  // 10^14

  Barcode() = default;  // all zeros

  /// Throws ValidationError unless `text` is exactly 14 ASCII digits.
  static Barcode parse(std::string_view text);
  /// Throws ValidationError if `value` >= 10^14.
  static Barcode from_value(std::uint64_t value);

  static bool is_well_formed(std::string_view text) noexcept;

  std::uint64_t value() const noexcept { return value_; }
  std::string str() const;
  std::string location() const;
  std::string destination() const;

  friend auto operator<=>(const Barcode&, const Barcode&) = default;

 private:
  explicit Barcode(std::uint64_t value) noexcept : value_(value) {}

  std::uint64_t value_ = 0;
};

}  // namespace robocache

template <>
struct std::hash<robocache::Barcode> {
  std::size_t operator()(const robocache::Barcode& b) const noexcept {
    return std::hash<std::uint64_t>{}(b.value());
  }
};
