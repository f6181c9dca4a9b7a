#include "robocache/barcode.hpp"

#include <algorithm>
#include <charconv>

#include "robocache/errors.hpp"

namespace robocache {

bool Barcode::is_well_formed(std::string_view text) noexcept {
  return text.size() == kDigits &&
         std::all_of(text.begin(), text.end(),
                     [](char c) { return c >= '0' && c <= '9'; });
}

Barcode Barcode::parse(std::string_view text) {
  if (!is_well_formed(text)) {
    throw ValidationError("barcode must be exactly 14 digits, got '" +
                          std::string(text) + "'");
  }
  std::uint64_t value = 0;
  std::from_chars(text.data(), text.data() + text.size(), value);
  return Barcode(value);
}

Barcode Barcode::from_value(std::uint64_t value) {
  if (value >= kLimit) {
    throw ValidationError("barcode value " + std::to_string(value) +
                          " exceeds 14 digits");
  }
  return Barcode(value);
}

std::string Barcode::str() const {
  std::string out(kDigits, '0');
  std::uint64_t v = value_;
  for (std::size_t i = kDigits; i-- > 0 && v != 0; v /= 10) {
    out[i] = static_cast<char>('0' + v % 10);
  }
  return out;
}

std::string Barcode::location() const { return str().substr(0, 4); }

std::string Barcode::destination() const { return str().substr(6, 8); }

}  // namespace robocache
