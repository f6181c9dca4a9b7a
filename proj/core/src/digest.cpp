#include "robocache/digest.hpp"

#include <charconv>

#include "robocache/errors.hpp"

namespace robocache {

std::string digest_hex(std::uint64_t digest) {
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i, digest >>= 4) out[i] = kHex[digest & 0xf];
  return out;
}

std::uint64_t parse_digest_hex(std::string_view text) {
  std::uint64_t value = 0;
  auto [ptr, ec] =
      std::from_chars(text.data(), text.data() + text.size(), value, 16);
  if (text.size() != 16 || ec != std::errc{} ||
      ptr != text.data() + text.size()) {
    throw ValidationError("malformed digest '" + std::string(text) + "'");
  }
  return value;
}

}  // namespace robocache
