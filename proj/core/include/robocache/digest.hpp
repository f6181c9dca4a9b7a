#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>

namespace robocache {

/// Incremental 64-bit FNV-1a over little-endian encodings of the values fed.
class Fnv1a {
 public:
  void bytes(std::string_view data) {
    for (unsigned char c : data) {
      state_ ^= c;
      state_ *= kPrime;
    }
  }

  void u64(std::uint64_t v) {
    for (int i = 0; i < 8; ++i) {
      state_ ^= (v >> (8 * i)) & 0xffU;
      state_ *= kPrime;
    }
  }

  void f64(double v) { u64(std::bit_cast<std::uint64_t>(v)); }

  std::uint64_t value() const noexcept { return state_; }

 private:
  static constexpr std::uint64_t kOffset = 0xcbf29ce484222325ULL;
  static constexpr std::uint64_t kPrime = 0x100000001b3ULL;
  std::uint64_t state_ = kOffset;
};

/// 16 lowercase hex digits.
std::string digest_hex(std::uint64_t digest);
/// Inverse of digest_hex; throws ValidationError.
std::uint64_t parse_digest_hex(std::string_view text);

}  // namespace robocache
