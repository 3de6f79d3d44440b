#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <string>
#include <string_view>
#include <vector>

namespace ripsim {

// A finite sequence of bits. Integer conversions are big-endian: the first
// bit is the most significant.
class BitString {
 public:
  BitString() = default;
  BitString(std::initializer_list<int> bits);

  static BitString from_string(std::string_view text);
  static BitString from_uint(std::uint64_t value, std::size_t width);
  static BitString zeros(std::size_t width);

  std::size_t size() const { return bits_.size(); }
  bool empty() const { return bits_.empty(); }
  bool operator[](std::size_t i) const { return bits_[i] != 0; }
  bool at(std::size_t i) const;

  void push_back(bool bit) { bits_.push_back(bit ? 1 : 0); }
  void append(const BitString& other);
  void set(std::size_t i, bool bit);

  BitString slice(std::size_t offset, std::size_t length) const;
  std::uint64_t to_uint(std::size_t offset, std::size_t width) const;
  std::uint64_t to_uint() const { return to_uint(0, size()); }
  std::size_t popcount() const;

  std::string to_string() const;

  auto operator<=>(const BitString&) const = default;
  bool operator==(const BitString&) const = default;

 private:
  std::vector<std::uint8_t> bits_;
};

// Smallest e with 2^e >= value (0 for value <= 1).
std::size_t ceil_log2(std::uint64_t value);

}  // namespace ripsim
