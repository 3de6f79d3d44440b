#include "ripsim/core/bit_string.hpp"

#include <algorithm>
#include <stdexcept>

#include "ripsim/core/error.hpp"

namespace ripsim {

BitString::BitString(std::initializer_list<int> bits) {
  bits_.reserve(bits.size());
  for (int b : bits) {
    if (b != 0 && b != 1) throw RipError(ErrorKind::kInvalidArgument, "bit literal must be 0 or 1");
    bits_.push_back(static_cast<std::uint8_t>(b));
  }
}

BitString BitString::from_string(std::string_view text) {
  BitString out;
  out.bits_.reserve(text.size());
  for (char ch : text) {
    if (ch != '0' && ch != '1') {
      throw RipError(ErrorKind::kInvalidArgument, "bit string may only contain '0' and '1'");
    }
    out.bits_.push_back(ch == '1' ? 1 : 0);
  }
  return out;
}

BitString BitString::from_uint(std::uint64_t value, std::size_t width) {
  if (width < 64 && (value >> width) != 0) {
    throw RipError(ErrorKind::kInvalidArgument, "value does not fit in the requested width");
  }
  BitString out;
  out.bits_.resize(width);
  for (std::size_t i = 0; i < width; ++i) {
    std::size_t shift = width - 1 - i;
    out.bits_[i] = shift < 64 ? static_cast<std::uint8_t>((value >> shift) & 1U) : 0;
  }
  return out;
}

BitString BitString::zeros(std::size_t width) {
  BitString out;
  out.bits_.assign(width, 0);
  return out;
}

bool BitString::at(std::size_t i) const {
  if (i >= bits_.size()) throw RipError(ErrorKind::kInvalidArgument, "bit index out of range");
  return bits_[i] != 0;
}

void BitString::append(const BitString& other) {
  bits_.insert(bits_.end(), other.bits_.begin(), other.bits_.end());
}

void BitString::set(std::size_t i, bool bit) {
  if (i >= bits_.size()) throw RipError(ErrorKind::kInvalidArgument, "bit index out of range");
  bits_[i] = bit ? 1 : 0;
}

BitString BitString::slice(std::size_t offset, std::size_t length) const {
  if (offset + length > bits_.size()) throw RipError(ErrorKind::kInvalidArgument, "slice out of range");
  BitString out;
  out.bits_.assign(bits_.begin() + static_cast<std::ptrdiff_t>(offset),
                   bits_.begin() + static_cast<std::ptrdiff_t>(offset + length));
  return out;
}

std::uint64_t BitString::to_uint(std::size_t offset, std::size_t width) const {
  if (width > 64) throw RipError(ErrorKind::kInvalidArgument, "width exceeds 64 bits");
  if (offset + width > bits_.size()) throw RipError(ErrorKind::kInvalidArgument, "field out of range");
  std::uint64_t value = 0;
  for (std::size_t i = 0; i < width; ++i) value = (value << 1) | bits_[offset + i];
  return value;
}

std::size_t BitString::popcount() const {
  return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), 1));
}

std::string BitString::to_string() const {
  std::string out;
  out.reserve(bits_.size());
  for (auto b : bits_) out.push_back(b ? '1' : '0');
  return out;
}

std::size_t ceil_log2(std::uint64_t value) {
  std::size_t e = 0;
  while (e < 64 && (std::uint64_t{1} << e) < value) ++e;
  return e;
}

}  // namespace ripsim
