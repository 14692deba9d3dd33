// Copyright 2026 The vvcode Authors
// Licensed under the Apache License, Version 2.0

#include "vvcode/bitio.hpp"

#include "vvcode/errors.hpp"

namespace vv {

void BitWriter::put(bool bit) {
  if (bits_ % 8 == 0) bytes_.push_back(0);
  if (bit) bytes_.back() |= static_cast<std::uint8_t>(0x80u >> (bits_ % 8));
  ++bits_;
}

void BitWriter::put_bits(std::uint64_t value, unsigned count) {
  for (unsigned i = count; i-- > 0;) put(((value >> i) & 1u) != 0);
}

void BitWriter::put_varint(std::uint64_t value) {
  do {
    std::uint64_t group = value & 0x7Fu;
    value >>= 7;
    if (value != 0) group |= 0x80u;
    put_bits(group, 8);
  } while (value != 0);
}

std::vector<std::uint8_t> BitWriter::finish() && { return std::move(bytes_); }

bool BitReader::get() {
  if (pos_ >= bit_size()) throw CorruptInput("unexpected end of bitstream", pos_);
  const bool bit = ((bytes_[pos_ / 8] >> (7 - pos_ % 8)) & 1u) != 0;
  ++pos_;
  return bit;
}

std::uint64_t BitReader::get_bits(unsigned count) {
  std::uint64_t v = 0;
  for (unsigned i = 0; i < count; ++i) v = (v << 1) | (get() ? 1u : 0u);
  return v;
}

std::uint64_t BitReader::get_varint() {
  const std::size_t start = pos_;
  std::uint64_t value = 0;
  for (unsigned shift = 0;; shift += 7) {
    const std::uint64_t group = get_bits(8);
    const std::uint64_t payload = group & 0x7Fu;
    if (shift >= 64 || (shift == 63 && payload > 1)) {
      throw CorruptInput("varint overflows 64 bits", start);
    }
    value |= payload << shift;
    if ((group & 0x80u) == 0) return value;
  }
}

}  // namespace vv
