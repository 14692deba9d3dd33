// Copyright 2026 The vvcode Authors
// Licensed under the Apache License, Version 2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace vv {

// MSB-first bit packing.
class BitWriter {
 public:
  void put(bool bit);
  void put_bits(std::uint64_t value, unsigned count);
  // Unsigned LEB128: 7 payload bits per 8-bit group, low group first,
  // continuation flag in the group's top bit.
  void put_varint(std::uint64_t value);

  std::size_t bit_size() const noexcept { return bits_; }
  // Zero-pads the last byte.
  std::vector<std::uint8_t> finish() &&;

 private:
  std::vector<std::uint8_t> bytes_;
  std::size_t bits_ = 0;
};

class BitReader {
 public:
  explicit BitReader(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

  // All getters throw CorruptInput (with the bit offset) past the end.
  bool get();
  std::uint64_t get_bits(unsigned count);
  std::uint64_t get_varint();

  std::size_t position() const noexcept { return pos_; }
  std::size_t bit_size() const noexcept { return bytes_.size() * 8; }
  std::size_t remaining() const noexcept { return bit_size() - pos_; }

 private:
  std::span<const std::uint8_t> bytes_;
  std::size_t pos_ = 0;
};

}  // namespace vv
