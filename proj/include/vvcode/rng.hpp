// Copyright 2026 The vvcode Authors
// Licensed under the Apache License, Version 2.0

#pragma once

#include <cstdint>
#include <random>

namespace vv {

/// Seedable generator used for every sampled stream.
///
/// Engine: std::mt19937_64 (a twisted generalized-feedback shift register
/// whose output sequence is fixed by the C++ standard, so streams reproduce
/// across compilers). Stream i is seeded with `seed ^ stream_hash(i)` where
/// stream_hash is the SplitMix64 finalizer applied to
/// `i + 0x9E3779B97F4A7C15`. Uniform doubles take the top 53 bits of one
/// engine output: `(x >> 11) * 2^-53`, giving values in [0, 1).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  static Rng for_stream(std::uint64_t seed, std::uint64_t stream) {
    return Rng(seed ^ stream_hash(stream));
  }

  static std::uint64_t stream_hash(std::uint64_t i) noexcept {
    std::uint64_t z = i + 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  std::uint64_t next() { return engine_(); }

  double uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace vv
