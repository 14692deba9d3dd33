// Copyright 2026 The vvcode Authors
// Licensed under the Apache License, Version 2.0

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace vv {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Argument outside the mathematical domain of an operation (bad symbol,
// word not in dictionary, non-normalized distribution...).
class DomainError : public Error {
 public:
  using Error::Error;
};

// The operation is not decidable or not defined for this kind of input.
class UnsupportedOperation : public Error {
 public:
  using Error::Error;
};

// An explicit depth/width/word budget was too small.
class ResourceError : public Error {
 public:
  using Error::Error;
};

class PreconditionError : public Error {
 public:
  using Error::Error;
};

// Malformed file input (JSON schema, stream text).
class InputError : public Error {
 public:
  using Error::Error;
};

class CorruptInput : public Error {
 public:
  CorruptInput(const std::string& what, std::size_t bit_offset)
      : Error(what + " at bit " + std::to_string(bit_offset)),
        bit_offset_(bit_offset) {}

  std::size_t bit_offset() const noexcept { return bit_offset_; }

 private:
  std::size_t bit_offset_;
};

class SimulationError : public Error {
 public:
  using Error::Error;
};

}  // namespace vv
