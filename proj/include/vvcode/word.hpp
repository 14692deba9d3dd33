// Copyright 2026 The vvcode Authors
// Licensed under the Apache License, Version 2.0

#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace vv {

using Symbol = std::uint32_t;

/// Symbol alphabet: either {0, ..., size-1} or the countable set of all
/// non-negative integers.
class Alphabet {
 public:
  static Alphabet finite(std::uint64_t size);
  static Alphabet countable() { return Alphabet{}; }

  bool is_finite() const noexcept { return size_.has_value(); }
  std::optional<std::uint64_t> size() const noexcept { return size_; }
  bool contains(Symbol s) const noexcept { return !size_ || s < *size_; }

  // Number of symbols a depth-first walk visits per node under the given
  // width budget.
  std::uint64_t visit_width(std::uint64_t width) const noexcept {
    return size_ ? *size_ : width;
  }

  bool operator==(const Alphabet&) const = default;

 private:
  std::optional<std::uint64_t> size_;
};

std::string to_string(const Alphabet& a);

/// A finite string of symbol indices. Ordering is canonical: shorter words
/// first, then lexicographic on symbol indices.
class Word {
 public:
  Word() = default;
  Word(std::initializer_list<Symbol> symbols) : symbols_(symbols) {}
  explicit Word(std::vector<Symbol> symbols) : symbols_(std::move(symbols)) {}
  explicit Word(std::span<const Symbol> symbols)
      : symbols_(symbols.begin(), symbols.end()) {}

  // "0110"-style literal for binary/decimal-digit alphabets, handy in tests.
  static Word from_digits(std::string_view digits);
  // Dot-separated indices: "1.1.0", or "" for the empty word.
  static Word parse(std::string_view text);

  std::size_t size() const noexcept { return symbols_.size(); }
  bool empty() const noexcept { return symbols_.empty(); }
  Symbol operator[](std::size_t i) const { return symbols_[i]; }
  std::span<const Symbol> symbols() const noexcept { return symbols_; }
  auto begin() const noexcept { return symbols_.begin(); }
  auto end() const noexcept { return symbols_.end(); }

  Word operator+(const Word& rhs) const;
  Word append(Symbol s) const;
  Word prefix(std::size_t n) const;

  bool is_prefix_of(const Word& other) const noexcept;
  bool is_strict_prefix_of(const Word& other) const noexcept {
    return size() < other.size() && is_prefix_of(other);
  }

  std::string to_string() const;

  bool operator==(const Word&) const = default;
  std::strong_ordering operator<=>(const Word& rhs) const noexcept;

 private:
  std::vector<Symbol> symbols_;
};

bool is_prefix(std::span<const Symbol> prefix, std::span<const Symbol> w) noexcept;

struct WordHash {
  std::size_t operator()(const Word& w) const noexcept;
};

}  // namespace vv
