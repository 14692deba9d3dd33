// Copyright 2026 The vvcode Authors
// Licensed under the Apache License, Version 2.0

#include "vvcode/word.hpp"

#include <algorithm>
#include <charconv>

#include "vvcode/errors.hpp"

namespace vv {

Alphabet Alphabet::finite(std::uint64_t size) {
  if (size == 0) throw DomainError("alphabet must have at least one symbol");
  Alphabet a;
  a.size_ = size;
  return a;
}

std::string to_string(const Alphabet& a) {
  return a.is_finite() ? std::to_string(*a.size()) : std::string("countable");
}

Word Word::from_digits(std::string_view digits) {
  std::vector<Symbol> s;
  s.reserve(digits.size());
  for (char c : digits) {
    if (c < '0' || c > '9') {
      throw DomainError("not a digit word: " + std::string(digits));
    }
    s.push_back(static_cast<Symbol>(c - '0'));
  }
  return Word(std::move(s));
}

Word Word::parse(std::string_view text) {
  std::vector<Symbol> s;
  if (text.empty()) return Word{};
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t dot = std::min(text.find('.', start), text.size());
    const std::string_view part = text.substr(start, dot - start);
    Symbol value = 0;
    const auto [ptr, ec] =
        std::from_chars(part.data(), part.data() + part.size(), value);
    if (part.empty() || ec != std::errc{} || ptr != part.data() + part.size()) {
      throw DomainError("malformed word '" + std::string(text) +
                        "' (expected dot-separated symbol indices)");
    }
    s.push_back(value);
    start = dot + 1;
  }
  return Word(std::move(s));
}

Word Word::operator+(const Word& rhs) const {
  std::vector<Symbol> s = symbols_;
  s.insert(s.end(), rhs.symbols_.begin(), rhs.symbols_.end());
  return Word(std::move(s));
}

Word Word::append(Symbol sym) const {
  std::vector<Symbol> s = symbols_;
  s.push_back(sym);
  return Word(std::move(s));
}

Word Word::prefix(std::size_t n) const {
  n = std::min(n, symbols_.size());
  return Word(std::span<const Symbol>(symbols_.data(), n));
}

bool is_prefix(std::span<const Symbol> prefix, std::span<const Symbol> w) noexcept {
  return prefix.size() <= w.size() &&
         std::equal(prefix.begin(), prefix.end(), w.begin());
}

bool Word::is_prefix_of(const Word& other) const noexcept {
  return is_prefix(symbols_, other.symbols_);
}

std::string Word::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < symbols_.size(); ++i) {
    if (i) out.push_back('.');
    out += std::to_string(symbols_[i]);
  }
  return out;
}

std::strong_ordering Word::operator<=>(const Word& rhs) const noexcept {
  if (auto c = symbols_.size() <=> rhs.symbols_.size(); c != 0) return c;
  return std::lexicographical_compare_three_way(
      symbols_.begin(), symbols_.end(), rhs.symbols_.begin(), rhs.symbols_.end());
}

std::size_t WordHash::operator()(const Word& w) const noexcept {
  std::uint64_t h = 0xcbf29ce484222325ULL ^ w.size();
  for (Symbol s : w) {
    h ^= s;
    h *= 0x100000001b3ULL;
  }
  return static_cast<std::size_t>(h);
}

}  // namespace vv
