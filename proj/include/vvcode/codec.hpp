// Copyright 2026 The vvcode Authors
// Licensed under the Apache License, Version 2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "vvcode/dictionary.hpp"

namespace vv {

/// Phrase <-> binary codeword bijection for the string-encoder stage.
/// Codewords are '0'/'1' strings and must form a prefix-free set.
class PhraseCodebook {
 public:
  // Throws DomainError on size mismatch, duplicates, empty or non-binary
  // codewords, or a codeword that is a prefix of another.
  PhraseCodebook(std::vector<Word> phrases, std::vector<std::string> codewords,
                 std::string mode = "huffman");

  const std::vector<Word>& phrases() const noexcept { return phrases_; }
  const std::vector<std::string>& codewords() const noexcept {
    return codewords_;
  }
  const std::string& mode() const noexcept { return mode_; }
  std::size_t size() const noexcept { return phrases_.size(); }

  // Index of the phrase, or npos.
  std::size_t index_of(const Word& phrase) const;
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  double kraft_sum() const;
  double expected_length(const SourceModel& source) const;
  std::size_t max_codeword_length() const;

  // Binary decoding trie: node -> {child on 0, child on 1}; leaves map to
  // phrase indices via leaf_phrase().
  std::uint32_t next(std::uint32_t node, bool bit) const {
    return trie_[node].child[bit ? 1 : 0];
  }
  std::size_t leaf_phrase(std::uint32_t node) const { return trie_[node].phrase; }
  static constexpr std::uint32_t kNoNode = 0xFFFFFFFFu;

 private:
  struct TrieNode {
    std::uint32_t child[2] = {kNoNode, kNoNode};
    std::size_t phrase = npos;
  };

  std::vector<Word> phrases_;
  std::vector<std::string> codewords_;
  std::string mode_;
  std::unordered_map<Word, std::size_t, WordHash> index_;
  std::vector<TrieNode> trie_;
};

/// Greedy VF dictionary: start from A and extend the most probable word
/// (ties broken by canonical order) while |D| + (k - 1) <= target_size.
/// Throws UnsupportedOperation for countable sources and DomainError for
/// k < 2 or target_size < k.
FiniteDictionary tunstall_build(const SourceModel& source, std::size_t target_size);

/// Optimal binary prefix code. Code lengths come from the two-queue Huffman
/// construction: leaves sorted by (probability, canonical phrase order),
/// internal nodes queued in creation order, and on equal weights the leaf
/// queue is served first. Codewords are then assigned canonically in
/// (length, phrase) order. A single phrase gets the codeword "0".
/// Throws DomainError for an empty list, non-positive probabilities, or a
/// total that is not 1 within 1e-9.
PhraseCodebook huffman_build(std::vector<std::pair<Word, double>> phrases);
PhraseCodebook huffman_build(const FiniteDictionary& d, const SourceModel& source);

/// Phrase index in max(1, ceil(log2 |D|)) bits, phrases in canonical order.
PhraseCodebook fixed_length_codebook(const FiniteDictionary& d);

inline constexpr std::uint8_t kStreamMagic = 0x56;

unsigned remainder_symbol_width(const Alphabet& alphabet);

/// Bitstream layout (all fields MSB-first, no alignment between fields):
///   magic byte 0x56
///   varint phrase count
///   phrase codewords
///   varint remainder length
///   remainder symbols, ceil(log2 k) bits each
///   zero padding to a byte boundary
/// Throws PreconditionError for an incomplete dictionary or a codebook that
/// does not cover it, DomainError for symbols outside the alphabet.
std::vector<std::uint8_t> encode(const FiniteDictionary& d,
                                 const PhraseCodebook& codebook,
                                 std::span<const Symbol> stream);

/// Inverse of encode. Throws CorruptInput with the bit offset of the first
/// inconsistency.
std::vector<Symbol> decode(const FiniteDictionary& d,
                           const PhraseCodebook& codebook,
                           std::span<const std::uint8_t> bytes);

}  // namespace vv
