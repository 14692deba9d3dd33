// Copyright 2026 The vvcode Authors
// Licensed under the Apache License, Version 2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "vvcode/source.hpp"
#include "vvcode/word.hpp"

namespace vv {

/// Position of a string relative to a prefix-free dictionary D.
///
///   member  - the string is in D
///   open    - no prefix of the string (itself included) is in D; the
///             open strings of length m are exactly the boundary set T_m
///   covered - a strict prefix of the string is in D
enum class NodeState { member, open, covered };

/// Sums over the members of a dictionary that are longer than some depth.
struct TailSums {
  double mass = 0.0;
  double length = 0.0;   // sum P(a)|a|
  double entropy = 0.0;  // -sum P(a) log2 P(a)
};

/// A prefix-free set of words over an alphabet, viewed as a (possibly
/// infinite) tree. Implementations are immutable and safe to share across
/// threads.
///
/// The only required query is classify(). The remaining hooks let families
/// expose structure that makes certification cheaper or tighter: pruning of
/// member-free subtrees, a maximum word length, and closed-form tail sums.
class Dictionary {
 public:
  virtual ~Dictionary() = default;

  virtual std::string family() const = 0;
  const Alphabet& alphabet() const noexcept { return alphabet_; }

  virtual NodeState classify(std::span<const Symbol> w) const = 0;

  // Only meaningful for open w: true when no member has w as a prefix.
  // Returning false is always safe.
  virtual bool cone_empty(std::span<const Symbol> w) const;

  // Only meaningful for open w. When engaged, lists (ascending) the only
  // children of w that may lead to members; every other child is an open
  // string with an empty cone.
  virtual std::optional<std::vector<Symbol>> relevant_children(
      std::span<const Symbol> w) const;

  virtual std::optional<std::size_t> max_word_length() const;

  // Exact sums over members of length > n, if the family has closed forms.
  virtual std::optional<TailSums> tail_sums(std::size_t n,
                                            const SourceModel& source) const;

  // Exact P(T_m), if the family has a closed form.
  virtual std::optional<double> boundary_mass(std::size_t m,
                                              const SourceModel& source) const;

 protected:
  explicit Dictionary(Alphabet alphabet) : alphabet_(alphabet) {}

 private:
  Alphabet alphabet_;
};

using DictionaryPtr = std::shared_ptr<const Dictionary>;

/// Explicit finite word set stored as a trie. Word nodes are leaves, so the
/// set is proper by construction.
class FiniteDictionary final : public Dictionary {
 public:
  static constexpr std::uint32_t kRoot = 0;
  static constexpr std::uint32_t kNone = 0xFFFFFFFFu;

  // Throws DomainError for an empty set, the empty word, a symbol outside
  // the alphabet, a duplicate, or a prefix pair (named in the message).
  FiniteDictionary(Alphabet alphabet, std::vector<Word> words);

  std::string family() const override { return "finite"; }
  NodeState classify(std::span<const Symbol> w) const override;
  bool cone_empty(std::span<const Symbol> w) const override;
  std::optional<std::vector<Symbol>> relevant_children(
      std::span<const Symbol> w) const override;
  std::optional<std::size_t> max_word_length() const override {
    return max_length_;
  }
  std::optional<TailSums> tail_sums(std::size_t n,
                                    const SourceModel& source) const override;

  // Canonical (length-lex) order.
  const std::vector<Word>& words() const noexcept { return words_; }
  std::size_t size() const noexcept { return words_.size(); }
  bool contains(const Word& w) const;

  std::uint32_t child(std::uint32_t node, Symbol s) const;
  bool is_word_node(std::uint32_t node) const { return nodes_[node].word; }
  std::size_t child_count(std::uint32_t node) const {
    return nodes_[node].children.size();
  }
  std::size_t node_count() const noexcept { return nodes_.size(); }

 private:
  struct Node {
    std::vector<std::pair<Symbol, std::uint32_t>> children;  // sorted
    bool word = false;
  };

  std::uint32_t locate(std::span<const Symbol> w, std::size_t* depth) const;

  std::vector<Node> nodes_;
  std::vector<Word> words_;
  std::size_t max_length_ = 0;
};

/// {1^j s : j >= 0, s != 1}: runs of symbol 1 closed by any other symbol.
/// Over the binary alphabet this is {0, 10, 110, 1110, ...}, which is
/// proper and almost surely complete but not complete.
class RunLengthDictionary final : public Dictionary {
 public:
  explicit RunLengthDictionary(Alphabet alphabet = Alphabet::finite(2));

  std::string family() const override { return "run_length"; }
  NodeState classify(std::span<const Symbol> w) const override;
  std::optional<TailSums> tail_sums(std::size_t n,
                                    const SourceModel& source) const override;
  std::optional<double> boundary_mass(std::size_t m,
                                      const SourceModel& source) const override;

  static constexpr Symbol kRunSymbol = 1;
};

/// (A \ {h}) u hA: the alphabet dictionary with one symbol extended.
/// Infinite over a countable alphabet, with words of length at most 2.
class HeadExtensionDictionary final : public Dictionary {
 public:
  HeadExtensionDictionary(Alphabet alphabet, Symbol head);

  std::string family() const override { return "head_extension"; }
  Symbol head() const noexcept { return head_; }
  NodeState classify(std::span<const Symbol> w) const override;
  std::optional<std::size_t> max_word_length() const override { return 2; }
  std::optional<TailSums> tail_sums(std::size_t n,
                                    const SourceModel& source) const override;
  std::optional<double> boundary_mass(std::size_t m,
                                      const SourceModel& source) const override;

 private:
  Symbol head_;
};

/// D = A over a countable alphabet (over a finite alphabet use
/// make_alphabet_dictionary, which returns a FiniteDictionary).
class AlphabetDictionary final : public Dictionary {
 public:
  explicit AlphabetDictionary(Alphabet alphabet) : Dictionary(alphabet) {}

  std::string family() const override { return "alphabet"; }
  NodeState classify(std::span<const Symbol> w) const override;
  std::optional<std::size_t> max_word_length() const override { return 1; }
  std::optional<TailSums> tail_sums(std::size_t n,
                                    const SourceModel& source) const override;
  std::optional<double> boundary_mass(std::size_t m,
                                      const SourceModel&) const override {
    return m == 0 ? 1.0 : 0.0;
  }
};

/// User-supplied family described by a classification rule.
class CustomDictionary final : public Dictionary {
 public:
  using Classifier = std::function<NodeState(std::span<const Symbol>)>;
  using ConeTest = std::function<bool(std::span<const Symbol>)>;

  CustomDictionary(std::string name, Alphabet alphabet, Classifier classify,
                   ConeTest cone_empty = {});

  std::string family() const override { return name_; }
  NodeState classify(std::span<const Symbol> w) const override {
    return classify_(w);
  }
  bool cone_empty(std::span<const Symbol> w) const override {
    return cone_empty_ ? cone_empty_(w) : false;
  }

 private:
  std::string name_;
  Classifier classify_;
  ConeTest cone_empty_;
};

DictionaryPtr make_alphabet_dictionary(Alphabet alphabet);

// Throws DomainError unless the dictionary and source share an alphabet.
void require_compatible(const Dictionary& d, const SourceModel& source);

// ---------------------------------------------------------------------------
// Property checks

/// First pair (u, v) with u a prefix of v (or u == v), if any. Runs on a
/// plain word list by sorting, independent of any trie.
std::optional<std::pair<Word, Word>> find_prefix_pair(std::vector<Word> words);

bool is_proper(std::span<const Word> words);

/// Finite dictionaries are checked in full; other families among their
/// words of length <= depth (symbols < width over countable alphabets).
bool is_proper(const Dictionary& d, std::size_t depth, std::uint64_t width = 64);

/// Full branching of every internal trie node. Throws UnsupportedOperation
/// for non-finite families or countable alphabets.
bool is_complete(const Dictionary& d);

enum class AscStatus { certified_asc, certified_not_complete, undetermined };

struct AscVerdict {
  AscStatus status = AscStatus::undetermined;
  std::size_t depth_used = 0;
  double residual_mass = 1.0;   // P(T_n), or an upper bound on it
  double permanent_mass = 0.0;  // mass of open strings no member extends
  bool residual_exact = true;
};

struct AscOptions {
  std::uint64_t width = 64;
  // Report certified_not_complete when at least `tol` of the uncovered mass
  // is provably never covered. Off by default: a failed certification then
  // reads as undetermined.
  bool certify_failure = false;
};

AscVerdict is_asc(const Dictionary& d, const SourceModel& source,
                  std::size_t depth, double tol, AscOptions options = {});

std::string to_string(AscStatus s);

// ---------------------------------------------------------------------------
// Enumeration and parsing

struct EnumerationResult {
  std::vector<Word> words;  // canonical order
  bool exhaustive = true;
};

EnumerationResult enumerate_up_to(const Dictionary& d, std::size_t n,
                                  std::uint64_t width = 64,
                                  std::size_t max_words = std::size_t{1} << 22);

/// Incremental phrase matcher. Uses the trie directly for finite
/// dictionaries; otherwise re-classifies the growing phrase.
class PhraseMatcher {
 public:
  explicit PhraseMatcher(const Dictionary& d);

  void reset();
  // Appends a symbol to the current phrase. Returns member when the phrase
  // is complete, open while it may still complete. `dead()` becomes true
  // once no continuation can ever reach a member.
  NodeState push(Symbol s);
  bool dead() const noexcept { return dead_; }
  const std::vector<Symbol>& phrase() const noexcept { return phrase_; }

 private:
  const Dictionary& dict_;
  const FiniteDictionary* trie_;
  std::uint32_t node_ = FiniteDictionary::kRoot;
  std::vector<Symbol> phrase_;
  bool dead_ = false;
};

struct ParseResult {
  std::vector<Word> phrases;
  Word remainder;
};

/// Greedy unique segmentation. Anything after the start of an incomplete
/// phrase lands in the remainder.
ParseResult parse(const Dictionary& d, std::span<const Symbol> stream);

}  // namespace vv
