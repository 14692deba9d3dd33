// Copyright 2026 The vvcode Authors
// Licensed under the Apache License, Version 2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "vvcode/dictionary.hpp"
#include "vvcode/explore.hpp"

namespace vv {

/// D[a1, ..., ak] = (D \ {a1..ak}) u a1A u ... u akA for distinct members
/// a_i of the base. Used for extensions the trie cannot materialize
/// (countable alphabets, infinite bases).
class ExtendedDictionary final : public Dictionary {
 public:
  ExtendedDictionary(DictionaryPtr base, std::vector<Word> extended);

  std::string family() const override { return "extended"; }
  const DictionaryPtr& base() const noexcept { return base_; }
  const std::vector<Word>& extended() const noexcept { return extended_; }

  NodeState classify(std::span<const Symbol> w) const override;
  bool cone_empty(std::span<const Symbol> w) const override;
  std::optional<std::vector<Symbol>> relevant_children(
      std::span<const Symbol> w) const override;
  std::optional<std::size_t> max_word_length() const override;
  std::optional<TailSums> tail_sums(std::size_t n,
                                    const SourceModel& source) const override;
  std::optional<double> boundary_mass(std::size_t m,
                                      const SourceModel& source) const override;

 private:
  const Word* extended_prefix_of(std::span<const Symbol> w) const;

  DictionaryPtr base_;
  std::vector<Word> extended_;
};

/// D_n = {a in D : |a| < n} u D_n^perp, without materializing it. Proper
/// and complete; every word has length <= n.
class TruncatedDictionary final : public Dictionary {
 public:
  TruncatedDictionary(DictionaryPtr base, std::size_t n);

  std::string family() const override { return "truncated"; }
  const DictionaryPtr& base() const noexcept { return base_; }
  std::size_t depth() const noexcept { return n_; }

  NodeState classify(std::span<const Symbol> w) const override;
  std::optional<std::size_t> max_word_length() const override { return n_; }
  std::optional<TailSums> tail_sums(std::size_t m,
                                    const SourceModel& source) const override;
  std::optional<double> boundary_mass(std::size_t m,
                                      const SourceModel& source) const override;

 private:
  DictionaryPtr base_;
  std::size_t n_;
};

/// D[a]. Finite dictionaries over finite alphabets are materialized as a
/// new trie; everything else becomes an ExtendedDictionary view.
/// Throws DomainError when a is not a member of d.
DictionaryPtr extend(const DictionaryPtr& d, const Word& alpha);

DictionaryPtr truncated_view(const DictionaryPtr& d, std::size_t n);

struct TruncateBudget {
  std::uint64_t width = 64;  // countable alphabets only
  std::size_t max_words = std::size_t{1} << 20;
};

struct FrontierSets {
  std::size_t n = 0;
  std::vector<Word> t_n;       // open strings of length n
  std::vector<Word> d_n_perp;  // {a in D : |a| = n} u t_n
  std::shared_ptr<const FiniteDictionary> d_n;
  // False when a countable alphabet was cut at the width budget.
  bool exhaustive = true;
};

/// T_n, D_n^perp and D_n, all in canonical order. Throws ResourceError,
/// naming the budget, when more than max_words strings would be produced.
FrontierSets truncate(const Dictionary& d, std::size_t n,
                      TruncateBudget budget = {});

struct ConeResult {
  std::vector<Word> words;  // canonical order
  bool exhaustive = true;
  // beta has no strict prefix in D (otherwise the cone is empty).
  bool hypothesis_holds = true;
};

/// (D, beta): members with prefix beta, up to length `depth`.
ConeResult cone(const Dictionary& d, const Word& beta, std::size_t depth,
                std::uint64_t width = 64);

struct ConeMass {
  double mass = 0.0;        // sum of P(a) over enumerated cone members
  double tail_bound = 0.0;  // uncovered mass left below beta
  bool exhaustive = true;
};

/// Sum of P(a) over (D, beta). Throws PreconditionError when beta has a
/// strict prefix in D, since the identity sum = P(beta) needs it not to.
ConeMass cone_mass(const Dictionary& d, const Word& beta,
                   const SourceModel& source, const ExploreLimits& limits);

struct ChainBudget {
  std::uint64_t width = 64;  // countable: maximum symbol-index sum searched
  std::size_t max_words = std::size_t{1} << 20;
};

/// The single-word extension sequence from D_m towards D_{m+1}:
/// step(k) = (D_m \ {a_1..a_k}) u a_1A u ... u a_kA, with a_i ranging over
/// T_m in a fixed order.
///
/// Finite alphabets use canonical order and list all of T_m. Countable
/// alphabets list T_m by increasing symbol-index sum, then lexicographically,
/// so that every element appears at a finite position; only the words found
/// within the budget are available.
class ExtensionChain {
 public:
  ExtensionChain(DictionaryPtr base, std::vector<Word> extending_words,
                 bool exhaustive);

  const DictionaryPtr& base() const noexcept { return base_; }
  const std::vector<Word>& extending_words() const noexcept {
    return extending_;
  }
  bool exhaustive() const noexcept { return exhaustive_; }

  /// D_{m+1,k}. Throws PreconditionError for k beyond a finite T_m and
  /// ResourceError beyond the words found within a countable budget.
  DictionaryPtr step(std::size_t k) const;

 private:
  DictionaryPtr base_;
  std::vector<Word> extending_;
  bool exhaustive_;
};

ExtensionChain make_chain(const DictionaryPtr& d, std::size_t m,
                          ChainBudget budget = {});

inline DictionaryPtr chain_step(const ExtensionChain& c, std::size_t k) {
  return c.step(k);
}

}  // namespace vv
