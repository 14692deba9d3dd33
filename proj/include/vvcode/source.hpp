// Copyright 2026 The vvcode Authors
// Licensed under the Apache License, Version 2.0

#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "vvcode/rng.hpp"
#include "vvcode/word.hpp"

namespace vv {

/// Distribution of a single source symbol. Implementations describe either
/// a finite table or a parametric family over the non-negative integers
/// with closed-form tails.
class SymbolDistribution {
 public:
  virtual ~SymbolDistribution() = default;

  virtual std::string kind() const = 0;
  virtual Alphabet alphabet() const = 0;
  // Throws DomainError when s is outside the alphabet.
  virtual double prob(Symbol s) const = 0;
  virtual double entropy() const = 0;
  // P(X >= from).
  virtual double tail_mass(Symbol from) const = 0;
  // -sum_{s >= from} P(s) log2 P(s).
  virtual double tail_surprisal(Symbol from) const = 0;
  // Inverse-CDF draw for u in [0, 1).
  virtual Symbol quantile(double u) const = 0;
};

class FiniteDistribution final : public SymbolDistribution {
 public:
  explicit FiniteDistribution(std::vector<double> probs);

  std::string kind() const override { return "finite"; }
  Alphabet alphabet() const override { return Alphabet::finite(probs_.size()); }
  double prob(Symbol s) const override;
  double entropy() const override { return entropy_; }
  double tail_mass(Symbol from) const override;
  double tail_surprisal(Symbol from) const override;
  Symbol quantile(double u) const override;

  const std::vector<double>& probs() const noexcept { return probs_; }

 private:
  std::vector<double> probs_;
  std::vector<double> cdf_;
  double entropy_ = 0.0;
};

/// P(i) = p (1-p)^i on i = 0, 1, 2, ...
class GeometricDistribution final : public SymbolDistribution {
 public:
  explicit GeometricDistribution(double p);

  std::string kind() const override { return "geometric"; }
  Alphabet alphabet() const override { return Alphabet::countable(); }
  double prob(Symbol s) const override;
  double entropy() const override;
  double tail_mass(Symbol from) const override;
  double tail_surprisal(Symbol from) const override;
  Symbol quantile(double u) const override;

  double p() const noexcept { return p_; }

 private:
  double p_;
};

/// Discrete memoryless source S = (P, A). Cheap to copy; immutable.
class SourceModel {
 public:
  static SourceModel finite(std::vector<double> probs);
  static SourceModel geometric(double p);
  explicit SourceModel(std::shared_ptr<const SymbolDistribution> dist);

  const SymbolDistribution& distribution() const noexcept { return *dist_; }
  std::string kind() const { return dist_->kind(); }
  Alphabet alphabet() const { return dist_->alphabet(); }

  double prob(Symbol s) const { return dist_->prob(s); }
  double entropy() const { return dist_->entropy(); }
  // Product measure; the empty word has probability 1.
  double word_prob(std::span<const Symbol> w) const;
  double word_prob(const Word& w) const { return word_prob(w.symbols()); }
  double tail_mass(Symbol from) const { return dist_->tail_mass(from); }
  double tail_surprisal(Symbol from) const { return dist_->tail_surprisal(from); }

  Symbol sample(Rng& rng) const { return dist_->quantile(rng.uniform()); }

  std::string describe() const;

 private:
  std::shared_ptr<const SymbolDistribution> dist_;
};

/// n i.i.d. draws using stream 0 of `seed` (see Rng).
std::vector<Symbol> sample_stream(const SourceModel& source, std::uint64_t seed,
                                  std::size_t n);

}  // namespace vv
