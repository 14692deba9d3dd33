// Copyright 2026 The vvcode Authors
// Licensed under the Apache License, Version 2.0

#include "vvcode/source.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "vvcode/errors.hpp"
#include "vvcode/numeric.hpp"

namespace vv {

FiniteDistribution::FiniteDistribution(std::vector<double> probs)
    : probs_(std::move(probs)) {
  if (probs_.empty()) throw DomainError("finite source needs at least one symbol");
  CompensatedSum total;
  for (double p : probs_) {
    if (!(p > 0.0) || p > 1.0) {
      throw DomainError("symbol probabilities must lie in (0, 1]");
    }
    total += p;
  }
  if (std::fabs(total.value() - 1.0) > 1e-12) {
    throw DomainError("symbol probabilities must sum to 1 (got " +
                      std::to_string(total.value()) + ")");
  }
  cdf_.resize(probs_.size());
  CompensatedSum running;
  CompensatedSum h;
  for (std::size_t i = 0; i < probs_.size(); ++i) {
    running += probs_[i];
    cdf_[i] = running.value();
    h += surprisal_term(probs_[i]);
  }
  cdf_.back() = 1.0;
  entropy_ = h.value();
}

double FiniteDistribution::prob(Symbol s) const {
  if (s >= probs_.size()) {
    throw DomainError("symbol " + std::to_string(s) + " outside alphabet of size " +
                      std::to_string(probs_.size()));
  }
  return probs_[s];
}

double FiniteDistribution::tail_mass(Symbol from) const {
  CompensatedSum t;
  for (std::size_t i = from; i < probs_.size(); ++i) t += probs_[i];
  return t.value();
}

double FiniteDistribution::tail_surprisal(Symbol from) const {
  CompensatedSum t;
  for (std::size_t i = from; i < probs_.size(); ++i) t += surprisal_term(probs_[i]);
  return t.value();
}

Symbol FiniteDistribution::quantile(double u) const {
  const auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
  return static_cast<Symbol>(std::min<std::ptrdiff_t>(
      it - cdf_.begin(), static_cast<std::ptrdiff_t>(cdf_.size()) - 1));
}

GeometricDistribution::GeometricDistribution(double p) : p_(p) {
  if (!(p > 0.0 && p < 1.0)) {
    throw DomainError("geometric parameter must lie in (0, 1)");
  }
}

double GeometricDistribution::prob(Symbol s) const {
  return p_ * std::pow(1.0 - p_, static_cast<double>(s));
}

double GeometricDistribution::entropy() const {
  const double q = 1.0 - p_;
  return (-q * std::log2(q) - p_ * std::log2(p_)) / p_;
}

double GeometricDistribution::tail_mass(Symbol from) const {
  return std::pow(1.0 - p_, static_cast<double>(from));
}

// sum_{s>=W} p q^s (-log p - s log q) = q^W [ -log p + (-log q)(W + q/p) ]
double GeometricDistribution::tail_surprisal(Symbol from) const {
  const double q = 1.0 - p_;
  const double w = static_cast<double>(from);
  return std::pow(q, w) * (-std::log2(p_) - std::log2(q) * (w + q / p_));
}

Symbol GeometricDistribution::quantile(double u) const {
  const double x = std::floor(std::log1p(-u) / std::log1p(-p_));
  if (!(x < 4294967295.0)) return 0xFFFFFFFEu;
  return static_cast<Symbol>(x);
}

SourceModel::SourceModel(std::shared_ptr<const SymbolDistribution> dist)
    : dist_(std::move(dist)) {
  if (!dist_) throw DomainError("null symbol distribution");
}

SourceModel SourceModel::finite(std::vector<double> probs) {
  return SourceModel(std::make_shared<FiniteDistribution>(std::move(probs)));
}

SourceModel SourceModel::geometric(double p) {
  return SourceModel(std::make_shared<GeometricDistribution>(p));
}

double SourceModel::word_prob(std::span<const Symbol> w) const {
  double p = 1.0;
  for (Symbol s : w) p *= dist_->prob(s);
  return p;
}

std::string SourceModel::describe() const {
  std::ostringstream os;
  os.precision(17);
  if (const auto* f = dynamic_cast<const FiniteDistribution*>(dist_.get())) {
    os << "finite{";
    for (std::size_t i = 0; i < f->probs().size(); ++i) {
      os << (i ? "," : "") << f->probs()[i];
    }
    os << "}";
  } else if (const auto* g =
                 dynamic_cast<const GeometricDistribution*>(dist_.get())) {
    os << "geometric{p=" << g->p() << "}";
  } else {
    os << dist_->kind();
  }
  return os.str();
}

std::vector<Symbol> sample_stream(const SourceModel& source, std::uint64_t seed,
                                  std::size_t n) {
  Rng rng = Rng::for_stream(seed, 0);
  std::vector<Symbol> out(n);
  for (auto& s : out) s = source.sample(rng);
  return out;
}

}  // namespace vv
