// Copyright 2026 The vvcode Authors
// Licensed under the Apache License, Version 2.0

#include "vvcode/dict_algebra.hpp"

#include <algorithm>
#include <set>

#include "vvcode/errors.hpp"
#include "vvcode/numeric.hpp"

namespace vv {

// ---------------------------------------------------------------------------
// ExtendedDictionary

ExtendedDictionary::ExtendedDictionary(DictionaryPtr base, std::vector<Word> extended)
    : Dictionary(base ? base->alphabet() : Alphabet::countable()),
      base_(std::move(base)),
      extended_(std::move(extended)) {
  if (!base_) throw DomainError("extension of a null dictionary");
  std::sort(extended_.begin(), extended_.end());
  if (std::adjacent_find(extended_.begin(), extended_.end()) != extended_.end()) {
    throw DomainError("extending words must be distinct");
  }
  for (const Word& a : extended_) {
    if (base_->classify(a.symbols()) != NodeState::member) {
      throw DomainError("extending word " + a.to_string() + " is not in the dictionary");
    }
  }
}

const Word* ExtendedDictionary::extended_prefix_of(std::span<const Symbol> w) const {
  for (const Word& a : extended_) {
    if (is_prefix(a.symbols(), w)) return &a;
  }
  return nullptr;
}

NodeState ExtendedDictionary::classify(std::span<const Symbol> w) const {
  if (const Word* a = extended_prefix_of(w)) {
    if (w.size() == a->size()) return NodeState::open;
    return w.size() == a->size() + 1 ? NodeState::member : NodeState::covered;
  }
  return base_->classify(w);
}

bool ExtendedDictionary::cone_empty(std::span<const Symbol> w) const {
  if (extended_prefix_of(w) != nullptr) return false;
  return base_->cone_empty(w);
}

std::optional<std::vector<Symbol>> ExtendedDictionary::relevant_children(
    std::span<const Symbol> w) const {
  if (extended_prefix_of(w) != nullptr) return std::nullopt;
  return base_->relevant_children(w);
}

std::optional<std::size_t> ExtendedDictionary::max_word_length() const {
  auto base_max = base_->max_word_length();
  if (!base_max) return std::nullopt;
  std::size_t m = *base_max;
  for (const Word& a : extended_) m = std::max(m, a.size() + 1);
  return m;
}

std::optional<TailSums> ExtendedDictionary::tail_sums(std::size_t n,
                                                      const SourceModel& source) const {
  auto base = base_->tail_sums(n, source);
  if (!base) return std::nullopt;
  CompensatedSum mass, length, entropy;
  mass += base->mass;
  length += base->length;
  entropy += base->entropy;
  const double h = source.entropy();
  for (const Word& a : extended_) {
    const double p = source.word_prob(a);
    const auto len = static_cast<double>(a.size());
    if (a.size() > n) {
      mass += -p;
      length += -p * len;
      entropy += -surprisal_term(p);
    }
    if (a.size() + 1 > n) {
      mass += p;
      length += p * (len + 1.0);
      entropy += surprisal_term(p);
      entropy += p * h;
    }
  }
  return TailSums{mass.value(), length.value(), entropy.value()};
}

std::optional<double> ExtendedDictionary::boundary_mass(std::size_t m,
                                                        const SourceModel& source) const {
  auto base = base_->boundary_mass(m, source);
  if (!base) return std::nullopt;
  CompensatedSum total;
  total += *base;
  for (const Word& a : extended_) {
    if (a.size() == m) total += source.word_prob(a);
  }
  return total.value();
}

// ---------------------------------------------------------------------------
// TruncatedDictionary

TruncatedDictionary::TruncatedDictionary(DictionaryPtr base, std::size_t n)
    : Dictionary(base ? base->alphabet() : Alphabet::countable()),
      base_(std::move(base)),
      n_(n) {
  if (!base_) throw DomainError("truncation of a null dictionary");
  if (n_ < 1) throw DomainError("truncation depth must be at least 1");
}

NodeState TruncatedDictionary::classify(std::span<const Symbol> w) const {
  if (w.size() > n_) return NodeState::covered;
  const NodeState s = base_->classify(w);
  if (w.size() == n_ && s == NodeState::open) return NodeState::member;
  return s;
}

std::optional<TailSums> TruncatedDictionary::tail_sums(std::size_t m,
                                                       const SourceModel&) const {
  if (m >= n_) return TailSums{};
  return std::nullopt;
}

std::optional<double> TruncatedDictionary::boundary_mass(std::size_t m,
                                                         const SourceModel& source) const {
  if (m >= n_) return 0.0;
  return base_->boundary_mass(m, source);
}

// ---------------------------------------------------------------------------
// Operations

DictionaryPtr extend(const DictionaryPtr& d, const Word& alpha) {
  if (!d) throw DomainError("extension of a null dictionary");
  if (d->classify(alpha.symbols()) != NodeState::member) {
    throw DomainError("extending word " + alpha.to_string() +
                      " is not in the dictionary");
  }
  const auto* finite = dynamic_cast<const FiniteDictionary*>(d.get());
  if (finite != nullptr && d->alphabet().is_finite()) {
    std::vector<Word> words;
    words.reserve(finite->size() + *d->alphabet().size());
    for (const Word& w : finite->words()) {
      if (w != alpha) words.push_back(w);
    }
    for (Symbol s = 0; s < *d->alphabet().size(); ++s) words.push_back(alpha.append(s));
    return std::make_shared<FiniteDictionary>(d->alphabet(), std::move(words));
  }
  if (const auto* ext = dynamic_cast<const ExtendedDictionary*>(d.get())) {
    if (ext->base()->classify(alpha.symbols()) == NodeState::member) {
      std::vector<Word> words = ext->extended();
      words.push_back(alpha);
      return std::make_shared<ExtendedDictionary>(ext->base(), std::move(words));
    }
  }
  return std::make_shared<ExtendedDictionary>(d, std::vector<Word>{alpha});
}

DictionaryPtr truncated_view(const DictionaryPtr& d, std::size_t n) {
  return std::make_shared<TruncatedDictionary>(d, n);
}

namespace {

// Appends every extension of `prefix` to length n (symbols < kids) to out.
void fill_extensions(std::vector<Symbol>& prefix, std::size_t n, std::uint64_t kids,
                     std::vector<Word>& out, std::size_t& budget_used,
                     std::size_t max_words) {
  if (prefix.size() == n) {
    if (++budget_used > max_words) {
      throw ResourceError("truncation exceeded max_words budget of " +
                          std::to_string(max_words));
    }
    out.emplace_back(std::span<const Symbol>(prefix));
    return;
  }
  for (std::uint64_t s = 0; s < kids; ++s) {
    prefix.push_back(static_cast<Symbol>(s));
    fill_extensions(prefix, n, kids, out, budget_used, max_words);
    prefix.pop_back();
  }
}

}  // namespace

FrontierSets truncate(const Dictionary& d, std::size_t n, TruncateBudget budget) {
  if (n < 1) throw DomainError("truncation depth must be at least 1");
  FrontierSets fs;
  fs.n = n;
  fs.exhaustive = d.alphabet().is_finite();
  const std::uint64_t kids = d.alphabet().visit_width(budget.width);

  std::vector<Word> shorter;
  std::vector<Word> members_at_n;
  std::size_t used = 0;
  auto charge = [&] {
    if (++used > budget.max_words) {
      throw ResourceError("truncation exceeded max_words budget of " +
                          std::to_string(budget.max_words) + " (depth " +
                          std::to_string(n) + ", width " +
                          std::to_string(budget.width) + ")");
    }
  };

  ExploreVisitor visitor;
  visitor.on_member = [&](std::span<const Symbol> w, double) {
    charge();
    (w.size() < n ? shorter : members_at_n).emplace_back(w);
  };
  visitor.on_frontier = [&](std::span<const Symbol> w, double) {
    charge();
    fs.t_n.emplace_back(w);
  };
  visitor.on_void = [&](std::span<const Symbol> w, double) {
    std::vector<Symbol> prefix(w.begin(), w.end());
    fill_extensions(prefix, n, kids, fs.t_n, used, budget.max_words);
  };

  ExploreLimits limits;
  limits.depth = n;
  limits.width = budget.width;
  limits.max_nodes = budget.max_words;
  // Only the structure matters; any source over the same alphabet will do.
  const SourceModel probe =
      d.alphabet().is_finite()
          ? SourceModel::finite(std::vector<double>(
                *d.alphabet().size(), 1.0 / static_cast<double>(*d.alphabet().size())))
          : SourceModel::geometric(0.5);
  explore(d, probe, Word{}, limits, &visitor);

  std::sort(fs.t_n.begin(), fs.t_n.end());
  fs.d_n_perp = members_at_n;
  fs.d_n_perp.insert(fs.d_n_perp.end(), fs.t_n.begin(), fs.t_n.end());
  std::sort(fs.d_n_perp.begin(), fs.d_n_perp.end());

  std::vector<Word> dn_words = std::move(shorter);
  dn_words.insert(dn_words.end(), fs.d_n_perp.begin(), fs.d_n_perp.end());
  fs.d_n = std::make_shared<FiniteDictionary>(d.alphabet(), std::move(dn_words));
  return fs;
}

ConeResult cone(const Dictionary& d, const Word& beta, std::size_t depth,
                std::uint64_t width) {
  ConeResult out;
  if (d.classify(beta.symbols()) == NodeState::covered) {
    out.hypothesis_holds = false;
    return out;
  }
  ExploreVisitor visitor;
  visitor.on_member = [&](std::span<const Symbol> w, double) {
    out.words.emplace_back(w);
  };
  ExploreLimits limits;
  limits.depth = depth;
  limits.width = width;
  const SourceModel probe =
      d.alphabet().is_finite()
          ? SourceModel::finite(std::vector<double>(
                *d.alphabet().size(), 1.0 / static_cast<double>(*d.alphabet().size())))
          : SourceModel::geometric(0.5);
  const Exploration ex = explore(d, probe, beta, limits, &visitor);
  std::sort(out.words.begin(), out.words.end());
  out.exhaustive = ex.exhaustive();
  return out;
}

ConeMass cone_mass(const Dictionary& d, const Word& beta, const SourceModel& source,
                   const ExploreLimits& limits) {
  if (d.classify(beta.symbols()) == NodeState::covered) {
    throw PreconditionError("cone mass identity needs beta without a strict prefix in D; " +
                            beta.to_string() + " has one");
  }
  const Exploration ex = explore(d, source, beta, limits);
  ConeMass out;
  out.mass = ex.member_mass.value();
  out.tail_bound = ex.uncovered();
  out.exhaustive = ex.exhaustive();
  return out;
}

// ---------------------------------------------------------------------------
// Extension chains

ExtensionChain::ExtensionChain(DictionaryPtr base, std::vector<Word> extending_words,
                               bool exhaustive)
    : base_(std::move(base)), extending_(std::move(extending_words)), exhaustive_(exhaustive) {
  if (!base_) throw DomainError("extension chain needs a base dictionary");
}

DictionaryPtr ExtensionChain::step(std::size_t k) const {
  if (k == 0) return base_;
  if (k > extending_.size()) {
    if (exhaustive_) {
      throw PreconditionError("chain step " + std::to_string(k) + " exceeds |T_m| = " +
                              std::to_string(extending_.size()));
    }
    throw ResourceError("chain step " + std::to_string(k) + " needs more extending words than the " +
                        std::to_string(extending_.size()) + " found within the budget");
  }
  const auto* finite = dynamic_cast<const FiniteDictionary*>(base_.get());
  if (finite != nullptr && base_->alphabet().is_finite()) {
    const std::set<Word> chosen(extending_.begin(), extending_.begin() + static_cast<std::ptrdiff_t>(k));
    std::vector<Word> words;
    for (const Word& w : finite->words()) {
      if (!chosen.count(w)) words.push_back(w);
    }
    for (const Word& a : chosen) {
      for (Symbol s = 0; s < *base_->alphabet().size(); ++s) words.push_back(a.append(s));
    }
    return std::make_shared<FiniteDictionary>(base_->alphabet(), std::move(words));
  }
  return std::make_shared<ExtendedDictionary>(
      base_, std::vector<Word>(extending_.begin(), extending_.begin() + static_cast<std::ptrdiff_t>(k)));
}

namespace {

// Visits compositions of `total` into `parts` non-negative parts in
// lexicographic order; stops when fn returns false.
template <typename Fn>
bool for_each_composition(std::vector<Symbol>& buf, std::size_t parts, std::uint64_t total,
                          Fn&& fn) {
  if (buf.size() + 1 == parts) {
    buf.push_back(static_cast<Symbol>(total));
    const bool go_on = fn(buf);
    buf.pop_back();
    return go_on;
  }
  for (std::uint64_t first = 0; first <= total; ++first) {
    buf.push_back(static_cast<Symbol>(first));
    const bool go_on = for_each_composition(buf, parts, total - first, fn);
    buf.pop_back();
    if (!go_on) return false;
  }
  return true;
}

}  // namespace

ExtensionChain make_chain(const DictionaryPtr& d, std::size_t m, ChainBudget budget) {
  if (!d) throw DomainError("extension chain of a null dictionary");
  if (m < 1) throw DomainError("chain depth must be at least 1");
  if (d->alphabet().is_finite()) {
    FrontierSets fs = truncate(*d, m, TruncateBudget{budget.width, budget.max_words});
    return ExtensionChain(fs.d_n, std::move(fs.t_n), true);
  }
  std::vector<Word> extending;
  std::vector<Symbol> buf;
  for (std::uint64_t total = 0; total <= budget.width; ++total) {
    const bool go_on = for_each_composition(buf, m, total, [&](const std::vector<Symbol>& w) {
      if (d->classify(w) == NodeState::open) extending.emplace_back(std::span<const Symbol>(w));
      return extending.size() < budget.max_words;
    });
    if (!go_on) break;
  }
  return ExtensionChain(truncated_view(d, m), std::move(extending), false);
}

}  // namespace vv
