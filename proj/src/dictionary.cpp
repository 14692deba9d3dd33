// Copyright 2026 The vvcode Authors
// Licensed under the Apache License, Version 2.0

#include "vvcode/dictionary.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "vvcode/errors.hpp"
#include "vvcode/explore.hpp"
#include "vvcode/numeric.hpp"

namespace vv {

bool Dictionary::cone_empty(std::span<const Symbol>) const { return false; }

std::optional<std::vector<Symbol>> Dictionary::relevant_children(
    std::span<const Symbol>) const {
  return std::nullopt;
}

std::optional<std::size_t> Dictionary::max_word_length() const {
  return std::nullopt;
}

std::optional<TailSums> Dictionary::tail_sums(std::size_t,
                                              const SourceModel&) const {
  return std::nullopt;
}

std::optional<double> Dictionary::boundary_mass(std::size_t,
                                                const SourceModel&) const {
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// FiniteDictionary

FiniteDictionary::FiniteDictionary(Alphabet alphabet, std::vector<Word> words)
    : Dictionary(alphabet), words_(std::move(words)) {
  if (words_.empty()) throw DomainError("dictionary must contain at least one word");
  for (const Word& w : words_) {
    if (w.empty()) throw DomainError("dictionary words must be non-empty");
    for (Symbol s : w) {
      if (!alphabet.contains(s)) {
        throw DomainError("word " + w.to_string() + " uses symbol " +
                          std::to_string(s) + " outside alphabet of size " +
                          to_string(alphabet));
      }
    }
  }
  std::sort(words_.begin(), words_.end());
  if (auto dup = std::adjacent_find(words_.begin(), words_.end());
      dup != words_.end()) {
    throw DomainError("duplicate word " + dup->to_string());
  }
  if (auto pair = find_prefix_pair(words_)) {
    throw DomainError("dictionary is not proper: " + pair->first.to_string() +
                      " is a prefix of " + pair->second.to_string());
  }

  nodes_.emplace_back();
  for (const Word& w : words_) {
    std::uint32_t node = kRoot;
    for (Symbol s : w) {
      std::uint32_t next = child(node, s);
      if (next == kNone) {
        next = static_cast<std::uint32_t>(nodes_.size());
        auto& kids = nodes_[node].children;
        kids.insert(std::upper_bound(kids.begin(), kids.end(),
                                     std::make_pair(s, std::uint32_t{0}),
                                     [](const auto& a, const auto& b) {
                                       return a.first < b.first;
                                     }),
                    {s, next});
        nodes_.emplace_back();
      }
      node = next;
    }
    nodes_[node].word = true;
    max_length_ = std::max(max_length_, w.size());
  }
}

std::uint32_t FiniteDictionary::child(std::uint32_t node, Symbol s) const {
  const auto& kids = nodes_[node].children;
  auto it = std::lower_bound(
      kids.begin(), kids.end(), s,
      [](const std::pair<Symbol, std::uint32_t>& a, Symbol b) { return a.first < b; });
  return (it != kids.end() && it->first == s) ? it->second : kNone;
}

// Walks w from the root. Stops early at a word node or a missing edge;
// *depth receives the number of symbols consumed.
std::uint32_t FiniteDictionary::locate(std::span<const Symbol> w,
                                       std::size_t* depth) const {
  std::uint32_t node = kRoot;
  std::size_t i = 0;
  for (; i < w.size(); ++i) {
    if (nodes_[node].word) break;
    const std::uint32_t next = child(node, w[i]);
    if (next == kNone) {
      *depth = i;
      return kNone;
    }
    node = next;
  }
  *depth = i;
  return node;
}

NodeState FiniteDictionary::classify(std::span<const Symbol> w) const {
  std::size_t depth = 0;
  const std::uint32_t node = locate(w, &depth);
  if (node == kNone) return NodeState::open;
  if (nodes_[node].word) {
    return depth == w.size() ? NodeState::member : NodeState::covered;
  }
  return NodeState::open;
}

bool FiniteDictionary::cone_empty(std::span<const Symbol> w) const {
  std::size_t depth = 0;
  return locate(w, &depth) == kNone;
}

std::optional<std::vector<Symbol>> FiniteDictionary::relevant_children(
    std::span<const Symbol> w) const {
  std::size_t depth = 0;
  const std::uint32_t node = locate(w, &depth);
  std::vector<Symbol> out;
  if (node != kNone && depth == w.size()) {
    for (const auto& [s, _] : nodes_[node].children) out.push_back(s);
  }
  return out;
}

std::optional<TailSums> FiniteDictionary::tail_sums(std::size_t n,
                                                    const SourceModel& source) const {
  CompensatedSum mass, length, entropy;
  for (const Word& w : words_) {
    if (w.size() <= n) continue;
    const double p = source.word_prob(w);
    mass += p;
    length += p * static_cast<double>(w.size());
    entropy += surprisal_term(p);
  }
  return TailSums{mass.value(), length.value(), entropy.value()};
}

bool FiniteDictionary::contains(const Word& w) const {
  return classify(w.symbols()) == NodeState::member;
}

// ---------------------------------------------------------------------------
// Lazy families

RunLengthDictionary::RunLengthDictionary(Alphabet alphabet) : Dictionary(alphabet) {
  if (!alphabet.contains(kRunSymbol)) {
    throw DomainError("run_length needs an alphabet with at least two symbols");
  }
}

NodeState RunLengthDictionary::classify(std::span<const Symbol> w) const {
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (w[i] != kRunSymbol) {
      return i + 1 == w.size() ? NodeState::member : NodeState::covered;
    }
  }
  return NodeState::open;
}

// Members longer than n are 1^j s with j >= n, s != 1. With q = P(1) and
// h_s = -sum_{s != 1} P(s) log2 P(s) = H(P) + q log2 q:
//   mass    = q^n
//   length  = q^n (n + 1/(1-q))
//   entropy = q^n [ (-log2 q)(n + q/(1-q)) + h_s/(1-q) ]
std::optional<TailSums> RunLengthDictionary::tail_sums(
    std::size_t n, const SourceModel& source) const {
  const double q = source.prob(kRunSymbol);
  const double qn = std::pow(q, static_cast<double>(n));
  const double dn = static_cast<double>(n);
  const double h_s = source.entropy() + q * std::log2(q);
  TailSums t;
  t.mass = qn;
  t.length = qn * (dn + 1.0 / (1.0 - q));
  t.entropy = qn * (-std::log2(q) * (dn + q / (1.0 - q)) + h_s / (1.0 - q));
  return t;
}

std::optional<double> RunLengthDictionary::boundary_mass(
    std::size_t m, const SourceModel& source) const {
  return std::pow(source.prob(kRunSymbol), static_cast<double>(m));
}

HeadExtensionDictionary::HeadExtensionDictionary(Alphabet alphabet, Symbol head)
    : Dictionary(alphabet), head_(head) {
  if (!alphabet.contains(head)) {
    throw DomainError("head symbol " + std::to_string(head) + " outside alphabet");
  }
}

NodeState HeadExtensionDictionary::classify(std::span<const Symbol> w) const {
  if (w.empty()) return NodeState::open;
  if (w[0] != head_) return w.size() == 1 ? NodeState::member : NodeState::covered;
  if (w.size() == 1) return NodeState::open;
  return w.size() == 2 ? NodeState::member : NodeState::covered;
}

// With a = P(head): l-bar = 1 + a and H(D) = [H(P) + a log2 a] + a[H(P) - log2 a]
// = H(P)(1 + a).
std::optional<TailSums> HeadExtensionDictionary::tail_sums(
    std::size_t n, const SourceModel& source) const {
  const double a = source.prob(head_);
  const double h = source.entropy();
  TailSums t;
  if (n == 0) {
    t.mass = 1.0;
    t.length = 1.0 + a;
    t.entropy = h * (1.0 + a);
  } else if (n == 1) {
    t.mass = a;
    t.length = 2.0 * a;
    t.entropy = a * (h - std::log2(a));
  }
  return t;
}

std::optional<double> HeadExtensionDictionary::boundary_mass(
    std::size_t m, const SourceModel& source) const {
  if (m == 0) return 1.0;
  if (m == 1) return source.prob(head_);
  return 0.0;
}

NodeState AlphabetDictionary::classify(std::span<const Symbol> w) const {
  if (w.empty()) return NodeState::open;
  return w.size() == 1 ? NodeState::member : NodeState::covered;
}

std::optional<TailSums> AlphabetDictionary::tail_sums(std::size_t n,
                                                      const SourceModel& source) const {
  if (n > 0) return TailSums{};
  return TailSums{1.0, 1.0, source.entropy()};
}

CustomDictionary::CustomDictionary(std::string name, Alphabet alphabet,
                                   Classifier classify, ConeTest cone_empty)
    : Dictionary(alphabet),
      name_(std::move(name)),
      classify_(std::move(classify)),
      cone_empty_(std::move(cone_empty)) {
  if (!classify_) throw DomainError("custom dictionary needs a classifier");
}

DictionaryPtr make_alphabet_dictionary(Alphabet alphabet) {
  if (!alphabet.is_finite()) return std::make_shared<AlphabetDictionary>(alphabet);
  std::vector<Word> words;
  for (Symbol s = 0; s < *alphabet.size(); ++s) words.push_back(Word{s});
  return std::make_shared<FiniteDictionary>(alphabet, std::move(words));
}

void require_compatible(const Dictionary& d, const SourceModel& source) {
  if (d.alphabet() != source.alphabet()) {
    throw DomainError("dictionary alphabet (" + to_string(d.alphabet()) +
                      ") does not match source alphabet (" +
                      to_string(source.alphabet()) + ")");
  }
}

// ---------------------------------------------------------------------------
// Property checks

// In lexicographic order, if u is a prefix of v then u sorts before v and
// every word in between also starts with u, so adjacent pairs suffice.
std::optional<std::pair<Word, Word>> find_prefix_pair(std::vector<Word> words) {
  std::sort(words.begin(), words.end(), [](const Word& a, const Word& b) {
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
  });
  for (std::size_t i = 1; i < words.size(); ++i) {
    if (words[i - 1].is_prefix_of(words[i])) {
      return std::make_pair(words[i - 1], words[i]);
    }
  }
  return std::nullopt;
}

bool is_proper(std::span<const Word> words) {
  return !find_prefix_pair(std::vector<Word>(words.begin(), words.end()));
}

bool is_proper(const Dictionary& d, std::size_t depth, std::uint64_t width) {
  if (const auto* f = dynamic_cast<const FiniteDictionary*>(&d)) {
    return is_proper(f->words());
  }
  if (depth < 1) throw DomainError("depth must be at least 1");
  const EnumerationResult members = enumerate_up_to(d, depth, width);
  // A consistent family classifies every child of a member as covered.
  const std::uint64_t kids = d.alphabet().visit_width(width);
  std::vector<Symbol> buf;
  for (const Word& w : members.words) {
    if (w.size() >= depth) continue;
    buf.assign(w.begin(), w.end());
    buf.push_back(0);
    for (std::uint64_t s = 0; s < kids; ++s) {
      buf.back() = static_cast<Symbol>(s);
      if (d.classify(buf) != NodeState::covered) return false;
    }
  }
  return is_proper(members.words);
}

bool is_complete(const Dictionary& d) {
  const auto* f = dynamic_cast<const FiniteDictionary*>(&d);
  if (f == nullptr) {
    throw UnsupportedOperation("completeness is not finitely decidable for the '" +
                               d.family() + "' family; use is_asc");
  }
  if (!d.alphabet().is_finite()) {
    throw UnsupportedOperation(
        "completeness is not finitely decidable over a countable alphabet; use is_asc");
  }
  const std::uint64_t k = *d.alphabet().size();
  for (std::uint32_t node = 0; node < f->node_count(); ++node) {
    if (!f->is_word_node(node) && f->child_count(node) != k) return false;
  }
  return true;
}

std::string to_string(AscStatus s) {
  switch (s) {
    case AscStatus::certified_asc: return "certified_asc";
    case AscStatus::certified_not_complete: return "certified_not_complete";
    case AscStatus::undetermined: return "undetermined";
  }
  return "undetermined";
}

AscVerdict is_asc(const Dictionary& d, const SourceModel& source,
                  std::size_t depth, double tol, AscOptions options) {
  require_compatible(d, source);
  if (!(tol > 0.0)) throw DomainError("tolerance must be positive");
  if (depth < 1) throw DomainError("depth must be at least 1");
  if (!is_proper(d, depth, options.width)) {
    throw PreconditionError("dictionary is not proper to depth " +
                            std::to_string(depth));
  }
  ExploreLimits limits;
  limits.depth = depth;
  limits.width = options.width;
  const Exploration ex = explore(d, source, Word{}, limits);

  AscVerdict v;
  v.depth_used = depth;
  v.permanent_mass = std::clamp(ex.void_mass.value(), 0.0, 1.0);
  if (auto closed = d.boundary_mass(depth, source)) {
    v.residual_mass = *closed;
    v.residual_exact = true;
  } else {
    v.residual_mass = ex.uncovered();
    v.residual_exact = ex.gaps.empty();
  }
  v.residual_mass = std::clamp(v.residual_mass, 0.0, 1.0);
  if (v.residual_mass < tol) {
    v.status = AscStatus::certified_asc;
  } else if (options.certify_failure && v.permanent_mass >= tol) {
    v.status = AscStatus::certified_not_complete;
  } else {
    v.status = AscStatus::undetermined;
  }
  return v;
}

// ---------------------------------------------------------------------------
// Enumeration and parsing

EnumerationResult enumerate_up_to(const Dictionary& d, std::size_t n,
                                  std::uint64_t width, std::size_t max_words) {
  EnumerationResult result;
  ExploreVisitor visitor;
  visitor.on_member = [&](std::span<const Symbol> w, double) {
    if (result.words.size() >= max_words) {
      throw ResourceError("enumeration exceeded max_words budget of " +
                          std::to_string(max_words));
    }
    result.words.emplace_back(w);
  };
  ExploreLimits limits;
  limits.depth = n;
  limits.width = width;
  // Masses are irrelevant here; use a uniform stand-in over the alphabet.
  const SourceModel probe = d.alphabet().is_finite()
                                ? SourceModel::finite(std::vector<double>(
                                      *d.alphabet().size(),
                                      1.0 / static_cast<double>(*d.alphabet().size())))
                                : SourceModel::geometric(0.5);
  const Exploration ex = explore(d, probe, Word{}, limits, &visitor);
  std::sort(result.words.begin(), result.words.end());
  result.exhaustive = ex.exhaustive();
  return result;
}

PhraseMatcher::PhraseMatcher(const Dictionary& d)
    : dict_(d), trie_(dynamic_cast<const FiniteDictionary*>(&d)) {}

void PhraseMatcher::reset() {
  node_ = FiniteDictionary::kRoot;
  phrase_.clear();
  dead_ = false;
}

NodeState PhraseMatcher::push(Symbol s) {
  if (!dict_.alphabet().contains(s)) {
    throw DomainError("symbol " + std::to_string(s) + " outside alphabet of size " +
                      to_string(dict_.alphabet()));
  }
  phrase_.push_back(s);
  if (dead_) return NodeState::open;
  if (trie_ != nullptr) {
    node_ = trie_->child(node_, s);
    if (node_ == FiniteDictionary::kNone) {
      dead_ = true;
      return NodeState::open;
    }
    return trie_->is_word_node(node_) ? NodeState::member : NodeState::open;
  }
  switch (dict_.classify(phrase_)) {
    case NodeState::member:
      return NodeState::member;
    case NodeState::open:
      if (dict_.cone_empty(phrase_)) dead_ = true;
      return NodeState::open;
    case NodeState::covered:
      break;
  }
  throw std::logic_error("dictionary classified a phrase continuation as covered");
}

ParseResult parse(const Dictionary& d, std::span<const Symbol> stream) {
  ParseResult out;
  PhraseMatcher matcher(d);
  for (Symbol s : stream) {
    if (matcher.push(s) == NodeState::member) {
      out.phrases.emplace_back(matcher.phrase());
      matcher.reset();
    }
  }
  out.remainder = Word(matcher.phrase());
  return out;
}

}  // namespace vv
