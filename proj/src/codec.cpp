// Copyright 2026 The vvcode Authors
// Licensed under the Apache License, Version 2.0

#include "vvcode/codec.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <deque>
#include <queue>
#include <set>

#include "vvcode/bitio.hpp"
#include "vvcode/errors.hpp"
#include "vvcode/numeric.hpp"

namespace vv {

// ---------------------------------------------------------------------------
// PhraseCodebook

PhraseCodebook::PhraseCodebook(std::vector<Word> phrases, std::vector<std::string> codewords,
                               std::string mode)
    : phrases_(std::move(phrases)), codewords_(std::move(codewords)), mode_(std::move(mode)) {
  if (phrases_.empty()) throw DomainError("codebook has no phrases");
  if (phrases_.size() != codewords_.size()) {
    throw DomainError("codebook has " + std::to_string(phrases_.size()) + " phrases but " +
                      std::to_string(codewords_.size()) + " codewords");
  }
  trie_.emplace_back();
  for (std::size_t i = 0; i < phrases_.size(); ++i) {
    if (!index_.emplace(phrases_[i], i).second) {
      throw DomainError("duplicate phrase " + phrases_[i].to_string());
    }
    const std::string& cw = codewords_[i];
    if (cw.empty()) throw DomainError("empty codeword for phrase " + phrases_[i].to_string());
    std::uint32_t node = 0;
    for (char c : cw) {
      if (c != '0' && c != '1') throw DomainError("codeword '" + cw + "' is not binary");
      if (trie_[node].phrase != npos) {
        throw DomainError("codewords are not prefix-free: '" + codewords_[trie_[node].phrase] +
                          "' is a prefix of '" + cw + "'");
      }
      const int b = c == '1' ? 1 : 0;
      if (trie_[node].child[b] == kNoNode) {
        trie_[node].child[b] = static_cast<std::uint32_t>(trie_.size());
        trie_.emplace_back();
      }
      node = trie_[node].child[b];
    }
    if (trie_[node].phrase != npos) throw DomainError("duplicate codeword '" + cw + "'");
    if (trie_[node].child[0] != kNoNode || trie_[node].child[1] != kNoNode) {
      throw DomainError("codewords are not prefix-free: '" + cw + "' is a prefix of another");
    }
    trie_[node].phrase = i;
  }
}

std::size_t PhraseCodebook::index_of(const Word& phrase) const {
  auto it = index_.find(phrase);
  return it == index_.end() ? npos : it->second;
}

double PhraseCodebook::kraft_sum() const {
  CompensatedSum s;
  for (const std::string& cw : codewords_) s += std::ldexp(1.0, -static_cast<int>(cw.size()));
  return s.value();
}

double PhraseCodebook::expected_length(const SourceModel& source) const {
  CompensatedSum s;
  for (std::size_t i = 0; i < phrases_.size(); ++i) {
    s += source.word_prob(phrases_[i]) * static_cast<double>(codewords_[i].size());
  }
  return s.value();
}

std::size_t PhraseCodebook::max_codeword_length() const {
  std::size_t m = 0;
  for (const std::string& cw : codewords_) m = std::max(m, cw.size());
  return m;
}

// ---------------------------------------------------------------------------
// Tunstall

FiniteDictionary tunstall_build(const SourceModel& source, std::size_t target_size) {
  if (!source.alphabet().is_finite()) {
    throw UnsupportedOperation("Tunstall construction needs a finite alphabet");
  }
  const std::size_t k = *source.alphabet().size();
  if (k < 2) throw DomainError("Tunstall construction needs at least two symbols");
  if (target_size < k) {
    throw DomainError("target size " + std::to_string(target_size) +
                      " is smaller than the alphabet size " + std::to_string(k));
  }
  struct Entry {
    double p;
    Word w;
  };
  // Most probable first; equal probabilities in canonical order.
  auto later = [](const Entry& a, const Entry& b) {
    if (a.p != b.p) return a.p < b.p;
    return a.w > b.w;
  };
  std::priority_queue<Entry, std::vector<Entry>, decltype(later)> heap(later);
  for (Symbol s = 0; s < k; ++s) heap.push({source.prob(s), Word{s}});
  std::size_t size = k;
  while (size + (k - 1) <= target_size) {
    Entry top = heap.top();
    heap.pop();
    for (Symbol s = 0; s < k; ++s) heap.push({top.p * source.prob(s), top.w.append(s)});
    size += k - 1;
  }
  std::vector<Word> words;
  words.reserve(heap.size());
  while (!heap.empty()) {
    words.push_back(heap.top().w);
    heap.pop();
  }
  return FiniteDictionary(source.alphabet(), std::move(words));
}

// ---------------------------------------------------------------------------
// Huffman

namespace {

std::vector<std::string> canonical_codewords(const std::vector<Word>& phrases,
                                             const std::vector<std::size_t>& lengths) {
  std::vector<std::size_t> order(phrases.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (lengths[a] != lengths[b]) return lengths[a] < lengths[b];
    return phrases[a] < phrases[b];
  });
  std::vector<std::string> out(phrases.size());
  std::string code;
  for (std::size_t idx : order) {
    if (!code.empty()) {
      // Binary increment.
      std::size_t j = code.size();
      while (j > 0 && code[j - 1] == '1') code[--j] = '0';
      if (j == 0) throw std::logic_error("code lengths violate the Kraft inequality");
      code[j - 1] = '1';
    }
    code.resize(lengths[idx], '0');
    out[idx] = code;
  }
  return out;
}

}  // namespace

PhraseCodebook huffman_build(std::vector<std::pair<Word, double>> phrases) {
  if (phrases.empty()) throw DomainError("Huffman construction needs at least one phrase");
  CompensatedSum total;
  for (const auto& [w, p] : phrases) {
    if (!(p > 0.0)) throw DomainError("phrase " + w.to_string() + " has non-positive probability");
    total += p;
  }
  if (std::fabs(total.value() - 1.0) > 1e-9) {
    throw DomainError("phrase probabilities sum to " + std::to_string(total.value()) +
                      ", not 1");
  }
  std::sort(phrases.begin(), phrases.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second < b.second;
    return a.first < b.first;
  });
  const std::size_t n = phrases.size();
  std::vector<Word> words;
  words.reserve(n);
  for (const auto& pw : phrases) words.push_back(pw.first);
  if (n == 1) return PhraseCodebook(std::move(words), {"0"}, "huffman");

  // Nodes 0..n-1 are leaves; internal nodes follow in creation order.
  std::vector<double> weight(n);
  std::vector<std::size_t> parent(2 * n - 1, 0);
  for (std::size_t i = 0; i < n; ++i) weight[i] = phrases[i].second;
  std::size_t leaf = 0;
  std::deque<std::size_t> internal;
  auto pop_min = [&]() {
    const bool take_leaf =
        leaf < n && (internal.empty() || weight[leaf] <= weight[internal.front()]);
    if (take_leaf) return leaf++;
    const std::size_t id = internal.front();
    internal.pop_front();
    return id;
  };
  for (std::size_t made = 0; made + 1 < n; ++made) {
    const std::size_t a = pop_min();
    const std::size_t b = pop_min();
    const std::size_t id = weight.size();
    weight.push_back(weight[a] + weight[b]);
    parent[a] = id;
    parent[b] = id;
    internal.push_back(id);
  }
  const std::size_t root = weight.size() - 1;
  std::vector<std::size_t> depth(weight.size(), 0);
  for (std::size_t id = root; id-- > 0;) depth[id] = depth[parent[id]] + 1;
  std::vector<std::size_t> lengths(depth.begin(), depth.begin() + static_cast<std::ptrdiff_t>(n));

  auto codewords = canonical_codewords(words, lengths);
  // Present phrases in canonical order.
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return words[a] < words[b]; });
  std::vector<Word> sorted_words;
  std::vector<std::string> sorted_codes;
  for (std::size_t i : order) {
    sorted_words.push_back(std::move(words[i]));
    sorted_codes.push_back(std::move(codewords[i]));
  }
  return PhraseCodebook(std::move(sorted_words), std::move(sorted_codes), "huffman");
}

PhraseCodebook huffman_build(const FiniteDictionary& d, const SourceModel& source) {
  require_compatible(d, source);
  std::vector<std::pair<Word, double>> phrases;
  for (const Word& w : d.words()) phrases.emplace_back(w, source.word_prob(w));
  return huffman_build(std::move(phrases));
}

PhraseCodebook fixed_length_codebook(const FiniteDictionary& d) {
  const std::vector<Word> words = d.words();
  const std::size_t n = words.size();
  const unsigned bits = n <= 2 ? 1u : static_cast<unsigned>(std::bit_width(n - 1));
  std::vector<std::string> codes;
  codes.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::string c(bits, '0');
    for (unsigned b = 0; b < bits; ++b) {
      if ((i >> (bits - 1 - b)) & 1u) c[b] = '1';
    }
    codes.push_back(std::move(c));
  }
  return PhraseCodebook(words, std::move(codes), "fixed");
}

// ---------------------------------------------------------------------------
// Stream coding

unsigned remainder_symbol_width(const Alphabet& alphabet) {
  if (!alphabet.is_finite()) throw UnsupportedOperation("stream coding needs a finite alphabet");
  const std::uint64_t k = *alphabet.size();
  return k <= 1 ? 0u : static_cast<unsigned>(std::bit_width(k - 1));
}

namespace {

void require_codebook_covers(const FiniteDictionary& d, const PhraseCodebook& cb) {
  if (!is_complete(d)) throw PreconditionError("stream coding needs a complete dictionary");
  for (const Word& w : d.words()) {
    if (cb.index_of(w) == PhraseCodebook::npos) {
      throw PreconditionError("codebook has no codeword for phrase " + w.to_string());
    }
  }
}

}  // namespace

std::vector<std::uint8_t> encode(const FiniteDictionary& d, const PhraseCodebook& codebook,
                                 std::span<const Symbol> stream) {
  require_codebook_covers(d, codebook);
  const ParseResult parsed = parse(d, stream);
  const unsigned width = remainder_symbol_width(d.alphabet());
  BitWriter out;
  out.put_bits(kStreamMagic, 8);
  out.put_varint(parsed.phrases.size());
  for (const Word& phrase : parsed.phrases) {
    for (char c : codebook.codewords()[codebook.index_of(phrase)]) out.put(c == '1');
  }
  out.put_varint(parsed.remainder.size());
  for (Symbol s : parsed.remainder) out.put_bits(s, width);
  return std::move(out).finish();
}

std::vector<Symbol> decode(const FiniteDictionary& d, const PhraseCodebook& codebook,
                           std::span<const std::uint8_t> bytes) {
  require_codebook_covers(d, codebook);
  const unsigned width = remainder_symbol_width(d.alphabet());
  BitReader in(bytes);
  if (in.get_bits(8) != kStreamMagic) throw CorruptInput("bad magic byte", 0);

  const std::size_t count_at = in.position();
  const std::uint64_t count = in.get_varint();
  // Every codeword takes at least one bit.
  if (count > in.remaining()) {
    throw CorruptInput("phrase count " + std::to_string(count) + " exceeds the stream size",
                       count_at);
  }
  std::vector<Symbol> out;
  for (std::uint64_t i = 0; i < count; ++i) {
    const std::size_t start = in.position();
    std::uint32_t node = 0;
    while (codebook.leaf_phrase(node) == PhraseCodebook::npos) {
      const std::size_t at = in.position();
      node = codebook.next(node, in.get());
      if (node == PhraseCodebook::kNoNode) throw CorruptInput("invalid codeword", at);
    }
    const Word& phrase = codebook.phrases()[codebook.leaf_phrase(node)];
    if (!d.contains(phrase)) {
      throw CorruptInput("codeword maps to phrase " + phrase.to_string() +
                         " outside the dictionary", start);
    }
    out.insert(out.end(), phrase.begin(), phrase.end());
  }

  const std::size_t rem_at = in.position();
  const std::uint64_t rem_len = in.get_varint();
  const std::size_t max_len = d.max_word_length().value_or(0);
  if (rem_len >= std::max<std::size_t>(max_len, 1) ||
      (width > 0 && rem_len > in.remaining() / width)) {
    throw CorruptInput("invalid remainder length " + std::to_string(rem_len), rem_at);
  }
  std::vector<Symbol> rem;
  for (std::uint64_t i = 0; i < rem_len; ++i) {
    const std::size_t at = in.position();
    const auto s = static_cast<Symbol>(in.get_bits(width));
    if (!d.alphabet().contains(s)) throw CorruptInput("remainder symbol out of range", at);
    rem.push_back(s);
  }
  if (!rem.empty() && d.classify(rem) != NodeState::open) {
    throw CorruptInput("remainder is not an incomplete phrase", rem_at);
  }
  out.insert(out.end(), rem.begin(), rem.end());

  if (in.remaining() >= 8) throw CorruptInput("dangling bytes after stream end", in.position());
  const std::size_t pad_at = in.position();
  if (in.get_bits(static_cast<unsigned>(in.remaining())) != 0) {
    throw CorruptInput("non-zero padding", pad_at);
  }
  return out;
}

}  // namespace vv
