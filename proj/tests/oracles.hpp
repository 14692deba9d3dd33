// Copyright 2026 The vvcode Authors
// Licensed under the Apache License, Version 2.0

// Independent reference computations for the tests. Nothing here uses the
// library's tries, explorer or compensated sums: everything is plain set
// filtering and naive summation over explicitly enumerated strings.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <set>
#include <vector>

#include "vvcode/word.hpp"

namespace oracle {

using Str = std::vector<vv::Symbol>;
using StrSet = std::set<Str>;

inline StrSet to_set(const std::vector<vv::Word>& words) {
  StrSet s;
  for (const auto& w : words) s.insert(Str(w.begin(), w.end()));
  return s;
}

inline std::vector<vv::Word> to_words(const StrSet& s) {
  std::vector<vv::Word> out;
  for (const auto& x : s) out.emplace_back(x);
  std::sort(out.begin(), out.end());
  return out;
}

// Every string over {0..k-1} of length exactly n.
inline std::vector<Str> strings_of_length(unsigned k, std::size_t n) {
  std::vector<Str> out{Str{}};
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<Str> next;
    for (const auto& s : out) {
      for (unsigned a = 0; a < k; ++a) {
        Str t = s;
        t.push_back(a);
        next.push_back(std::move(t));
      }
    }
    out = std::move(next);
  }
  return out;
}

inline bool has_prefix_in(const Str& s, const StrSet& d, bool strict) {
  const std::size_t limit = strict ? s.size() : s.size() + 1;
  for (std::size_t len = 0; len < limit; ++len) {
    if (d.count(Str(s.begin(), s.begin() + static_cast<std::ptrdiff_t>(len)))) return true;
  }
  return false;
}

// Quadratic pairwise check.
inline bool proper(const StrSet& d) {
  for (const auto& u : d) {
    for (const auto& v : d) {
      if (u.size() < v.size() && std::equal(u.begin(), u.end(), v.begin())) return false;
    }
  }
  return true;
}

// Complete over {0..k-1}: every string of length max|w| has a prefix in d.
inline bool complete(const StrSet& d, unsigned k) {
  std::size_t L = 0;
  for (const auto& w : d) L = std::max(L, w.size());
  for (const auto& s : strings_of_length(k, L)) {
    if (!has_prefix_in(s, d, false)) return false;
  }
  return true;
}

struct Truncation {
  StrSet t_n, d_n_perp, d_n;
};

inline Truncation truncate(const StrSet& d, unsigned k, std::size_t n) {
  Truncation t;
  for (const auto& s : strings_of_length(k, n)) {
    if (!has_prefix_in(s, d, false)) t.t_n.insert(s);
  }
  for (const auto& w : d) {
    if (w.size() < n) t.d_n.insert(w);
    if (w.size() == n) t.d_n_perp.insert(w);
  }
  t.d_n_perp.insert(t.t_n.begin(), t.t_n.end());
  t.d_n.insert(t.d_n_perp.begin(), t.d_n_perp.end());
  return t;
}

inline double prob(const Str& w, const std::vector<double>& p) {
  double x = 1.0;
  for (auto s : w) x *= p[s];
  return x;
}

inline double entropy(const StrSet& d, const std::vector<double>& p) {
  double h = 0.0;
  for (const auto& w : d) {
    const double q = prob(w, p);
    h -= q * std::log2(q);
  }
  return h;
}

inline double avg_length(const StrSet& d, const std::vector<double>& p) {
  double l = 0.0;
  for (const auto& w : d) l += prob(w, p) * static_cast<double>(w.size());
  return l;
}

inline double source_entropy(const std::vector<double>& p) {
  double h = 0.0;
  for (double q : p) h -= q * std::log2(q);
  return h;
}

// Random complete dictionary: repeatedly extend a uniformly chosen word
// shorter than max_depth.
inline StrSet random_complete(std::mt19937_64& rng, unsigned k, std::size_t max_depth,
                              std::size_t extensions) {
  StrSet d;
  for (unsigned a = 0; a < k; ++a) d.insert(Str{a});
  for (std::size_t i = 0; i < extensions; ++i) {
    std::vector<Str> candidates;
    for (const auto& w : d) {
      if (w.size() < max_depth) candidates.push_back(w);
    }
    if (candidates.empty()) break;
    const Str pick = candidates[rng() % candidates.size()];
    d.erase(pick);
    for (unsigned a = 0; a < k; ++a) {
      Str c = pick;
      c.push_back(a);
      d.insert(std::move(c));
    }
  }
  return d;
}

// Proper but usually incomplete: a random complete dictionary with some
// words dropped (at least one kept).
inline StrSet random_proper(std::mt19937_64& rng, unsigned k, std::size_t max_depth) {
  StrSet full = random_complete(rng, k, max_depth, 1 + rng() % 12);
  StrSet d;
  for (const auto& w : full) {
    if (rng() % 3 != 0) d.insert(w);
  }
  if (d.empty()) d.insert(*full.begin());
  return d;
}

inline std::vector<double> random_probs(std::mt19937_64& rng, unsigned k) {
  std::uniform_real_distribution<double> u(0.05, 1.0);
  std::vector<double> p(k);
  double total = 0.0;
  for (auto& x : p) total += (x = u(rng));
  for (auto& x : p) x /= total;
  return p;
}

// Binary run-length family {1^j 0}: direct series to j = terms - 1.
struct Series {
  double mass = 0.0, length = 0.0, entropy = 0.0;
};

inline Series run_length_series(double p0, std::size_t terms) {
  Series s;
  const double q = 1.0 - p0;
  for (std::size_t j = 0; j < terms; ++j) {
    const double pw = std::pow(q, static_cast<double>(j)) * p0;
    s.mass += pw;
    s.length += pw * static_cast<double>(j + 1);
    if (pw > 0) s.entropy -= pw * std::log2(pw);
  }
  return s;
}

inline double geometric_entropy_series(double p, std::size_t terms) {
  double h = 0.0;
  for (std::size_t i = 0; i < terms; ++i) {
    const double q = p * std::pow(1.0 - p, static_cast<double>(i));
    if (q > 0) h -= q * std::log2(q);
  }
  return h;
}

}  // namespace oracle
