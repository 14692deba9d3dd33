// Copyright 2026 The vvcode Authors
// Licensed under the Apache License, Version 2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "vvcode/dictionary.hpp"
#include "vvcode/measures.hpp"

namespace vv {

struct SimOptions {
  std::uint64_t step_cap = 1'000'000;  // symbols per phrase
  unsigned threads = 0;                // 0: hardware, capped by VVCODE_THREADS
  bool require_asc = true;
  // Phrases per independent RNG stream. Part of the reproducibility
  // contract: results depend on it, never on the thread count.
  std::uint64_t chunk_phrases = 1u << 16;
  MeasureOptions theory{};
  double asc_tol = 1e-9;
};

struct PhraseStat {
  Word word;
  std::uint64_t count = 0;
  double prob = 0.0;
  double z = 0.0;  // (count - nP) / sqrt(nP(1-P))
};

struct SimReport {
  std::uint64_t seed = 0;
  std::uint64_t n_phrases = 0;
  std::uint64_t total_symbols = 0;
  double empirical_lbar = 0.0;  // total_symbols / n_phrases
  double lbar_stderr = 0.0;     // sample sd of phrase lengths / sqrt(n)
  double empirical_entropy = 0.0;  // plug-in, bits per phrase
  double theory_lbar = 0.0;
  double theory_hd = 0.0;
  double z_lbar = 0.0;
  double entropy_deviation = 0.0;  // empirical - theory
  std::size_t distinct_phrases = 0;
  std::vector<PhraseStat> top_phrases;  // 5 most frequent
};

struct PhraseHistogram {
  std::uint64_t seed = 0;
  std::uint64_t n_phrases = 0;
  std::vector<PhraseStat> entries;  // canonical order, observed phrases
  double chi_square = 0.0;
  std::size_t dof = 0;
  double p_value = 1.0;
};

/// Phrase-by-phrase Monte Carlo parse. Phrase chunk i draws from
/// Rng::for_stream(seed, i); chunks are merged in index order, so the
/// result is independent of the thread count.
SimReport simulate(const Dictionary& d, const SourceModel& source,
                   std::uint64_t n_phrases, std::uint64_t seed,
                   const SimOptions& options = {});

/// Observed phrase counts plus a chi-square goodness-of-fit test: phrases
/// with expected count >= 5 get their own cell, everything else is pooled.
PhraseHistogram phrase_histogram(const Dictionary& d, const SourceModel& source,
                                 std::uint64_t n_phrases, std::uint64_t seed,
                                 const SimOptions& options = {});

/// Thread count actually used for a request (0 = auto), honouring the
/// VVCODE_THREADS cap.
unsigned resolve_threads(unsigned requested);

}  // namespace vv
