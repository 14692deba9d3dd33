// Copyright 2026 The vvcode Authors
// Licensed under the Apache License, Version 2.0

#include "vvcode/simulation.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <map>
#include <mutex>
#include <thread>
#include <unordered_map>

#include <boost/math/special_functions/gamma.hpp>

#include "vvcode/errors.hpp"
#include "vvcode/rng.hpp"

namespace vv {

unsigned resolve_threads(unsigned requested) {
  unsigned n = requested;
  if (n == 0) n = std::max(1u, std::thread::hardware_concurrency());
  if (const char* cap = std::getenv("VVCODE_THREADS")) {
    char* end = nullptr;
    const unsigned long v = std::strtoul(cap, &end, 10);
    if (end != cap && *end == '\0' && v > 0) n = std::min<unsigned long>(n, v);
  }
  return std::max(1u, n);
}

namespace {

struct ChunkResult {
  std::uint64_t symbols = 0;
  std::uint64_t sum_sq = 0;
  std::unordered_map<Word, std::uint64_t, WordHash> counts;
};

std::string describe_prefix(const std::vector<Symbol>& phrase) {
  constexpr std::size_t kShown = 32;
  std::string s;
  for (std::size_t i = 0; i < std::min(phrase.size(), kShown); ++i) {
    if (i > 0) s += '.';
    s += std::to_string(phrase[i]);
  }
  if (phrase.size() > kShown) s += "...";
  return s;
}

ChunkResult run_chunk(const Dictionary& d, const SourceModel& source, std::uint64_t seed,
                      std::uint64_t chunk, std::uint64_t phrases, std::uint64_t step_cap) {
  ChunkResult r;
  Rng rng = Rng::for_stream(seed, chunk);
  PhraseMatcher matcher(d);
  for (std::uint64_t i = 0; i < phrases; ++i) {
    matcher.reset();
    std::uint64_t len = 0;
    for (;;) {
      if (len >= step_cap) {
        throw SimulationError("phrase did not complete within " + std::to_string(step_cap) +
                              " symbols; partial prefix " + describe_prefix(matcher.phrase()));
      }
      ++len;
      if (matcher.push(source.sample(rng)) == NodeState::member) break;
      if (matcher.dead()) {
        throw SimulationError("phrase can never complete; partial prefix " +
                              describe_prefix(matcher.phrase()));
      }
    }
    r.symbols += len;
    r.sum_sq += len * len;
    ++r.counts[Word(std::span<const Symbol>(matcher.phrase()))];
  }
  return r;
}

struct Sampled {
  std::uint64_t n = 0;
  std::uint64_t symbols = 0;
  long double sum_sq = 0;
  std::map<Word, std::uint64_t> counts;  // canonical order
};

Sampled sample_phrases(const Dictionary& d, const SourceModel& source, std::uint64_t n,
                       std::uint64_t seed, const SimOptions& options) {
  if (n < 1) throw PreconditionError("n_phrases must be at least 1");
  if (options.chunk_phrases < 1) throw DomainError("chunk_phrases must be at least 1");
  require_compatible(d, source);
  if (options.require_asc) {
    AscOptions ao;
    ao.width = options.theory.width;
    const AscVerdict v = is_asc(d, source, options.theory.depth, options.asc_tol, ao);
    if (v.status != AscStatus::certified_asc) {
      throw PreconditionError("simulation needs a dictionary certified almost surely complete; "
                              "uncovered mass " + std::to_string(v.residual_mass) +
                              " at depth " + std::to_string(v.depth_used));
    }
  }
  const std::uint64_t chunks = (n + options.chunk_phrases - 1) / options.chunk_phrases;
  std::vector<ChunkResult> results(chunks);
  std::atomic<std::uint64_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (;;) {
      const std::uint64_t c = next.fetch_add(1);
      if (c >= chunks) return;
      const std::uint64_t count = std::min(options.chunk_phrases, n - c * options.chunk_phrases);
      try {
        results[c] = run_chunk(d, source, seed, c, count, options.step_cap);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next.store(chunks);
        return;
      }
    }
  };
  const auto threads = static_cast<std::uint64_t>(resolve_threads(options.threads));
  {
    std::vector<std::jthread> pool;
    for (std::uint64_t t = 1; t < std::min(threads, chunks); ++t) pool.emplace_back(worker);
    worker();
  }
  if (failure) std::rethrow_exception(failure);

  Sampled s;
  s.n = n;
  for (ChunkResult& r : results) {
    s.symbols += r.symbols;
    s.sum_sq += static_cast<long double>(r.sum_sq);
    for (auto& [w, c] : r.counts) s.counts[w] += c;
  }
  return s;
}

double binomial_z(std::uint64_t count, std::uint64_t n, double p) {
  const double nd = static_cast<double>(n);
  const double var = nd * p * (1.0 - p);
  if (!(var > 0.0)) return 0.0;
  return (static_cast<double>(count) - nd * p) / std::sqrt(var);
}

}  // namespace

SimReport simulate(const Dictionary& d, const SourceModel& source, std::uint64_t n_phrases,
                   std::uint64_t seed, const SimOptions& options) {
  const Sampled s = sample_phrases(d, source, n_phrases, seed, options);
  const DictionaryMeasures theory = measure(d, source, options.theory);

  SimReport r;
  r.seed = seed;
  r.n_phrases = s.n;
  r.total_symbols = s.symbols;
  const auto n = static_cast<long double>(s.n);
  const long double mean = static_cast<long double>(s.symbols) / n;
  r.empirical_lbar = static_cast<double>(mean);
  if (s.n > 1) {
    const long double var = std::max<long double>(0, (s.sum_sq - n * mean * mean) / (n - 1));
    r.lbar_stderr = static_cast<double>(std::sqrt(var / n));
  }
  r.theory_lbar = theory.avg_length.mid();
  r.theory_hd = theory.entropy.mid();
  const double dev = r.empirical_lbar - r.theory_lbar;
  if (r.lbar_stderr > 0.0) {
    r.z_lbar = dev / r.lbar_stderr;
  } else {
    // Zero sample variance: every phrase had the same length.
    constexpr double kResolution = 1e-9;
    r.z_lbar = std::fabs(dev) <= kResolution ? 0.0 : dev / kResolution;
  }

  CompensatedSum h;
  for (const auto& [w, c] : s.counts) {
    h += surprisal_term(static_cast<double>(c) / static_cast<double>(s.n));
  }
  r.empirical_entropy = h.value();
  r.entropy_deviation = r.empirical_entropy - r.theory_hd;
  r.distinct_phrases = s.counts.size();

  std::vector<std::pair<Word, std::uint64_t>> ranked(s.counts.begin(), s.counts.end());
  std::stable_sort(ranked.begin(), ranked.end(),
                   [](const auto& a, const auto& b) { return a.second > b.second; });
  for (std::size_t i = 0; i < std::min<std::size_t>(5, ranked.size()); ++i) {
    PhraseStat st;
    st.word = ranked[i].first;
    st.count = ranked[i].second;
    st.prob = source.word_prob(st.word);
    st.z = binomial_z(st.count, s.n, st.prob);
    r.top_phrases.push_back(std::move(st));
  }
  return r;
}

PhraseHistogram phrase_histogram(const Dictionary& d, const SourceModel& source,
                                 std::uint64_t n_phrases, std::uint64_t seed,
                                 const SimOptions& options) {
  const Sampled s = sample_phrases(d, source, n_phrases, seed, options);
  PhraseHistogram h;
  h.seed = seed;
  h.n_phrases = s.n;
  const double nd = static_cast<double>(s.n);

  for (const auto& [w, c] : s.counts) {
    PhraseStat st;
    st.word = w;
    st.count = c;
    st.prob = source.word_prob(w);
    st.z = binomial_z(c, s.n, st.prob);
    h.entries.push_back(std::move(st));
  }

  // Cells: every phrase expected at least 5 times gets its own; the rest,
  // including phrases never observed, is pooled.
  std::map<Word, double> big;
  for (const PhraseStat& st : h.entries) {
    if (nd * st.prob >= 5.0) big.emplace(st.word, st.prob);
  }
  if (const auto* fd = dynamic_cast<const FiniteDictionary*>(&d)) {
    for (const Word& w : fd->words()) {
      const double p = source.word_prob(w);
      if (nd * p >= 5.0) big.emplace(w, p);
    }
  }
  CompensatedSum chi, big_expected;
  std::uint64_t big_observed = 0;
  for (const auto& [w, p] : big) {
    auto it = s.counts.find(w);
    const double obs = it == s.counts.end() ? 0.0 : static_cast<double>(it->second);
    const double exp = nd * p;
    chi += (obs - exp) * (obs - exp) / exp;
    big_expected += exp;
    big_observed += static_cast<std::uint64_t>(obs);
  }
  std::size_t cells = big.size();
  const double pooled_exp = nd - big_expected.value();
  const double pooled_obs = static_cast<double>(s.n - big_observed);
  if (pooled_exp > 1e-9 * nd) {
    chi += (pooled_obs - pooled_exp) * (pooled_obs - pooled_exp) / pooled_exp;
    ++cells;
  }
  h.chi_square = chi.value();
  h.dof = cells > 0 ? cells - 1 : 0;
  h.p_value = h.dof == 0 ? 1.0
                         : boost::math::gamma_q(static_cast<double>(h.dof) / 2.0,
                                                h.chi_square / 2.0);
  return h;
}

}  // namespace vv
