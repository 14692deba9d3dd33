// Copyright 2026 The vvcode Authors
// Licensed under the Apache License, Version 2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "../oracles.hpp"
#include "vvcode/errors.hpp"
#include "vvcode/simulation.hpp"

using namespace vv;

namespace {

const Alphabet kBin = Alphabet::finite(2);
const SourceModel kFair = SourceModel::finite({0.5, 0.5});
const SourceModel kBiased = SourceModel::finite({0.9, 0.1});

FiniteDictionary d3() {
  return FiniteDictionary(kBin, {Word{0}, Word{1, 0}, Word{1, 1}});
}

SimOptions threads(unsigned t) {
  SimOptions o;
  o.threads = t;
  return o;
}

}  // namespace

TEST_CASE("average phrase length of a dyadic dictionary") {
  const SimReport r = simulate(d3(), kFair, 1'000'000, 42);
  CHECK(r.n_phrases == 1'000'000);
  CHECK(r.theory_lbar == doctest::Approx(1.5));
  CHECK(r.theory_hd == doctest::Approx(1.5));
  CHECK(std::abs(r.empirical_lbar - 1.5) <= 3 * r.lbar_stderr);
  CHECK(std::abs(r.z_lbar) <= 3.0);
  CHECK(r.distinct_phrases == 3);
  // Phrase lengths are 1 or 2 with probability 1/2 each: sd = 1/2.
  CHECK(r.lbar_stderr == doctest::Approx(0.5 / 1000.0).epsilon(0.01));
}

TEST_CASE("run-length dictionary under a fair source") {
  const RunLengthDictionary d;
  const SimReport r = simulate(d, kFair, 1'000'000, 7);
  CHECK(std::abs(r.empirical_lbar - 2.0) < 0.01);
  CHECK(std::abs(r.empirical_entropy - 2.0) < 0.01);
  CHECK(r.theory_lbar == doctest::Approx(2.0).epsilon(1e-9));
  CHECK(r.theory_hd == doctest::Approx(2.0).epsilon(1e-9));
}

TEST_CASE("alphabet dictionary phrases have length one") {
  const SimReport r = simulate(*make_alphabet_dictionary(kBin), kFair, 100, 1);
  CHECK(r.empirical_lbar == 1.0);
  CHECK(r.lbar_stderr == 0.0);
  CHECK(r.total_symbols == 100);
  CHECK(r.z_lbar == 0.0);
}

TEST_CASE("phrase frequencies follow word probabilities") {
  const RunLengthDictionary d;
  const SimReport r = simulate(d, kBiased, 1'000'000, 11);
  REQUIRE(!r.top_phrases.empty());
  const PhraseStat& top = r.top_phrases.front();
  CHECK(top.word == Word{0});
  CHECK(top.prob == doctest::Approx(0.9));
  const double sigma = std::sqrt(1e6 * 0.9 * 0.1);
  CHECK(std::abs(static_cast<double>(top.count) - 9e5) <= 3 * sigma);
  CHECK(top.z == doctest::Approx((static_cast<double>(top.count) - 9e5) / sigma));
  for (std::size_t i = 1; i < r.top_phrases.size(); ++i) {
    CHECK(r.top_phrases[i - 1].count >= r.top_phrases[i].count);
  }
}

TEST_CASE("histogram goodness of fit") {
  const PhraseHistogram h = phrase_histogram(d3(), kFair, 1'000'000, 42);
  CHECK(h.entries.size() == 3);
  CHECK(h.dof == 2);
  CHECK(h.p_value > 0.001);
  std::uint64_t total = 0;
  for (const auto& e : h.entries) total += e.count;
  CHECK(total == h.n_phrases);

  // Chi-square computed by hand from the reported counts.
  double chi = 0.0;
  for (const auto& e : h.entries) {
    const double expected = 1e6 * e.prob;
    chi += (static_cast<double>(e.count) - expected) * (static_cast<double>(e.count) - expected) /
           expected;
  }
  CHECK(h.chi_square == doctest::Approx(chi).epsilon(1e-12));

  const PhraseHistogram rl = phrase_histogram(RunLengthDictionary{}, kFair, 200'000, 3);
  CHECK(rl.p_value > 0.001);
}

TEST_CASE("biased source over the dyadic dictionary") {
  const FiniteDictionary d = d3();
  const SimReport biased = simulate(d, kBiased, 100'000, 5);
  CHECK(std::abs(biased.empirical_lbar - 1.1) < 0.01);
  const PhraseHistogram h = phrase_histogram(d, kBiased, 100'000, 5);
  CHECK(h.p_value > 0.001);
}

TEST_CASE("results do not depend on the thread count") {
  SimOptions small = threads(1);
  small.chunk_phrases = 1000;
  const SimReport base = simulate(RunLengthDictionary{}, kBiased, 50'000, 99, small);
  for (unsigned t : {2u, 4u, 8u}) {
    SimOptions o = small;
    o.threads = t;
    const SimReport r = simulate(RunLengthDictionary{}, kBiased, 50'000, 99, o);
    CHECK(r.total_symbols == base.total_symbols);
    CHECK(r.empirical_entropy == base.empirical_entropy);
    CHECK(r.lbar_stderr == base.lbar_stderr);
    CHECK(r.distinct_phrases == base.distinct_phrases);
    const PhraseHistogram a = phrase_histogram(d3(), kFair, 10'000, 3, o);
    const PhraseHistogram b = phrase_histogram(d3(), kFair, 10'000, 3, small);
    CHECK(a.chi_square == b.chi_square);
  }
  // Different seeds give different streams.
  CHECK(simulate(RunLengthDictionary{}, kBiased, 50'000, 100, small).total_symbols !=
        base.total_symbols);
}

TEST_CASE("accounting identities") {
  std::mt19937_64 rng(61);
  for (int t = 0; t < 20; ++t) {
    const unsigned k = 2 + rng() % 3;
    const auto p = oracle::random_probs(rng, k);
    const FiniteDictionary d(Alphabet::finite(k),
                             oracle::to_words(oracle::random_complete(rng, k, 5, rng() % 10)));
    const std::uint64_t n = 1 + rng() % 5000;
    const SimReport r = simulate(d, SourceModel::finite(p), n, rng(), threads(1));
    CHECK(r.n_phrases == n);
    CHECK(r.empirical_lbar == doctest::Approx(static_cast<double>(r.total_symbols) /
                                              static_cast<double>(n)));
    CHECK(r.total_symbols >= n);
    CHECK(r.distinct_phrases <= d.size());
    CHECK(r.theory_hd ==
          doctest::Approx(oracle::entropy(oracle::to_set(d.words()), p)).epsilon(1e-12));
    CHECK(r.entropy_deviation == doctest::Approx(r.empirical_entropy - r.theory_hd));
    CHECK(r.empirical_entropy <= std::log2(static_cast<double>(r.distinct_phrases)) + 1e-12);
  }
}

TEST_CASE("simulation preconditions and failures") {
  CHECK_THROWS_AS(simulate(d3(), kFair, 0, 1), PreconditionError);
  const FiniteDictionary incomplete(kBin, {Word{0}});
  CHECK_THROWS_AS(simulate(incomplete, kFair, 100, 1), PreconditionError);

  SimOptions loose;
  loose.require_asc = false;
  CHECK_THROWS_AS(simulate(incomplete, kFair, 100, 1, loose), SimulationError);

  // Phrases starting with 1 stay open forever.
  const CustomDictionary endless("endless", kBin, [](std::span<const Symbol> w) {
    if (w.size() == 1 && w[0] == 0) return NodeState::member;
    if (!w.empty() && w[0] == 0) return NodeState::covered;
    return NodeState::open;
  });
  loose.step_cap = 100;
  CHECK_THROWS_AS(simulate(endless, kFair, 100, 1, loose), SimulationError);
  CHECK_THROWS_AS(simulate(d3(), SourceModel::finite({0.2, 0.3, 0.5}), 10, 1), DomainError);
}

TEST_CASE("thread resolution") {
  CHECK(resolve_threads(3) >= 1);
  CHECK(resolve_threads(0) >= 1);
}
