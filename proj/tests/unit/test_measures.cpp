// Copyright 2026 The vvcode Authors
// Licensed under the Apache License, Version 2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "../oracles.hpp"
#include "vvcode/dict_algebra.hpp"
#include "vvcode/errors.hpp"
#include "vvcode/measures.hpp"

using namespace vv;

namespace {

const Alphabet kBin = Alphabet::finite(2);
const SourceModel kFair = SourceModel::finite({0.5, 0.5});
const SourceModel kBiased = SourceModel::finite({0.9, 0.1});

DictionaryPtr d3() {
  return std::make_shared<FiniteDictionary>(kBin,
                                            std::vector<Word>{Word{0}, Word{1, 0}, Word{1, 1}});
}
DictionaryPtr run_length() { return std::make_shared<RunLengthDictionary>(); }

MeasureOptions at(std::size_t depth, std::uint64_t width = 64) {
  MeasureOptions o;
  o.depth = depth;
  o.width = width;
  return o;
}

// Words 0^j 1, described only by a classifier: no closed forms.
DictionaryPtr mirror() {
  return std::make_shared<CustomDictionary>("zero_runs", kBin, [](std::span<const Symbol> w) {
    for (std::size_t i = 0; i < w.size(); ++i) {
      if (w[i] == 1) return i + 1 == w.size() ? NodeState::member : NodeState::covered;
    }
    return NodeState::open;
  });
}

}  // namespace

TEST_CASE("dict_entropy examples") {
  const Interval h = dict_entropy(*d3(), kFair);
  CHECK(h.low == 1.5);
  CHECK(h.high == 1.5);

  const Interval r = dict_entropy(*run_length(), kFair, at(64));
  CHECK(r.contains(2.0, 1e-15));
  CHECK(r.width() < 1e-9);

  const Interval a = dict_entropy(*make_alphabet_dictionary(kBin), kFair);
  CHECK(a.low == 1.0);
  CHECK(a.high == 1.0);
}

TEST_CASE("avg_length examples") {
  const Interval l = avg_length(*d3(), kFair);
  CHECK(l.low == 1.5);
  CHECK(l.high == 1.5);

  const Interval r = avg_length(*run_length(), kBiased, at(64));
  CHECK(r.contains(10.0 / 9.0, 1e-12));
  CHECK(r.width() < 1e-9);

  const auto src = SourceModel::finite({0.2, 0.3, 0.5});
  const Interval a = avg_length(*make_alphabet_dictionary(Alphabet::finite(3)), src);
  CHECK(a.low == 1.0);
  CHECK(a.high == 1.0);
}

TEST_CASE("run_length measures match the series oracle") {
  for (double p0 : {0.5, 0.9, 0.25}) {
    const auto src = SourceModel::finite({p0, 1.0 - p0});
    const auto series = oracle::run_length_series(p0, 300 * 40);
    for (std::size_t depth : {4u, 16u, 64u}) {
      const DictionaryMeasures m = measure(*run_length(), src, at(depth));
      CHECK(m.tail == TailKind::closed_form);
      CHECK(m.entropy.contains(series.entropy, 1e-12));
      CHECK(m.avg_length.contains(series.length, 1e-12));
      CHECK(m.entropy.low <= m.entropy.high);
    }
  }
}

TEST_CASE("check_conservation examples") {
  const MeasureReport a = check_conservation(*d3(), kFair, 1e-12);
  CHECK(a.verdict == Verdict::pass);
  CHECK(a.residual == 0.0);
  CHECK(a.h_d.mid() == 1.5);
  CHECK(a.h_p == 1.0);

  const MeasureReport b = check_conservation(*run_length(), kFair, 1e-9, at(64));
  CHECK(b.verdict == Verdict::pass);
  CHECK(b.h_d.contains(2.0, 1e-9));
  CHECK(b.lbar.contains(2.0, 1e-9));

  const MeasureReport c = check_conservation(*run_length(), kBiased, 1e-9, at(64));
  CHECK(c.verdict == Verdict::pass);
  CHECK(c.residual < 1e-9);
  const auto series = oracle::run_length_series(0.9, 300);
  CHECK(std::fabs(c.h_d.mid() - series.entropy) < 1e-9);
  CHECK(c.h_p == doctest::Approx(0.46899559358928).epsilon(1e-12));
}

TEST_CASE("non-ASC dictionaries are inconclusive, never evaluated") {
  const auto zero = std::make_shared<FiniteDictionary>(kBin, std::vector<Word>{Word{0}});
  const MeasureReport r = check_conservation(*zero, kFair, 1e-9, at(20));
  CHECK(r.verdict == Verdict::inconclusive);
  CHECK(r.asc.status != AscStatus::certified_asc);
  REQUIRE_FALSE(r.notes.empty());
  CHECK(r.notes.front().find("almost surely complete") != std::string::npos);
}

TEST_CASE("families without tails are flagged") {
  const DictionaryMeasures m = measure(*mirror(), kFair, at(30));
  CHECK(m.tail == TailKind::unavailable);
  CHECK_FALSE(m.entropy.bounded());
  CHECK(m.entropy.low > 1.99);
  const MeasureReport r = check_conservation(*mirror(), kFair, 1e-6, at(30));
  CHECK(r.verdict == Verdict::inconclusive);
  CHECK_FALSE(r.notes.empty());

  MeasureOptions o = at(30);
  o.lbar_ceiling = 1.0;
  CHECK(measure(*mirror(), kFair, o).possibly_divergent);
}

TEST_CASE("bounded tails contain the truth") {
  const DictionaryPtr capped = truncated_view(run_length(), 30);
  const auto exact = truncate(*run_length(), 30).d_n;
  const Interval h_true = dict_entropy(*exact, kBiased);
  const Interval l_true = avg_length(*exact, kBiased);
  for (std::size_t depth : {3u, 8u, 20u}) {
    const DictionaryMeasures m = measure(*capped, kBiased, at(depth));
    CHECK(m.tail == TailKind::bounded);
    CHECK(m.entropy.contains(h_true.low, 1e-12));
    CHECK(m.avg_length.contains(l_true.low, 1e-12));
    // Frontier cones contribute at least P(b)|b| and -P(b) log2 P(b).
    CHECK(m.avg_length.low + m.frontier_length_lb <= l_true.low + 1e-12);
    CHECK(m.entropy.low + m.frontier_entropy_lb <= h_true.low + 1e-12);
  }
}

TEST_CASE("intervals shrink and stay nested as depth grows") {
  const auto g = SourceModel::geometric(0.5);
  const std::vector<std::pair<DictionaryPtr, SourceModel>> cases{
      {run_length(), kBiased},
      {truncated_view(run_length(), 40), kBiased},
      {extend(run_length(), Word{1, 0}), kFair},
      {std::make_shared<HeadExtensionDictionary>(Alphabet::countable(), 0), g}};
  for (const auto& [d, s] : cases) {
    Interval prev_h{0, kInf}, prev_l{0, kInf};
    double prev_res = kInf;
    for (std::size_t depth = 1; depth <= 48; depth *= 2) {
      const MeasureReport r = check_conservation(*d, s, 1e-9, at(depth));
      CHECK(r.h_d.low <= r.h_d.high);
      CHECK(r.lbar.low <= r.lbar.high);
      CHECK(r.h_d.low >= prev_h.low - 1e-15);
      CHECK(r.h_d.high <= prev_h.high + 1e-12);
      CHECK(r.lbar.low >= prev_l.low - 1e-15);
      CHECK(r.lbar.high <= prev_l.high + 1e-12);
      CHECK(r.residual <= prev_res + 1e-12);
      prev_h = r.h_d;
      prev_l = r.lbar;
      prev_res = r.residual;
    }
  }
}

TEST_CASE("countable alphabet: head extension and width gaps") {
  const auto g = SourceModel::geometric(0.5);
  const HeadExtensionDictionary he(Alphabet::countable(), 0);
  const MeasureReport r = check_conservation(he, g, 1e-9, at(64, 64));
  CHECK(r.verdict == Verdict::pass);
  CHECK(r.residual < 1e-6);
  CHECK(r.h_d.contains(g.entropy() * (1.0 + g.prob(0)), 1e-9));

  // A small width leaves gaps that the bounds must still cover.
  const auto alpha = make_alphabet_dictionary(Alphabet::countable());
  const DictionaryMeasures m = measure(*alpha, SourceModel::geometric(0.3), at(8, 5));
  CHECK(m.gap_mass > 0.0);
  CHECK(m.entropy.contains(SourceModel::geometric(0.3).entropy(), 1e-12));
  CHECK(m.avg_length.contains(1.0, 1e-12));
  for (Symbol head : {0u, 3u}) {
    const HeadExtensionDictionary h2(Alphabet::countable(), head);
    const auto s = SourceModel::geometric(0.4);
    const DictionaryMeasures w = measure(h2, s, at(8, 4));
    CHECK(w.entropy.contains(s.entropy() * (1.0 + s.prob(head)), 1e-12));
    CHECK(w.avg_length.contains(1.0 + s.prob(head), 1e-12));
  }
}

TEST_CASE("truncation identity examples") {
  const auto rows = check_truncation_identity(d3(), kFair, 1, 1e-12);
  REQUIRE(rows.size() == 1);
  CHECK(rows[0].entropy == 1.0);
  CHECK(rows[0].avg_length == 1.0);
  CHECK(rows[0].pass);

  const auto rl = check_truncation_identity(run_length(), kFair, 12, 1e-12);
  CHECK(rl.size() == 12);
  for (const auto& r : rl) {
    CHECK(r.pass);
    CHECK(r.residual < 1e-12);
  }

  const auto zero = std::make_shared<FiniteDictionary>(kBin, std::vector<Word>{Word{0}});
  const auto z = check_truncation_identity(zero, kFair, 3, 1e-12);
  for (const auto& r : z) CHECK(r.residual < 1e-12);

  const auto g = check_truncation_identity(
      std::make_shared<HeadExtensionDictionary>(Alphabet::countable(), 0),
      SourceModel::geometric(0.5), 3, 1e-9, 32);
  for (const auto& r : g) CHECK(r.pass);
}

TEST_CASE("truncation identity on random proper dictionaries") {
  std::mt19937_64 rng(41);
  for (int t = 0; t < 60; ++t) {
    const unsigned k = 2 + rng() % 2;
    const auto s = oracle::random_proper(rng, k, 6);
    const auto p = oracle::random_probs(rng, k);
    const auto d = std::make_shared<FiniteDictionary>(Alphabet::finite(k), oracle::to_words(s));
    const auto rows = check_truncation_identity(d, SourceModel::finite(p), 8, 1e-9);
    for (const auto& r : rows) {
      const auto o = oracle::truncate(s, k, r.m);
      CHECK(r.entropy == doctest::Approx(oracle::entropy(o.d_n, p)).epsilon(1e-12));
      CHECK(r.avg_length == doctest::Approx(oracle::avg_length(o.d_n, p)).epsilon(1e-12));
      CHECK(r.pass);
    }
  }
}

TEST_CASE("extension identity examples") {
  const auto a = check_extension_identities(d3(), Word{0}, kFair, 1e-12);
  CHECK(a.ok());
  CHECK(a.delta_lbar == doctest::Approx(0.5));
  CHECK(a.delta_entropy == doctest::Approx(0.5));

  const auto b = check_extension_identities(make_alphabet_dictionary(kBin), Word{1}, kFair, 1e-12);
  CHECK(b.ok());
  CHECK(b.delta_lbar == doctest::Approx(0.5));

  const auto c = check_extension_identities(d3(), Word{1, 1}, kBiased, 1e-12);
  CHECK(c.ok());
  CHECK(c.delta_lbar == doctest::Approx(0.01));
  CHECK(c.delta_entropy == doctest::Approx(0.01 * kBiased.entropy()));

  const auto rl = check_extension_identities(run_length(), Word{1, 1, 0}, kBiased, 1e-9);
  CHECK(rl.ok());
  const auto g = SourceModel::geometric(0.5);
  const auto he = check_extension_identities(
      std::make_shared<HeadExtensionDictionary>(Alphabet::countable(), 0), Word{2}, g, 1e-9);
  CHECK(he.ok());
}

TEST_CASE("extension identities telescope along a chain") {
  std::mt19937_64 rng(42);
  for (int t = 0; t < 30; ++t) {
    const auto p = oracle::random_probs(rng, 2);
    const auto src = SourceModel::finite(p);
    DictionaryPtr d = make_alphabet_dictionary(kBin);
    const double l0 = avg_length(*d, src).mid();
    double total = 0.0;
    for (int step = 0; step < 8; ++step) {
      const auto& ws = dynamic_cast<const FiniteDictionary&>(*d).words();
      const Word alpha = ws[rng() % ws.size()];
      total += src.word_prob(alpha);
      d = extend(d, alpha);
    }
    CHECK(std::fabs(avg_length(*d, src).mid() - l0 - total) < 1e-9);
  }
}

TEST_CASE("convergence scan examples") {
  const ScanResult r = convergence_scan(run_length(), kFair, 20);
  CHECK(r.entropy_nondecreasing);
  CHECK(r.length_nondecreasing);
  REQUIRE(r.rows.size() == 20);
  const auto members = oracle::to_set(enumerate_up_to(*run_length(), 24).words);
  for (const ScanRow& row : r.rows) {
    const auto o = oracle::truncate(members, 2, row.m);
    CHECK(row.avg_length.mid() == doctest::Approx(oracle::avg_length(o.d_n, {0.5, 0.5})).epsilon(1e-12));
    CHECK(row.entropy.mid() == doctest::Approx(oracle::entropy(o.d_n, {0.5, 0.5})).epsilon(1e-12));
    CHECK(row.avg_length.mid() ==
          doctest::Approx(2.0 - std::ldexp(1.0, 1 - static_cast<int>(row.m))).epsilon(1e-12));
  }
  CHECK(r.limit_length.contains(2.0, 1e-12));
  CHECK(r.length_gap < 1e-4);

  const ScanResult c = convergence_scan(d3(), kFair, 6);
  for (std::size_t i = 1; i < c.rows.size(); ++i) {
    CHECK(c.rows[i].entropy.mid() == 1.5);
    CHECK(c.rows[i].avg_length.mid() == 1.5);
  }

  const auto g = SourceModel::geometric(0.5);
  const ScanResult h = convergence_scan(
      std::make_shared<HeadExtensionDictionary>(Alphabet::countable(), 0), g, 6, at(64, 64));
  CHECK(h.entropy_nondecreasing);
  CHECK(h.length_nondecreasing);
  CHECK(std::fabs(h.rows.back().entropy.mid() - g.entropy() * (1 + g.prob(0))) < 1e-3);
}

TEST_CASE("monotone sandwich") {
  for (std::size_t m = 1; m <= 12; ++m) {
    const auto dm = truncate(*run_length(), m).d_n;
    const double hm = dict_entropy(*dm, kBiased).mid();
    const double lm = avg_length(*dm, kBiased).mid();
    const DictionaryMeasures full = measure(*run_length(), kBiased, at(m));
    CHECK(full.entropy.low <= hm + 1e-15);
    CHECK(hm <= full.entropy.high + 1e-15);
    CHECK(full.avg_length.low <= lm + 1e-15);
    CHECK(lm <= full.avg_length.high + 1e-15);
  }
}
