// Copyright 2026 The vvcode Authors
// Licensed under the Apache License, Version 2.0

#include "vvcode/measures.hpp"

#include <algorithm>
#include <cmath>

#include "vvcode/dict_algebra.hpp"
#include "vvcode/errors.hpp"
#include "vvcode/explore.hpp"

namespace vv {

std::string to_string(TailKind k) {
  switch (k) {
    case TailKind::none: return "none";
    case TailKind::closed_form: return "closed_form";
    case TailKind::bounded: return "bounded";
    case TailKind::unavailable: return "unavailable";
  }
  return "unknown";
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::pass: return "pass";
    case Verdict::fail: return "fail";
    case Verdict::inconclusive: return "inconclusive";
  }
  return "unknown";
}

namespace {

// Adds the bound for members hidden below width gaps. `reach` is the
// greatest length such members can have.
void add_gap_bounds(const Exploration& ex, const SourceModel& source, std::uint64_t width,
                    std::size_t reach, CompensatedSum& length, CompensatedSum& entropy) {
  if (ex.gaps.empty()) return;
  const auto from = static_cast<Symbol>(width);
  const double t = source.tail_mass(from);
  const double h_t = source.tail_surprisal(from);
  const double h_p = source.entropy();
  for (const WidthGap& g : ex.gaps) {
    const double r =
        reach > g.depth + 1 ? static_cast<double>(reach - g.depth - 1) : 0.0;
    const double pw = g.prefix_prob;
    length += pw * t * (static_cast<double>(g.depth) + 1.0 + r);
    entropy += pw * (t * (-std::log2(pw)) + h_t + t * h_p * r);
  }
}

}  // namespace

DictionaryMeasures measure(const Dictionary& d, const SourceModel& source,
                           const MeasureOptions& options) {
  if (options.depth < 1) throw DomainError("depth must be at least 1");
  ExploreLimits limits;
  limits.depth = options.depth;
  limits.width = options.width;
  limits.max_nodes = options.max_nodes;
  const Exploration ex = explore(d, source, Word{}, limits);

  DictionaryMeasures m;
  m.depth_used = options.depth;
  m.member_count = ex.member_count;
  m.frontier_mass = ex.frontier_mass.value();
  m.void_mass = ex.void_mass.value();
  m.gap_mass = ex.gap_mass.value();
  m.frontier_length_lb = ex.frontier_length.value();
  m.frontier_entropy_lb = ex.frontier_entropy.value();

  const double h_low = ex.member_entropy.value();
  const double l_low = ex.member_length.value();
  m.entropy.low = h_low;
  m.avg_length.low = l_low;

  if (ex.frontier_count == 0 && ex.gaps.empty()) {
    m.tail = TailKind::none;
    m.entropy.high = h_low;
    m.avg_length.high = l_low;
  } else {
    CompensatedSum h_up = ex.member_entropy;
    CompensatedSum l_up = ex.member_length;
    const auto max_len = d.max_word_length();
    if (auto ts = d.tail_sums(options.depth, source)) {
      // Exact for every member longer than the depth, gaps included.
      m.tail = TailKind::closed_form;
      h_up += ts->entropy;
      l_up += ts->length;
      const std::size_t reach = max_len ? std::min(*max_len, options.depth) : options.depth;
      add_gap_bounds(ex, source, options.width, reach, l_up, h_up);
    } else if (max_len) {
      // Each frontier cone holds a proper set of extensions at most r
      // symbols long, whose conditional entropy is at most H(P) r.
      m.tail = TailKind::bounded;
      const double r = *max_len > options.depth
                           ? static_cast<double>(*max_len - options.depth)
                           : 0.0;
      l_up += ex.frontier_mass.value() * static_cast<double>(std::max(*max_len, options.depth));
      h_up += ex.frontier_entropy.value() + ex.frontier_mass.value() * source.entropy() * r;
      add_gap_bounds(ex, source, options.width, *max_len, l_up, h_up);
    } else {
      m.tail = TailKind::unavailable;
    }
    if (m.tail == TailKind::unavailable) {
      m.entropy.high = kInf;
      m.avg_length.high = kInf;
    } else {
      m.entropy.high = std::max(h_low, h_up.value());
      m.avg_length.high = std::max(l_low, l_up.value());
    }
  }
  m.possibly_divergent = ex.frontier_count > 0 && l_low > options.lbar_ceiling;
  return m;
}

Interval dict_entropy(const Dictionary& d, const SourceModel& source,
                      const MeasureOptions& options) {
  return measure(d, source, options).entropy;
}

Interval avg_length(const Dictionary& d, const SourceModel& source,
                    const MeasureOptions& options) {
  return measure(d, source, options).avg_length;
}

namespace {

// Distance between two intervals (0 when they overlap).
double interval_gap(const Interval& a, const Interval& b) {
  if (a.high < b.low) return b.low - a.high;
  if (b.high < a.low) return a.low - b.high;
  return 0.0;
}

}  // namespace

MeasureReport check_conservation(const Dictionary& d, const SourceModel& source,
                                 double tol, const MeasureOptions& options) {
  if (!(tol > 0.0)) throw DomainError("tolerance must be positive");
  MeasureReport r;
  r.depth_used = options.depth;
  r.width_used = d.alphabet().is_finite() ? 0 : options.width;
  AscOptions asc_options;
  asc_options.width = options.width;
  r.asc = is_asc(d, source, options.depth, tol, asc_options);

  const DictionaryMeasures m = measure(d, source, options);
  r.h_d = m.entropy;
  r.lbar = m.avg_length;
  r.h_p = source.entropy();
  r.frontier_mass = m.frontier_mass + m.void_mass + m.gap_mass;
  r.tail = m.tail;
  r.residual = std::fabs(r.h_d.mid() - r.h_p * r.lbar.mid());
  r.slack = r.h_d.width() + r.h_p * r.lbar.width();

  if (r.asc.status != AscStatus::certified_asc) {
    r.verdict = Verdict::inconclusive;
    r.notes.push_back("dictionary is not certified almost surely complete at depth " +
                      std::to_string(options.depth) +
                      "; the identity is only claimed for such dictionaries");
    return r;
  }
  if (m.possibly_divergent) {
    r.verdict = Verdict::inconclusive;
    r.notes.push_back("average length partial sum exceeds the ceiling; possibly divergent");
    return r;
  }
  if (!r.h_d.bounded() || !r.lbar.bounded()) {
    r.verdict = Verdict::inconclusive;
    r.notes.push_back("no tail bound available for this family; upper ends are infinite");
    return r;
  }
  const Interval rhs{r.h_p * r.lbar.low, r.h_p * r.lbar.high};
  if (r.residual <= tol + r.slack) {
    r.verdict = Verdict::pass;
  } else if (interval_gap(r.h_d, rhs) > tol) {
    r.verdict = Verdict::fail;
  } else {
    r.verdict = Verdict::inconclusive;
  }
  return r;
}

std::vector<TruncationRow> check_truncation_identity(const DictionaryPtr& d,
                                                     const SourceModel& source,
                                                     std::size_t m_max, double tol,
                                                     std::uint64_t width) {
  if (!d) throw DomainError("null dictionary");
  require_compatible(*d, source);
  std::vector<TruncationRow> rows;
  const double h_p = source.entropy();
  for (std::size_t m = 1; m <= m_max; ++m) {
    TruncationRow row;
    row.m = m;
    if (d->alphabet().is_finite()) {
      const FrontierSets fs = truncate(*d, m, TruncateBudget{width});
      CompensatedSum h, l;
      for (const Word& w : fs.d_n->words()) {
        const double p = source.word_prob(w);
        h += surprisal_term(p);
        l += p * static_cast<double>(w.size());
      }
      row.entropy = h.value();
      row.avg_length = l.value();
    } else {
      MeasureOptions opts;
      opts.depth = m;
      opts.width = width;
      const DictionaryMeasures dm = measure(*truncated_view(d, m), source, opts);
      row.entropy = dm.entropy.mid();
      row.avg_length = dm.avg_length.mid();
      row.slack = dm.entropy.width() + h_p * dm.avg_length.width();
    }
    row.residual = std::fabs(row.entropy - h_p * row.avg_length);
    row.pass = row.residual <= tol + row.slack;
    rows.push_back(row);
  }
  return rows;
}

ExtensionCheck check_extension_identities(const DictionaryPtr& d, const Word& alpha,
                                          const SourceModel& source, double tol,
                                          const MeasureOptions& options) {
  if (!d) throw DomainError("null dictionary");
  require_compatible(*d, source);
  const DictionaryPtr extended = extend(d, alpha);
  MeasureOptions opts = options;
  // The extended words sit one level deeper than alpha.
  opts.depth = std::max(options.depth, alpha.size() + 1);
  const DictionaryMeasures before = measure(*d, source, opts);
  const DictionaryMeasures after = measure(*extended, source, opts);

  const double p = source.word_prob(alpha);
  ExtensionCheck c;
  c.delta_lbar = after.avg_length.mid() - before.avg_length.mid();
  c.expected_delta_lbar = p;
  c.delta_entropy = after.entropy.mid() - before.entropy.mid();
  c.expected_delta_entropy = p * source.entropy();
  const double l_slack = before.avg_length.width() + after.avg_length.width();
  const double h_slack = before.entropy.width() + after.entropy.width();
  c.lbar_ok = std::fabs(c.delta_lbar - c.expected_delta_lbar) <= tol + l_slack;
  c.entropy_ok = std::fabs(c.delta_entropy - c.expected_delta_entropy) <= tol + h_slack;
  return c;
}

ScanResult convergence_scan(const DictionaryPtr& d, const SourceModel& source,
                            std::size_t m_max, const MeasureOptions& options) {
  if (!d) throw DomainError("null dictionary");
  if (m_max < 1) throw DomainError("m_max must be at least 1");
  require_compatible(*d, source);
  constexpr double kSlack = 1e-12;
  ScanResult out;
  for (std::size_t m = 1; m <= m_max; ++m) {
    MeasureOptions opts = options;
    opts.depth = m;
    const DictionaryMeasures dm = measure(*truncated_view(d, m), source, opts);
    ScanRow row{m, dm.entropy, dm.avg_length};
    if (!out.rows.empty()) {
      const ScanRow& prev = out.rows.back();
      if (row.entropy.high + kSlack < prev.entropy.low) out.entropy_nondecreasing = false;
      if (row.avg_length.high + kSlack < prev.avg_length.low) out.length_nondecreasing = false;
    }
    out.rows.push_back(row);
  }
  MeasureOptions limit_opts = options;
  limit_opts.depth = m_max;
  const DictionaryMeasures limit = measure(*d, source, limit_opts);
  out.limit_entropy = limit.entropy;
  out.limit_length = limit.avg_length;
  out.entropy_gap = std::fabs(limit.entropy.mid() - out.rows.back().entropy.mid());
  out.length_gap = std::fabs(limit.avg_length.mid() - out.rows.back().avg_length.mid());
  return out;
}

}  // namespace vv
