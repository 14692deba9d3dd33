// Copyright 2026 The vvcode Authors
// Licensed under the Apache License, Version 2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "vvcode/dictionary.hpp"
#include "vvcode/numeric.hpp"

namespace vv {

struct MeasureOptions {
  std::size_t depth = 64;
  std::uint64_t width = 64;
  // l-bar partial sums above this, with uncovered mass still >= tol, are
  // reported as possibly divergent.
  double lbar_ceiling = 1e6;
  std::size_t max_nodes = std::size_t{1} << 23;
};

// How the part of the sums beyond the depth limit was accounted for.
enum class TailKind {
  none,         // every member was enumerated
  closed_form,  // family-supplied exact tail sums
  bounded,      // finite word-length bound
  unavailable   // no bound: upper ends are infinite
};

std::string to_string(TailKind k);

/// Certified enclosures of H(D) and l-bar(D).
///
/// Lower ends are the partial sums over enumerated members. Upper ends add
/// the depth tail (closed form when the family has one, zero when no member
/// is deeper than the limit) and, for countable alphabets, a bound for the
/// children skipped by the width budget: below a skipped prefix w at depth
/// d, with members at most r symbols past w.s,
///
///   mass    <= P(w) t
///   l-bar   <= P(w) t (d + 1 + r)
///   entropy <= P(w) [ t (-log2 P(w)) + h_t + t H(P) r ]
///
/// where t = P(X >= width) and h_t = -sum_{s >= width} P(s) log2 P(s).
struct DictionaryMeasures {
  Interval entropy;
  Interval avg_length;
  double frontier_mass = 0.0;   // open strings at the depth limit
  double void_mass = 0.0;       // open strings that are never covered
  double gap_mass = 0.0;        // width-budget skips
  // Lower bounds on the depth tail from the frontier cones:
  // sum P(b)|b| and sum -P(b) log2 P(b). Valid for ASC dictionaries.
  double frontier_length_lb = 0.0;
  double frontier_entropy_lb = 0.0;
  TailKind tail = TailKind::none;
  std::size_t depth_used = 0;
  std::size_t member_count = 0;
  bool possibly_divergent = false;
};

DictionaryMeasures measure(const Dictionary& d, const SourceModel& source,
                           const MeasureOptions& options = {});

Interval dict_entropy(const Dictionary& d, const SourceModel& source,
                      const MeasureOptions& options = {});
Interval avg_length(const Dictionary& d, const SourceModel& source,
                    const MeasureOptions& options = {});

enum class Verdict { pass, fail, inconclusive };
std::string to_string(Verdict v);

struct MeasureReport {
  Interval h_d;
  Interval lbar;
  double h_p = 0.0;
  double residual = 0.0;  // |mid(h_d) - h_p mid(lbar)|
  double slack = 0.0;     // width(h_d) + h_p width(lbar)
  std::size_t depth_used = 0;
  std::uint64_t width_used = 0;
  double frontier_mass = 0.0;
  Verdict verdict = Verdict::inconclusive;
  AscVerdict asc;
  TailKind tail = TailKind::none;
  std::vector<std::string> notes;
};

/// H(D) = H(P) l-bar(D) for a proper, ASC dictionary. Dictionaries that are
/// not certified ASC at the given depth yield inconclusive.
///
///   pass          residual <= tol + slack
///   fail          the enclosures of both sides are more than tol apart
///   inconclusive  otherwise
MeasureReport check_conservation(const Dictionary& d, const SourceModel& source,
                                 double tol, const MeasureOptions& options = {});

struct TruncationRow {
  std::size_t m = 0;
  double entropy = 0.0;     // H(D_m)
  double avg_length = 0.0;  // l-bar(D_m)
  double residual = 0.0;    // |H(D_m) - H(P) l-bar(D_m)|
  double slack = 0.0;
  bool pass = false;
};

/// H(D_m) = H(P) l-bar(D_m) for m = 1..m_max. Needs properness only.
std::vector<TruncationRow> check_truncation_identity(
    const DictionaryPtr& d, const SourceModel& source, std::size_t m_max,
    double tol, std::uint64_t width = 64);

struct ExtensionCheck {
  double delta_lbar = 0.0;
  double expected_delta_lbar = 0.0;  // P(a)
  double delta_entropy = 0.0;
  double expected_delta_entropy = 0.0;  // P(a) H(P)
  bool lbar_ok = false;
  bool entropy_ok = false;
  bool ok() const noexcept { return lbar_ok && entropy_ok; }
};

/// l-bar(D[a]) - l-bar(D) = P(a) and H(D[a]) - H(D) = P(a) H(P).
ExtensionCheck check_extension_identities(const DictionaryPtr& d,
                                          const Word& alpha,
                                          const SourceModel& source, double tol,
                                          const MeasureOptions& options = {});

struct ScanRow {
  std::size_t m = 0;
  Interval entropy;     // H(D_m)
  Interval avg_length;  // l-bar(D_m)
};

struct ScanResult {
  std::vector<ScanRow> rows;
  bool entropy_nondecreasing = true;
  bool length_nondecreasing = true;
  Interval limit_entropy;  // dict_entropy at depth m_max
  Interval limit_length;
  double entropy_gap = 0.0;  // |mid(limit) - H(D_{m_max})|
  double length_gap = 0.0;
};

/// (m, H(D_m), l-bar(D_m)) for m = 1..m_max with monotonicity flags.
ScanResult convergence_scan(const DictionaryPtr& d, const SourceModel& source,
                            std::size_t m_max, const MeasureOptions& options = {});

}  // namespace vv
