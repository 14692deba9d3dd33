// Copyright 2026 The vvcode Authors
// Licensed under the Apache License, Version 2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "vvcode/dictionary.hpp"
#include "vvcode/numeric.hpp"

namespace vv {

struct ExploreLimits {
  std::size_t depth = 64;          // absolute word length
  std::uint64_t width = 64;        // symbols visited per node (countable)
  std::size_t max_nodes = std::size_t{1} << 23;
};

// Children w.s with s >= width that a countable-alphabet walk skipped.
struct WidthGap {
  std::size_t depth = 0;  // |w|
  double prefix_prob = 0.0;
  double mass = 0.0;      // P(w) * P(X >= width)
};

/// Depth-first walk of the open strings below a root, accumulating the
/// members it meets (length <= depth) and classifying the rest of the
/// probability mass:
///
///   frontier - open strings at the depth limit whose cone may hold members
///   void     - open strings whose cone is empty (never covered)
///   gaps     - children skipped by the width budget
///
/// Members, frontier, void and gap masses partition P(root) when the
/// dictionary is proper.
struct Exploration {
  CompensatedSum member_mass;
  CompensatedSum member_length;
  CompensatedSum member_entropy;
  std::size_t member_count = 0;

  CompensatedSum frontier_mass;
  CompensatedSum frontier_length;   // sum P(b)|b|
  CompensatedSum frontier_entropy;  // sum -P(b) log2 P(b)
  std::size_t frontier_count = 0;

  CompensatedSum void_mass;
  CompensatedSum gap_mass;
  std::vector<WidthGap> gaps;

  bool root_covered = false;
  std::size_t nodes_visited = 0;

  double uncovered() const {
    return frontier_mass.value() + void_mass.value() + gap_mass.value();
  }
  bool exhaustive() const {
    return frontier_count == 0 && gaps.empty();
  }
};

struct ExploreVisitor {
  std::function<void(std::span<const Symbol>, double)> on_member;
  std::function<void(std::span<const Symbol>, double)> on_frontier;
  // Void strings are reported once, at the top of their empty subtree.
  std::function<void(std::span<const Symbol>, double)> on_void;
};

/// Throws ResourceError when more than max_nodes open strings are expanded.
Exploration explore(const Dictionary& d, const SourceModel& source,
                    const Word& root, const ExploreLimits& limits,
                    const ExploreVisitor* visitor = nullptr);

}  // namespace vv
