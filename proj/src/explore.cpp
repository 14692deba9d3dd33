// Copyright 2026 The vvcode Authors
// Licensed under the Apache License, Version 2.0

#include "vvcode/explore.hpp"

#include <algorithm>
#include <stdexcept>

#include "vvcode/errors.hpp"

namespace vv {
namespace {

class Walker {
 public:
  Walker(const Dictionary& d, const SourceModel& source, const ExploreLimits& limits,
         const ExploreVisitor* visitor, Exploration& ex)
      : d_(d),
        source_(source),
        limits_(limits),
        visitor_(visitor),
        ex_(ex),
        kids_(d.alphabet().visit_width(limits.width)),
        gap_tail_(d.alphabet().is_finite()
                      ? 0.0
                      : source.tail_mass(static_cast<Symbol>(limits.width))) {}

  void start(const Word& root) {
    path_.assign(root.begin(), root.end());
    const double p = source_.word_prob(root);
    switch (d_.classify(path_)) {
      case NodeState::member:
        member(p);
        break;
      case NodeState::covered:
        ex_.root_covered = true;
        break;
      case NodeState::open:
        open(p);
        break;
    }
  }

 private:
  void open(double p) {
    if (d_.cone_empty(path_)) {
      ex_.void_mass += p;
      if (visitor_ && visitor_->on_void) visitor_->on_void(path_, p);
    } else if (path_.size() >= limits_.depth) {
      ex_.frontier_mass += p;
      ex_.frontier_length += p * static_cast<double>(path_.size());
      ex_.frontier_entropy += surprisal_term(p);
      ++ex_.frontier_count;
      if (visitor_ && visitor_->on_frontier) visitor_->on_frontier(path_, p);
    } else {
      expand(p);
    }
  }

  void member(double p) {
    ex_.member_mass += p;
    ex_.member_length += p * static_cast<double>(path_.size());
    ex_.member_entropy += surprisal_term(p);
    ++ex_.member_count;
    if (visitor_ && visitor_->on_member) visitor_->on_member(path_, p);
  }

  void expand(double p) {
    if (++ex_.nodes_visited > limits_.max_nodes) {
      throw ResourceError("exploration exceeded max_nodes budget of " +
                          std::to_string(limits_.max_nodes));
    }
    if (auto relevant = d_.relevant_children(path_)) {
      expand_listed(*relevant, p);
      return;
    }
    for (std::uint64_t s = 0; s < kids_; ++s) visit(static_cast<Symbol>(s), p);
    if (!d_.alphabet().is_finite()) {
      const double mass = p * gap_tail_;
      ex_.gap_mass += mass;
      ex_.gaps.push_back(WidthGap{path_.size(), p, mass});
    }
  }

  // Children outside `relevant` have empty cones.
  void expand_listed(const std::vector<Symbol>& relevant, double p) {
    CompensatedSum listed;
    for (Symbol s : relevant) {
      listed += source_.prob(s);
      visit(s, p);
    }
    const bool report = visitor_ && visitor_->on_void;
    CompensatedSum rest;
    std::size_t next = 0;
    for (std::uint64_t s = 0; s < kids_; ++s) {
      const auto sym = static_cast<Symbol>(s);
      if (next < relevant.size() && relevant[next] == sym) {
        ++next;
        continue;
      }
      const double ps = source_.prob(sym);
      if (d_.alphabet().is_finite()) rest += ps;
      if (report) {
        path_.push_back(sym);
        visitor_->on_void(path_, p * ps);
        path_.pop_back();
      }
    }
    const double rest_mass = d_.alphabet().is_finite()
                                 ? rest.value()
                                 : std::max(0.0, 1.0 - listed.value());
    ex_.void_mass += p * rest_mass;
  }

  void visit(Symbol s, double parent) {
    const double p = parent * source_.prob(s);
    path_.push_back(s);
    switch (d_.classify(path_)) {
      case NodeState::member:
        member(p);
        break;
      case NodeState::open:
        open(p);
        break;
      case NodeState::covered:
        throw std::logic_error("dictionary classified a child of an open string as covered");
    }
    path_.pop_back();
  }

  const Dictionary& d_;
  const SourceModel& source_;
  const ExploreLimits& limits_;
  const ExploreVisitor* visitor_;
  Exploration& ex_;
  const std::uint64_t kids_;
  const double gap_tail_;
  std::vector<Symbol> path_;
};

}  // namespace

Exploration explore(const Dictionary& d, const SourceModel& source,
                    const Word& root, const ExploreLimits& limits,
                    const ExploreVisitor* visitor) {
  require_compatible(d, source);
  Exploration ex;
  Walker(d, source, limits, visitor, ex).start(root);
  return ex;
}

}  // namespace vv
