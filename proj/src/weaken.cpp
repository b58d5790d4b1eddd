#include "cegiw/weaken.hpp"

#include <stdexcept>

#include "cegiw/eval.hpp"

namespace cegiw {

ModificationKind modification_kind(TemporalKind k) {
  return k == TemporalKind::Until ? ModificationKind::Extension : ModificationKind::Contraction;
}

bool is_modification(ModificationKind k, const Interval& original, const Interval& candidate) {
  if (candidate.lo() != original.lo()) return false;
  if (!original.is_bounded()) return !candidate.is_bounded();
  if (!candidate.is_bounded()) return k == ModificationKind::Extension;
  return k == ModificationKind::Extension ? candidate.hi() >= original.hi()
                                          : candidate.hi() <= original.hi();
}

bool is_weaker_or_equal(ModificationKind k, const Interval& a, const Interval& b) {
  // An absent upper bound compares above every finite one.
  if (!a.is_bounded() || !b.is_bounded()) {
    bool a_above = !a.is_bounded();
    bool b_above = !b.is_bounded();
    return k == ModificationKind::Extension ? a_above || !b_above : b_above || !a_above;
  }
  return k == ModificationKind::Extension ? a.hi() >= b.hi() : a.hi() <= b.hi();
}

Interval weakest_of(ModificationKind k, const std::vector<Interval>& candidates) {
  if (candidates.empty()) throw std::invalid_argument("no candidate intervals");
  Interval best = candidates.front();
  for (std::size_t i = 1; i < candidates.size(); ++i) {
    if (is_weaker_or_equal(k, candidates[i], best)) best = candidates[i];
  }
  return best;
}

Interval strongest_of(ModificationKind k, const std::vector<Interval>& candidates) {
  if (candidates.empty()) throw std::invalid_argument("no candidate intervals");
  Interval best = candidates.front();
  for (std::size_t i = 1; i < candidates.size(); ++i) {
    if (is_weaker_or_equal(k, best, candidates[i])) best = candidates[i];
  }
  return best;
}

namespace {

void bump(WeakenStats* stats) {
  if (stats) ++stats->positions_visited;
}

// Strongest extension of target.interval under which
// target.left U target.right holds at (pi, t). The scan runs to the covering
// end uncapped by the upper bound: the first right-operand witness reachable
// under the left operand decides the answer, and any witness beyond one loop
// round repeats an already scanned phase.
WeakenOutcome until_direct(const TemporalNode& target, const LassoTrace& pi, TimePoint t,
                           WeakenStats* stats) {
  const Interval& i = target.interval;
  TimePoint last = end_index(pi, i.lo());
  for (TimePoint k = i.lo(); k <= last; ++k) {
    bump(stats);
    if (eval(pi, t + k, target.right)) {
      if (!i.is_bounded() || k <= i.hi()) return i;
      return Interval::bounded(i.lo(), k);
    }
    if (!eval(pi, t + k, target.left)) return std::nullopt;
  }
  return std::nullopt;
}

// Strongest contraction of target.interval under which
// target.left R target.right holds at (pi, t). A failing bounded window is cut
// just before the first right-operand failure; an unbounded window has no
// other contraction to offer.
WeakenOutcome release_direct(const TemporalNode& target, const LassoTrace& pi, TimePoint t,
                             WeakenStats* stats) {
  const Interval& i = target.interval;
  if (eval(pi, t, target.to_formula())) return i;
  if (!i.is_bounded()) return std::nullopt;
  TimePoint last = i.hi_capped(end_index(pi, i.lo()));
  for (TimePoint k = i.lo(); k <= last; ++k) {
    bump(stats);
    if (!eval(pi, t + k, target.right)) {
      if (k == i.lo()) return std::nullopt;
      return Interval::bounded(i.lo(), k - 1);
    }
  }
  throw std::logic_error("release reported failing but its operand never fails");
}

WeakenOutcome weaken_impl(const Context& c, const TemporalNode& target, const LassoTrace& pi,
                          TimePoint t, WeakenStats* stats);

// Hole inside the left operand of an Until: holding at the first
// right-operand witness requires the plugged operand at every earlier window
// position, so the answer is the weakest of those positions' requirements.
WeakenOutcome until_left(const Context& inner, const Interval& j, const Formula& operand,
                         const TemporalNode& target, const LassoTrace& pi, TimePoint t,
                         WeakenStats* stats) {
  TimePoint last = j.hi_capped(end_index(pi, j.lo()));
  std::vector<Interval> needed;
  for (TimePoint k = j.lo(); k <= last; ++k) {
    bump(stats);
    if (eval(pi, t + k, operand)) {
      if (k == j.lo()) return target.interval;
      return weakest_of(modification_kind(target.kind), needed);
    }
    WeakenOutcome r = weaken_impl(inner, target, pi, t + k, stats);
    if (!r) return std::nullopt;
    needed.push_back(*r);
  }
  return std::nullopt;
}

// Hole inside the right operand of an Until: each window position reachable
// under the left operand is an independent witness candidate, so the answer
// is the strongest per-position requirement.
WeakenOutcome until_right(const Formula& operand, const Interval& j, const Context& inner,
                          const TemporalNode& target, const LassoTrace& pi, TimePoint t,
                          WeakenStats* stats) {
  TimePoint last = j.hi_capped(end_index(pi, j.lo()));
  WeakenOutcome best;
  ModificationKind mk = modification_kind(target.kind);
  for (TimePoint k = j.lo(); k <= last; ++k) {
    bump(stats);
    WeakenOutcome r = weaken_impl(inner, target, pi, t + k, stats);
    if (r) {
      if (*r == target.interval) return r;
      if (!best || is_weaker_or_equal(mk, *best, *r)) best = r;
    }
    if (!eval(pi, t + k, operand)) break;
  }
  return best;
}

// Hole inside the left operand of a Release: the plugged operand can only
// discharge the window via a release position, which must come strictly
// before the first right-operand failure. Any one such position suffices.
WeakenOutcome release_left(const Context& inner, const Interval& j, const Formula& operand,
                           const TemporalNode& target, const LassoTrace& pi, TimePoint t,
                           WeakenStats* stats) {
  TimePoint last = j.hi_capped(end_index(pi, j.lo()));
  std::optional<TimePoint> first_failure;
  for (TimePoint k = j.lo(); k <= last; ++k) {
    bump(stats);
    if (!eval(pi, t + k, operand)) {
      first_failure = k;
      break;
    }
  }
  if (!first_failure) return target.interval;
  WeakenOutcome best;
  ModificationKind mk = modification_kind(target.kind);
  for (TimePoint k = j.lo(); k < *first_failure; ++k) {
    bump(stats);
    WeakenOutcome r = weaken_impl(inner, target, pi, t + k, stats);
    if (r) {
      if (*r == target.interval) return r;
      if (!best || is_weaker_or_equal(mk, *best, *r)) best = r;
    }
  }
  return best;
}

// Hole inside the right operand of a Release: the window holds either at
// every position (weakest of all requirements) or at every position up to
// some left-operand release point (weakest of that prefix). The answer is the
// strongest such candidate.
WeakenOutcome release_right(const Formula& operand, const Interval& j, const Context& inner,
                            const TemporalNode& target, const LassoTrace& pi, TimePoint t,
                            WeakenStats* stats) {
  TimePoint last = j.hi_capped(end_index(pi, j.lo()));
  ModificationKind mk = modification_kind(target.kind);
  WeakenOutcome best;
  auto consider = [&](const Interval& candidate) {
    if (!best || is_weaker_or_equal(mk, *best, candidate)) best = candidate;
  };
  std::optional<Interval> prefix_weakest;
  bool all_some = true;
  for (TimePoint k = j.lo(); k <= last; ++k) {
    bump(stats);
    WeakenOutcome r = weaken_impl(inner, target, pi, t + k, stats);
    if (!r) {
      all_some = false;
      break;
    }
    if (!prefix_weakest || is_weaker_or_equal(mk, *r, *prefix_weakest)) prefix_weakest = *r;
    if (eval(pi, t + k, operand)) consider(*prefix_weakest);
  }
  if (all_some) consider(*prefix_weakest);
  return best;
}

WeakenOutcome weaken_impl(const Context& c, const TemporalNode& target, const LassoTrace& pi,
                          TimePoint t, WeakenStats* stats) {
  switch (c.kind()) {
    case ContextKind::Hole:
      return target.kind == TemporalKind::Until ? until_direct(target, pi, t, stats)
                                                : release_direct(target, pi, t, stats);
    case ContextKind::AndL:
    case ContextKind::AndR:
      if (!eval(pi, t, c.operand())) return std::nullopt;
      return weaken_impl(c.inner(), target, pi, t, stats);
    case ContextKind::OrL:
    case ContextKind::OrR:
      if (eval(pi, t, c.operand())) return target.interval;
      return weaken_impl(c.inner(), target, pi, t, stats);
    case ContextKind::UntilL:
      return until_left(c.inner(), c.interval(), c.operand(), target, pi, t, stats);
    case ContextKind::UntilR:
      return until_right(c.operand(), c.interval(), c.inner(), target, pi, t, stats);
    case ContextKind::ReleaseL:
      return release_left(c.inner(), c.interval(), c.operand(), target, pi, t, stats);
    case ContextKind::ReleaseR:
      return release_right(c.operand(), c.interval(), c.inner(), target, pi, t, stats);
  }
  throw std::logic_error("unhandled context kind");
}

}  // namespace

WeakenOutcome weaken(const Context& c, const TemporalNode& target, const LassoTrace& pi,
                     TimePoint t, WeakenStats* stats) {
  return weaken_impl(c, target, pi, t, stats);
}

}  // namespace cegiw
