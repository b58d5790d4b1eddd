#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "cegiw/context.hpp"
#include "cegiw/formula.hpp"
#include "cegiw/interval.hpp"
#include "cegiw/trace.hpp"

namespace cegiw {

// Direction in which a temporal operator's upper bound may move while only
// weakening the operator: Until windows extend, Release windows contract. The
// lower bound never moves, and [a,inf] admits no modification besides itself.
enum class ModificationKind { Extension, Contraction };

ModificationKind modification_kind(TemporalKind k);

// candidate shares original's lower bound and its upper bound moved in the
// allowed direction (or stayed put).
bool is_modification(ModificationKind k, const Interval& original, const Interval& candidate);

// a imposes no more on the operator than b does.
bool is_weaker_or_equal(ModificationKind k, const Interval& a, const Interval& b);

// Extremes of a nonempty set of modifications of one original interval.
// Modifications are totally ordered, so both always exist. Throws
// std::invalid_argument on an empty set.
Interval weakest_of(ModificationKind k, const std::vector<Interval>& candidates);
Interval strongest_of(ModificationKind k, const std::vector<Interval>& candidates);

struct WeakenStats {
  // Trace positions examined across all per-position scans.
  std::uint64_t positions_visited = 0;
};

// Some(i): i is the strongest modification m of target.interval such that
// substitute(c, target.with_interval(m)) holds on pi at t; equals
// target.interval exactly when the unmodified formula already holds.
// nullopt: no modification works.
using WeakenOutcome = std::optional<Interval>;

WeakenOutcome weaken(const Context& c, const TemporalNode& target, const LassoTrace& pi,
                     TimePoint t, WeakenStats* stats = nullptr);

}  // namespace cegiw
