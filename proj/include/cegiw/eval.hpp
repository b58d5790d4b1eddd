#pragma once

#include "cegiw/formula.hpp"
#include "cegiw/trace.hpp"

namespace cegiw {

// Pointwise satisfaction pi, t |= f.
//
//   f1 U[a,b] f2 : some i in [a,b] with f2 at t+i and f1 at every t+j,
//                  j in [a, i).
//   f1 R[a,b] f2 : f2 at every point of [a,b], or some j in [a,b] with f1 at
//                  t+j and f2 at every point of [a, j].
//
// Quantifiers over unbounded (or loop-exceeding) intervals are decided inside
// the covering window [a, end_index(pi, a)]; positions beyond it repeat the
// state and future of a covered one.
bool eval(const LassoTrace& pi, TimePoint t, const Formula& f);

// eval at t = 0.
bool holds(const LassoTrace& pi, const Formula& f);

}  // namespace cegiw
