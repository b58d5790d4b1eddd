#pragma once

#include "cegiw/formula.hpp"

namespace cegiw {

// Pushes negations inward until they sit directly above atoms or true,
// flipping And/Or and Until/Release along the way. Intervals are untouched.
Formula nnf(const Formula& f);

// Expands every bounded temporal interval through the one-step operator
// F[1,1] so only [0,inf] Until/Release, F[1,1], and propositional connectives
// remain:
//   f1 U[a,b] f2  ->  F[1,1] applied a times to (f2 | (f1 & F[1,1] (...)))
//   f1 R[a,b] f2  ->  F[1,1] applied a times to (f2 & (f1 | F[1,1] (...)))
// [a, inf] becomes a one-step prefix of length a over an unbounded U/R.
// true & x and false | x collapse, so F[1,3] p expands to exactly
// F[1,1] (p | F[1,1] (p | F[1,1] p)).
Formula to_ltl(const Formula& f);

}  // namespace cegiw
