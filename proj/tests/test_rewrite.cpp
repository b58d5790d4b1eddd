#include <doctest.h>

#include <functional>

#include "cegiw/eval.hpp"
#include "cegiw/rewrite.hpp"
#include "generators.hpp"
#include "oracles.hpp"

using namespace cegiw;
using namespace cegiw::testing;

namespace {

const Formula p = Formula::atom("p");
const Formula q = Formula::atom("q");

bool negations_sit_on_leaves(const Formula& f) {
  switch (f.kind()) {
    case FormulaKind::Atom:
    case FormulaKind::True:
      return true;
    case FormulaKind::Not: {
      FormulaKind inner = f.child().kind();
      return inner == FormulaKind::Atom || inner == FormulaKind::True;
    }
    case FormulaKind::And:
    case FormulaKind::Or:
    case FormulaKind::Until:
    case FormulaKind::Release:
      return negations_sit_on_leaves(f.lhs()) && negations_sit_on_leaves(f.rhs());
  }
  return false;
}

bool ltl_shaped(const Formula& f) {
  switch (f.kind()) {
    case FormulaKind::Atom:
    case FormulaKind::True:
      return true;
    case FormulaKind::Not:
      return ltl_shaped(f.child());
    case FormulaKind::And:
    case FormulaKind::Or:
      return ltl_shaped(f.lhs()) && ltl_shaped(f.rhs());
    case FormulaKind::Until:
    case FormulaKind::Release: {
      bool one_step = f.kind() == FormulaKind::Until && f.lhs().is_true() &&
                      f.interval() == Interval::bounded(1, 1);
      bool plain = f.interval() == Interval::unbounded(0);
      return (one_step || plain) && ltl_shaped(f.lhs()) && ltl_shaped(f.rhs());
    }
  }
  return false;
}

}  // namespace

TEST_CASE("negation normal form pushes negations to the leaves") {
  CHECK(nnf(Formula::negate(Formula::conj(p, q))) ==
        Formula::disj(Formula::negate(p), Formula::negate(q)));
  CHECK(nnf(Formula::negate(Formula::disj(p, q))) ==
        Formula::conj(Formula::negate(p), Formula::negate(q)));
  CHECK(nnf(Formula::negate(Formula::negate(p))) == p);
  CHECK(nnf(Formula::negate(Formula::until(p, Interval::bounded(1, 3), q))) ==
        Formula::release(Formula::negate(p), Interval::bounded(1, 3), Formula::negate(q)));
  CHECK(nnf(Formula::negate(Formula::release(p, Interval::bounded(1, 3), q))) ==
        Formula::until(Formula::negate(p), Interval::bounded(1, 3), Formula::negate(q)));
  CHECK(nnf(Formula::until(Formula::negate(Formula::negate(p)), Interval::bounded(0, 1), q)) ==
        Formula::until(p, Interval::bounded(0, 1), q));
}

TEST_CASE("negation normal form preserves satisfaction and shape") {
  Rng rng(77001);
  for (int i = 0; i < 600; ++i) {
    Formula f = random_formula(rng, small_atoms(), 4, 6);
    Formula n = nnf(f);
    CHECK(negations_sit_on_leaves(n));
    LassoTrace pi = random_trace(rng, small_atoms(), 3, 4);
    TimePoint t = rng.below(pi.total_length());
    CHECK(eval(pi, t, f) == eval(pi, t, n));
  }
}

TEST_CASE("bounded operators expand through the one-step operator") {
  Formula step_p = Formula::next(p);  // F[1,1] p
  CHECK(to_ltl(Formula::eventually(Interval::bounded(1, 1), p)) == step_p);
  CHECK(to_ltl(Formula::eventually(Interval::bounded(1, 3), p)).str() ==
        "F[1,1] (p | F[1,1] (p | F[1,1] p))");
  CHECK(to_ltl(Formula::globally(Interval::bounded(1, 2), p)).str() ==
        "F[1,1] (p & F[1,1] p)");
  CHECK(to_ltl(Formula::eventually(Interval::unbounded(0), p)) ==
        Formula::eventually(Interval::unbounded(0), p));
  CHECK(to_ltl(Formula::eventually(Interval::unbounded(2), p)).str() ==
        "F[1,1] F[1,1] F p");
  CHECK(to_ltl(Formula::until(p, Interval::bounded(0, 2), q)).str() ==
        "q | p & F[1,1] (q | p & F[1,1] q)");
}

TEST_CASE("the expansion has one-step shape and preserves satisfaction") {
  Rng rng(77002);
  for (int i = 0; i < 600; ++i) {
    Formula f = random_formula(rng, small_atoms(), 3, 8);
    Formula expanded = to_ltl(f);
    CHECK(ltl_shaped(expanded));
    LassoTrace pi = random_trace(rng, small_atoms(), 3, 4);
    CHECK(eval(pi, 0, f) == eval(pi, 0, expanded));
    CHECK(reference_eval(pi, 0, f) == eval(pi, 0, expanded));
  }
}
