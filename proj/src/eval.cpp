#include "cegiw/eval.hpp"

namespace cegiw {

bool eval(const LassoTrace& pi, TimePoint t, const Formula& f) {
  switch (f.kind()) {
    case FormulaKind::Atom:
      return pi.state_at(t).count(f.atom_name()) != 0;
    case FormulaKind::True:
      return true;
    case FormulaKind::Not:
      return !eval(pi, t, f.child());
    case FormulaKind::And:
      return eval(pi, t, f.lhs()) && eval(pi, t, f.rhs());
    case FormulaKind::Or:
      return eval(pi, t, f.lhs()) || eval(pi, t, f.rhs());
    case FormulaKind::Until: {
      const Interval& i = f.interval();
      const TimePoint last = i.hi_capped(end_index(pi, i.lo()));
      for (TimePoint k = i.lo(); k <= last; ++k) {
        if (eval(pi, t + k, f.rhs())) return true;
        if (!eval(pi, t + k, f.lhs())) return false;
      }
      return false;
    }
    case FormulaKind::Release: {
      const Interval& i = f.interval();
      const TimePoint last = i.hi_capped(end_index(pi, i.lo()));
      for (TimePoint k = i.lo(); k <= last; ++k) {
        if (!eval(pi, t + k, f.rhs())) return false;
        if (eval(pi, t + k, f.lhs())) return true;  // released at k
      }
      return true;  // rhs throughout the covering window
    }
  }
  return false;
}

bool holds(const LassoTrace& pi, const Formula& f) { return eval(pi, 0, f); }

}  // namespace cegiw
