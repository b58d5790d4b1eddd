#include "cegiw/rewrite.hpp"

namespace cegiw {

namespace {

Formula nnf_pos(const Formula& f);
Formula nnf_neg(const Formula& f);

Formula nnf_pos(const Formula& f) {
  switch (f.kind()) {
    case FormulaKind::Atom:
    case FormulaKind::True:
      return f;
    case FormulaKind::Not:
      return nnf_neg(f.child());
    case FormulaKind::And:
      return Formula::conj(nnf_pos(f.lhs()), nnf_pos(f.rhs()));
    case FormulaKind::Or:
      return Formula::disj(nnf_pos(f.lhs()), nnf_pos(f.rhs()));
    case FormulaKind::Until:
      return Formula::until(nnf_pos(f.lhs()), f.interval(), nnf_pos(f.rhs()));
    case FormulaKind::Release:
      return Formula::release(nnf_pos(f.lhs()), f.interval(), nnf_pos(f.rhs()));
  }
  return f;
}

Formula nnf_neg(const Formula& f) {
  switch (f.kind()) {
    case FormulaKind::Atom:
    case FormulaKind::True:
      return Formula::negate(f);
    case FormulaKind::Not:
      return nnf_pos(f.child());
    case FormulaKind::And:
      return Formula::disj(nnf_neg(f.lhs()), nnf_neg(f.rhs()));
    case FormulaKind::Or:
      return Formula::conj(nnf_neg(f.lhs()), nnf_neg(f.rhs()));
    case FormulaKind::Until:
      return Formula::release(nnf_neg(f.lhs()), f.interval(), nnf_neg(f.rhs()));
    case FormulaKind::Release:
      return Formula::until(nnf_neg(f.lhs()), f.interval(), nnf_neg(f.rhs()));
  }
  return f;
}

Formula lit_and(const Formula& l, const Formula& r) {
  if (l.is_true()) return r;
  if (r.is_true()) return l;
  if (l.is_false() || r.is_false()) return Formula::fls();
  return Formula::conj(l, r);
}

Formula lit_or(const Formula& l, const Formula& r) {
  if (l.is_false()) return r;
  if (r.is_false()) return l;
  if (l.is_true() || r.is_true()) return Formula::tru();
  return Formula::disj(l, r);
}

// One-step expansion with pre-translated operands; b absent means unbounded.
Formula expand(TemporalKind k, const Formula& l, TimePoint a, std::optional<TimePoint> b, const Formula& r) {
  if (a > 0) {
    std::optional<TimePoint> b1 = b ? std::optional<TimePoint>(*b - 1) : std::nullopt;
    return Formula::next(expand(k, l, a - 1, b1, r));
  }
  if (!b) return Formula::temporal(k, l, Interval::unbounded(0), r);
  if (*b == 0) return r;
  Formula tail = Formula::next(expand(k, l, 0, *b - 1, r));
  if (k == TemporalKind::Until) return lit_or(r, lit_and(l, tail));
  return lit_and(r, lit_or(l, tail));
}

}  // namespace

Formula nnf(const Formula& f) { return nnf_pos(f); }

Formula to_ltl(const Formula& f) {
  switch (f.kind()) {
    case FormulaKind::Atom:
    case FormulaKind::True:
      return f;
    case FormulaKind::Not:
      return Formula::negate(to_ltl(f.child()));
    case FormulaKind::And:
      return Formula::conj(to_ltl(f.lhs()), to_ltl(f.rhs()));
    case FormulaKind::Or:
      return Formula::disj(to_ltl(f.lhs()), to_ltl(f.rhs()));
    case FormulaKind::Until:
    case FormulaKind::Release: {
      const Interval& i = f.interval();
      TemporalKind k = f.kind() == FormulaKind::Until ? TemporalKind::Until : TemporalKind::Release;
      return expand(k, to_ltl(f.lhs()), i.lo(), i.hi(), to_ltl(f.rhs()));
    }
  }
  return f;
}

}  // namespace cegiw
