#pragma once

#include <memory>
#include <string>

#include "cegiw/interval.hpp"

namespace cegiw {

enum class FormulaKind { Atom, True, Not, And, Or, Until, Release };
enum class TemporalKind { Until, Release };

// Immutable formula handle over a shared tree. The core grammar is
// atom | true | !f | f & f | f | f | f U[I] f | f R[I] f; every derived
// construct (false, ->, F, G, X) normalizes into it at construction time, so
// structural equality is well defined across spellings.
class Formula {
 public:
  static Formula atom(std::string name);
  static Formula tru();
  static Formula fls();  // !true
  static Formula negate(Formula f);
  static Formula conj(Formula l, Formula r);
  static Formula disj(Formula l, Formula r);
  static Formula implies(Formula l, Formula r);  // !l | r
  static Formula until(Formula l, Interval i, Formula r);
  static Formula release(Formula l, Interval i, Formula r);
  static Formula eventually(Interval i, Formula f);  // true U[I] f
  static Formula globally(Interval i, Formula f);    // false R[I] f
  static Formula next(Formula f);                    // true U[1,1] f
  static Formula temporal(TemporalKind k, Formula l, Interval i, Formula r);

  FormulaKind kind() const;
  bool is_temporal() const;
  bool is_true() const;
  bool is_false() const;  // structurally !true

  const std::string& atom_name() const;  // Atom only
  Formula child() const;                 // Not only
  Formula lhs() const;                   // And/Or/Until/Release
  Formula rhs() const;
  const Interval& interval() const;  // Until/Release only

  // Parseable rendering with minimal parentheses; re-sugars true U[I] f to
  // F[I] f, !true R[I] f to G[I] f, and !l | r to l -> r. [0,inf] intervals
  // are omitted.
  std::string str() const;

  bool operator==(const Formula& other) const;
  bool operator!=(const Formula& other) const { return !(*this == other); }

 private:
  struct Node;
  explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

// A temporal node psi <U/R>[I] psi' viewed as a value, so the interval can be
// swapped without rebuilding the operands.
struct TemporalNode {
  Formula left;
  TemporalKind kind;
  Interval interval;
  Formula right;

  static TemporalNode of(const Formula& f);  // f must be Until/Release
  Formula to_formula() const;
  TemporalNode with_interval(const Interval& i) const;

  bool operator==(const TemporalNode&) const = default;
};

// Maximum number of Until/Release operators on any root-to-leaf path.
unsigned temporal_depth(const Formula& f);

}  // namespace cegiw
