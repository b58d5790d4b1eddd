#pragma once

#include <memory>
#include <vector>

#include "cegiw/formula.hpp"

namespace cegiw {

// Child direction in the core AST; negation has a single child addressed by
// Left.
enum class ChildStep { Left, Right };

// Root-to-node path in the core (desugared) AST.
struct TargetSelection {
  std::vector<ChildStep> path;
  bool operator==(const TargetSelection&) const = default;
};

enum class ContextKind { Hole, AndL, AndR, OrL, OrR, UntilL, UntilR, ReleaseL, ReleaseR };

// Formula with a single hole and no negation on the path to it. The L/R
// suffix names the operand holding the hole; the displaced operand is an
// ordinary formula.
class Context {
 public:
  static Context hole();
  static Context and_l(Context inner, Formula operand);
  static Context and_r(Formula operand, Context inner);
  static Context or_l(Context inner, Formula operand);
  static Context or_r(Formula operand, Context inner);
  static Context until_l(Context inner, const Interval& i, Formula operand);
  static Context until_r(Formula operand, const Interval& i, Context inner);
  static Context release_l(Context inner, const Interval& i, Formula operand);
  static Context release_r(Formula operand, const Interval& i, Context inner);

  ContextKind kind() const;
  bool is_hole() const { return kind() == ContextKind::Hole; }
  Context inner() const;             // any non-hole kind
  const Formula& operand() const;    // any non-hole kind
  const Interval& interval() const;  // UntilL/R, ReleaseL/R

  bool operator==(const Context& other) const;
  bool operator!=(const Context& other) const { return !(*this == other); }

 private:
  struct Node;
  explicit Context(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

// C[f]: plugs f into the hole.
Formula substitute(const Context& c, const Formula& f);

struct Extraction {
  Context context;
  TemporalNode target;
};

// Splits f at the selected temporal node into a negation-free context and the
// target. Negations along the path are pushed inward one De Morgan / duality
// step per level, so the selected operator may flip Until <-> Release and the
// displaced operands pick up a top-level negation. Throws std::invalid_argument
// if the path leaves the tree or lands on a non-temporal node.
Extraction extract(const Formula& f, const TargetSelection& sel);

}  // namespace cegiw
