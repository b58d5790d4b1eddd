#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "cegiw/formula.hpp"
#include "cegiw/trace.hpp"

namespace cegiw {

// Semantic model problem (deadlock, empty declarations, unsatisfiable INIT,
// unresolvable or circular defines). Syntax problems surface as ParseError.
class ModelError : public std::runtime_error {
 public:
  explicit ModelError(const std::string& message) : std::runtime_error(message) {}
};

// One value index per variable, in declaration order.
using Valuation = std::vector<std::uint32_t>;

struct Variable {
  std::string name;
  std::vector<std::string> values;  // boolean variables carry {false, true}
  bool is_boolean = false;

  bool operator==(const Variable&) const = default;
};

enum class ExprKind { Const, IsValue, VarEq, DefineRef, Not, And, Or };

// Guard / predicate expression over a valuation. Variables and values are
// stored as indices into the owning Model; DefineRef nodes are resolved by
// name at evaluation time (the loader rejects unknown names and cycles).
class Expr {
 public:
  static Expr constant(bool value);
  static Expr is_value(std::size_t var, std::uint32_t value);
  static Expr var_eq(std::size_t lhs_var, std::size_t rhs_var);
  static Expr define_ref(std::string name);
  static Expr negate(Expr e);
  static Expr conj(Expr l, Expr r);
  static Expr disj(Expr l, Expr r);

  ExprKind kind() const;
  bool value() const;                // Const
  std::size_t var() const;           // IsValue
  std::uint32_t value_index() const;  // IsValue
  std::size_t lhs_var() const;       // VarEq
  std::size_t rhs_var() const;       // VarEq
  const std::string& name() const;   // DefineRef
  Expr child() const;                // Not
  Expr lhs() const;                  // And/Or
  Expr rhs() const;                  // And/Or

  bool operator==(const Expr& other) const;
  bool operator!=(const Expr& other) const { return !(*this == other); }

 private:
  struct Node;
  static Node node_of(ExprKind kind);
  static bool nodes_equal(const Node* a, const Node* b);
  explicit Expr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

struct NextRhs {
  enum class Kind { Value, Var };
  Kind kind = Kind::Value;
  std::uint32_t value = 0;  // index into the ruled variable's domain
  std::size_t var = 0;      // source variable whose current value is copied

  bool operator==(const NextRhs&) const = default;
};

// guard : next(var) = rhs. A missing guard marks the variable's default rule,
// applied only when no guarded rule for the same variable fires.
struct TransitionRule {
  std::optional<Expr> guard;
  std::size_t var = 0;
  NextRhs rhs;

  bool operator==(const TransitionRule&) const = default;
};

// Named atomic proposition; trace states are exactly the defines that hold.
struct Define {
  std::string name;
  Expr expr;

  bool operator==(const Define&) const = default;
};

struct Model {
  std::vector<Variable> variables;
  Expr init = Expr::constant(true);
  std::vector<TransitionRule> rules;
  std::vector<Define> defines;

  std::optional<std::size_t> variable_index(const std::string& name) const;
  std::optional<std::size_t> define_index(const std::string& name) const;

  bool operator==(const Model&) const = default;
};

// Loads and validates a model: declared names are unique and unreserved,
// every referenced name resolves, defines are acyclic, INIT is satisfiable,
// and every reachable valuation has a successor (otherwise the error carries
// a witness valuation).
Model parse_model(const std::string& text);

// Inverse of parse_model up to whitespace: parse_model(emit_model(m)) == m.
std::string emit_model(const Model& m);

std::string expr_str(const Model& m, const Expr& e);
std::string valuation_str(const Model& m, const Valuation& v);

bool eval_expr(const Model& m, const Expr& e, const Valuation& v);

// All valuations satisfying INIT, in domain cross-product order.
std::vector<Valuation> initial_states(const Model& m);

// Sorted distinct successors. Each variable collects the next values of all
// its firing rules (its default only when none fired); the result is the
// cross product. Empty only on a deadlocked valuation.
std::vector<Valuation> successors(const Model& m, const Valuation& v);

// Atom set of a valuation: the defines whose expression holds.
State project(const Model& m, const Valuation& v);

// Counterexample order: shorter total length first, then the flattened state
// rendering, then shorter suffix.
bool trace_order_less(const LassoTrace& a, const LassoTrace& b);

// Streams every canonical lasso whose underlying valuation path (prefix plus
// loop, total length <= bound) starts in an initial state and steps through
// the transition relation, loop-back edge included. No canonical trace is
// repeated. Emission is deterministic: traces are batched by underlying path
// length and each batch is sorted by trace_order_less. Return false from the
// callback to stop early.
void enumerate_lassos(const Model& m, std::uint64_t bound,
                      const std::function<bool(const LassoTrace&)>& callback);
std::vector<LassoTrace> enumerate_lassos(const Model& m, std::uint64_t bound);

struct CheckVerdict {
  bool holds = false;
  std::uint64_t bound = 0;
  // Violating traces in trace_order_less order, truncated to the requested
  // maximum; nonempty exactly when holds is false.
  std::vector<LassoTrace> counterexamples;
};

// Evaluates phi at time 0 on every lasso within the bound. The verdict is
// bound-relative: holds certifies only traces representable within it.
CheckVerdict check_bounded(const Model& m, const Formula& phi, std::uint64_t bound,
                           std::size_t max_counterexamples);

}  // namespace cegiw
