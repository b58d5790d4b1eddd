#include "cegiw/formula.hpp"

#include <algorithm>
#include <stdexcept>
#include <utility>

namespace cegiw {

struct Formula::Node {
  FormulaKind kind;
  std::string atom;  // Atom
  Interval interval;  // Until/Release
  std::shared_ptr<const Node> lhs;  // Not stores its child here
  std::shared_ptr<const Node> rhs;
};


Formula Formula::atom(std::string name) {
  if (name.empty()) throw std::invalid_argument("empty atom name");
  return Formula(std::make_shared<const Node>(Node{FormulaKind::Atom, std::move(name), Interval(), nullptr, nullptr}));
}

Formula Formula::tru() {
  static const auto node =
      std::make_shared<const Node>(Node{FormulaKind::True, "", Interval(), nullptr, nullptr});
  return Formula(node);
}

Formula Formula::fls() { return negate(tru()); }

Formula Formula::negate(Formula f) {
  return Formula(std::make_shared<const Node>(Node{FormulaKind::Not, "", Interval(), std::move(f.node_), nullptr}));
}

Formula Formula::conj(Formula l, Formula r) {
  return Formula(
      std::make_shared<const Node>(Node{FormulaKind::And, "", Interval(), std::move(l.node_), std::move(r.node_)}));
}

Formula Formula::disj(Formula l, Formula r) {
  return Formula(
      std::make_shared<const Node>(Node{FormulaKind::Or, "", Interval(), std::move(l.node_), std::move(r.node_)}));
}

Formula Formula::implies(Formula l, Formula r) { return disj(negate(std::move(l)), std::move(r)); }

Formula Formula::until(Formula l, Interval i, Formula r) {
  return Formula(
      std::make_shared<const Node>(Node{FormulaKind::Until, "", i, std::move(l.node_), std::move(r.node_)}));
}

Formula Formula::release(Formula l, Interval i, Formula r) {
  return Formula(
      std::make_shared<const Node>(Node{FormulaKind::Release, "", i, std::move(l.node_), std::move(r.node_)}));
}

Formula Formula::eventually(Interval i, Formula f) { return until(tru(), i, std::move(f)); }

Formula Formula::globally(Interval i, Formula f) { return release(fls(), i, std::move(f)); }

Formula Formula::next(Formula f) { return eventually(Interval::bounded(1, 1), std::move(f)); }

Formula Formula::temporal(TemporalKind k, Formula l, Interval i, Formula r) {
  return k == TemporalKind::Until ? until(std::move(l), i, std::move(r)) : release(std::move(l), i, std::move(r));
}

FormulaKind Formula::kind() const { return node_->kind; }

bool Formula::is_temporal() const {
  return node_->kind == FormulaKind::Until || node_->kind == FormulaKind::Release;
}

bool Formula::is_true() const { return node_->kind == FormulaKind::True; }

bool Formula::is_false() const {
  return node_->kind == FormulaKind::Not && node_->lhs->kind == FormulaKind::True;
}

const std::string& Formula::atom_name() const {
  if (node_->kind != FormulaKind::Atom) throw std::logic_error("atom_name on non-atom");
  return node_->atom;
}

Formula Formula::child() const {
  if (node_->kind != FormulaKind::Not) throw std::logic_error("child on non-negation");
  return Formula(node_->lhs);
}

Formula Formula::lhs() const {
  if (!node_->lhs) throw std::logic_error("lhs on leaf");
  return Formula(node_->lhs);
}

Formula Formula::rhs() const {
  if (!node_->rhs) throw std::logic_error("rhs on leaf or unary node");
  return Formula(node_->rhs);
}

const Interval& Formula::interval() const {
  if (!is_temporal()) throw std::logic_error("interval on non-temporal node");
  return node_->interval;
}

bool Formula::operator==(const Formula& other) const {
  if (node_ == other.node_) return true;
  if (node_->kind != other.node_->kind) return false;
  switch (node_->kind) {
    case FormulaKind::Atom:
      return node_->atom == other.node_->atom;
    case FormulaKind::True:
      return true;
    case FormulaKind::Not:
      return child() == other.child();
    case FormulaKind::And:
    case FormulaKind::Or:
      return lhs() == other.lhs() && rhs() == other.rhs();
    case FormulaKind::Until:
    case FormulaKind::Release:
      return node_->interval == other.node_->interval && lhs() == other.lhs() && rhs() == other.rhs();
  }
  return false;
}

namespace {

// Precedence used by both the printer and the parser:
// -> (1) < | (2) < & (3) < U/R (4) < unary !/F/G/X (5) < leaf (6).
// Or-nodes printed as "->" report 1; F/G sugar reports 5.
bool prints_as_implies(const Formula& f) {
  return f.kind() == FormulaKind::Or && f.lhs().kind() == FormulaKind::Not && !f.lhs().is_false();
}

int print_prec(const Formula& f) {
  switch (f.kind()) {
    case FormulaKind::Atom:
    case FormulaKind::True:
      return 6;
    case FormulaKind::Not:
      return f.is_false() ? 6 : 5;
    case FormulaKind::And:
      return 3;
    case FormulaKind::Or:
      return prints_as_implies(f) ? 1 : 2;
    case FormulaKind::Until:
      return f.lhs().is_true() ? 5 : 4;
    case FormulaKind::Release:
      return f.lhs().is_false() ? 5 : 4;
  }
  return 6;
}

std::string interval_suffix(const Interval& i) {
  if (i == Interval::unbounded(0)) return "";
  return i.str();
}

std::string print(const Formula& f);

std::string wrap(const Formula& f, int min_prec) {
  std::string s = print(f);
  if (print_prec(f) < min_prec) return "(" + s + ")";
  return s;
}

std::string print(const Formula& f) {
  switch (f.kind()) {
    case FormulaKind::Atom:
      return f.atom_name();
    case FormulaKind::True:
      return "true";
    case FormulaKind::Not:
      if (f.is_false()) return "false";
      return "!" + wrap(f.child(), 5);
    case FormulaKind::And:
      // Left-associative: a nested right And keeps its parentheses.
      return wrap(f.lhs(), 3) + " & " + (f.rhs().kind() == FormulaKind::And ? "(" + print(f.rhs()) + ")"
                                                                            : wrap(f.rhs(), 3));
    case FormulaKind::Or:
      if (prints_as_implies(f)) {
        return wrap(f.lhs().child(), 2) + " -> " + wrap(f.rhs(), 1);
      }
      return wrap(f.lhs(), 2) + " | " + (f.rhs().kind() == FormulaKind::Or && !prints_as_implies(f.rhs())
                                             ? "(" + print(f.rhs()) + ")"
                                             : wrap(f.rhs(), 2));
    case FormulaKind::Until:
      if (f.lhs().is_true()) return "F" + interval_suffix(f.interval()) + " " + wrap(f.rhs(), 5);
      return wrap(f.lhs(), 5) + " U" + interval_suffix(f.interval()) + " " + wrap(f.rhs(), 4);
    case FormulaKind::Release:
      if (f.lhs().is_false()) return "G" + interval_suffix(f.interval()) + " " + wrap(f.rhs(), 5);
      return wrap(f.lhs(), 5) + " R" + interval_suffix(f.interval()) + " " + wrap(f.rhs(), 4);
  }
  return "";
}

}  // namespace

std::string Formula::str() const { return print(*this); }

TemporalNode TemporalNode::of(const Formula& f) {
  if (!f.is_temporal()) throw std::invalid_argument("TemporalNode::of on non-temporal formula");
  return TemporalNode{f.lhs(),
                      f.kind() == FormulaKind::Until ? TemporalKind::Until : TemporalKind::Release,
                      f.interval(), f.rhs()};
}

Formula TemporalNode::to_formula() const { return Formula::temporal(kind, left, interval, right); }

TemporalNode TemporalNode::with_interval(const Interval& i) const {
  return TemporalNode{left, kind, i, right};
}

unsigned temporal_depth(const Formula& f) {
  switch (f.kind()) {
    case FormulaKind::Atom:
    case FormulaKind::True:
      return 0;
    case FormulaKind::Not:
      return temporal_depth(f.child());
    case FormulaKind::And:
    case FormulaKind::Or:
      return std::max(temporal_depth(f.lhs()), temporal_depth(f.rhs()));
    case FormulaKind::Until:
    case FormulaKind::Release:
      return 1 + std::max(temporal_depth(f.lhs()), temporal_depth(f.rhs()));
  }
  return 0;
}

}  // namespace cegiw
