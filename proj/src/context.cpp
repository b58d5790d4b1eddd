#include "cegiw/context.hpp"

#include <stdexcept>
#include <utility>

namespace cegiw {

struct Context::Node {
  ContextKind kind;
  std::shared_ptr<const Node> inner;  // null for Hole
  Formula operand;                    // unused for Hole
  Interval interval;                  // UntilL/R, ReleaseL/R
};

Context Context::hole() {
  static const Context h(std::make_shared<const Node>(Node{ContextKind::Hole, nullptr, Formula::tru(), Interval()}));
  return h;
}

Context Context::and_l(Context inner, Formula operand) {
  return Context(std::make_shared<const Node>(Node{ContextKind::AndL, std::move(inner.node_), std::move(operand), Interval()}));
}
Context Context::and_r(Formula operand, Context inner) {
  return Context(std::make_shared<const Node>(Node{ContextKind::AndR, std::move(inner.node_), std::move(operand), Interval()}));
}
Context Context::or_l(Context inner, Formula operand) {
  return Context(std::make_shared<const Node>(Node{ContextKind::OrL, std::move(inner.node_), std::move(operand), Interval()}));
}
Context Context::or_r(Formula operand, Context inner) {
  return Context(std::make_shared<const Node>(Node{ContextKind::OrR, std::move(inner.node_), std::move(operand), Interval()}));
}
Context Context::until_l(Context inner, const Interval& i, Formula operand) {
  return Context(std::make_shared<const Node>(Node{ContextKind::UntilL, std::move(inner.node_), std::move(operand), i}));
}
Context Context::until_r(Formula operand, const Interval& i, Context inner) {
  return Context(std::make_shared<const Node>(Node{ContextKind::UntilR, std::move(inner.node_), std::move(operand), i}));
}
Context Context::release_l(Context inner, const Interval& i, Formula operand) {
  return Context(std::make_shared<const Node>(Node{ContextKind::ReleaseL, std::move(inner.node_), std::move(operand), i}));
}
Context Context::release_r(Formula operand, const Interval& i, Context inner) {
  return Context(std::make_shared<const Node>(Node{ContextKind::ReleaseR, std::move(inner.node_), std::move(operand), i}));
}

ContextKind Context::kind() const { return node_->kind; }

Context Context::inner() const {
  if (!node_->inner) throw std::logic_error("inner on hole context");
  return Context(node_->inner);
}

const Formula& Context::operand() const {
  if (is_hole()) throw std::logic_error("operand on hole context");
  return node_->operand;
}

const Interval& Context::interval() const {
  switch (kind()) {
    case ContextKind::UntilL:
    case ContextKind::UntilR:
    case ContextKind::ReleaseL:
    case ContextKind::ReleaseR:
      return node_->interval;
    default:
      throw std::logic_error("interval on non-temporal context node");
  }
}

bool Context::operator==(const Context& other) const {
  if (node_ == other.node_) return true;
  if (kind() != other.kind()) return false;
  if (is_hole()) return true;
  switch (kind()) {
    case ContextKind::UntilL:
    case ContextKind::UntilR:
    case ContextKind::ReleaseL:
    case ContextKind::ReleaseR:
      if (!(node_->interval == other.node_->interval)) return false;
      break;
    default:
      break;
  }
  return operand() == other.operand() && inner() == other.inner();
}

Formula substitute(const Context& c, const Formula& f) {
  switch (c.kind()) {
    case ContextKind::Hole:
      return f;
    case ContextKind::AndL:
      return Formula::conj(substitute(c.inner(), f), c.operand());
    case ContextKind::AndR:
      return Formula::conj(c.operand(), substitute(c.inner(), f));
    case ContextKind::OrL:
      return Formula::disj(substitute(c.inner(), f), c.operand());
    case ContextKind::OrR:
      return Formula::disj(c.operand(), substitute(c.inner(), f));
    case ContextKind::UntilL:
      return Formula::until(substitute(c.inner(), f), c.interval(), c.operand());
    case ContextKind::UntilR:
      return Formula::until(c.operand(), c.interval(), substitute(c.inner(), f));
    case ContextKind::ReleaseL:
      return Formula::release(substitute(c.inner(), f), c.interval(), c.operand());
    case ContextKind::ReleaseR:
      return Formula::release(c.operand(), c.interval(), substitute(c.inner(), f));
  }
  return f;
}

Extraction extract(const Formula& f, const TargetSelection& sel) {
  struct Frame {
    ContextKind kind;
    Formula operand;
    Interval interval;
  };
  std::vector<Frame> frames;  // outermost first

  Formula cur = f;
  bool neg = false;
  std::size_t idx = 0;

  while (idx < sel.path.size()) {
    const ChildStep step = sel.path[idx];
    switch (cur.kind()) {
      case FormulaKind::Atom:
      case FormulaKind::True:
        throw std::invalid_argument("selection path descends below a leaf");
      case FormulaKind::Not:
        if (step != ChildStep::Left) throw std::invalid_argument("selection path leaves the tree at a negation");
        neg = !neg;
        cur = cur.child();
        ++idx;
        continue;
      case FormulaKind::And:
      case FormulaKind::Or: {
        const bool is_and = (cur.kind() == FormulaKind::And) != neg;  // And under even negations
        Formula displaced = step == ChildStep::Left ? cur.rhs() : cur.lhs();
        if (neg) displaced = Formula::negate(displaced);
        ContextKind k = step == ChildStep::Left ? (is_and ? ContextKind::AndL : ContextKind::OrL)
                                                : (is_and ? ContextKind::AndR : ContextKind::OrR);
        frames.push_back(Frame{k, std::move(displaced), Interval()});
        cur = step == ChildStep::Left ? cur.lhs() : cur.rhs();
        ++idx;
        continue;
      }
      case FormulaKind::Until:
      case FormulaKind::Release: {
        const bool is_until = (cur.kind() == FormulaKind::Until) != neg;
        Formula displaced = step == ChildStep::Left ? cur.rhs() : cur.lhs();
        if (neg) displaced = Formula::negate(displaced);
        ContextKind k = step == ChildStep::Left ? (is_until ? ContextKind::UntilL : ContextKind::ReleaseL)
                                                : (is_until ? ContextKind::UntilR : ContextKind::ReleaseR);
        frames.push_back(Frame{k, std::move(displaced), cur.interval()});
        cur = step == ChildStep::Left ? cur.lhs() : cur.rhs();
        ++idx;
        continue;
      }
    }
  }

  // Markers sit on operators, not operands, so the addressed node itself may
  // still carry negations in front of it.
  while (cur.kind() == FormulaKind::Not) {
    neg = !neg;
    cur = cur.child();
  }
  if (!cur.is_temporal()) throw std::invalid_argument("selection does not address a temporal operator");

  TemporalNode target = TemporalNode::of(cur);
  if (neg) {
    target = TemporalNode{Formula::negate(target.left),
                          target.kind == TemporalKind::Until ? TemporalKind::Release : TemporalKind::Until,
                          target.interval, Formula::negate(target.right)};
  }

  Context c = Context::hole();
  for (auto it = frames.rbegin(); it != frames.rend(); ++it) {
    switch (it->kind) {
      case ContextKind::AndL:
        c = Context::and_l(std::move(c), it->operand);
        break;
      case ContextKind::AndR:
        c = Context::and_r(it->operand, std::move(c));
        break;
      case ContextKind::OrL:
        c = Context::or_l(std::move(c), it->operand);
        break;
      case ContextKind::OrR:
        c = Context::or_r(it->operand, std::move(c));
        break;
      case ContextKind::UntilL:
        c = Context::until_l(std::move(c), it->interval, it->operand);
        break;
      case ContextKind::UntilR:
        c = Context::until_r(it->operand, it->interval, std::move(c));
        break;
      case ContextKind::ReleaseL:
        c = Context::release_l(std::move(c), it->interval, it->operand);
        break;
      case ContextKind::ReleaseR:
        c = Context::release_r(it->operand, it->interval, std::move(c));
        break;
      case ContextKind::Hole:
        break;
    }
  }
  return Extraction{std::move(c), std::move(target)};
}

}  // namespace cegiw
