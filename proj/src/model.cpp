#include "cegiw/model.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>
#include <utility>

#include "cegiw/eval.hpp"
#include "cegiw/parser.hpp"

namespace cegiw {

struct Expr::Node {
  ExprKind kind;
  bool const_value = false;
  std::size_t var_a = 0;
  std::uint32_t val = 0;
  std::size_t var_b = 0;
  std::string define_name;
  std::shared_ptr<const Node> l;
  std::shared_ptr<const Node> r;
};

Expr::Node Expr::node_of(ExprKind kind) {
  Node n;
  n.kind = kind;
  return n;
}

Expr Expr::constant(bool value) {
  Node n = node_of(ExprKind::Const);
  n.const_value = value;
  return Expr(std::make_shared<const Node>(std::move(n)));
}

Expr Expr::is_value(std::size_t var, std::uint32_t value) {
  Node n = node_of(ExprKind::IsValue);
  n.var_a = var;
  n.val = value;
  return Expr(std::make_shared<const Node>(std::move(n)));
}

Expr Expr::var_eq(std::size_t lhs_var, std::size_t rhs_var) {
  Node n = node_of(ExprKind::VarEq);
  n.var_a = lhs_var;
  n.var_b = rhs_var;
  return Expr(std::make_shared<const Node>(std::move(n)));
}

Expr Expr::define_ref(std::string name) {
  Node n = node_of(ExprKind::DefineRef);
  n.define_name = std::move(name);
  return Expr(std::make_shared<const Node>(std::move(n)));
}

Expr Expr::negate(Expr e) {
  Node n = node_of(ExprKind::Not);
  n.l = std::move(e.node_);
  return Expr(std::make_shared<const Node>(std::move(n)));
}

Expr Expr::conj(Expr l, Expr r) {
  Node n = node_of(ExprKind::And);
  n.l = std::move(l.node_);
  n.r = std::move(r.node_);
  return Expr(std::make_shared<const Node>(std::move(n)));
}

Expr Expr::disj(Expr l, Expr r) {
  Node n = node_of(ExprKind::Or);
  n.l = std::move(l.node_);
  n.r = std::move(r.node_);
  return Expr(std::make_shared<const Node>(std::move(n)));
}

ExprKind Expr::kind() const { return node_->kind; }

bool Expr::value() const {
  if (node_->kind != ExprKind::Const) throw std::invalid_argument("not a constant");
  return node_->const_value;
}

std::size_t Expr::var() const {
  if (node_->kind != ExprKind::IsValue) throw std::invalid_argument("not a value test");
  return node_->var_a;
}

std::uint32_t Expr::value_index() const {
  if (node_->kind != ExprKind::IsValue) throw std::invalid_argument("not a value test");
  return node_->val;
}

std::size_t Expr::lhs_var() const {
  if (node_->kind != ExprKind::VarEq) throw std::invalid_argument("not a variable comparison");
  return node_->var_a;
}

std::size_t Expr::rhs_var() const {
  if (node_->kind != ExprKind::VarEq) throw std::invalid_argument("not a variable comparison");
  return node_->var_b;
}

const std::string& Expr::name() const {
  if (node_->kind != ExprKind::DefineRef) throw std::invalid_argument("not a define reference");
  return node_->define_name;
}

Expr Expr::child() const {
  if (node_->kind != ExprKind::Not) throw std::invalid_argument("not a negation");
  return Expr(node_->l);
}

Expr Expr::lhs() const {
  if (node_->kind != ExprKind::And && node_->kind != ExprKind::Or)
    throw std::invalid_argument("not a binary expression");
  return Expr(node_->l);
}

Expr Expr::rhs() const {
  if (node_->kind != ExprKind::And && node_->kind != ExprKind::Or)
    throw std::invalid_argument("not a binary expression");
  return Expr(node_->r);
}

bool Expr::nodes_equal(const Expr::Node* a, const Expr::Node* b) {
  if (a == b) return true;
  if (a == nullptr || b == nullptr) return false;
  if (a->kind != b->kind) return false;
  switch (a->kind) {
    case ExprKind::Const:
      return a->const_value == b->const_value;
    case ExprKind::IsValue:
      return a->var_a == b->var_a && a->val == b->val;
    case ExprKind::VarEq:
      return a->var_a == b->var_a && a->var_b == b->var_b;
    case ExprKind::DefineRef:
      return a->define_name == b->define_name;
    case ExprKind::Not:
      return nodes_equal(a->l.get(), b->l.get());
    case ExprKind::And:
    case ExprKind::Or:
      return nodes_equal(a->l.get(), b->l.get()) && nodes_equal(a->r.get(), b->r.get());
  }
  return false;
}

bool Expr::operator==(const Expr& other) const {
  return nodes_equal(node_.get(), other.node_.get());
}

std::optional<std::size_t> Model::variable_index(const std::string& name) const {
  for (std::size_t i = 0; i < variables.size(); ++i) {
    if (variables[i].name == name) return i;
  }
  return std::nullopt;
}

std::optional<std::size_t> Model::define_index(const std::string& name) const {
  for (std::size_t i = 0; i < defines.size(); ++i) {
    if (defines[i].name == name) return i;
  }
  return std::nullopt;
}

bool eval_expr(const Model& m, const Expr& e, const Valuation& v) {
  switch (e.kind()) {
    case ExprKind::Const:
      return e.value();
    case ExprKind::IsValue:
      return v[e.var()] == e.value_index();
    case ExprKind::VarEq: {
      const Variable& a = m.variables[e.lhs_var()];
      const Variable& b = m.variables[e.rhs_var()];
      return a.values[v[e.lhs_var()]] == b.values[v[e.rhs_var()]];
    }
    case ExprKind::DefineRef: {
      auto idx = m.define_index(e.name());
      if (!idx) throw ModelError("undefined name '" + e.name() + "'");
      return eval_expr(m, m.defines[*idx].expr, v);
    }
    case ExprKind::Not:
      return !eval_expr(m, e.child(), v);
    case ExprKind::And:
      return eval_expr(m, e.lhs(), v) && eval_expr(m, e.rhs(), v);
    case ExprKind::Or:
      return eval_expr(m, e.lhs(), v) || eval_expr(m, e.rhs(), v);
  }
  throw std::logic_error("unhandled expression kind");
}

// ---------------------------------------------------------------------------
// Parsing

namespace {

enum class MTok {
  Ident,
  LBrace,
  RBrace,
  Colon,
  Semi,
  Comma,
  Assign,  // :=
  Eq,
  Neq,
  Bang,
  Amp,
  Pipe,
  Arrow,
  LParen,
  RParen,
  End,
};

struct MToken {
  MTok kind;
  std::string text;
  std::size_t line;
  std::size_t column;
};

std::vector<MToken> lex_model(const std::string& text) {
  std::vector<MToken> out;
  std::size_t i = 0;
  std::size_t line = 1;
  std::size_t column = 1;
  while (i < text.size()) {
    char c = text[i];
    if (c == '\n') {
      ++i;
      ++line;
      column = 1;
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      ++column;
      continue;
    }
    if (c == '-' && i + 1 < text.size() && text[i + 1] == '-') {
      while (i < text.size() && text[i] != '\n') ++i;
      continue;
    }
    std::size_t start_column = column;
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < text.size() &&
             (std::isalnum(static_cast<unsigned char>(text[j])) || text[j] == '_')) {
        ++j;
      }
      out.push_back(MToken{MTok::Ident, text.substr(i, j - i), line, start_column});
      column += j - i;
      i = j;
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      // Numeric value names (b0, 12, ...) are identifiers in this format.
      std::size_t j = i;
      while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) {
        ++j;
      }
      out.push_back(MToken{MTok::Ident, text.substr(i, j - i), line, start_column});
      column += j - i;
      i = j;
      continue;
    }
    auto single = [&](MTok kind, const char* tok_text) {
      out.push_back(MToken{kind, tok_text, line, start_column});
      ++i;
      ++column;
    };
    switch (c) {
      case '{':
        single(MTok::LBrace, "{");
        break;
      case '}':
        single(MTok::RBrace, "}");
        break;
      case ';':
        single(MTok::Semi, ";");
        break;
      case ',':
        single(MTok::Comma, ",");
        break;
      case '(':
        single(MTok::LParen, "(");
        break;
      case ')':
        single(MTok::RParen, ")");
        break;
      case '&':
        single(MTok::Amp, "&");
        break;
      case '|':
        single(MTok::Pipe, "|");
        break;
      case '=':
        single(MTok::Eq, "=");
        break;
      case ':':
        if (i + 1 < text.size() && text[i + 1] == '=') {
          out.push_back(MToken{MTok::Assign, ":=", line, start_column});
          i += 2;
          column += 2;
        } else {
          single(MTok::Colon, ":");
        }
        break;
      case '!':
        if (i + 1 < text.size() && text[i + 1] == '=') {
          out.push_back(MToken{MTok::Neq, "!=", line, start_column});
          i += 2;
          column += 2;
        } else {
          single(MTok::Bang, "!");
        }
        break;
      case '-':
        if (i + 1 < text.size() && text[i + 1] == '>') {
          out.push_back(MToken{MTok::Arrow, "->", line, start_column});
          i += 2;
          column += 2;
        } else {
          throw ParseError("unexpected character '-'", line, start_column);
        }
        break;
      default:
        throw ParseError(std::string("unexpected character '") + c + "'", line, start_column);
    }
  }
  out.push_back(MToken{MTok::End, "", line, column});
  return out;
}

const std::set<std::string>& reserved_words() {
  static const std::set<std::string> words = {"VAR",  "INIT",    "TRANS", "DEFINE", "boolean",
                                              "next", "default", "true",  "false"};
  return words;
}

bool is_section_keyword(const MToken& t) {
  return t.kind == MTok::Ident &&
         (t.text == "VAR" || t.text == "INIT" || t.text == "TRANS" || t.text == "DEFINE");
}

class ModelParser {
 public:
  explicit ModelParser(const std::string& text) : tokens_(lex_model(text)) {}

  Model parse() {
    while (peek().kind != MTok::End) {
      MToken section = expect_ident("a section keyword (VAR, INIT, TRANS, DEFINE)");
      if (section.text == "VAR") {
        parse_var_section();
      } else if (section.text == "INIT") {
        parse_init_section();
      } else if (section.text == "TRANS") {
        parse_trans_section();
      } else if (section.text == "DEFINE") {
        parse_define_section();
      } else {
        throw ParseError("expected a section keyword (VAR, INIT, TRANS, DEFINE)", section.line,
                         section.column);
      }
    }
    if (!init_) init_ = Expr::constant(true);
    model_.init = *init_;
    finalize();
    return model_;
  }

 private:
  const MToken& peek() const { return tokens_[pos_]; }

  MToken advance() { return tokens_[pos_++]; }

  MToken expect(MTok kind, const std::string& what) {
    const MToken& t = peek();
    if (t.kind != kind) throw ParseError("expected " + what, t.line, t.column);
    return advance();
  }

  MToken expect_ident(const std::string& what) { return expect(MTok::Ident, what); }

  bool at_section_boundary() const {
    return peek().kind == MTok::End || is_section_keyword(peek());
  }

  void check_declarable(const MToken& name) {
    if (reserved_words().count(name.text)) {
      throw ParseError("'" + name.text + "' is a reserved word", name.line, name.column);
    }
    if (model_.variable_index(name.text) || declared_defines_.count(name.text)) {
      throw ParseError("duplicate name '" + name.text + "'", name.line, name.column);
    }
  }

  void parse_var_section() {
    while (!at_section_boundary()) {
      MToken name = expect_ident("a variable name");
      check_declarable(name);
      expect(MTok::Colon, "':'");
      Variable var;
      var.name = name.text;
      if (peek().kind == MTok::Ident && peek().text == "boolean") {
        advance();
        var.values = {"false", "true"};
        var.is_boolean = true;
      } else {
        expect(MTok::LBrace, "'{' or 'boolean'");
        while (true) {
          MToken value = expect_ident("a value name");
          if (reserved_words().count(value.text)) {
            throw ParseError("'" + value.text + "' is a reserved word", value.line, value.column);
          }
          if (std::find(var.values.begin(), var.values.end(), value.text) != var.values.end()) {
            throw ParseError("duplicate value '" + value.text + "' in '" + var.name + "'",
                             value.line, value.column);
          }
          var.values.push_back(value.text);
          if (peek().kind == MTok::Comma) {
            advance();
            continue;
          }
          break;
        }
        expect(MTok::RBrace, "'}'");
      }
      expect(MTok::Semi, "';'");
      model_.variables.push_back(std::move(var));
    }
  }

  void parse_init_section() {
    while (!at_section_boundary()) {
      Expr e = parse_expr();
      expect(MTok::Semi, "';'");
      init_ = init_ ? Expr::conj(*init_, e) : e;
    }
  }

  void parse_trans_section() {
    while (!at_section_boundary()) {
      TransitionRule rule;
      if (peek().kind == MTok::Ident && peek().text == "default") {
        advance();
      } else {
        rule.guard = parse_expr();
      }
      expect(MTok::Colon, "':'");
      MToken next_kw = expect_ident("'next'");
      if (next_kw.text != "next") {
        throw ParseError("expected 'next'", next_kw.line, next_kw.column);
      }
      expect(MTok::LParen, "'('");
      MToken var_name = expect_ident("a variable name");
      auto var_idx = model_.variable_index(var_name.text);
      if (!var_idx) {
        throw ParseError("undeclared variable '" + var_name.text + "'", var_name.line,
                         var_name.column);
      }
      rule.var = *var_idx;
      expect(MTok::RParen, "')'");
      expect(MTok::Eq, "'='");
      MToken rhs = expect_ident("a value or variable name");
      rule.rhs = resolve_next_rhs(*var_idx, rhs);
      expect(MTok::Semi, "';'");
      if (!rule.guard) {
        for (const TransitionRule& existing : model_.rules) {
          if (!existing.guard && existing.var == rule.var) {
            throw ParseError("duplicate default rule for '" + var_name.text + "'", var_name.line,
                             var_name.column);
          }
        }
      }
      model_.rules.push_back(std::move(rule));
    }
  }

  NextRhs resolve_next_rhs(std::size_t target, const MToken& rhs) {
    const Variable& var = model_.variables[target];
    auto it = std::find(var.values.begin(), var.values.end(), rhs.text);
    if (it != var.values.end()) {
      NextRhs out;
      out.kind = NextRhs::Kind::Value;
      out.value = static_cast<std::uint32_t>(it - var.values.begin());
      return out;
    }
    auto src = model_.variable_index(rhs.text);
    if (src) {
      const Variable& source = model_.variables[*src];
      for (const std::string& value : source.values) {
        if (std::find(var.values.begin(), var.values.end(), value) == var.values.end()) {
          throw ParseError("'" + rhs.text + "' can hold '" + value + "', which is not a value of '" +
                               var.name + "'",
                           rhs.line, rhs.column);
        }
      }
      NextRhs out;
      out.kind = NextRhs::Kind::Var;
      out.var = *src;
      return out;
    }
    throw ParseError("'" + rhs.text + "' is neither a value of '" + var.name + "' nor a variable",
                     rhs.line, rhs.column);
  }

  void parse_define_section() {
    while (!at_section_boundary()) {
      MToken name = expect_ident("a define name");
      check_declarable(name);
      expect(MTok::Assign, "':='");
      Expr e = parse_expr();
      expect(MTok::Semi, "';'");
      declared_defines_.insert(name.text);
      model_.defines.push_back(Define{name.text, e});
    }
  }

  // Same connective precedence as formulas: -> below | below & below !.
  Expr parse_expr() {
    Expr left = parse_or();
    if (peek().kind != MTok::Arrow) return left;
    advance();
    Expr right = parse_expr();
    return Expr::disj(Expr::negate(left), right);
  }

  Expr parse_or() {
    Expr acc = parse_and();
    while (peek().kind == MTok::Pipe) {
      advance();
      acc = Expr::disj(acc, parse_and());
    }
    return acc;
  }

  Expr parse_and() {
    Expr acc = parse_unary();
    while (peek().kind == MTok::Amp) {
      advance();
      acc = Expr::conj(acc, parse_unary());
    }
    return acc;
  }

  Expr parse_unary() {
    if (peek().kind == MTok::Bang) {
      advance();
      return Expr::negate(parse_unary());
    }
    return parse_primary();
  }

  Expr parse_primary() {
    const MToken& t = peek();
    if (t.kind == MTok::LParen) {
      advance();
      Expr e = parse_expr();
      expect(MTok::RParen, "')'");
      return e;
    }
    MToken name = expect_ident("an expression");
    if (name.text == "true") return Expr::constant(true);
    if (name.text == "false") return Expr::constant(false);
    if (peek().kind == MTok::Eq || peek().kind == MTok::Neq) {
      bool negated = advance().kind == MTok::Neq;
      auto var_idx = model_.variable_index(name.text);
      if (!var_idx) {
        throw ParseError("undeclared variable '" + name.text + "'", name.line, name.column);
      }
      MToken rhs = expect_ident("a value or variable name");
      Expr e = resolve_comparison(*var_idx, rhs);
      return negated ? Expr::negate(e) : e;
    }
    auto var_idx = model_.variable_index(name.text);
    if (var_idx) {
      const Variable& var = model_.variables[*var_idx];
      if (!var.is_boolean) {
        throw ParseError("variable '" + name.text + "' is not boolean", name.line, name.column);
      }
      return Expr::is_value(*var_idx, 1);
    }
    // Defines may be referenced before their section; resolved in finalize.
    return Expr::define_ref(name.text);
  }

  Expr resolve_comparison(std::size_t var_idx, const MToken& rhs) {
    const Variable& var = model_.variables[var_idx];
    auto it = std::find(var.values.begin(), var.values.end(), rhs.text);
    if (it != var.values.end()) {
      return Expr::is_value(var_idx, static_cast<std::uint32_t>(it - var.values.begin()));
    }
    auto src = model_.variable_index(rhs.text);
    if (src) return Expr::var_eq(var_idx, *src);
    throw ParseError("'" + rhs.text + "' is neither a value of '" + var.name + "' nor a variable",
                     rhs.line, rhs.column);
  }

  void collect_refs(const Expr& e, std::set<std::string>& out) {
    switch (e.kind()) {
      case ExprKind::DefineRef:
        out.insert(e.name());
        return;
      case ExprKind::Not:
        collect_refs(e.child(), out);
        return;
      case ExprKind::And:
      case ExprKind::Or:
        collect_refs(e.lhs(), out);
        collect_refs(e.rhs(), out);
        return;
      default:
        return;
    }
  }

  void finalize() {
    if (model_.variables.empty()) throw ModelError("model declares no variables");

    std::set<std::string> refs;
    collect_refs(model_.init, refs);
    for (const TransitionRule& rule : model_.rules) {
      if (rule.guard) collect_refs(*rule.guard, refs);
    }
    for (const Define& d : model_.defines) collect_refs(d.expr, refs);
    for (const std::string& name : refs) {
      if (!model_.define_index(name)) throw ModelError("undefined name '" + name + "'");
    }

    check_define_cycles();

    std::vector<Valuation> frontier = initial_states(model_);
    if (frontier.empty()) throw ModelError("no state satisfies INIT");
    std::set<Valuation> seen(frontier.begin(), frontier.end());
    while (!frontier.empty()) {
      Valuation v = std::move(frontier.back());
      frontier.pop_back();
      std::vector<Valuation> next = successors(model_, v);
      if (next.empty()) {
        throw ModelError("deadlocking state: " + valuation_str(model_, v));
      }
      for (Valuation& s : next) {
        if (seen.insert(s).second) frontier.push_back(std::move(s));
      }
    }
  }

  void check_define_cycles() {
    // 0 unvisited, 1 in progress, 2 done.
    std::map<std::string, int> mark;
    for (const Define& d : model_.defines) {
      visit_define(d.name, mark);
    }
  }

  void visit_define(const std::string& name, std::map<std::string, int>& mark) {
    int& state = mark[name];
    if (state == 2) return;
    if (state == 1) throw ModelError("circular definition of '" + name + "'");
    state = 1;
    auto idx = model_.define_index(name);
    std::set<std::string> refs;
    collect_refs(model_.defines[*idx].expr, refs);
    for (const std::string& ref : refs) {
      if (model_.define_index(ref)) visit_define(ref, mark);
    }
    mark[name] = 2;
  }

  std::vector<MToken> tokens_;
  std::size_t pos_ = 0;
  Model model_;
  std::optional<Expr> init_;
  std::set<std::string> declared_defines_;
};

}  // namespace

Model parse_model(const std::string& text) { return ModelParser(text).parse(); }

// ---------------------------------------------------------------------------
// Printing

namespace {

bool prints_as_equality(const Model& m, const Expr& e) {
  if (e.kind() == ExprKind::VarEq) return true;
  if (e.kind() != ExprKind::IsValue) return false;
  const Variable& var = m.variables[e.var()];
  return !(var.is_boolean && e.value_index() == 1);
}

std::string equality_str(const Model& m, const Expr& e, const char* op) {
  if (e.kind() == ExprKind::VarEq) {
    return m.variables[e.lhs_var()].name + " " + op + " " + m.variables[e.rhs_var()].name;
  }
  const Variable& var = m.variables[e.var()];
  return var.name + " " + op + " " + var.values[e.value_index()];
}

int expr_precedence(const Model& m, const Expr& e) {
  switch (e.kind()) {
    case ExprKind::Or:
      return 1;
    case ExprKind::And:
      return 2;
    case ExprKind::Not:
      return prints_as_equality(m, e.child()) ? 3 : 4;
    case ExprKind::IsValue:
    case ExprKind::VarEq:
      return prints_as_equality(m, e) ? 3 : 4;
    default:
      return 4;
  }
}

std::string expr_str_prec(const Model& m, const Expr& e, int min_prec) {
  std::string out;
  switch (e.kind()) {
    case ExprKind::Const:
      out = e.value() ? "true" : "false";
      break;
    case ExprKind::IsValue:
      out = prints_as_equality(m, e) ? equality_str(m, e, "=") : m.variables[e.var()].name;
      break;
    case ExprKind::VarEq:
      out = equality_str(m, e, "=");
      break;
    case ExprKind::DefineRef:
      out = e.name();
      break;
    case ExprKind::Not: {
      Expr c = e.child();
      out = prints_as_equality(m, c) ? equality_str(m, c, "!=")
                                     : "!" + expr_str_prec(m, c, 4);
      break;
    }
    case ExprKind::And:
      out = expr_str_prec(m, e.lhs(), 2) + " & " + expr_str_prec(m, e.rhs(), 3);
      break;
    case ExprKind::Or:
      out = expr_str_prec(m, e.lhs(), 1) + " | " + expr_str_prec(m, e.rhs(), 2);
      break;
  }
  if (expr_precedence(m, e) < min_prec) return "(" + out + ")";
  return out;
}

}  // namespace

std::string expr_str(const Model& m, const Expr& e) { return expr_str_prec(m, e, 0); }

std::string valuation_str(const Model& m, const Valuation& v) {
  std::string out;
  for (std::size_t i = 0; i < m.variables.size(); ++i) {
    if (i) out += ", ";
    out += m.variables[i].name + "=" + m.variables[i].values[v[i]];
  }
  return out;
}

std::string emit_model(const Model& m) {
  std::string out = "VAR\n";
  for (const Variable& var : m.variables) {
    out += "  " + var.name + " : ";
    if (var.is_boolean) {
      out += "boolean";
    } else {
      out += "{";
      for (std::size_t i = 0; i < var.values.size(); ++i) {
        if (i) out += ", ";
        out += var.values[i];
      }
      out += "}";
    }
    out += ";\n";
  }
  if (m.init != Expr::constant(true)) {
    out += "INIT\n  " + expr_str(m, m.init) + ";\n";
  }
  if (!m.rules.empty()) {
    out += "TRANS\n";
    for (const TransitionRule& rule : m.rules) {
      out += "  ";
      out += rule.guard ? expr_str(m, *rule.guard) : "default";
      out += " : next(" + m.variables[rule.var].name + ") = ";
      out += rule.rhs.kind == NextRhs::Kind::Value
                 ? m.variables[rule.var].values[rule.rhs.value]
                 : m.variables[rule.rhs.var].name;
      out += ";\n";
    }
  }
  if (!m.defines.empty()) {
    out += "DEFINE\n";
    for (const Define& d : m.defines) {
      out += "  " + d.name + " := " + expr_str(m, d.expr) + ";\n";
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Semantics

std::vector<Valuation> initial_states(const Model& m) {
  std::vector<Valuation> out;
  Valuation v(m.variables.size(), 0);
  while (true) {
    if (eval_expr(m, m.init, v)) out.push_back(v);
    std::size_t i = m.variables.size();
    while (i > 0) {
      --i;
      if (++v[i] < m.variables[i].values.size()) break;
      v[i] = 0;
      if (i == 0) return out;
    }
    if (m.variables.empty()) return out;
  }
}

std::vector<Valuation> successors(const Model& m, const Valuation& v) {
  std::vector<std::vector<std::uint32_t>> choices(m.variables.size());
  for (std::size_t i = 0; i < m.variables.size(); ++i) {
    auto next_value = [&](const TransitionRule& rule) -> std::uint32_t {
      if (rule.rhs.kind == NextRhs::Kind::Value) return rule.rhs.value;
      const std::string& held = m.variables[rule.rhs.var].values[v[rule.rhs.var]];
      const std::vector<std::string>& domain = m.variables[i].values;
      auto it = std::find(domain.begin(), domain.end(), held);
      if (it == domain.end()) throw std::logic_error("copied value missing from domain");
      return static_cast<std::uint32_t>(it - domain.begin());
    };
    for (const TransitionRule& rule : m.rules) {
      if (rule.var != i || !rule.guard) continue;
      if (eval_expr(m, *rule.guard, v)) choices[i].push_back(next_value(rule));
    }
    if (choices[i].empty()) {
      for (const TransitionRule& rule : m.rules) {
        if (rule.var == i && !rule.guard) {
          choices[i].push_back(next_value(rule));
          break;
        }
      }
    }
    if (choices[i].empty()) return {};
    std::sort(choices[i].begin(), choices[i].end());
    choices[i].erase(std::unique(choices[i].begin(), choices[i].end()), choices[i].end());
  }
  std::vector<Valuation> out;
  Valuation next(m.variables.size());
  std::vector<std::size_t> pick(m.variables.size(), 0);
  while (true) {
    for (std::size_t i = 0; i < m.variables.size(); ++i) next[i] = choices[i][pick[i]];
    out.push_back(next);
    std::size_t i = m.variables.size();
    while (i > 0) {
      --i;
      if (++pick[i] < choices[i].size()) break;
      pick[i] = 0;
      if (i == 0) return out;
    }
  }
}

State project(const Model& m, const Valuation& v) {
  State s;
  for (const Define& d : m.defines) {
    if (eval_expr(m, d.expr, v)) s.insert(d.name);
  }
  return s;
}

// ---------------------------------------------------------------------------
// Lasso enumeration

namespace {

std::string flattened_states(const LassoTrace& t) {
  std::string out;
  auto add = [&](const State& s) {
    out += "{";
    bool first = true;
    for (const std::string& atom : s) {
      if (!first) out += ",";
      out += atom;
      first = false;
    }
    out += "} ";
  };
  for (const State& s : t.prefix()) add(s);
  for (const State& s : t.suffix()) add(s);
  return out;
}

}  // namespace

bool trace_order_less(const LassoTrace& a, const LassoTrace& b) {
  if (a.total_length() != b.total_length()) return a.total_length() < b.total_length();
  std::string fa = flattened_states(a);
  std::string fb = flattened_states(b);
  if (fa != fb) return fa < fb;
  return a.suffix().size() < b.suffix().size();
}

void enumerate_lassos(const Model& m, std::uint64_t bound,
                      const std::function<bool(const LassoTrace&)>& callback) {
  std::vector<Valuation> inits = initial_states(m);
  std::map<Valuation, std::vector<Valuation>> successor_memo;
  auto succs = [&](const Valuation& v) -> const std::vector<Valuation>& {
    auto it = successor_memo.find(v);
    if (it == successor_memo.end()) it = successor_memo.emplace(v, successors(m, v)).first;
    return it->second;
  };

  std::set<std::string> emitted;
  std::vector<Valuation> path;
  std::vector<State> projected;

  for (std::uint64_t length = 1; length <= bound; ++length) {
    std::map<std::string, LassoTrace> batch;

    auto collect = [&]() {
      for (const Valuation& s : succs(path.back())) {
        for (std::size_t j = 0; j < path.size(); ++j) {
          if (path[j] != s) continue;
          std::vector<State> prefix(projected.begin(), projected.begin() + j);
          std::vector<State> suffix(projected.begin() + j, projected.end());
          LassoTrace trace(std::move(prefix), std::move(suffix));
          std::string key = trace_key(trace);
          if (!emitted.count(key)) batch.emplace(std::move(key), std::move(trace));
        }
      }
    };

    std::function<void()> dfs = [&]() {
      if (path.size() == length) {
        collect();
        return;
      }
      for (const Valuation& s : succs(path.back())) {
        path.push_back(s);
        projected.push_back(project(m, s));
        dfs();
        path.pop_back();
        projected.pop_back();
      }
    };

    for (const Valuation& v0 : inits) {
      path.assign(1, v0);
      projected.assign(1, project(m, v0));
      dfs();
    }

    std::vector<LassoTrace> ordered;
    ordered.reserve(batch.size());
    for (auto& entry : batch) ordered.push_back(std::move(entry.second));
    std::sort(ordered.begin(), ordered.end(), trace_order_less);
    for (LassoTrace& trace : ordered) {
      emitted.insert(trace_key(trace));
      if (!callback(trace)) return;
    }
  }
}

std::vector<LassoTrace> enumerate_lassos(const Model& m, std::uint64_t bound) {
  std::vector<LassoTrace> out;
  enumerate_lassos(m, bound, [&](const LassoTrace& trace) {
    out.push_back(trace);
    return true;
  });
  return out;
}

CheckVerdict check_bounded(const Model& m, const Formula& phi, std::uint64_t bound,
                           std::size_t max_counterexamples) {
  CheckVerdict verdict;
  verdict.bound = bound;
  std::vector<LassoTrace> violating;
  enumerate_lassos(m, bound, [&](const LassoTrace& trace) {
    if (!holds(trace, phi)) violating.push_back(trace);
    return true;
  });
  if (violating.empty()) {
    verdict.holds = true;
    return verdict;
  }
  // Later iterations can surface canonically shorter traces, so the stream is
  // only sorted per batch; restore the global order before truncating.
  std::sort(violating.begin(), violating.end(), trace_order_less);
  if (violating.size() > max_counterexamples)
    violating.erase(violating.begin() + static_cast<std::ptrdiff_t>(max_counterexamples), violating.end());
  verdict.counterexamples = std::move(violating);
  return verdict;
}

}  // namespace cegiw
