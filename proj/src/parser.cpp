#include "cegiw/parser.hpp"

#include <cctype>
#include <optional>
#include <utility>
#include <vector>

namespace cegiw {

namespace {

std::string describe_position(std::size_t line, std::size_t column, const std::string& message) {
  return "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + message;
}

enum class TokKind {
  Ident,
  Number,
  True,
  False,
  Inf,
  OpU,
  OpR,
  OpF,
  OpG,
  OpX,
  Bang,
  Amp,
  Pipe,
  Arrow,
  LParen,
  RParen,
  LBracket,
  RBracket,
  Comma,
  Question,
  End,
};

struct Token {
  TokKind kind;
  std::string text;
  std::size_t line;
  std::size_t column;
};

TokKind keyword_kind(const std::string& word) {
  if (word == "true") return TokKind::True;
  if (word == "false") return TokKind::False;
  if (word == "inf") return TokKind::Inf;
  if (word == "U") return TokKind::OpU;
  if (word == "R") return TokKind::OpR;
  if (word == "F") return TokKind::OpF;
  if (word == "G") return TokKind::OpG;
  if (word == "X") return TokKind::OpX;
  return TokKind::Ident;
}

std::vector<Token> lex(const std::string& text) {
  std::vector<Token> out;
  std::size_t i = 0;
  std::size_t line = 1;
  std::size_t column = 1;
  auto push = [&](TokKind kind, std::string tok_text, std::size_t tok_column) {
    out.push_back(Token{kind, std::move(tok_text), line, tok_column});
  };
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
    std::size_t start_column = column;
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < text.size() &&
             (std::isalnum(static_cast<unsigned char>(text[j])) || text[j] == '_')) {
        ++j;
      }
      std::string word = text.substr(i, j - i);
      column += j - i;
      i = j;
      TokKind kind = keyword_kind(word);
      push(kind, std::move(word), start_column);
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) {
        ++j;
      }
      std::string digits = text.substr(i, j - i);
      column += j - i;
      i = j;
      push(TokKind::Number, std::move(digits), start_column);
      continue;
    }
    switch (c) {
      case '!':
        push(TokKind::Bang, "!", start_column);
        break;
      case '&':
        push(TokKind::Amp, "&", start_column);
        break;
      case '|':
        push(TokKind::Pipe, "|", start_column);
        break;
      case '(':
        push(TokKind::LParen, "(", start_column);
        break;
      case ')':
        push(TokKind::RParen, ")", start_column);
        break;
      case '[':
        push(TokKind::LBracket, "[", start_column);
        break;
      case ']':
        push(TokKind::RBracket, "]", start_column);
        break;
      case ',':
        push(TokKind::Comma, ",", start_column);
        break;
      case '?':
        push(TokKind::Question, "?", start_column);
        break;
      case '-':
        if (i + 1 < text.size() && text[i + 1] == '>') {
          push(TokKind::Arrow, "->", start_column);
          ++i;
          ++column;
          break;
        }
        throw ParseError("unexpected character '-'", line, start_column);
      default:
        throw ParseError(std::string("unexpected character '") + c + "'", line, start_column);
    }
    ++i;
    ++column;
  }
  out.push_back(Token{TokKind::End, "", line, column});
  return out;
}

// A parsed subformula plus, when a '?' marker sits inside it, the core-AST
// path from its root to the marked operator.
struct Marked {
  Formula formula;
  std::optional<std::vector<ChildStep>> path;
};

Marked descend(ChildStep step, Marked m) {
  if (m.path) m.path->insert(m.path->begin(), step);
  return m;
}

std::optional<std::vector<ChildStep>> merge_paths(Marked& left, Marked& right) {
  if (left.path) return descend(ChildStep::Left, std::move(left)).path;
  if (right.path) return descend(ChildStep::Right, std::move(right)).path;
  return std::nullopt;
}

class Parser {
 public:
  Parser(const std::string& text, bool allow_marker)
      : tokens_(lex(text)), allow_marker_(allow_marker) {}

  Marked parse() {
    Marked m = parse_implies();
    const Token& t = peek();
    if (t.kind != TokKind::End) {
      throw ParseError("unexpected input after formula", t.line, t.column);
    }
    return m;
  }

  const Token& last() const { return tokens_.back(); }

 private:
  const Token& peek() const { return tokens_[pos_]; }

  Token advance() { return tokens_[pos_++]; }

  Token expect(TokKind kind, const std::string& what) {
    const Token& t = peek();
    if (t.kind != kind) {
      throw ParseError("expected " + what, t.line, t.column);
    }
    return advance();
  }

  Marked parse_implies() {
    Marked left = parse_or();
    if (peek().kind != TokKind::Arrow) return left;
    advance();
    Marked right = parse_implies();
    Formula f = Formula::implies(left.formula, right.formula);
    // l -> r is !l | r, so a marker in l sits under Or-left then Not.
    std::optional<std::vector<ChildStep>> path;
    if (left.path) {
      path = std::move(left.path);
      path->insert(path->begin(), ChildStep::Left);
      path->insert(path->begin(), ChildStep::Left);
    } else if (right.path) {
      path = std::move(right.path);
      path->insert(path->begin(), ChildStep::Right);
    }
    return Marked{std::move(f), std::move(path)};
  }

  Marked parse_or() {
    Marked acc = parse_and();
    while (peek().kind == TokKind::Pipe) {
      advance();
      Marked rhs = parse_and();
      auto path = merge_paths(acc, rhs);
      acc = Marked{Formula::disj(acc.formula, rhs.formula), std::move(path)};
    }
    return acc;
  }

  Marked parse_and() {
    Marked acc = parse_until();
    while (peek().kind == TokKind::Amp) {
      advance();
      Marked rhs = parse_until();
      auto path = merge_paths(acc, rhs);
      acc = Marked{Formula::conj(acc.formula, rhs.formula), std::move(path)};
    }
    return acc;
  }

  Marked parse_until() {
    Marked left = parse_unary();
    TokKind op = peek().kind;
    if (op != TokKind::OpU && op != TokKind::OpR) return left;
    advance();
    Interval iv = parse_optional_interval();
    bool self_marked = try_consume_marker();
    Marked right = parse_until();
    Formula f = op == TokKind::OpU ? Formula::until(left.formula, iv, right.formula)
                                   : Formula::release(left.formula, iv, right.formula);
    std::optional<std::vector<ChildStep>> path;
    if (self_marked) {
      path.emplace();
    } else {
      path = merge_paths(left, right);
    }
    return Marked{std::move(f), std::move(path)};
  }

  Marked parse_unary() {
    const Token& t = peek();
    switch (t.kind) {
      case TokKind::Bang: {
        advance();
        Marked operand = descend(ChildStep::Left, parse_unary());
        return Marked{Formula::negate(operand.formula), std::move(operand.path)};
      }
      case TokKind::OpF:
      case TokKind::OpG: {
        bool is_f = t.kind == TokKind::OpF;
        advance();
        Interval iv = parse_optional_interval();
        bool self_marked = try_consume_marker();
        Marked operand = parse_unary();
        Formula f = is_f ? Formula::eventually(iv, operand.formula)
                         : Formula::globally(iv, operand.formula);
        std::optional<std::vector<ChildStep>> path;
        if (self_marked) {
          path.emplace();
        } else if (operand.path) {
          path = std::move(descend(ChildStep::Right, std::move(operand)).path);
        }
        return Marked{std::move(f), std::move(path)};
      }
      case TokKind::OpX: {
        advance();
        if (peek().kind == TokKind::Question) {
          throw ParseError("X cannot carry a '?' marker", peek().line, peek().column);
        }
        Marked operand = parse_unary();
        Formula f = Formula::next(operand.formula);
        return Marked{std::move(f), std::move(descend(ChildStep::Right, std::move(operand)).path)};
      }
      default:
        return parse_primary();
    }
  }

  Marked parse_primary() {
    const Token& t = peek();
    switch (t.kind) {
      case TokKind::LParen: {
        advance();
        Marked m = parse_implies();
        expect(TokKind::RParen, "')'");
        return m;
      }
      case TokKind::Ident: {
        Token name = advance();
        return Marked{Formula::atom(std::move(name.text)), std::nullopt};
      }
      case TokKind::True:
        advance();
        return Marked{Formula::tru(), std::nullopt};
      case TokKind::False:
        advance();
        return Marked{Formula::fls(), std::nullopt};
      case TokKind::Question:
        throw ParseError("'?' may only follow U, R, F, or G", t.line, t.column);
      default:
        throw ParseError("expected a formula", t.line, t.column);
    }
  }

  Interval parse_optional_interval() {
    if (peek().kind != TokKind::LBracket) return Interval::unbounded(0);
    Token open = advance();
    TimePoint lo = parse_number();
    expect(TokKind::Comma, "','");
    if (peek().kind == TokKind::Inf) {
      advance();
      expect(TokKind::RBracket, "']'");
      return Interval::unbounded(lo);
    }
    TimePoint hi = parse_number();
    expect(TokKind::RBracket, "']'");
    if (hi < lo) {
      throw ParseError("interval lower bound exceeds upper bound", open.line, open.column);
    }
    return Interval::bounded(lo, hi);
  }

  TimePoint parse_number() {
    Token t = expect(TokKind::Number, "a number");
    try {
      return static_cast<TimePoint>(std::stoull(t.text));
    } catch (const std::out_of_range&) {
      throw ParseError("number out of range", t.line, t.column);
    }
  }

  bool try_consume_marker() {
    if (peek().kind != TokKind::Question) return false;
    Token t = advance();
    if (!allow_marker_) {
      throw ParseError("'?' marker is not allowed in a plain formula", t.line, t.column);
    }
    if (marker_seen_) {
      throw ParseError("property contains more than one '?' marker", t.line, t.column);
    }
    marker_seen_ = true;
    return true;
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
  bool allow_marker_;
  bool marker_seen_ = false;
};

}  // namespace

ParseError::ParseError(std::string message, std::size_t line, std::size_t column)
    : std::runtime_error(describe_position(line, column, message)),
      message_(std::move(message)),
      line_(line),
      column_(column) {}

Formula parse_formula(const std::string& text) {
  Parser parser(text, false);
  return parser.parse().formula;
}

ParsedProperty parse_property(const std::string& text) {
  Parser parser(text, true);
  Marked m = parser.parse();
  if (!m.path) {
    const Token& end = parser.last();
    throw ParseError("property requires exactly one '?' marker", end.line, end.column);
  }
  return ParsedProperty{std::move(m.formula), TargetSelection{std::move(*m.path)}};
}

}  // namespace cegiw
