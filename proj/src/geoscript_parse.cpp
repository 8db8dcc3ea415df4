#include <cctype>
#include <map>
#include <set>
#include <sstream>

#include "compass/geoscript.hpp"

namespace compass {

ScriptError::ScriptError(Kind kind, SourcePos pos, const std::string& message)
    : std::runtime_error(std::to_string(pos.line) + ":" + std::to_string(pos.column) + ": " + message),
      kind_(kind),
      pos_(pos) {}

bool operator==(const Expr& x, const Expr& y) {
  if (x.kind != y.kind || x.value != y.value || x.a != y.a || x.b != y.b) return false;
  auto same = [](const ExprPtr& p, const ExprPtr& q) { return (!p && !q) || (p && q && *p == *q); };
  return same(x.lhs, y.lhs) && same(x.rhs, y.rhs);
}

bool operator==(const AssertStmt& x, const AssertStmt& y) {
  if (x.kind != y.kind || x.names != y.names) return false;
  if (!x.rhs || !y.rhs) return !x.rhs && !y.rhs;
  return *x.rhs == *y.rhs;
}

namespace {

enum class Tok {
  Ident, Int, LParen, RParen, Comma, Semi, Assign, EqEq,
  LBracket, RBracket, Plus, Minus, Star, Slash, End
};

struct Token {
  Tok kind;
  std::string text;
  SourcePos pos;
};

const std::set<std::string, std::less<>> kKeywords = {
    "point", "line",     "circle",  "through", "radius", "intersect", "assert", "nearest",
    "farthest", "leftof", "rightof", "dist2",   "on",     "collinear", "sqrt",
};

std::vector<Token> lex(std::string_view src) {
  std::vector<Token> out;
  SourcePos pos;
  std::size_t i = 0;
  auto advance = [&] {
    if (src[i] == '\n') {
      ++pos.line;
      pos.column = 1;
    } else {
      ++pos.column;
    }
    ++i;
  };
  while (i < src.size()) {
    const char c = src[i];
    if (c == '#') {
      while (i < src.size() && src[i] != '\n') advance();
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance();
      continue;
    }
    const SourcePos start = pos;
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::string word;
      while (i < src.size() && (std::isalnum(static_cast<unsigned char>(src[i])) || src[i] == '_')) {
        word += src[i];
        advance();
      }
      out.push_back({Tok::Ident, word, start});
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::string digits;
      while (i < src.size() && std::isdigit(static_cast<unsigned char>(src[i]))) {
        digits += src[i];
        advance();
      }
      out.push_back({Tok::Int, digits, start});
      continue;
    }
    Tok kind;
    std::string text(1, c);
    switch (c) {
      case '(': kind = Tok::LParen; break;
      case ')': kind = Tok::RParen; break;
      case ',': kind = Tok::Comma; break;
      case ';': kind = Tok::Semi; break;
      case '[': kind = Tok::LBracket; break;
      case ']': kind = Tok::RBracket; break;
      case '+': kind = Tok::Plus; break;
      case '-': kind = Tok::Minus; break;
      case '*': kind = Tok::Star; break;
      case '/': kind = Tok::Slash; break;
      case '=':
        if (i + 1 < src.size() && src[i + 1] == '=') {
          advance();
          kind = Tok::EqEq;
          text = "==";
        } else {
          kind = Tok::Assign;
        }
        break;
      default: {
        const auto byte = static_cast<unsigned char>(c);
        std::string shown = std::isprint(byte) ? std::string(1, c) : "byte " + std::to_string(byte);
        throw ScriptError(ScriptError::Kind::Syntax, start, "unexpected character '" + shown + "'");
      }
    }
    advance();
    out.push_back({kind, text, start});
  }
  out.push_back({Tok::End, "end of input", pos});
  return out;
}

ExprPtr make_expr(Expr e) { return std::make_shared<const Expr>(std::move(e)); }

class Parser {
 public:
  explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

  ScriptAst script() {
    ScriptAst ast;
    while (peek().kind != Tok::End) ast.statements.push_back(statement());
    return ast;
  }

 private:
  const Token& peek() const { return toks_[i_]; }
  const Token& take() { return toks_[i_ == toks_.size() - 1 ? i_ : i_++]; }

  [[noreturn]] void fail(const Token& t, const std::string& expected) {
    throw ScriptError(ScriptError::Kind::Syntax, t.pos, "expected " + expected + ", found '" + t.text + "'");
  }

  const Token& expect(Tok kind, const std::string& what) {
    if (peek().kind != kind) fail(peek(), what);
    return take();
  }

  bool at_keyword(std::string_view kw) const { return peek().kind == Tok::Ident && peek().text == kw; }

  void keyword(std::string_view kw) {
    if (!at_keyword(kw)) fail(peek(), "'" + std::string(kw) + "'");
    take();
  }

  std::string name() {
    const Token& t = peek();
    if (t.kind != Tok::Ident || kKeywords.count(t.text)) fail(t, "a name");
    return take().text;
  }

  Rational rational() {
    bool neg = false;
    if (peek().kind == Tok::Minus) {
      take();
      neg = true;
    }
    Rational q(mpz_class(expect(Tok::Int, "an integer").text));
    if (peek().kind == Tok::Slash) {
      take();
      const Token& d = expect(Tok::Int, "a positive integer");
      mpz_class den(d.text);
      if (den == 0) throw ScriptError(ScriptError::Kind::Syntax, d.pos, "zero denominator");
      q /= Rational(den);
    }
    return neg ? Rational(-q) : q;
  }

  Statement statement() {
    const Token& head = peek();
    Statement st{head.pos, {}};
    if (at_keyword("point")) {
      take();
      std::string n = name();
      expect(Tok::Assign, "'='");
      if (at_keyword("intersect")) {
        take();
        IntersectStmt s;
        s.name = std::move(n);
        expect(Tok::LParen, "'('");
        s.first = name();
        expect(Tok::Comma, "','");
        s.second = name();
        expect(Tok::RParen, "')'");
        s.selector = selector();
        st.body = std::move(s);
      } else {
        FreePointStmt s;
        s.name = std::move(n);
        expect(Tok::LParen, "'(' or 'intersect'");
        s.x = rational();
        expect(Tok::Comma, "','");
        s.y = rational();
        expect(Tok::RParen, "')'");
        st.body = std::move(s);
      }
    } else if (at_keyword("line")) {
      take();
      LineStmt s;
      s.name = name();
      expect(Tok::Assign, "'='");
      keyword("line");
      expect(Tok::LParen, "'('");
      s.from = name();
      expect(Tok::Comma, "','");
      s.to = name();
      expect(Tok::RParen, "')'");
      st.body = std::move(s);
    } else if (at_keyword("circle")) {
      take();
      std::string n = name();
      expect(Tok::Assign, "'='");
      if (at_keyword("through")) {
        take();
        CircleThroughStmt s;
        s.name = std::move(n);
        expect(Tok::LParen, "'('");
        s.center = name();
        expect(Tok::Comma, "','");
        s.through = name();
        expect(Tok::RParen, "')'");
        st.body = std::move(s);
      } else if (at_keyword("radius")) {
        take();
        CircleRadiusStmt s;
        s.name = std::move(n);
        expect(Tok::LParen, "'('");
        s.center = name();
        expect(Tok::Semi, "';'");
        s.from = name();
        expect(Tok::Comma, "','");
        s.to = name();
        expect(Tok::RParen, "')'");
        st.body = std::move(s);
      } else {
        fail(peek(), "'through' or 'radius'");
      }
    } else if (at_keyword("assert")) {
      take();
      st.body = predicate();
    } else {
      fail(head, "a statement");
    }
    return st;
  }

  Selector selector() {
    Selector s;
    if (peek().kind == Tok::LBracket) {
      take();
      const Token& idx = expect(Tok::Int, "selector index 0 or 1");
      if (idx.text != "0" && idx.text != "1") fail(idx, "selector index 0 or 1");
      s.kind = Selector::Kind::Index;
      s.index = idx.text == "1" ? 1 : 0;
      expect(Tok::RBracket, "']'");
    } else if (at_keyword("nearest") || at_keyword("farthest")) {
      s.kind = take().text == "nearest" ? Selector::Kind::Nearest : Selector::Kind::Farthest;
      s.a = name();
    } else if (at_keyword("leftof") || at_keyword("rightof")) {
      s.kind = take().text == "leftof" ? Selector::Kind::LeftOf : Selector::Kind::RightOf;
      s.a = name();
      s.b = name();
    } else {
      fail(peek(), "a selector ([0], [1], nearest, farthest, leftof, rightof)");
    }
    return s;
  }

  AssertStmt predicate() {
    AssertStmt a;
    if (at_keyword("dist2")) {
      take();
      a.kind = AssertStmt::Kind::Dist2Equals;
      expect(Tok::LParen, "'('");
      a.names.push_back(name());
      expect(Tok::Comma, "','");
      a.names.push_back(name());
      expect(Tok::RParen, "')'");
      expect(Tok::EqEq, "'=='");
      a.rhs = expr();
    } else if (at_keyword("on")) {
      take();
      a.kind = AssertStmt::Kind::On;
      expect(Tok::LParen, "'('");
      a.names.push_back(name());
      expect(Tok::Comma, "','");
      a.names.push_back(name());
      expect(Tok::RParen, "')'");
    } else if (at_keyword("collinear")) {
      take();
      a.kind = AssertStmt::Kind::Collinear;
      expect(Tok::LParen, "'('");
      a.names.push_back(name());
      expect(Tok::Comma, "','");
      a.names.push_back(name());
      expect(Tok::Comma, "','");
      a.names.push_back(name());
      expect(Tok::RParen, "')'");
    } else {
      fail(peek(), "a predicate (dist2, on, collinear)");
    }
    return a;
  }

  ExprPtr expr() {
    ExprPtr lhs = term();
    while (peek().kind == Tok::Plus || peek().kind == Tok::Minus) {
      const auto kind = take().kind == Tok::Plus ? Expr::Kind::Add : Expr::Kind::Sub;
      lhs = make_expr({kind, {}, {}, {}, lhs, term()});
    }
    return lhs;
  }

  ExprPtr term() {
    ExprPtr lhs = unary();
    while (peek().kind == Tok::Star || peek().kind == Tok::Slash) {
      const auto kind = take().kind == Tok::Star ? Expr::Kind::Mul : Expr::Kind::Div;
      lhs = make_expr({kind, {}, {}, {}, lhs, unary()});
    }
    return lhs;
  }

  ExprPtr unary() {
    const Token& t = peek();
    if (t.kind == Tok::Minus) {
      take();
      return make_expr({Expr::Kind::Neg, {}, {}, {}, unary(), nullptr});
    }
    if (t.kind == Tok::Int) {
      return make_expr({Expr::Kind::Integer, Rational(mpz_class(take().text)), {}, {}, nullptr, nullptr});
    }
    if (t.kind == Tok::LParen) {
      take();
      ExprPtr inner = expr();
      expect(Tok::RParen, "')'");
      return inner;
    }
    if (at_keyword("sqrt")) {
      take();
      expect(Tok::LParen, "'('");
      ExprPtr inner = expr();
      expect(Tok::RParen, "')'");
      return make_expr({Expr::Kind::Sqrt, {}, {}, {}, inner, nullptr});
    }
    if (at_keyword("dist2")) {
      take();
      expect(Tok::LParen, "'('");
      std::string a = name();
      expect(Tok::Comma, "','");
      std::string b = name();
      expect(Tok::RParen, "')'");
      return make_expr({Expr::Kind::Dist2, {}, a, b, nullptr, nullptr});
    }
    fail(t, "an expression");
  }

  std::vector<Token> toks_;
  std::size_t i_ = 0;
};

// ---------------------------------------------------------------------------
// Static checks

enum class NameKind { Point, Line, Circle };

const char* kind_name(NameKind k) {
  switch (k) {
    case NameKind::Point: return "point";
    case NameKind::Line: return "line";
    case NameKind::Circle: return "circle";
  }
  return "?";
}

class Checker {
 public:
  void run(const ScriptAst& ast) {
    for (const auto& st : ast.statements) {
      pos_ = st.pos;
      std::visit([this](const auto& s) { check(s); }, st.body);
    }
  }

 private:
  NameKind lookup(const std::string& n) {
    auto it = kinds_.find(n);
    if (it == kinds_.end())
      throw ScriptError(ScriptError::Kind::UndefinedName, pos_, "'" + n + "' is used before it is defined");
    return it->second;
  }

  void want(const std::string& n, NameKind k) {
    const NameKind got = lookup(n);
    if (got != k)
      throw ScriptError(ScriptError::Kind::KindMismatch, pos_,
                        "'" + n + "' is a " + kind_name(got) + ", expected a " + kind_name(k));
  }

  void want_shape(const std::string& n) {
    if (lookup(n) == NameKind::Point)
      throw ScriptError(ScriptError::Kind::KindMismatch, pos_, "'" + n + "' is a point, expected a line or circle");
  }

  void bind(const std::string& n, NameKind k) {
    if (!kinds_.emplace(n, k).second)
      throw ScriptError(ScriptError::Kind::DuplicateBinding, pos_, "'" + n + "' is already defined");
  }

  void check_expr(const Expr& e) {
    if (e.kind == Expr::Kind::Dist2) {
      want(e.a, NameKind::Point);
      want(e.b, NameKind::Point);
    }
    if (e.lhs) check_expr(*e.lhs);
    if (e.rhs) check_expr(*e.rhs);
  }

  void check(const FreePointStmt& s) { bind(s.name, NameKind::Point); }
  void check(const LineStmt& s) {
    want(s.from, NameKind::Point);
    want(s.to, NameKind::Point);
    bind(s.name, NameKind::Line);
  }
  void check(const CircleThroughStmt& s) {
    want(s.center, NameKind::Point);
    want(s.through, NameKind::Point);
    bind(s.name, NameKind::Circle);
  }
  void check(const CircleRadiusStmt& s) {
    want(s.center, NameKind::Point);
    want(s.from, NameKind::Point);
    want(s.to, NameKind::Point);
    bind(s.name, NameKind::Circle);
  }
  void check(const IntersectStmt& s) {
    want_shape(s.first);
    want_shape(s.second);
    if (!s.selector.a.empty()) want(s.selector.a, NameKind::Point);
    if (!s.selector.b.empty()) want(s.selector.b, NameKind::Point);
    bind(s.name, NameKind::Point);
  }
  void check(const AssertStmt& s) {
    if (s.kind == AssertStmt::Kind::On) {
      want(s.names[0], NameKind::Point);
      want_shape(s.names[1]);
      return;
    }
    for (const auto& n : s.names) want(n, NameKind::Point);
    if (s.rhs) check_expr(*s.rhs);
  }

  std::map<std::string, NameKind> kinds_;
  SourcePos pos_;
};

int precedence(const Expr& e) {
  switch (e.kind) {
    case Expr::Kind::Add:
    case Expr::Kind::Sub: return 1;
    case Expr::Kind::Mul:
    case Expr::Kind::Div: return 2;
    case Expr::Kind::Neg: return 3;
    default: return 4;
  }
}

}  // namespace

ScriptAst parse(std::string_view source) {
  ScriptAst ast = Parser(lex(source)).script();
  Checker().run(ast);
  return ast;
}

std::string format_expr(const Expr& e) {
  auto wrap = [](const Expr& sub, bool parens) {
    return parens ? "(" + format_expr(sub) + ")" : format_expr(sub);
  };
  switch (e.kind) {
    case Expr::Kind::Integer: return e.value.get_str();
    case Expr::Kind::Sqrt: return "sqrt(" + format_expr(*e.lhs) + ")";
    case Expr::Kind::Dist2: return "dist2(" + e.a + ", " + e.b + ")";
    case Expr::Kind::Neg: return "-" + wrap(*e.lhs, precedence(*e.lhs) < 3);
    default: break;
  }
  const int p = precedence(e);
  const char* op = e.kind == Expr::Kind::Add   ? " + "
                   : e.kind == Expr::Kind::Sub ? " - "
                   : e.kind == Expr::Kind::Mul ? "*"
                                               : "/";
  return wrap(*e.lhs, precedence(*e.lhs) < p) + op + wrap(*e.rhs, precedence(*e.rhs) <= p);
}

namespace {

std::string format_selector(const Selector& s) {
  switch (s.kind) {
    case Selector::Kind::Index: return "[" + std::to_string(s.index) + "]";
    case Selector::Kind::Nearest: return "nearest " + s.a;
    case Selector::Kind::Farthest: return "farthest " + s.a;
    case Selector::Kind::LeftOf: return "leftof " + s.a + " " + s.b;
    case Selector::Kind::RightOf: return "rightof " + s.a + " " + s.b;
  }
  return "";
}

struct StatementFormatter {
  std::string operator()(const FreePointStmt& s) const {
    return "point " + s.name + " = (" + s.x.get_str() + ", " + s.y.get_str() + ")";
  }
  std::string operator()(const LineStmt& s) const { return "line " + s.name + " = line(" + s.from + ", " + s.to + ")"; }
  std::string operator()(const CircleThroughStmt& s) const {
    return "circle " + s.name + " = through(" + s.center + ", " + s.through + ")";
  }
  std::string operator()(const CircleRadiusStmt& s) const {
    return "circle " + s.name + " = radius(" + s.center + "; " + s.from + ", " + s.to + ")";
  }
  std::string operator()(const IntersectStmt& s) const {
    return "point " + s.name + " = intersect(" + s.first + ", " + s.second + ") " + format_selector(s.selector);
  }
  std::string operator()(const AssertStmt& s) const {
    switch (s.kind) {
      case AssertStmt::Kind::Dist2Equals:
        return "assert dist2(" + s.names[0] + ", " + s.names[1] + ") == " + format_expr(*s.rhs);
      case AssertStmt::Kind::On: return "assert on(" + s.names[0] + ", " + s.names[1] + ")";
      case AssertStmt::Kind::Collinear:
        return "assert collinear(" + s.names[0] + ", " + s.names[1] + ", " + s.names[2] + ")";
    }
    return "";
  }
};

}  // namespace

std::string format_statement(const StatementBody& body) { return std::visit(StatementFormatter{}, body); }

std::string format_script(const ScriptAst& ast) {
  std::string out;
  for (const auto& st : ast.statements) out += format_statement(st.body) + "\n";
  return out;
}

}  // namespace compass
