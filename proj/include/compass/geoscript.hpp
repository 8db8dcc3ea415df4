#pragma once

// Construction scripts (.geo).
//
//   script    := stmt*
//   stmt      := "point" NAME "=" "(" RAT "," RAT ")"
//              | "line" NAME "=" "line" "(" NAME "," NAME ")"
//              | "circle" NAME "=" "through" "(" NAME "," NAME ")"
//              | "circle" NAME "=" "radius" "(" NAME ";" NAME "," NAME ")"
//              | "point" NAME "=" "intersect" "(" NAME "," NAME ")" selector
//              | "assert" predicate
//   selector  := "[" ("0"|"1") "]" | "nearest" NAME | "farthest" NAME
//              | "leftof" NAME NAME | "rightof" NAME NAME
//   predicate := "dist2" "(" NAME "," NAME ")" "==" expr
//              | "on" "(" NAME "," NAME ")"
//              | "collinear" "(" NAME "," NAME "," NAME ")"
//   expr      := term (("+" | "-") term)*
//   term      := unary (("*" | "/") unary)*
//   unary     := "-" unary | INT | "sqrt" "(" expr ")"
//              | "dist2" "(" NAME "," NAME ")" | "(" expr ")"
//   RAT       := ["-"] INT ["/" INT]
//
// "#" starts a comment running to the end of the line.  Names are bound
// once and must be defined before use; both are checked before anything
// executes.

#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "compass/euclidplane.hpp"

namespace compass {

struct SourcePos {
  int line = 1;
  int column = 1;
};

class ScriptError : public std::runtime_error {
 public:
  enum class Kind {
    Syntax,
    DuplicateBinding,
    UndefinedName,
    KindMismatch,
    EmptyIntersection,
    Ambiguous,
    NoMatch,
    AssertionFailed,
    Geometry,
    Arithmetic,
  };

  ScriptError(Kind kind, SourcePos pos, const std::string& message);

  Kind kind() const { return kind_; }
  SourcePos pos() const { return pos_; }

 private:
  Kind kind_;
  SourcePos pos_;
};

// ---------------------------------------------------------------------------
// AST

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Expr {
  enum class Kind { Integer, Sqrt, Dist2, Neg, Add, Sub, Mul, Div };
  Kind kind;
  Rational value;                // Integer
  std::string a, b;              // Dist2 operands
  ExprPtr lhs, rhs;              // Sqrt/Neg use lhs only

  friend bool operator==(const Expr& x, const Expr& y);
};

struct FreePointStmt {
  std::string name;
  Rational x, y;
  bool operator==(const FreePointStmt&) const = default;
};

struct LineStmt {
  std::string name, from, to;
  bool operator==(const LineStmt&) const = default;
};

struct CircleThroughStmt {
  std::string name, center, through;
  bool operator==(const CircleThroughStmt&) const = default;
};

struct CircleRadiusStmt {
  std::string name, center, from, to;
  bool operator==(const CircleRadiusStmt&) const = default;
};

struct Selector {
  enum class Kind { Index, Nearest, Farthest, LeftOf, RightOf };
  Kind kind = Kind::Index;
  int index = 0;
  std::string a, b;  // reference point, or directed pair a -> b
  bool operator==(const Selector&) const = default;
};

struct IntersectStmt {
  std::string name, first, second;
  Selector selector;
  bool operator==(const IntersectStmt&) const = default;
};

struct AssertStmt {
  enum class Kind { Dist2Equals, On, Collinear };
  Kind kind;
  std::vector<std::string> names;
  ExprPtr rhs;  // Dist2Equals only

  friend bool operator==(const AssertStmt& x, const AssertStmt& y);
};

using StatementBody =
    std::variant<FreePointStmt, LineStmt, CircleThroughStmt, CircleRadiusStmt, IntersectStmt, AssertStmt>;

struct Statement {
  SourcePos pos;
  StatementBody body;

  /// Structural equality; positions are ignored.
  friend bool operator==(const Statement& x, const Statement& y) { return x.body == y.body; }
};

struct ScriptAst {
  std::vector<Statement> statements;
  friend bool operator==(const ScriptAst&, const ScriptAst&) = default;
};

/// Parses and statically checks a script.
ScriptAst parse(std::string_view source);
/// Canonical source text; parse(format_script(ast)) == ast.
std::string format_script(const ScriptAst& ast);
std::string format_statement(const StatementBody& body);
std::string format_expr(const Expr& e);

// ---------------------------------------------------------------------------
// Scenes

using SceneObject = std::variant<Point, Line, Circle>;

enum class StepKind { FreePoint, Line, Circle, Intersection, Assertion };

struct Step {
  StepKind kind;
  std::string name;                 // empty for assertions
  std::vector<std::string> inputs;  // names the step reads
  SourcePos pos;
  std::string text;                 // canonical statement text
};

class SceneError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class Scene {
 public:
  explicit Scene(TowerPtr tower = Tower::create()) : tower_(std::move(tower)) {}

  const TowerPtr& tower() const { return tower_; }
  const std::vector<Step>& steps() const { return steps_; }
  /// Object names in definition order.
  const std::vector<std::string>& names() const { return order_; }
  bool empty() const { return order_.empty(); }

  bool contains(const std::string& name) const { return objects_.count(name) != 0; }
  const SceneObject& object(const std::string& name) const;
  const Point& point(const std::string& name) const;
  const Line& line(const std::string& name) const;
  const Circle& circle(const std::string& name) const;

  void bind(const std::string& name, SceneObject obj);
  void record(Step step) { steps_.push_back(std::move(step)); }

 private:
  TowerPtr tower_;
  std::vector<std::string> order_;
  std::map<std::string, SceneObject> objects_;
  std::vector<Step> steps_;
};

/// Executes a checked script against a fresh tower.
Scene interpret(const ScriptAst& ast);
/// Evaluates a radical expression in the scene's tower.
Constructible evaluate(const Expr& e, const Scene& scene, SourcePos pos = {});

/// True when both scenes bind the same names to objects with identical
/// canonical coordinates over identically built towers.
bool scenes_identical(const Scene& a, const Scene& b);

/// One line per named object with decimal approximations and exact
/// radical expressions.  Empty scene gives empty text.
std::string format_scene(const Scene& scene, unsigned precision_bits);

}  // namespace compass
