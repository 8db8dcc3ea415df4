#include <sstream>

#include "compass/decimal.hpp"
#include "compass/geoscript.hpp"

namespace compass {

// ---------------------------------------------------------------------------
// Scene

const SceneObject& Scene::object(const std::string& name) const {
  auto it = objects_.find(name);
  if (it == objects_.end()) throw SceneError("no object named '" + name + "' in scene");
  return it->second;
}

const Point& Scene::point(const std::string& name) const {
  const auto* p = std::get_if<Point>(&object(name));
  if (!p) throw SceneError("'" + name + "' is not a point");
  return *p;
}

const Line& Scene::line(const std::string& name) const {
  const auto* l = std::get_if<Line>(&object(name));
  if (!l) throw SceneError("'" + name + "' is not a line");
  return *l;
}

const Circle& Scene::circle(const std::string& name) const {
  const auto* c = std::get_if<Circle>(&object(name));
  if (!c) throw SceneError("'" + name + "' is not a circle");
  return *c;
}

void Scene::bind(const std::string& name, SceneObject obj) {
  if (!objects_.emplace(name, std::move(obj)).second) throw SceneError("'" + name + "' is already bound");
  order_.push_back(name);
}

// ---------------------------------------------------------------------------
// Interpreter

Constructible evaluate(const Expr& e, const Scene& scene, SourcePos pos) {
  const auto& t = scene.tower();
  try {
    switch (e.kind) {
      case Expr::Kind::Integer: return t->number(e.value);
      case Expr::Kind::Sqrt: return sqrt(evaluate(*e.lhs, scene, pos));
      case Expr::Kind::Dist2: return dist_sq(scene.point(e.a), scene.point(e.b));
      case Expr::Kind::Neg: return -evaluate(*e.lhs, scene, pos);
      case Expr::Kind::Add: return evaluate(*e.lhs, scene, pos) + evaluate(*e.rhs, scene, pos);
      case Expr::Kind::Sub: return evaluate(*e.lhs, scene, pos) - evaluate(*e.rhs, scene, pos);
      case Expr::Kind::Mul: return evaluate(*e.lhs, scene, pos) * evaluate(*e.rhs, scene, pos);
      case Expr::Kind::Div: return evaluate(*e.lhs, scene, pos) / evaluate(*e.rhs, scene, pos);
    }
  } catch (const FieldError& err) {
    throw ScriptError(ScriptError::Kind::Arithmetic, pos, err.what());
  } catch (const SceneError& err) {
    throw ScriptError(ScriptError::Kind::UndefinedName, pos, err.what());
  }
  throw ScriptError(ScriptError::Kind::Arithmetic, pos, "unknown expression");
}

namespace {

class Interpreter {
 public:
  Scene run(const ScriptAst& ast) {
    for (const auto& st : ast.statements) {
      pos_ = st.pos;
      text_ = format_statement(st.body);
      try {
        std::visit([this](const auto& s) { exec(s); }, st.body);
      } catch (const GeometryError& err) {
        throw ScriptError(ScriptError::Kind::Geometry, pos_, err.what());
      } catch (const SceneError& err) {
        throw ScriptError(ScriptError::Kind::UndefinedName, pos_, err.what());
      }
    }
    return std::move(scene_);
  }

 private:
  Constructible num(const Rational& q) { return scene_.tower()->number(q); }

  void log(StepKind kind, const std::string& name, std::vector<std::string> inputs) {
    scene_.record(Step{kind, name, std::move(inputs), pos_, text_});
  }

  void exec(const FreePointStmt& s) {
    scene_.bind(s.name, Point{num(s.x), num(s.y)});
    log(StepKind::FreePoint, s.name, {});
  }

  void exec(const LineStmt& s) {
    scene_.bind(s.name, line_through(scene_.point(s.from), scene_.point(s.to)));
    log(StepKind::Line, s.name, {s.from, s.to});
  }

  void exec(const CircleThroughStmt& s) {
    scene_.bind(s.name, circle_center_through(scene_.point(s.center), scene_.point(s.through)));
    log(StepKind::Circle, s.name, {s.center, s.through});
  }

  void exec(const CircleRadiusStmt& s) {
    scene_.bind(s.name, circle_center_radius_from(scene_.point(s.center), scene_.point(s.from), scene_.point(s.to)));
    log(StepKind::Circle, s.name, {s.center, s.from, s.to});
  }

  std::vector<Point> candidates(const IntersectStmt& s) {
    const auto& a = scene_.object(s.first);
    const auto& b = scene_.object(s.second);
    const auto* la = std::get_if<Line>(&a);
    const auto* lb = std::get_if<Line>(&b);
    if (la && lb) {
      auto p = intersect_lines(*la, *lb);
      return p ? std::vector<Point>{*p} : std::vector<Point>{};
    }
    if (la) return intersect_line_circle(*la, std::get<Circle>(b));
    if (lb) return intersect_line_circle(*lb, std::get<Circle>(a));
    return intersect_circles(std::get<Circle>(a), std::get<Circle>(b));
  }

  // Returns the index chosen by an exact comparison key; ties are errors.
  std::size_t by_distance(const std::vector<Point>& pts, const Selector& sel) {
    if (pts.size() == 1) return 0;
    const Point& ref = scene_.point(sel.a);
    const int s = sign(dist_sq(ref, pts[0]) - dist_sq(ref, pts[1]));
    if (s == 0)
      throw ScriptError(ScriptError::Kind::Ambiguous, pos_,
                        "both intersection points are equally far from '" + sel.a + "'");
    const bool first_is_nearer = s < 0;
    return (sel.kind == Selector::Kind::Nearest) == first_is_nearer ? 0 : 1;
  }

  std::size_t by_side(const std::vector<Point>& pts, const Selector& sel) {
    const Point& p = scene_.point(sel.a);
    const Point& q = scene_.point(sel.b);
    if (p == q)
      throw ScriptError(ScriptError::Kind::Ambiguous, pos_, "side selector needs two distinct points");
    const int want = sel.kind == Selector::Kind::LeftOf ? 1 : -1;
    std::vector<std::size_t> hits;
    for (std::size_t i = 0; i < pts.size(); ++i)
      if (orientation(p, q, pts[i]) == want) hits.push_back(i);
    const std::string side = want > 0 ? "left" : "right";
    if (hits.empty())
      throw ScriptError(ScriptError::Kind::NoMatch, pos_,
                        "no intersection point lies " + side + " of " + sel.a + "->" + sel.b);
    if (hits.size() > 1)
      throw ScriptError(ScriptError::Kind::Ambiguous, pos_,
                        "both intersection points lie " + side + " of " + sel.a + "->" + sel.b);
    return hits.front();
  }

  void exec(const IntersectStmt& s) {
    const auto pts = candidates(s);
    if (pts.empty())
      throw ScriptError(ScriptError::Kind::EmptyIntersection, pos_,
                        "'" + s.first + "' and '" + s.second + "' do not intersect");
    std::size_t pick = 0;
    std::vector<std::string> inputs{s.first, s.second};
    switch (s.selector.kind) {
      case Selector::Kind::Index:
        if (static_cast<std::size_t>(s.selector.index) >= pts.size())
          throw ScriptError(ScriptError::Kind::NoMatch, pos_,
                            "selector [" + std::to_string(s.selector.index) + "] but only " +
                                std::to_string(pts.size()) + " intersection point");
        pick = static_cast<std::size_t>(s.selector.index);
        break;
      case Selector::Kind::Nearest:
      case Selector::Kind::Farthest:
        pick = by_distance(pts, s.selector);
        inputs.push_back(s.selector.a);
        break;
      case Selector::Kind::LeftOf:
      case Selector::Kind::RightOf:
        pick = by_side(pts, s.selector);
        inputs.push_back(s.selector.a);
        inputs.push_back(s.selector.b);
        break;
    }
    scene_.bind(s.name, pts[pick]);
    log(StepKind::Intersection, s.name, std::move(inputs));
  }

  void exec(const AssertStmt& s) {
    bool ok = false;
    switch (s.kind) {
      case AssertStmt::Kind::Dist2Equals: {
        const auto lhs = dist_sq(scene_.point(s.names[0]), scene_.point(s.names[1]));
        ok = equals(lhs, evaluate(*s.rhs, scene_, pos_));
        break;
      }
      case AssertStmt::Kind::On: {
        const Point& p = scene_.point(s.names[0]);
        const auto& shape = scene_.object(s.names[1]);
        ok = std::holds_alternative<Line>(shape) ? on_line(p, std::get<Line>(shape))
                                                 : on_circle(p, std::get<Circle>(shape));
        break;
      }
      case AssertStmt::Kind::Collinear:
        ok = orientation(scene_.point(s.names[0]), scene_.point(s.names[1]), scene_.point(s.names[2])) == 0;
        break;
    }
    if (!ok) throw ScriptError(ScriptError::Kind::AssertionFailed, pos_, "assertion failed: " + text_);
    log(StepKind::Assertion, "", s.names);
  }

  Scene scene_;
  SourcePos pos_;
  std::string text_;
};

bool same_value(const Constructible& a, const Constructible& b) {
  const auto ca = a.coefficients(), cb = b.coefficients();
  return std::equal(ca.begin(), ca.end(), cb.begin(), cb.end());
}

bool same_point(const Point& a, const Point& b) { return same_value(a.x, b.x) && same_value(a.y, b.y); }

}  // namespace

Scene interpret(const ScriptAst& ast) { return Interpreter().run(ast); }

bool scenes_identical(const Scene& a, const Scene& b) {
  const Tower& ta = *a.tower();
  const Tower& tb = *b.tower();
  if (ta.depth() != tb.depth()) return false;
  for (std::size_t k = 0; k < ta.depth(); ++k) {
    const auto ra = ta.radicand(k), rb = tb.radicand(k);
    if (!std::equal(ra.begin(), ra.end(), rb.begin(), rb.end())) return false;
  }
  if (a.names() != b.names()) return false;
  for (const auto& n : a.names()) {
    const auto& oa = a.object(n);
    const auto& ob = b.object(n);
    if (oa.index() != ob.index()) return false;
    if (const auto* p = std::get_if<Point>(&oa)) {
      if (!same_point(*p, std::get<Point>(ob))) return false;
    } else if (const auto* l = std::get_if<Line>(&oa)) {
      const auto& m = std::get<Line>(ob);
      if (!same_point(l->p, m.p) || !same_point(l->q, m.q)) return false;
    } else {
      const auto& c = std::get<Circle>(oa);
      const auto& d = std::get<Circle>(ob);
      if (!same_point(c.center, d.center) || !same_value(c.radius_sq, d.radius_sq)) return false;
    }
  }
  return true;
}

std::string format_scene(const Scene& scene, unsigned precision_bits) {
  auto dec = [&](const Constructible& v) { return decimal_text(v, precision_bits, true); };
  auto pair = [&](const Point& p) { return "(" + dec(p.x) + ", " + dec(p.y) + ")"; };
  auto exact = [](const Point& p) { return "(" + to_string(p.x) + ", " + to_string(p.y) + ")"; };

  std::ostringstream os;
  for (const auto& n : scene.names()) {
    const auto& obj = scene.object(n);
    if (const auto* p = std::get_if<Point>(&obj)) {
      os << n << " = " << pair(*p) << "  exact " << exact(*p) << "\n";
    } else if (const auto* l = std::get_if<Line>(&obj)) {
      os << n << " = line through " << pair(l->p) << " and " << pair(l->q) << "\n";
    } else {
      const auto& c = std::get<Circle>(obj);
      os << n << " = circle center " << pair(c.center) << " radius^2 " << dec(c.radius_sq) << "  exact "
         << to_string(c.radius_sq) << "\n";
    }
  }
  return os.str();
}

}  // namespace compass
