#include "compass/polyverify.hpp"

#include <map>
#include <set>

#include "bundled_scripts.hpp"
#include "compass/exactangle.hpp"

namespace compass {

EdgeClaim EdgeClaim::make(int n, std::string p, std::string q) {
  if (n < 3) throw VerifyError("edge claim needs n >= 3, got " + std::to_string(n));
  Rational angle(360, n);
  angle.canonicalize();
  return EdgeClaim{n, std::move(p), std::move(q), angle};
}

std::string_view paper_script() { return bundled::kPaperPentadecagon; }
std::string_view euclid_script() { return bundled::kEuclidVariant; }

namespace {

Scene build_scaled(std::string_view source, const Rational& a_x) {
  if (sgn(a_x) <= 0) throw VerifyError("A must lie on the positive x axis");
  auto ast = parse(source);
  for (auto& st : ast.statements)
    if (auto* p = std::get_if<FreePointStmt>(&st.body); p && p->name == "A") {
      p->x = a_x;
      p->y = 0;
    }
  return interpret(ast);
}

}  // namespace

Scene build_paper_scene(const Rational& a_x) { return build_scaled(paper_script(), a_x); }

Scene build_euclid_variant(const Rational& a_x) {
  auto scene = build_scaled(euclid_script(), a_x);
  const auto radius_sq = dist_sq(scene.point("O"), scene.point("A"));
  if (!equals(dist_sq(scene.point("R"), scene.point("I")), chord_sq(15, radius_sq)))
    throw VerifyError("RI is not a pentadecagon edge");
  return scene;
}

const std::vector<EdgeClaim>& table_claims() {
  static const std::vector<EdgeClaim> claims{
      EdgeClaim::make(3, "E", "F"),  EdgeClaim::make(4, "H", "A"),  EdgeClaim::make(5, "H", "K"),
      EdgeClaim::make(6, "E", "A"),  EdgeClaim::make(10, "H", "I"), EdgeClaim::make(12, "H", "E"),
      EdgeClaim::make(15, "E", "N"), EdgeClaim::make(20, "I", "N"), EdgeClaim::make(30, "L", "N"),
      EdgeClaim::make(60, "E", "I"),
  };
  return claims;
}

bool is_reconstructed(const EdgeClaim& claim) { return claim.p_name == "K" || claim.q_name == "K"; }

EdgeResult verify_edge(const Scene& scene, const EdgeClaim& claim, const std::string& center_name,
                       const std::string& radius_point_name) {
  auto point = [&](const std::string& name) -> const Point& {
    try {
      return scene.point(name);
    } catch (const SceneError& e) {
      throw VerifyError(e.what());
    }
  };
  const Point& c = point(center_name);
  const Point& p = point(claim.p_name);
  const Point& q = point(claim.q_name);
  const auto r2 = dist_sq(c, point(radius_point_name));

  EdgeResult r{claim};
  r.on_circle_p = equals(dist_sq(c, p), r2);
  r.on_circle_q = equals(dist_sq(c, q), r2);
  r.chord_exact_match = equals(dist_sq(p, q), chord_sq(claim.n, r2));
  return r;
}

VerificationReport verify_table(const Scene& scene) {
  VerificationReport report;
  report.overall = true;
  for (const auto& claim : table_claims()) {
    report.results.push_back(verify_edge(scene, claim, "O", "A"));
    report.overall = report.overall && report.results.back().passed();
  }
  return report;
}

std::optional<int> identify_ngon(const Constructible& chord_squared, const Constructible& radius_sq, int n_max) {
  if (sign(radius_sq) <= 0) return std::nullopt;
  // Chords shrink as n grows, so stop once they fall below the target.
  for (int n = 3; n <= n_max; ++n) {
    if (!is_constructible(n) || !angle_supported(n)) continue;
    const auto c = chord_sq(n, radius_sq);
    const int s = sign(c - chord_squared);
    if (s == 0) return n;
    if (s < 0) break;
  }
  return std::nullopt;
}

namespace {

void tally(OpCount& count, const Step& step) {
  switch (step.kind) {
    case StepKind::Circle: ++count.circles_drawn; break;
    case StepKind::Line: ++count.lines_drawn; break;
    case StepKind::FreePoint:
    case StepKind::Intersection: ++count.points_marked; break;
    case StepKind::Assertion: break;
  }
}

}  // namespace

OpCount op_count(const Scene& scene) {
  OpCount count;
  for (const auto& step : scene.steps()) tally(count, step);
  return count;
}

OpCount op_count_through(const Scene& scene, const std::string& name) {
  OpCount count;
  for (const auto& step : scene.steps()) {
    tally(count, step);
    if (step.name == name) return count;
  }
  throw VerifyError("no step binds '" + name + "'");
}

OpCount op_count_closure(const Scene& scene, const std::vector<std::string>& names) {
  std::map<std::string, const Step*> producer;
  for (const auto& step : scene.steps())
    if (!step.name.empty()) producer[step.name] = &step;

  std::set<std::string> seen;
  std::vector<std::string> todo(names.begin(), names.end());
  OpCount count;
  while (!todo.empty()) {
    const auto name = todo.back();
    todo.pop_back();
    if (!seen.insert(name).second) continue;
    const auto it = producer.find(name);
    if (it == producer.end()) throw VerifyError("no step binds '" + name + "'");
    tally(count, *it->second);
    for (const auto& in : it->second->inputs) todo.push_back(in);
  }
  return count;
}

}  // namespace compass
