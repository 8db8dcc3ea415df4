// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit if any fail.
// Optional argv[1]: path of the compass executable, used to compare the
// output of separate processes.

#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iomanip>
#include <iostream>
#include <random>
#include <regex>
#include <sstream>

#include "compass/decimal.hpp"
#include "compass/exactangle.hpp"
#include "compass/facade.hpp"
#include "compass/polyverify.hpp"
#include "random_field.hpp"
#include "random_scene.hpp"

using namespace compass;

namespace {

struct Verdict {
  bool ok = true;
  std::string detail;

  void require(bool cond, const std::string& what) {
    if (!cond && ok) detail = what;
    ok = ok && cond;
  }
};

struct CliRun {
  int code;
  std::string out;
};

CliRun cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str()};
}

std::optional<std::string> run_process(const std::string& command) {
  FILE* pipe = popen(command.c_str(), "r");
  if (!pipe) return std::nullopt;
  std::string text;
  std::array<char, 4096> buf;
  while (auto n = fread(buf.data(), 1, buf.size(), pipe)) text.append(buf.data(), n);
  if (pclose(pipe) != 0) return std::nullopt;
  return text;
}

// Trial division: every odd prime factor 2^(2^j)+1 with multiplicity one.
bool brute_constructible(std::int64_t n) {
  while (n % 2 == 0) n /= 2;
  for (std::int64_t p = 3; p * p <= n || n > 1; p += 2) {
    if (p * p > n) p = n;
    if (n % p) continue;
    n /= p;
    if (n % p == 0) return false;
    std::int64_t m = p - 1;
    int k = 0;
    while (m % 2 == 0) {
      m /= 2;
      ++k;
    }
    if (m != 1 || (k & (k - 1)) != 0) return false;
  }
  return true;
}

const std::int64_t kSupported[] = {3, 4, 5, 6, 8, 10, 12, 15, 16, 20, 24, 30, 40, 48, 60};

Verdict table_reproduction() {
  Verdict v;
  const auto r = cli({"verify-paper"});
  v.require(r.code == 0, "verify-paper exit code " + std::to_string(r.code));
  const std::vector<std::string> rows{"3-gon  EF  120 deg", "4-gon  HA   90 deg", "5-gon  HK   72 deg",
                                      "6-gon  EA   60 deg", "10-gon  HI   36 deg", "12-gon  HE   30 deg",
                                      "15-gon  EN   24 deg", "20-gon  IN   18 deg", "30-gon  LN   12 deg",
                                      "60-gon  EI    6 deg"};
  for (const auto& row : rows) {
    const std::regex re("PASS +" + row + "  on X: yes/yes  chord exact: yes");
    v.require(std::regex_search(r.out, re), "missing PASS row " + row);
  }
  const auto report = verify_table(build_paper_scene());
  int exact = 0;
  for (const auto& e : report.results) exact += e.on_circle_p + e.on_circle_q + e.chord_exact_match;
  v.require(report.overall && exact == 30, "verify_table reports " + std::to_string(exact) + "/30");
  v.detail = v.ok ? "10/10 rows, 30/30 exact checks" : v.detail;
  return v;
}

Verdict hj_identity() {
  Verdict v;
  const auto scene = build_paper_scene();
  const auto t = scene.tower();
  const auto hj = dist_sq(scene.point("H"), scene.point("J"));
  v.require(hj == (t->number(3) - sqrt(t->number(5))) / t->number(2), "HJ^2 differs from (3 - sqrt 5)/2");
  v.require(to_string(hj) == "3/2 - 1/2*sqrt(5)", "HJ^2 prints as " + to_string(hj));

  bool asserted = false;
  for (const auto& s : scene.steps())
    asserted = asserted || (s.kind == StepKind::Assertion && s.inputs == std::vector<std::string>{"H", "J"});
  v.require(asserted, "the script assertion on HJ did not run");

  // The embedded assertion must reject a wrong right-hand side.
  const auto probe = parse("point O = (0, 0)\npoint A = (1, 0)\nassert dist2(O, A) == (3 + sqrt(5))/2*dist2(O, A)");
  const auto wrong = std::get<AssertStmt>(probe.statements[2].body).rhs;
  auto ast = parse(paper_script());
  for (auto& st : ast.statements)
    if (auto* a = std::get_if<AssertStmt>(&st.body); a && a->names == std::vector<std::string>{"H", "J"})
      a->rhs = wrong;
  bool rejected = false;
  try {
    interpret(ast);
  } catch (const ScriptError& e) {
    rejected = e.kind() == ScriptError::Kind::AssertionFailed;
  }
  v.require(rejected, "a wrong HJ assertion was not rejected");
  if (v.ok) v.detail = "dist2(H, J) = " + to_string(hj) + " exactly; script assertion ran";
  return v;
}

Verdict numeric_cross_oracle() {
  Verdict v;
  const auto scene = build_paper_scene();
  double worst = 0;
  for (const auto& c : table_claims()) {
    const auto chord = sqrt(dist_sq(scene.point(c.p_name), scene.point(c.q_name)));
    const double mid = to_decimal(chord, 60).midpoint().get_d();
    const double err = std::abs(mid - 2 * std::sin(M_PI / c.n));
    worst = std::max(worst, err);
    v.require(err < 1e-12, "row " + std::to_string(c.n) + " off by " + std::to_string(err));
    if (c.n == 15) v.require(std::abs(mid - 0.4158233817) < 1e-10, "n=15 far from 0.4158233817");
    if (c.n == 60) v.require(std::abs(mid - 0.1046719125) < 1e-10, "n=60 far from 0.1046719125");
  }
  if (v.ok) {
    std::ostringstream os;
    os << "10 rows, max |error| " << std::scientific << std::setprecision(1) << worst;
    v.detail = os.str();
  }
  return v;
}

Verdict constructibility_oracle() {
  Verdict v;
  for (std::int64_t n = 3; n <= 10000; ++n)
    v.require(is_constructible(n) == brute_constructible(n), "disagreement at n=" + std::to_string(n));
  for (std::int64_t n : {3, 4, 5, 6, 8, 10, 12, 15, 16, 17, 20, 30, 60})
    v.require(is_constructible(n), std::to_string(n) + " should be constructible");
  for (std::int64_t n : {7, 9, 11, 13, 14, 18, 21, 25})
    v.require(!is_constructible(n), std::to_string(n) + " should not be constructible");
  if (v.ok) v.detail = "3 <= n <= 10000 agree with trial division";
  return v;
}

Verdict exactness_suite() {
  Verdict v;
  std::mt19937_64 rng(5005);
  int intersections = 0, failures = 0;
  for (int i = 0; i < 500; ++i) {
    const auto o = randscene::run(rng);
    intersections += o.intersections;
    failures += o.incidence_failures;
  }
  v.require(failures == 0, std::to_string(failures) + " nonzero incidence residuals");
  v.require(intersections > 500, "too few intersections exercised");

  int axioms = 0;
  for (int i = 0; i < 1000; ++i) {
    auto t = randfield::depth3_tower();
    auto depth = [&] { return std::uniform_int_distribution<std::size_t>(0, 3)(rng); };
    const auto a = randfield::random_element(t, rng, depth());
    const auto b = randfield::random_element(t, rng, depth());
    const auto c = randfield::random_element(t, rng, 3);
    const auto one = t->number(1);
    bool ok = equals(a + b, b + a) && equals(a * b, b * a) && equals((a + b) + c, a + (b + c)) &&
              equals((a * b) * c, a * (b * c)) && equals(a * (b + c), a * b + a * c) &&
              equals(a + (-a), t->number(0));
    if (!a.is_zero()) ok = ok && equals(a * (one / a), one);
    const auto x = sign(a) < 0 ? -a : a;
    const auto r = sqrt(x);
    ok = ok && sign(r) >= 0 && equals(r * r, x);
    axioms += ok;
  }
  v.require(axioms == 1000, std::to_string(1000 - axioms) + " field elements violated an axiom");
  if (v.ok)
    v.detail = "500 scenes, " + std::to_string(intersections) + " intersections exact; 1000 elements pass";
  return v;
}

Verdict trig_kernel() {
  Verdict v;
  int directions = 0;
  for (std::int64_t q = 1; q <= 60; ++q) {
    if (!angle_supported(q)) continue;
    auto t = Tower::create();
    for (std::int64_t p = 0; p < q; ++p) {
      if (std::gcd(p, q) != 1) continue;
      const auto d = exact_cos_sin(t, RationalTurn::make(p, q));
      v.require(equals(d.c * d.c + d.s * d.s, t->number(1)),
                "c^2 + s^2 != 1 at " + std::to_string(p) + "/" + std::to_string(q));
      ++directions;
    }
  }
  auto t = Tower::create();
  for (auto n : kSupported)
    v.require(identify_ngon(chord_sq(n, t->number(1)), t->number(1), 64) == n,
              "identify_ngon round trip fails at " + std::to_string(n));
  if (v.ok) v.detail = std::to_string(directions) + " directions unit-norm; 15 chords identified";
  return v;
}

Verdict op_count_claim() {
  Verdict v;
  const auto r = cli({"opcount"});
  v.require(r.code == 0, "opcount failed");
  auto grab = [&](const std::string& label) {
    const std::regex re(label + " +circles +(\\d+) +lines +(\\d+) +points +(\\d+)");
    std::smatch m;
    if (!std::regex_search(r.out, m, re)) return OpCount{-1, -1, -1};
    return OpCount{std::stol(m[1]), std::stol(m[2]), std::stol(m[3])};
  };
  const auto prefix = grab("paper route through I");
  const auto variant = grab("euclid variant, edge RI");
  const auto closure = grab("paper route, closure of edge EN");
  // Golden tallies of the bundled scripts.
  v.require(prefix == OpCount{6, 4, 11}, "paper prefix tally changed");
  v.require(variant == OpCount{7, 4, 12}, "euclid variant tally changed");
  v.require(closure == OpCount{9, 4, 14}, "closure tally changed");
  v.require(variant.circles_drawn - prefix.circles_drawn >= 1, "variant draws no extra circle");
  v.require(r.out.find("circles +1") != std::string::npos, "opcount does not report the difference");
  v.require(op_count(build_euclid_variant()) == variant, "printed and computed tallies differ");
  if (v.ok)
    v.detail = "variant 7 circles vs paper route through I 6 (+1); closure of EN 9 reported";
  return v;
}

Verdict scale_invariance() {
  Verdict v;
  const auto scene = build_paper_scene(3);
  v.require(scene.point("A").x == scene.tower()->number(3), "A not at (3, 0)");
  v.require(verify_table(scene).overall, "verify_table fails at scale 3");

  std::string text(paper_script());
  const std::string from = "point A = (1, 0)";
  const auto pos = text.find(from);
  v.require(pos != std::string::npos, "bundled script has no A = (1, 0)");
  if (pos != std::string::npos) {
    text.replace(pos, from.size(), "point A = (3, 0)");
    v.require(verify_table(interpret(parse(text))).overall, "edited script fails verify_table");
  }
  if (v.ok) v.detail = "A = (3, 0): 10/10 rows by rebuild and by edited script";
  return v;
}

Verdict determinism(const std::string& exe) {
  Verdict v;
  const auto a = cli({"verify-paper"}), b = cli({"verify-paper"});
  v.require(a.out == b.out && !a.out.empty(), "verify-paper output differs in-process");
  const auto s = cli({"svg", "--paper"}), u = cli({"svg", "--paper"});
  v.require(s.out == u.out && !s.out.empty(), "svg --paper output differs in-process");
  std::string mode = "in-process";
  if (!exe.empty()) {
    for (const std::string cmd : {"verify-paper", "svg --paper -o -"}) {
      const auto x = run_process("'" + exe + "' " + cmd);
      const auto y = run_process("'" + exe + "' " + cmd);
      v.require(x && y && *x == *y, "separate runs of `" + cmd + "` differ");
      if (cmd == "verify-paper") v.require(x && *x == a.out, "process and in-process verify-paper differ");
    }
    mode = "two processes and in-process";
  }
  if (v.ok) v.detail = "byte-identical output (" + mode + ")";
  return v;
}

}  // namespace

int main(int argc, char** argv) {
  const std::string exe = argc > 1 ? argv[1] : "";
  struct Criterion {
    int id;
    std::string name;
    double limit_s;  // 0 when untimed
    std::function<Verdict()> run;
  };
  const std::vector<Criterion> criteria{
      {1, "table reproduction (exact)", 5, table_reproduction},
      {2, "HJ identity (exact)", 0, hj_identity},
      {3, "numeric cross-oracle", 0, numeric_cross_oracle},
      {4, "constructibility oracle", 5, constructibility_oracle},
      {5, "exactness property suite", 60, exactness_suite},
      {6, "trig kernel", 0, trig_kernel},
      {7, "op-count claim", 0, op_count_claim},
      {8, "scale invariance", 0, scale_invariance},
      {9, "determinism", 0, [&] { return determinism(exe); }},
  };

  int failed = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = c.run();
    } catch (const std::exception& e) {
      v.ok = false;
      v.detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.limit_s > 0 && secs >= c.limit_s) {
      v.ok = false;
      v.detail += " (too slow)";
    }
    failed += !v.ok;
    std::ostringstream time;
    time << std::fixed << std::setprecision(2) << secs << " s";
    if (c.limit_s > 0) time << " < " << c.limit_s << " s";
    std::cout << (v.ok ? "PASS" : "FAIL") << "  criterion " << c.id << ": " << c.name << "  [" << time.str()
              << "]  " << v.detail << std::endl;
  }
  std::cout << (failed ? "FAILED " : "ALL PASSED ") << criteria.size() - failed << "/" << criteria.size()
            << std::endl;
  return failed ? 1 : 0;
}
