#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "compass/decimal.hpp"
#include "compass/exactangle.hpp"
#include "compass/facade.hpp"
#include "compass/polyverify.hpp"

namespace compass {

namespace {

constexpr int kOk = 0;
constexpr int kFailed = 1;
constexpr int kUsage = 2;

std::string factor_text(std::int64_t n) {
  std::string s;
  for (const auto& [p, e] : factorize(n)) {
    if (!s.empty()) s += "·";
    s += std::to_string(p);
    if (e > 1) s += "^" + std::to_string(e);
  }
  return s;
}

std::string edge_name(const EdgeClaim& c) { return c.p_name + c.q_name; }

std::string tally_text(const OpCount& c) {
  std::ostringstream os;
  os << "circles " << std::setw(2) << c.circles_drawn << "  lines " << std::setw(2) << c.lines_drawn << "  points "
     << std::setw(2) << c.points_marked;
  return os.str();
}

std::string signed_text(long v) { return (v >= 0 ? "+" : "") + std::to_string(v); }

int cmd_run(const std::string& file, unsigned bits, std::ostream& out, std::ostream& err) {
  std::ifstream in(file, std::ios::binary);
  if (!in) {
    err << "compass: cannot read " << file << "\n";
    return kUsage;
  }
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    const auto scene = interpret(parse(buf.str()));
    out << format_scene(scene, bits);
    return kOk;
  } catch (const ScriptError& e) {
    err << file << ":" << e.what() << "\n";
    return e.kind() == ScriptError::Kind::AssertionFailed ? kFailed : kUsage;
  }
}

int cmd_verify_paper(std::ostream& out) {
  const auto report = verify_table(build_paper_scene());
  int rows = 0, checks = 0;
  for (const auto& r : report.results) {
    rows += r.passed();
    checks += r.on_circle_p + r.on_circle_q + r.chord_exact_match;
    out << (r.passed() ? "PASS" : "FAIL") << "  " << std::setw(2) << r.claim.n << "-gon  " << std::setw(2)
        << std::left << edge_name(r.claim) << std::right << "  " << std::setw(3)
        << r.claim.central_angle_degrees.get_str() << " deg  on X: " << (r.on_circle_p ? "yes" : "no") << "/"
        << (r.on_circle_q ? "yes" : "no") << "  chord exact: " << (r.chord_exact_match ? "yes" : "no");
    if (is_reconstructed(r.claim)) out << "  (reconstructed step)";
    out << "\n";
  }
  out << "overall: " << (report.overall ? "PASS" : "FAIL") << " (" << rows << "/" << report.results.size()
      << " rows, " << checks << "/" << 3 * report.results.size() << " exact checks)\n";
  return report.overall ? kOk : kFailed;
}

int cmd_table(unsigned bits, int n_max, std::ostream& out) {
  const auto scene = build_paper_scene();
  const auto r2 = dist_sq(scene.point("O"), scene.point("A"));
  bool all = true;
  for (const auto& c : table_claims()) {
    const auto d2 = dist_sq(scene.point(c.p_name), scene.point(c.q_name));
    const auto id = identify_ngon(d2, r2, n_max);
    all = all && id == c.n;
    out << std::setw(2) << c.n << "-gon  " << std::setw(2) << std::left << edge_name(c) << std::right << "  "
        << std::setw(3) << c.central_angle_degrees.get_str() << " deg\n"
        << "    chord   = " << decimal_text(sqrt(d2), bits, false) << "\n"
        << "    chord^2 = " << to_string(d2) << "\n"
        << "    identified as: " << (id ? std::to_string(*id) + "-gon" : "none up to " + std::to_string(n_max))
        << "\n";
  }
  return all ? kOk : kFailed;
}

int cmd_svg(const std::string& file, bool paper, const std::string& output, int width, unsigned bits,
            const std::vector<std::string>& highlights, std::ostream& out, std::ostream& err) {
  if (paper == !file.empty()) {
    err << "compass svg: give either a script file or --paper\n";
    return kUsage;
  }
  RenderOptions opts;
  opts.width_px = width;
  opts.precision_bits = bits;
  for (const auto& h : highlights) {
    const auto comma = h.find(',');
    if (comma == std::string::npos) {
      err << "compass svg: highlight must look like P,Q; got " << h << "\n";
      return kUsage;
    }
    opts.highlight_edges.emplace_back(h.substr(0, comma), h.substr(comma + 1));
  }

  std::string svg;
  try {
    Scene scene;
    if (paper) {
      scene = build_paper_scene();
      if (highlights.empty())
        for (const auto& c : table_claims()) opts.highlight_edges.emplace_back(c.p_name, c.q_name);
    } else {
      std::ifstream in(file, std::ios::binary);
      if (!in) {
        err << "compass: cannot read " << file << "\n";
        return kUsage;
      }
      std::stringstream buf;
      buf << in.rdbuf();
      scene = interpret(parse(buf.str()));
    }
    svg = render_svg(scene, opts);
  } catch (const ScriptError& e) {
    err << file << ":" << e.what() << "\n";
    return e.kind() == ScriptError::Kind::AssertionFailed ? kFailed : kUsage;
  } catch (const RenderError& e) {
    err << "compass svg: " << e.what() << "\n";
    return kUsage;
  }

  if (output == "-") {
    out << svg;
    return kOk;
  }
  std::ofstream f(output, std::ios::binary);
  f << svg;
  if (!f) {
    err << "compass: cannot write " << output << "\n";
    return kUsage;
  }
  return kOk;
}

int cmd_opcount(std::ostream& out) {
  const auto paper = build_paper_scene();
  const auto euclid = build_euclid_variant();
  const auto full = op_count(paper);
  const auto prefix = op_count_through(paper, "I");
  const auto closure = op_count_closure(paper, {"E", "N"});
  const auto variant = op_count(euclid);
  out << "paper scene, full script           " << tally_text(full) << "\n"
      << "paper route through I              " << tally_text(prefix) << "\n"
      << "paper route, closure of edge EN    " << tally_text(closure) << "\n"
      << "euclid variant, edge RI            " << tally_text(variant) << "\n"
      << "euclid variant - paper route through I: circles "
      << signed_text(variant.circles_drawn - prefix.circles_drawn) << "  lines "
      << signed_text(variant.lines_drawn - prefix.lines_drawn) << "  points "
      << signed_text(variant.points_marked - prefix.points_marked) << "\n"
      << "note: S is taken to be I, so angle ROI = 24 deg; the variant adds the circle of radius OH about H\n";
  return kOk;
}

int cmd_check_ngon(std::int64_t n, std::ostream& out, std::ostream& err) {
  if (n < 3) {
    err << "compass check-ngon: n must be at least 3\n";
    return kUsage;
  }
  out << (is_constructible(n) ? "constructible: " : "not constructible: ") << factor_text(n) << "\n";
  return kOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact straightedge and compass constructions.", "compass"};
  app.require_subcommand(1);
  app.fallthrough();

  unsigned bits = 60;
  int n_max = 64;
  app.add_option("--precision", bits, "Working precision in bits for decimal output")
      ->check(CLI::Range(1u, 1u << 16));
  app.add_option("--n-max", n_max, "Largest n tried when identifying a chord")->check(CLI::Range(3, 1 << 20));

  std::string run_file;
  auto* run = app.add_subcommand("run", "Interpret a .geo script and print the scene");
  run->add_option("file", run_file, "Script to run")->required();

  app.add_subcommand("verify-paper", "Verify every table row exactly");
  app.add_subcommand("table", "Print the table with exact and decimal chords");

  std::string svg_file, svg_out = "-";
  bool svg_paper = false;
  int svg_width = 640;
  std::vector<std::string> highlights;
  auto* svg = app.add_subcommand("svg", "Render a scene as SVG");
  svg->add_option("file", svg_file, "Script to render");
  svg->add_flag("--paper", svg_paper, "Render the bundled paper scene");
  svg->add_option("-o,--output", svg_out, "Output path, - for stdout");
  svg->add_option("--width", svg_width, "Canvas width in px")->check(CLI::Range(64, 1 << 16));
  svg->add_option("--highlight", highlights, "Edge to emphasize, as P,Q");

  app.add_subcommand("opcount", "Compare drawing costs of the two bundled scenes");

  std::int64_t ngon = 0;
  auto* check = app.add_subcommand("check-ngon", "Decide constructibility of the regular n-gon");
  check->add_option("n", ngon, "Number of sides")->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << "compass: " << e.what() << "\n\n" << app.help();
    return kUsage;
  }

  if (run->parsed()) return cmd_run(run_file, bits, out, err);
  if (app.got_subcommand("verify-paper")) return cmd_verify_paper(out);
  if (app.got_subcommand("table")) return cmd_table(bits, n_max, out);
  if (svg->parsed())
    return cmd_svg(svg_file, svg_paper, svg_out, svg_width, bits, highlights, out, err);
  if (app.got_subcommand("opcount")) return cmd_opcount(out);
  return cmd_check_ngon(ngon, out, err);
}

}  // namespace compass
