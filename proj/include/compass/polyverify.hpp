#pragma once

// Built-in scenes and exact verification of inscribed polygon edges.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "compass/geoscript.hpp"

namespace compass {

struct EdgeClaim {
  int n = 0;
  std::string p_name, q_name;
  Rational central_angle_degrees;  // always 360/n

  static EdgeClaim make(int n, std::string p, std::string q);
};

struct EdgeResult {
  EdgeClaim claim;
  bool on_circle_p = false;
  bool on_circle_q = false;
  bool chord_exact_match = false;
  bool passed() const { return on_circle_p && on_circle_q && chord_exact_match; }
};

struct VerificationReport {
  std::vector<EdgeResult> results;
  bool overall = false;
};

/// Drawn circles and lines each cost one; marked points are tallied
/// separately and cost nothing.
struct OpCount {
  long circles_drawn = 0;
  long lines_drawn = 0;
  long points_marked = 0;
  bool operator==(const OpCount&) const = default;
};

class VerifyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string_view paper_script();
std::string_view euclid_script();

/// Interprets the bundled pentadecagon script with A placed at (a_x, 0).
/// Embedded assertions are scale-relative, so any a_x > 0 builds.
Scene build_paper_scene(const Rational& a_x = 1);
/// The classical route: the paper prefix through I, then R on X from the
/// circle of radius OH about H.  RI is checked against chord_sq(15, OA^2).
Scene build_euclid_variant(const Rational& a_x = 1);

/// The ten table rows, in table order.
const std::vector<EdgeClaim>& table_claims();
/// K is the one point whose compass step is our own reading of the text.
bool is_reconstructed(const EdgeClaim& claim);

EdgeResult verify_edge(const Scene& scene, const EdgeClaim& claim, const std::string& center_name,
                       const std::string& radius_point_name);
/// All table rows against center O and radius point A.
VerificationReport verify_table(const Scene& scene);

/// The unique supported n <= n_max whose chord matches exactly.
std::optional<int> identify_ngon(const Constructible& chord_squared, const Constructible& radius_sq, int n_max);

OpCount op_count(const Scene& scene);
/// Tally of the step log up to and including the step binding `name`.
OpCount op_count_through(const Scene& scene, const std::string& name);
/// Tally of only the steps the named objects transitively depend on.
OpCount op_count_closure(const Scene& scene, const std::vector<std::string>& names);

}  // namespace compass
