#pragma once

// SVG rendering and the command-line front end.

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "compass/geoscript.hpp"

namespace compass {

class RenderError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RenderOptions {
  int width_px = 640;               // >= 64
  Rational margin_fraction{1, 10};  // in [0, 1/2)
  unsigned precision_bits = 60;     // >= 16
  bool label_points = true;
  std::vector<std::pair<std::string, std::string>> highlight_edges;
};

/// SVG 1.1 document.  The y axis points up in scene space and down on
/// screen; lines are clipped to the canvas.  Output depends only on the
/// scene and the options.
std::string render_svg(const Scene& scene, const RenderOptions& options);

/// Exit codes: 0 success, 1 verification failure, 2 usage or input error.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace compass
