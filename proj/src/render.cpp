#include <algorithm>
#include <optional>
#include <sstream>

#include "compass/decimal.hpp"
#include "compass/facade.hpp"

namespace compass {

namespace {

struct Vec {
  Rational x, y;
};

// Scene-space shapes, each coordinate the midpoint of a refined enclosure.
struct Approx {
  std::vector<std::pair<std::string, Vec>> points;
  std::vector<std::pair<std::string, std::pair<Vec, Vec>>> lines;
  std::vector<std::pair<std::string, std::pair<Vec, Rational>>> circles;
};

Rational mid(const Constructible& v, unsigned bits) { return to_decimal(v, bits).midpoint(); }

Vec mid(const Point& p, unsigned bits) { return {mid(p.x, bits), mid(p.y, bits)}; }

// floor(sqrt(q) * 2^bits) / 2^bits for q >= 0.
Rational approx_sqrt(const Rational& q, unsigned bits) {
  if (sgn(q) <= 0) return 0;
  const mpz_class scale = mpz_class(1) << (2 * bits);
  mpz_class n = q.get_num() * scale / q.get_den();
  mpz_class root;
  mpz_sqrt(root.get_mpz_t(), n.get_mpz_t());
  Rational r(root, mpz_class(1) << bits);
  r.canonicalize();
  return r;
}

std::string xml_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

void check(const RenderOptions& o) {
  if (o.width_px < 64) throw RenderError("width must be at least 64 px");
  if (sgn(o.margin_fraction) < 0 || o.margin_fraction >= Rational(1, 2))
    throw RenderError("margin fraction must lie in [0, 1/2)");
  if (o.precision_bits < 16) throw RenderError("precision must be at least 16 bits");
}

}  // namespace

std::string render_svg(const Scene& scene, const RenderOptions& options) {
  check(options);
  if (scene.empty()) throw RenderError("cannot render an empty scene");
  const unsigned bits = options.precision_bits;
  const int digits = decimal_digits(bits);
  auto num = [&](const Rational& q) { return format_decimal(q, digits, false); };

  Approx a;
  for (const auto& n : scene.names()) {
    const auto& obj = scene.object(n);
    if (const auto* p = std::get_if<Point>(&obj)) {
      a.points.emplace_back(n, mid(*p, bits));
    } else if (const auto* l = std::get_if<Line>(&obj)) {
      a.lines.emplace_back(n, std::make_pair(mid(l->p, bits), mid(l->q, bits)));
    } else {
      const auto& c = std::get<Circle>(obj);
      a.circles.emplace_back(n, std::make_pair(mid(c.center, bits), approx_sqrt(mid(c.radius_sq, bits), bits)));
    }
  }

  // Bounding box over points, line anchors and full circles.
  std::optional<Rational> x0, x1, y0, y1;
  auto grow = [&](const Rational& lx, const Rational& hx, const Rational& ly, const Rational& hy) {
    x0 = x0 ? std::min(*x0, lx) : lx;
    x1 = x1 ? std::max(*x1, hx) : hx;
    y0 = y0 ? std::min(*y0, ly) : ly;
    y1 = y1 ? std::max(*y1, hy) : hy;
  };
  for (const auto& [n, p] : a.points) grow(p.x, p.x, p.y, p.y);
  for (const auto& [n, l] : a.lines) {
    grow(l.first.x, l.first.x, l.first.y, l.first.y);
    grow(l.second.x, l.second.x, l.second.y, l.second.y);
  }
  for (const auto& [n, c] : a.circles) grow(c.first.x - c.second, c.first.x + c.second, c.first.y - c.second,
                                            c.first.y + c.second);
  Rational bw = *x1 - *x0, bh = *y1 - *y0;
  const Rational pad = std::max({bw, bh, Rational(1)}) / 2;
  if (sgn(bw) == 0) {
    *x0 -= pad;
    bw = 2 * pad;
  }
  if (sgn(bh) == 0) {
    *y0 -= pad;
    *y1 += pad;
    bh = 2 * pad;
  }

  const Rational width = options.width_px;
  const Rational margin = width * options.margin_fraction;
  const Rational scale = (width - 2 * margin) / std::max(bw, bh);
  const Rational height = bh * scale + 2 * margin;
  auto sx = [&](const Rational& x) -> Rational { return margin + (x - *x0) * scale; };
  auto sy = [&](const Rational& y) -> Rational { return margin + (*y1 - y) * scale; };

  std::ostringstream os;
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\" standalone=\"no\"?>\n"
     << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << num(width) << "\" height=\""
     << num(height) << "\" viewBox=\"0 0 " << num(width) << " " << num(height) << "\">\n"
     << "  <rect x=\"0\" y=\"0\" width=\"" << num(width) << "\" height=\"" << num(height)
     << "\" fill=\"white\"/>\n";

  os << "  <g id=\"circles\" fill=\"none\" stroke=\"#4a6fa5\" stroke-width=\"1\">\n";
  for (const auto& [n, c] : a.circles)
    os << "    <circle id=\"" << xml_escape(n) << "\" cx=\"" << num(sx(c.first.x)) << "\" cy=\""
       << num(sy(c.first.y)) << "\" r=\"" << num(c.second * scale) << "\"/>\n";
  os << "  </g>\n";

  os << "  <g id=\"lines\" stroke=\"#7f7f7f\" stroke-width=\"1\">\n";
  for (const auto& [n, l] : a.lines) {
    // Clip p + t (q - p) to the canvas.
    const Rational px = sx(l.first.x), py = sy(l.first.y);
    const Rational dx = sx(l.second.x) - px, dy = sy(l.second.y) - py;
    std::optional<Rational> lo, hi;
    auto clip = [&](const Rational& p, const Rational& d, const Rational& extent) {
      if (sgn(d) == 0) return sgn(p) >= 0 && p <= extent;
      Rational ta = -p / d, tb = (extent - p) / d;
      if (ta > tb) std::swap(ta, tb);
      lo = lo ? std::max(*lo, ta) : ta;
      hi = hi ? std::min(*hi, tb) : tb;
      return true;
    };
    if (!clip(px, dx, width) || !clip(py, dy, height) || !lo || *lo > *hi) continue;
    os << "    <line id=\"" << xml_escape(n) << "\" x1=\"" << num(px + *lo * dx) << "\" y1=\"" << num(py + *lo * dy)
       << "\" x2=\"" << num(px + *hi * dx) << "\" y2=\"" << num(py + *hi * dy) << "\"/>\n";
  }
  os << "  </g>\n";

  os << "  <g id=\"edges\" stroke=\"#c0392b\" stroke-width=\"3\" stroke-linecap=\"round\">\n";
  for (const auto& [p, q] : options.highlight_edges) {
    Vec u, v;
    try {
      u = mid(scene.point(p), bits);
      v = mid(scene.point(q), bits);
    } catch (const SceneError& e) {
      throw RenderError(std::string("highlighted edge: ") + e.what());
    }
    os << "    <line x1=\"" << num(sx(u.x)) << "\" y1=\"" << num(sy(u.y)) << "\" x2=\"" << num(sx(v.x)) << "\" y2=\""
       << num(sy(v.y)) << "\"><title>" << xml_escape(p + q) << "</title></line>\n";
  }
  os << "  </g>\n";

  os << "  <g id=\"points\" fill=\"black\">\n";
  for (const auto& [n, p] : a.points)
    os << "    <circle id=\"pt-" << xml_escape(n) << "\" cx=\"" << num(sx(p.x)) << "\" cy=\"" << num(sy(p.y))
       << "\" r=\"3\"/>\n";
  os << "  </g>\n";

  if (options.label_points) {
    os << "  <g id=\"labels\" font-family=\"sans-serif\" font-size=\"12\" fill=\"black\">\n";
    for (const auto& [n, p] : a.points)
      os << "    <text x=\"" << num(sx(p.x) + 5) << "\" y=\"" << num(sy(p.y) - 5) << "\">" << xml_escape(n)
         << "</text>\n";
    os << "  </g>\n";
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace compass
