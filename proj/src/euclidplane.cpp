#include "compass/euclidplane.hpp"

namespace compass {

namespace {

Constructible cross(const Constructible& ax, const Constructible& ay, const Constructible& bx,
                    const Constructible& by) {
  return ax * by - ay * bx;
}

}  // namespace

Line line_through(const Point& p, const Point& q) {
  if (p == q) throw GeometryError("line through coincident points");
  return Line{p, q};
}

Circle circle_center_through(const Point& center, const Point& through) {
  return circle_center_radius_from(center, center, through);
}

Circle circle_center_radius_from(const Point& center, const Point& p, const Point& q) {
  if (p == q) throw GeometryError("circle with zero radius");
  return Circle{center, dist_sq(p, q)};
}

Constructible dist_sq(const Point& p, const Point& q) {
  const auto dx = p.x - q.x;
  const auto dy = p.y - q.y;
  return dx * dx + dy * dy;
}

int orientation(const Point& p, const Point& q, const Point& r) {
  return sign(cross(q.x - p.x, q.y - p.y, r.x - p.x, r.y - p.y));
}

std::optional<Point> intersect_lines(const Line& a, const Line& b) {
  const auto dax = a.q.x - a.p.x, day = a.q.y - a.p.y;
  const auto dbx = b.q.x - b.p.x, dby = b.q.y - b.p.y;
  const auto wx = b.p.x - a.p.x, wy = b.p.y - a.p.y;
  const auto det = cross(dax, day, dbx, dby);
  if (det.is_zero()) {
    if (cross(dax, day, wx, wy).is_zero()) throw GeometryError("intersection of coincident lines");
    return std::nullopt;
  }
  const auto t = cross(wx, wy, dbx, dby) / det;
  return Point{a.p.x + t * dax, a.p.y + t * day};
}

// Solves |p + t*d - c|^2 = r^2, i.e. (d.d) t^2 + 2 (d.w) t + (w.w - r^2) = 0
// with w = p - c.
std::vector<Point> intersect_line_circle(const Line& l, const Circle& c) {
  const auto dx = l.q.x - l.p.x, dy = l.q.y - l.p.y;
  const auto wx = l.p.x - c.center.x, wy = l.p.y - c.center.y;
  const auto qa = dx * dx + dy * dy;
  const auto qb = dx * wx + dy * wy;
  const auto qc = wx * wx + wy * wy - c.radius_sq;
  const auto disc = qb * qb - qa * qc;
  const int s = sign(disc);
  if (s < 0) return {};
  auto at = [&](const Constructible& t) { return Point{l.p.x + t * dx, l.p.y + t * dy}; };
  if (s == 0) return {at(-qb / qa)};
  const auto root = sqrt(disc);
  return {at((-qb - root) / qa), at((-qb + root) / qa)};
}

std::vector<Point> intersect_circles(const Circle& a, const Circle& b) {
  const auto dx = b.center.x - a.center.x, dy = b.center.y - a.center.y;
  if (dx.is_zero() && dy.is_zero()) {
    if (a.radius_sq == b.radius_sq) throw GeometryError("intersection of identical circles");
    return {};
  }
  // Radical line: 2 X.D = ra^2 - rb^2 + |cb|^2 - |ca|^2 with D = cb - ca.
  // Foot point X0 = ca + k D.
  const auto dd = dx * dx + dy * dy;
  const auto k = (a.radius_sq - b.radius_sq + dd) / (dd + dd);
  const Point foot{a.center.x + k * dx, a.center.y + k * dy};
  const Point ahead{foot.x - dy, foot.y + dx};
  return intersect_line_circle(Line{foot, ahead}, a);
}

bool on_line(const Point& pt, const Line& l) { return orientation(l.p, l.q, pt) == 0; }

bool on_circle(const Point& pt, const Circle& c) { return dist_sq(c.center, pt) == c.radius_sq; }

}  // namespace compass
