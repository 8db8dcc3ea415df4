#pragma once

// The ruler and the compass: points, lines and circles with exact
// coordinates, and their intersections.
//
// Intersection results come back in a fixed order so that scripts can pick
// points reproducibly:
//  * line/circle: ascending parameter along the line's direction p -> q;
//  * circle/circle: along the radical line, directed as the a.center ->
//    b.center vector rotated by +90 degrees.

#include <optional>
#include <vector>

#include "compass/exactfield.hpp"

namespace compass {

class GeometryError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Point {
  Constructible x;
  Constructible y;

  friend bool operator==(const Point& a, const Point& b) { return a.x == b.x && a.y == b.y; }
};

/// Line through two distinct points, oriented p -> q.
struct Line {
  Point p;
  Point q;
};

struct Circle {
  Point center;
  Constructible radius_sq;
};

Line line_through(const Point& p, const Point& q);
Circle circle_center_through(const Point& center, const Point& through);
/// Rigid compass: radius transferred from the distance |pq|.
Circle circle_center_radius_from(const Point& center, const Point& p, const Point& q);

Constructible dist_sq(const Point& p, const Point& q);
/// Sign of (q - p) x (r - p); +1 when r is left of the directed line p -> q.
int orientation(const Point& p, const Point& q, const Point& r);

/// Empty when parallel; throws GeometryError when the lines coincide.
std::optional<Point> intersect_lines(const Line& a, const Line& b);
std::vector<Point> intersect_line_circle(const Line& l, const Circle& c);
/// Throws GeometryError for identical circles.
std::vector<Point> intersect_circles(const Circle& a, const Circle& b);

bool on_line(const Point& pt, const Line& l);
bool on_circle(const Point& pt, const Circle& c);

}  // namespace compass
