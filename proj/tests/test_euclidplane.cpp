#include <random>

#include "compass/euclidplane.hpp"
#include "doctest.h"
#include "random_scene.hpp"

using namespace compass;

namespace {

struct Fixture {
  TowerPtr t = Tower::create();
  Constructible n(long a, long b = 1) { return t->number(a, b); }
  Point pt(long x, long y) { return Point{n(x), n(y)}; }
  Constructible root(long v) { return sqrt(n(v)); }
};

}  // namespace

TEST_CASE_FIXTURE(Fixture, "line_through") {
  const auto oa = line_through(pt(0, 0), pt(1, 0));
  CHECK(oa.p == pt(0, 0));
  CHECK(oa.q == pt(1, 0));
  const Point c{n(0), root(3)}, d{n(0), -root(3)};
  const auto cd = line_through(c, d);
  CHECK(on_line(pt(0, 5), cd));
  CHECK_THROWS_AS(line_through(pt(1, 0), pt(1, 0)), GeometryError);
}

TEST_CASE_FIXTURE(Fixture, "circles") {
  CHECK(circle_center_through(pt(0, 0), pt(1, 0)).radius_sq == n(1));
  CHECK(circle_center_through(pt(1, 0), pt(-1, 0)).radius_sq == n(4));
  CHECK_THROWS_AS(circle_center_through(pt(0, 0), pt(0, 0)), GeometryError);

  const Point g{n(1, 2), n(0)};
  CHECK(circle_center_radius_from(g, pt(0, 0), g).radius_sq == n(1, 4));
  CHECK_THROWS_AS(circle_center_radius_from(pt(3, 3), pt(1, 1), pt(1, 1)), GeometryError);
}

TEST_CASE_FIXTURE(Fixture, "dist_sq") {
  const Point h = pt(0, 1), g{n(1, 2), n(0)};
  CHECK(dist_sq(h, g) == n(5, 4));
  CHECK(dist_sq(h, h).is_zero());
}

TEST_CASE_FIXTURE(Fixture, "orientation") {
  CHECK(orientation(pt(0, 0), pt(1, 0), pt(0, 1)) == 1);
  CHECK(orientation(pt(0, 0), pt(1, 0), pt(2, 0)) == 0);
  const Point f{n(1, 2), -root(3) / n(2)};
  CHECK(orientation(pt(0, 0), pt(1, 0), f) == -1);
}

TEST_CASE_FIXTURE(Fixture, "intersect_lines") {
  const Point e{n(1, 2), root(3) / n(2)}, f{n(1, 2), -root(3) / n(2)};
  const auto oa = line_through(pt(0, 0), pt(1, 0));
  const auto g = intersect_lines(line_through(e, f), oa);
  REQUIRE(g);
  CHECK(*g == Point{n(1, 2), n(0)});

  CHECK_FALSE(intersect_lines(line_through(pt(0, 0), pt(1, 0)), line_through(pt(0, 1), pt(1, 1))));

  const Point c{n(0), root(3)}, d{n(0), -root(3)};
  const auto o = intersect_lines(line_through(c, d), oa);
  REQUIRE(o);
  CHECK(*o == pt(0, 0));

  CHECK_THROWS_AS(intersect_lines(oa, line_through(pt(5, 0), pt(-2, 0))), GeometryError);
}

TEST_CASE_FIXTURE(Fixture, "intersect_line_circle") {
  const auto x = circle_center_through(pt(0, 0), pt(1, 0));
  const auto ba = intersect_line_circle(line_through(pt(0, 0), pt(1, 0)), x);
  REQUIRE(ba.size() == 2);
  CHECK(ba[0] == pt(-1, 0));
  CHECK(ba[1] == pt(1, 0));

  // Reversing the line reverses the order.
  const auto ab = intersect_line_circle(line_through(pt(1, 0), pt(0, 0)), x);
  CHECK(ab[0] == pt(1, 0));

  const Point h = pt(0, 1), g{n(1, 2), n(0)};
  const auto cg = circle_center_radius_from(g, pt(0, 0), g);
  const auto hits = intersect_line_circle(line_through(h, g), cg);
  REQUIRE(hits.size() == 2);
  // The first hit along H -> G lies between them.
  const auto& j = hits[0];
  CHECK(sign(dist_sq(h, j) - dist_sq(h, g)) < 0);
  CHECK(dist_sq(h, j) == (n(3) - root(5)) / n(2));

  const auto tangent = intersect_line_circle(line_through(pt(0, 1), pt(1, 1)), x);
  REQUIRE(tangent.size() == 1);
  CHECK(tangent[0] == pt(0, 1));

  CHECK(intersect_line_circle(line_through(pt(0, 2), pt(1, 2)), x).empty());
}

TEST_CASE_FIXTURE(Fixture, "intersect_circles") {
  const auto ca = circle_center_through(pt(1, 0), pt(-1, 0));
  const auto cb = circle_center_through(pt(-1, 0), pt(1, 0));
  const auto cd = intersect_circles(ca, cb);
  REQUIRE(cd.size() == 2);
  CHECK(cd[0] == Point{n(0), root(3)});
  CHECK(cd[1] == Point{n(0), -root(3)});

  const auto x = circle_center_through(pt(0, 0), pt(1, 0));
  const auto ef = intersect_circles(circle_center_through(pt(1, 0), pt(0, 0)), x);
  REQUIRE(ef.size() == 2);
  CHECK(ef[0] == Point{n(1, 2), root(3) / n(2)});
  CHECK(ef[1] == Point{n(1, 2), -root(3) / n(2)});

  const auto touch = intersect_circles(x, circle_center_through(pt(2, 0), pt(1, 0)));
  REQUIRE(touch.size() == 1);
  CHECK(touch[0] == pt(1, 0));

  const auto inner = intersect_circles(circle_center_through(pt(0, 0), pt(3, 0)),
                                       circle_center_through(pt(1, 0), pt(3, 0)));
  REQUIRE(inner.size() == 1);
  CHECK(inner[0] == pt(3, 0));

  CHECK(intersect_circles(x, circle_center_through(pt(5, 0), pt(6, 0))).empty());
  CHECK(intersect_circles(x, circle_center_through(pt(0, 0), pt(2, 0))).empty());
  CHECK_THROWS_AS(intersect_circles(x, circle_center_through(pt(0, 0), pt(0, 1))), GeometryError);
}

TEST_CASE("intersect_circles is symmetric as a set") {
  std::mt19937_64 rng(17);
  std::uniform_int_distribution<long> c(-4, 4);
  int compared = 0;
  for (int i = 0; i < 60; ++i) {
    Fixture f;
    auto pt = [&](long x, long y) { return f.pt(x, y); };
    const auto a = circle_center_through(pt(c(rng), c(rng)), pt(c(rng), c(rng) + 9));
    const auto b = circle_center_through(pt(c(rng), c(rng)), pt(c(rng), c(rng) + 9));
    if (a.center == b.center) continue;
    const auto ab = intersect_circles(a, b);
    const auto ba = intersect_circles(b, a);
    REQUIRE(ab.size() == ba.size());
    if (ab.size() == 2) {
      CHECK(ab[0] == ba[1]);
      CHECK(ab[1] == ba[0]);
      ++compared;
    } else if (ab.size() == 1) {
      CHECK(ab[0] == ba[0]);
    }
  }
  CHECK(compared > 10);
}

TEST_CASE_FIXTURE(Fixture, "dist_sq symmetry and squared triangle inequality") {
  std::mt19937_64 rng(23);
  std::uniform_int_distribution<long> c(-5, 5);
  const auto r2 = root(2);
  auto random_point = [&] { return Point{n(c(rng)) + n(c(rng), 3) * r2, n(c(rng), 2)}; };
  for (int i = 0; i < 100; ++i) {
    const Point p = random_point(), q = random_point(), r = random_point();
    CHECK(dist_sq(p, q) == dist_sq(q, p));
    // |pr| <= |pq| + |qr|  <=>  c - a - b <= 0  or  (c - a - b)^2 <= 4ab
    const auto a = dist_sq(p, q), b = dist_sq(q, r), cc = dist_sq(p, r);
    const auto gap = cc - a - b;
    CHECK((sign(gap) <= 0 || sign(n(4) * a * b - gap * gap) >= 0));
  }
}

TEST_CASE_FIXTURE(Fixture, "tangency is destroyed by any radius perturbation") {
  const auto x = circle_center_through(pt(0, 0), pt(1, 0));
  const auto touching = circle_center_through(pt(2, 0), pt(1, 0));
  REQUIRE(intersect_circles(x, touching).size() == 1);
  const auto line = line_through(pt(-3, 1), pt(4, 1));
  REQUIRE(intersect_line_circle(line, x).size() == 1);
  for (const auto& eps : {Rational(1, 1000), Rational(-1, 1000), Rational(1, 1000000007), Rational(-7, 3)}) {
    const Circle bumped{touching.center, touching.radius_sq + Constructible(t, eps)};
    if (sign(bumped.radius_sq) <= 0) continue;
    CHECK(intersect_circles(x, bumped).size() != 1);
    const Circle grown{x.center, x.radius_sq + Constructible(t, eps)};
    if (sign(grown.radius_sq) > 0) CHECK(intersect_line_circle(line, grown).size() != 1);
  }
}

TEST_CASE("property: random scenes have exact incidences") {
  std::mt19937_64 rng(99);
  int total = 0;
  for (int i = 0; i < 100; ++i) {
    const auto o = randscene::run(rng);
    CHECK(o.incidence_failures == 0);
    total += o.intersections;
  }
  CHECK(total > 200);
}
