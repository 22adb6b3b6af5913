#include <cmath>

#include "doctest.h"
#include "trirhomb/tiling.hpp"

using namespace trirhomb;

namespace {

AngleParam deg(long long n, long long d = 1) { return AngleParam::from(Rational(n, d)); }

Tile triangle(int k = 0, int m = 0) {
  Tile t;
  t.kind = TileKind::Triangle;
  t.orientation = Direction(k, m);
  return t;
}

Tile rhombus(int k = 0) {
  Tile t;
  t.kind = TileKind::Rhombus;
  t.orientation = Direction(k, 0);
  return t;
}

double signed_area(const std::vector<Vec2>& poly) {
  double s = 0.0;
  for (std::size_t i = 0; i < poly.size(); ++i) {
    const Vec2& a = poly[i];
    const Vec2& b = poly[(i + 1) % poly.size()];
    s += a.x * b.y - b.x * a.y;
  }
  return 0.5 * s;
}

std::vector<Vec2> eval_all(const std::vector<ExactPoint>& vs, const AngleParam& a) {
  std::vector<Vec2> out;
  for (const ExactPoint& v : vs) out.push_back(v.eval(a));
  return out;
}

}  // namespace

TEST_CASE("unit triangle vertices") {
  auto vs = eval_all(tile_vertices(triangle(), deg(33)), deg(33));
  REQUIRE(vs.size() == 3);
  CHECK(vs[0].x == doctest::Approx(0.0));
  CHECK(vs[1].x == doctest::Approx(1.0));
  CHECK(vs[1].y == doctest::Approx(0.0));
  CHECK(vs[2].x == doctest::Approx(0.5));
  CHECK(vs[2].y == doctest::Approx(std::sqrt(3.0) / 2));
}

TEST_CASE("unit square at alpha 90") {
  auto vs = eval_all(tile_vertices(rhombus(), deg(90)), deg(90));
  REQUIRE(vs.size() == 4);
  CHECK(vs[1].x == doctest::Approx(1.0));
  CHECK(vs[2].x == doctest::Approx(1.0));
  CHECK(vs[2].y == doctest::Approx(1.0));
  CHECK(vs[3].x == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(vs[3].y == doctest::Approx(1.0));
}

TEST_CASE("thin rhombus at alpha 10") {
  AngleParam a = deg(10);
  auto vs = eval_all(tile_vertices(rhombus(), a), a);
  const double c = std::cos(a.radians()), s = std::sin(a.radians());
  CHECK(vs[2].x == doctest::Approx(1.0 + c));
  CHECK(vs[2].y == doctest::Approx(s));
  CHECK(vs[3].x == doctest::Approx(c));
  CHECK(vs[3].y == doctest::Approx(s));
}

TEST_CASE("degenerate rhombus is refused outside limit mode") {
  CHECK_THROWS_AS(tile_vertices(rhombus(), deg(0)), DegenerateTile);
  CHECK_THROWS_AS(tile_vertices(rhombus(), deg(180)), DegenerateTile);
  CHECK(tile_vertices(rhombus(), deg(0), /*allow_degenerate=*/true).size() == 4);
  CHECK_NOTHROW(tile_vertices(triangle(), deg(0)));
}

TEST_CASE("tile areas") {
  CHECK(tile_area(triangle(), deg(77)) == doctest::Approx(std::sqrt(3.0) / 4));
  CHECK(tile_area(rhombus(), deg(90)) == doctest::Approx(1.0));
  CHECK(tile_area(rhombus(), deg(10)) == doctest::Approx(0.17364817766693));
}

TEST_CASE("vertices wind counter-clockwise at every interior angle") {
  for (long long a : {1, 10, 36, 60, 90, 120, 179}) {
    AngleParam alpha = deg(a);
    for (int k = 0; k < 6; ++k) {
      for (int m = 0; m <= 1; ++m) {
        Tile t = triangle(k, m);
        CHECK(signed_area(eval_all(tile_vertices(t, alpha), alpha)) > 0.0);
      }
      Tile r = rhombus(k);
      CHECK(signed_area(eval_all(tile_vertices(r, alpha), alpha)) > 0.0);
    }
  }
}

TEST_CASE("triangle classes") {
  CHECK(triangle_class(triangle(4, 0)) == TriangleClass::Green);
  CHECK(triangle_class(triangle(1, 1)) == TriangleClass::Red);
  Tile bad = triangle(0, 2);
  CHECK_THROWS_AS(triangle_class(bad), UnclassifiableOrientation);
}

TEST_CASE("spatial index") {
  Patch p;
  p.meta.alpha = deg(60);
  SUBCASE("empty patch gives an empty index") {
    p.build_index(10.0);
    CHECK(p.index.query(-100, -100, 100, 100).empty());
  }
  SUBCASE("single tile in one big cell") {
    p.tiles.push_back(triangle());
    p.build_index(10.0);
    auto hits = p.index.query(0.2, 0.2, 0.3, 0.3);
    REQUIRE(hits.size() == 1);
    CHECK(hits[0] == 0);
  }
  SUBCASE("distant tiles land in disjoint cells") {
    Tile a = triangle();
    Tile b = triangle();
    b.anchor = ExactPoint::unit(0, 0);
    for (int i = 0; i < 2; ++i) b.anchor = b.anchor + b.anchor;  // 4 units away
    p.tiles = {a, b};
    p.build_index(0.5);
    auto near_a = p.index.query(0.1, 0.1, 0.2, 0.2);
    REQUIRE(near_a.size() == 1);
    CHECK(near_a[0] == 0);
    auto near_b = p.index.query(4.1, 0.1, 4.2, 0.2);
    REQUIRE(near_b.size() == 1);
    CHECK(near_b[0] == 1);
  }
}

TEST_CASE("neighbors by shared vertices") {
  Patch p;
  p.meta.alpha = deg(90);
  SUBCASE("isolated tile") {
    p.tiles.push_back(triangle());
    CHECK(neighbors(p, 0).empty());
  }
  SUBCASE("edge neighbors share two vertices") {
    Tile up = triangle(0, 0);
    Tile down = triangle(3, 0);  // rotated copy sharing the edge [0, u0]
    down.anchor = ExactPoint::unit(0, 0);
    p.tiles = {up, down};
    auto nb = neighbors(p, 0);
    REQUIRE(nb.size() == 1);
    CHECK(nb[0].tile == 1);
    CHECK(nb[0].shared_vertices == 2);
    auto nb1 = neighbors(p, 1);
    REQUIRE(nb1.size() == 1);
    CHECK(nb1[0].tile == 0);
    CHECK(nb1[0].shared_vertices == 2);
  }
  SUBCASE("pivot neighbors share one vertex") {
    Tile a = triangle(0, 0);
    Tile b = triangle(5, 0);
    b.anchor = ExactPoint::unit(0, 0);
    p.tiles = {a, b};
    auto nb = neighbors(p, 0);
    REQUIRE(nb.size() == 1);
    CHECK(nb[0].shared_vertices == 1);
  }
}

TEST_CASE("patch serialization round-trips") {
  Patch p;
  p.meta.variant = "R12";
  p.meta.alpha = deg(73, 2);
  p.meta.depth = 1;
  p.meta.seed = "GT0";
  Tile t = triangle(2, 1);
  t.prototile = 0;
  Tile r = rhombus(1);
  r.anchor = ExactPoint::unit(4, 1);
  r.prototile = 1;
  r.flipped = true;
  p.tiles = {t, r};
  std::vector<std::string> ids = {"RT2", "RH0"};
  std::string text = serialize_patch(p, ids);
  CHECK(text.rfind("trirhomb-patch v1 variant=R12 alpha=73/2 depth=1 seed=GT0\n", 0) == 0);
  std::vector<std::string> ids2;
  Patch q = parse_patch(text, &ids2);
  REQUIRE(q.tiles.size() == 2);
  CHECK(ids2 == ids);
  CHECK(q.meta.alpha.alpha_deg == Rational(73, 2));
  CHECK(q.tiles[0].orientation == Direction(2, 1));
  CHECK(q.tiles[1].flipped);
  CHECK(q.tiles[1].anchor == ExactPoint::unit(4, 1));
  CHECK(serialize_patch(q, ids2) == text);
}
