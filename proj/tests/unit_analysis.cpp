#include <cmath>

#include "doctest.h"
#include "trirhomb/analysis.hpp"
#include "trirhomb/engine.hpp"

using namespace trirhomb;

namespace {

AngleParam deg(long long n, long long d = 1) { return AngleParam::from(Rational(n, d)); }

std::string data_path(const std::string& name) {
  return std::string(TRIRHOMB_DATA_DIR) + "/" + name;
}

RuleSet r12(long long alpha) {
  return load_ruleset_file(data_path("rules_r12.trd"), RuleVariant::R12, deg(alpha));
}

Patch gen(const RuleSet& rs, long long alpha, int depth, const std::string& seed = "GT0") {
  GenerationConfig cfg;
  cfg.alpha = deg(alpha);
  cfg.depth = depth;
  cfg.seed = SeedSpec::parse(seed);
  return generate(cfg, rs);
}

}  // namespace

TEST_CASE("validation of trivial patches") {
  RuleSet rs = r12(60);
  SUBCASE("a single tile passes") {
    Patch p = gen(rs, 60, 0);
    CHECK(validate(p, deg(60), rs).passed());
  }
  SUBCASE("two copies of one tile overlap with the full tile area") {
    Patch p = gen(rs, 60, 0);
    p.tiles.push_back(p.tiles[0]);
    ValidationReport rep = validate(p, deg(60), rs);
    REQUIRE(rep.overlaps.size() == 1);
    CHECK(rep.overlaps[0].area == doctest::Approx(std::sqrt(3.0) / 4.0));
  }
  SUBCASE("a removed interior tile is reported as a gap") {
    Patch p = gen(rs, 60, 2);
    // drop the tile whose centroid is nearest the patch centre
    const auto& polys = p.polygons();
    Vec2 mid{0, 0};
    std::size_t n = 0;
    for (const auto& poly : polys)
      for (const Vec2& v : poly) {
        mid.x += v.x;
        mid.y += v.y;
        ++n;
      }
    mid.x /= n;
    mid.y /= n;
    std::size_t best = 0;
    double bd = 1e300;
    for (std::size_t i = 0; i < polys.size(); ++i) {
      Vec2 c{0, 0};
      for (const Vec2& v : polys[i]) {
        c.x += v.x;
        c.y += v.y;
      }
      c.x /= polys[i].size();
      c.y /= polys[i].size();
      double d = (c - mid).norm();
      if (d < bd) {
        bd = d;
        best = i;
      }
    }
    p.tiles.erase(p.tiles.begin() + best);
    p.invalidate();
    ValidationReport rep = validate(p, deg(60), rs);
    CHECK(!rep.gaps.empty());
  }
}

TEST_CASE("generated patches validate cleanly") {
  RuleSet rs = r12(36);
  Patch p = gen(rs, 36, 3);
  ValidationReport rep = validate(p, deg(36), rs);
  INFO(rep.text());
  CHECK(rep.passed());
}

TEST_CASE("census counts and invariance under reparameterization") {
  RuleSet rs = r12(60);
  SUBCASE("seed census") {
    Census c = census(gen(rs, 60, 0));
    CHECK(c.triangles == 1);
    CHECK(c.rhombi == 0);
    CHECK(c.green == 1);
  }
  SUBCASE("depth counts match matrix powers") {
    SubstitutionMatrix m = substitution_matrix(rs);
    long long tri = 1, rho = 0;
    for (int d = 1; d <= 3; ++d) {
      long long t2 = m.collapsed[0][0] * tri + m.collapsed[0][1] * rho;
      rho = m.collapsed[1][0] * tri + m.collapsed[1][1] * rho;
      tri = t2;
      Census c = census(gen(rs, 60, d));
      CHECK(c.triangles == tri);
      CHECK(c.rhombi == rho);
      CHECK(c.green + c.red == c.triangles);
    }
  }
  SUBCASE("census is invariant under reparameterization") {
    Patch p = gen(rs, 60, 3);
    Census a = census(p);
    Census b = census(reparameterize(p, deg(137)));
    CHECK(a.triangles == b.triangles);
    CHECK(a.rhombi == b.rhombi);
    CHECK(a.green == b.green);
    CHECK(a.orientation_histogram == b.orientation_histogram);
  }
}

TEST_CASE("periodicity scan") {
  RuleSet rs = r12(60);
  SUBCASE("a single tile has no candidates") {
    Patch p = gen(rs, 60, 0);
    CHECK(!periodicity_scan(p, deg(60), 10.0).has_value());
  }
  SUBCASE("the evaluated limit configuration is periodic with period 1") {
    Patch p = gen(rs, 60, 3);
    auto hit = periodicity_scan(p, AngleParam::from(Rational(0)), 1.5, PeriodMatch::Geometric);
    REQUIRE(hit.has_value());
    CHECK(hit->norm() == doctest::Approx(1.0).epsilon(1e-9));
  }
  SUBCASE("no period at an interior angle") {
    Patch p = gen(rs, 60, 3);
    CHECK(!periodicity_scan(p, deg(60), 6.0, PeriodMatch::Decorated).has_value());
    CHECK(!periodicity_scan(p, deg(60), 6.0, PeriodMatch::Geometric).has_value());
  }
  SUBCASE("scan is invariant under rigid motion of the patch") {
    Patch p = gen(rs, 60, 2);
    Patch q = p;
    const Direction rot(1, 0);
    const ExactPoint shift = ExactPoint::unit(0, 0) + ExactPoint::unit(1, 1);
    for (Tile& t : q.tiles) {
      t.anchor = t.anchor.rotated(rot) + shift;
      t.orientation = t.orientation + rot;
    }
    q.invalidate();
    auto a = periodicity_scan(p, deg(60), 5.0);
    auto b = periodicity_scan(q, deg(60), 5.0);
    CHECK(a.has_value() == b.has_value());
  }
}

TEST_CASE("underlying structure") {
  RuleSet rs = r12(60);
  SUBCASE("a patch with no six-triangle vertex gives an empty graph") {
    Patch p = gen(rs, 60, 1);
    ValidationReport rep = validate(p, deg(60), rs);
    REQUIRE(rep.passed());
    StructureGraph g = underlying_structure(p, deg(60), rep);
    CHECK(g.nodes.empty());
    CHECK(g.edges.empty());
  }
  SUBCASE("one hexagon of six triangles gives one node and no edges") {
    Patch p;
    p.meta.variant = "R12";
    p.meta.alpha = deg(60);
    for (int k = 0; k < 6; ++k) {
      Tile t;
      t.kind = TileKind::Triangle;
      t.orientation = Direction(k, 0);
      t.prototile = rs.prototile_index.at("GT0");
      p.tiles.push_back(t);
    }
    ValidationReport rep = validate(p, deg(60), rs);
    StructureGraph g = underlying_structure(p, deg(60), rep);
    REQUIRE(g.nodes.size() == 1);
    CHECK(g.edges.empty());
    CHECK(g.nodes[0].center.is_zero());
  }
  SUBCASE("unvalidated patches are refused") {
    Patch p = gen(rs, 60, 1);
    ValidationReport rep;
    rep.overlaps.push_back({0, 1, 1.0});
    CHECK_THROWS_AS(underlying_structure(p, deg(60), rep), NotValidated);
  }
  SUBCASE("faces classify as triangles and rhombi, invariant node count") {
    Patch p = gen(rs, 60, 3);
    ValidationReport rep = validate(p, deg(60), rs);
    REQUIRE(rep.passed());
    StructureGraph g = underlying_structure(p, deg(60), rep);
    CHECK(g.nodes.size() == 54);
    CHECK(g.face_census.count("other") == 0);
    CHECK(g.face_census.at("triangle") > 0);
    CHECK(g.face_census.at("rhombus") > 0);

    Patch q = reparameterize(p, deg(10));
    ValidationReport rep2 = validate(q, deg(10), rs);
    REQUIRE(rep2.passed());
    StructureGraph g2 = underlying_structure(q, deg(10), rep2);
    CHECK(g2.nodes.size() == g.nodes.size());
    CHECK(g2.face_census == g.face_census);
  }
}
