#include <cmath>

#include "doctest.h"
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

GenerationConfig config(long long alpha, int depth, const std::string& seed = "GT0") {
  GenerationConfig cfg;
  cfg.alpha = deg(alpha);
  cfg.depth = depth;
  cfg.seed = SeedSpec::parse(seed);
  return cfg;
}

}  // namespace

TEST_CASE("seed specs parse and print") {
  SeedSpec s = SeedSpec::parse("RH2@3:flip");
  CHECK(s.prototile == "RH2");
  CHECK(s.rot_k == 3);
  CHECK(s.flip);
  CHECK(s.str() == "RH2@3:flip");
  CHECK(SeedSpec::parse("GT0").str() == "GT0");
  CHECK_THROWS_AS(SeedSpec::parse("GT0:sideways"), ParseError);
}

TEST_CASE("substitution on an empty patch") {
  RuleSet rs = r12(60);
  Patch p;
  p.meta.variant = rs.family;
  p.meta.alpha = rs.alpha;
  CHECK(substitute_once(p, rs).tiles.empty());
}

TEST_CASE("depth zero yields exactly the seed") {
  RuleSet rs = r12(36);
  Patch p = generate(config(36, 0), rs);
  REQUIRE(p.tiles.size() == 1);
  CHECK(p.tiles[0].kind == TileKind::Triangle);
  CHECK(p.meta.seed == "GT0");
}

TEST_CASE("single substitution matches the rule's child count") {
  RuleSet rs = load_ruleset_file(data_path("rules_r6.trd"), RuleVariant::R6, deg(36));
  Patch p = generate(config(36, 1), rs);
  const Rule& rule = rs.rule_for(rs.prototile_index.at("GT0"));
  CHECK(p.tiles.size() == rule.children.size());
  CHECK(p.tiles.size() == 10);
}

TEST_CASE("tile counts follow the substitution matrix") {
  RuleSet rs = r12(60);
  SubstitutionMatrix m = substitution_matrix(rs);
  // M^d applied to the seed unit vector, collapsed
  long long tri = 1, rho = 0;
  Patch p = generate(config(60, 0), rs);
  for (int d = 1; d <= 4; ++d) {
    long long tri2 = m.collapsed[0][0] * tri + m.collapsed[0][1] * rho;
    long long rho2 = m.collapsed[1][0] * tri + m.collapsed[1][1] * rho;
    tri = tri2;
    rho = rho2;
    p = substitute_once(p, rs);
    long long pt = 0, pr = 0;
    for (const Tile& t : p.tiles) (t.kind == TileKind::Triangle ? pt : pr) += 1;
    CHECK(pt == tri);
    CHECK(pr == rho);
  }
  CHECK(tri == 18817);
  CHECK(rho == 8148);
}

TEST_CASE("generate_counts agrees with materialized patches") {
  RuleSet rs = r12(60);
  auto counts = generate_counts(SeedSpec::parse("GT0"), 3, rs);
  Patch p = generate(config(60, 3), rs);
  std::vector<long long> seen(rs.prototiles.size(), 0);
  for (const Tile& t : p.tiles) seen[t.prototile] += 1;
  CHECK(counts == seen);
}

TEST_CASE("substitution commutes with rigid motions of the seed") {
  RuleSet rs = r12(60);
  // g: rotation by 120 degrees plus a lattice translation
  const Direction rot(2, 0);
  const ExactPoint shift = ExactPoint::unit(0, 0) + ExactPoint::unit(1, 1);
  Patch base = generate(config(60, 2), rs);
  GenerationConfig moved_cfg = config(60, 2, "GT0@2");
  Patch moved = generate(moved_cfg, rs);
  // translate the seed afterwards: children shift by inflate^depth(shift)
  ExactPoint shifted = shift;
  for (int i = 0; i < 2; ++i) shifted = rs.inflate(shifted);
  REQUIRE(base.tiles.size() == moved.tiles.size());
  for (std::size_t i = 0; i < base.tiles.size(); ++i) {
    const Tile& a = base.tiles[i];
    const Tile& b = moved.tiles[i];
    CHECK(b.orientation == a.orientation + rot);
    CHECK(b.anchor == a.anchor.rotated(rot));
    // applying the translation to the seed must shift every child equally
    Tile c = a;
    c.anchor = a.anchor + shifted;
    Patch manual;
    manual.meta = base.meta;
    (void)c;
  }
  // explicit translation check at depth 1
  Patch p0;
  p0.meta.variant = rs.family;
  p0.meta.alpha = deg(60);
  Tile seed = seed_tile(SeedSpec::parse("GT0"), rs);
  p0.tiles.push_back(seed);
  Tile seed_shifted = seed;
  seed_shifted.anchor = seed.anchor + shift;
  Patch p1 = p0;
  p1.tiles[0] = seed_shifted;
  Patch c0 = substitute_once(p0, rs);
  Patch c1 = substitute_once(p1, rs);
  for (std::size_t i = 0; i < c0.tiles.size(); ++i)
    CHECK(c1.tiles[i].anchor == c0.tiles[i].anchor + rs.inflate(shift));
}

TEST_CASE("generation is deterministic byte for byte") {
  RuleSet rs = r12(36);
  std::vector<std::string> ids;
  for (const Prototile& p : rs.prototiles) ids.push_back(p.id);
  Patch a = generate(config(36, 3), rs);
  Patch b = generate(config(36, 3), rs);
  CHECK(serialize_patch(a, ids) == serialize_patch(b, ids));
}

TEST_CASE("depth cap and degenerate angles are refused") {
  RuleSet rs = r12(60);
  CHECK_THROWS_AS(generate(config(60, 9), rs), DepthExceeded);
  GenerationConfig cfg = config(60, 1);
  cfg.alpha = deg(0);
  CHECK_THROWS_AS(generate(cfg, rs), DegenerateTarget);
}

TEST_CASE("missing rules are reported") {
  RuleSet rs = r12(60);
  Patch p;
  p.meta.variant = rs.family;
  p.meta.alpha = deg(60);
  Tile t;
  t.prototile = 99;
  p.tiles.push_back(t);
  CHECK_THROWS_AS(substitute_once(p, rs), MissingRule);
}

TEST_CASE("reparameterization is reinterpretation") {
  RuleSet rs = r12(60);
  std::vector<std::string> ids;
  for (const Prototile& pr : rs.prototiles) ids.push_back(pr.id);
  Patch p = generate(config(60, 3), rs);
  Patch q = reparameterize(p, deg(36));
  // identical symbolic payload, only the header alpha differs
  std::string sp = serialize_patch(p, ids);
  std::string sq = serialize_patch(q, ids);
  CHECK(sp != sq);
  auto strip_alpha = [](std::string s) {
    auto a = s.find("alpha=");
    auto b = s.find(' ', a);
    return s.erase(a, b - a);
  };
  CHECK(strip_alpha(sp) == strip_alpha(sq));

  // identity reparameterization
  CHECK(serialize_patch(reparameterize(p, deg(60)), ids) == sp);
  // round trip 60 -> 10 -> 60
  CHECK(serialize_patch(reparameterize(reparameterize(p, deg(10)), deg(60)), ids) == sp);
  CHECK_THROWS_AS(reparameterize(p, deg(0)), DegenerateTarget);
  CHECK_THROWS_AS(reparameterize(p, deg(180)), DegenerateTarget);

  // generating at the target angle gives the same symbolic patch
  Patch direct = generate(config(36, 3), rs);
  CHECK(serialize_patch(direct, ids) == serialize_patch(reparameterize(p, deg(36)), ids));
}

TEST_CASE("triangles classify green and red") {
  RuleSet rs = r12(90);
  Patch p = generate(config(90, 3), rs);
  ClassCounts c = classify_triangles(p);
  CHECK(c.green > 0);
  CHECK(c.red > 0);
  long long triangles = 0;
  for (const Tile& t : p.tiles)
    if (t.kind == TileKind::Triangle) ++triangles;
  CHECK(c.green + c.red == triangles);

  // at the square point, green triangles point at multiples of 60 degrees
  // and red ones halfway between
  for (const Tile& t : p.tiles) {
    if (t.kind != TileKind::Triangle) continue;
    double ang = std::fmod(direction_angle(t.orientation, deg(90)), 60.0);
    if (triangle_class(t) == TriangleClass::Green)
      CHECK(ang == doctest::Approx(0.0).epsilon(1e-9));
    else
      CHECK(ang == doctest::Approx(30.0).epsilon(1e-9));
  }
}

TEST_CASE("area follows the exact transfer law at every angle") {
  // total area after one substitution = (sqrt(3)/4, sin a) . M . counts
  RuleSet rs0 = r12(60);
  SubstitutionMatrix m = substitution_matrix(rs0);
  for (long long a : {10, 36, 60, 90, 150}) {
    RuleSet rs = r12(a);
    Patch p = generate(config(a, 2), rs);
    long long tri = 0, rho = 0;
    for (const Tile& t : p.tiles) (t.kind == TileKind::Triangle ? tri : rho) += 1;
    const double at = std::sqrt(3.0) / 4.0, ar = std::sin(deg(a).radians());
    double before = tri * at + rho * ar;
    Patch q = substitute_once(p, rs);
    long long tri2 = 0, rho2 = 0;
    for (const Tile& t : q.tiles) (t.kind == TileKind::Triangle ? tri2 : rho2) += 1;
    CHECK(tri2 == m.collapsed[0][0] * tri + m.collapsed[0][1] * rho);
    CHECK(rho2 == m.collapsed[1][0] * tri + m.collapsed[1][1] * rho);
    double after = tri2 * at + rho2 * ar;
    double predicted = (m.collapsed[0][0] * tri + m.collapsed[0][1] * rho) * at +
                       (m.collapsed[1][0] * tri + m.collapsed[1][1] * rho) * ar;
    CHECK(after == doctest::Approx(predicted).epsilon(1e-12));
    // uniform scaling by inflation^2 is exact at the square point only
    if (a == 90)
      CHECK(after ==
            doctest::Approx(rs.inflation_factor * rs.inflation_factor * before).epsilon(1e-12));
    (void)before;
  }
}
