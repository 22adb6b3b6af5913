#include <cmath>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "trirhomb/rules.hpp"

using namespace trirhomb;

namespace {

AngleParam deg(long long n, long long d = 1) { return AngleParam::from(Rational(n, d)); }

std::string data_path(const std::string& name) {
  return std::string(TRIRHOMB_DATA_DIR) + "/" + name;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("shipped files load with the right rule counts") {
  CHECK(load_ruleset_file(data_path("rules_r6.trd"), RuleVariant::R6, deg(36)).rules.size() == 6);
  CHECK(load_ruleset_file(data_path("rules_r12.trd"), RuleVariant::R12, deg(10)).rules.size() ==
        12);
  CHECK(load_ruleset_file(data_path("rules_r28.trd"), RuleVariant::R28, deg(60)).rules.size() ==
        28);
  CHECK(load_ruleset_any_file(data_path("rules_r5st.trd"), deg(90)).rules.size() == 5);
}

TEST_CASE("variant mismatches are rejected") {
  CHECK_THROWS_AS(load_ruleset_file(data_path("rules_r12.trd"), RuleVariant::R6, deg(36)),
                  VariantMismatch);
  CHECK_THROWS_AS(load_ruleset_file(data_path("rules_r5st.trd"), RuleVariant::R28, deg(90)),
                  VariantMismatch);
}

TEST_CASE("malformed documents are rejected") {
  CHECK_THROWS_AS(load_ruleset_any("not a rule file", deg(60)), ParseError);
  CHECK_THROWS_AS(load_ruleset_any("trirhomb-rules v1 variant=R12\n[prototiles]\nbogus\n", deg(60)),
                  ParseError);
}

TEST_CASE("rule data is alpha independent in structure") {
  RuleSet a = load_ruleset_file(data_path("rules_r12.trd"), RuleVariant::R12, deg(10));
  RuleSet b = load_ruleset_file(data_path("rules_r12.trd"), RuleVariant::R12, deg(150));
  REQUIRE(a.rules.size() == b.rules.size());
  for (std::size_t i = 0; i < a.rules.size(); ++i) {
    CHECK(a.rules[i].parent == b.rules[i].parent);
    REQUIRE(a.rules[i].children.size() == b.rules[i].children.size());
    for (std::size_t j = 0; j < a.rules[i].children.size(); ++j) {
      CHECK(a.rules[i].children[j].child == b.rules[i].children[j].child);
      CHECK(a.rules[i].children[j].anchor == b.rules[i].children[j].anchor);
      CHECK(a.rules[i].children[j].rotation == b.rules[i].children[j].rotation);
    }
  }
}

TEST_CASE("serialization round-trips bit-exactly") {
  for (const char* name : {"rules_r12.trd", "rules_r6.trd", "rules_r28.trd", "rules_r5st.trd"}) {
    RuleSet rs = load_ruleset_any_file(data_path(name), deg(60));
    std::string text = serialize_ruleset(rs);
    RuleSet rs2 = load_ruleset_any(text, deg(60));
    CHECK(serialize_ruleset(rs2) == text);
    CHECK(rs2.rules.size() == rs.rules.size());
    CHECK(rs2.inflation_edge == rs.inflation_edge);
  }
}

TEST_CASE("consistency check passes on every shipped file at the survey angles") {
  for (const char* name : {"rules_r12.trd", "rules_r6.trd", "rules_r28.trd"}) {
    for (long long a : {10, 36, 60, 90, 150}) {
      RuleSet rs = load_ruleset_any_file(data_path(name), deg(a));
      ConsistencyReport rep = check_ruleset(rs);
      INFO(name, " at alpha=", a, "\n", rep.text());
      CHECK(rep.passed());
    }
  }
}

TEST_CASE("a deleted child shows up as an area deficit") {
  std::string text = slurp(data_path("rules_r12.trd"));
  // drop the first child line
  auto pos = text.find("\nchild=");
  REQUIRE(pos != std::string::npos);
  auto end = text.find('\n', pos + 1);
  text.erase(pos, end - pos);
  RuleSet rs = load_ruleset_any(text, deg(60));
  ConsistencyReport rep = check_ruleset(rs);
  bool area_violation = false;
  for (const RuleViolation& v : rep.violations) area_violation |= v.kind == "area";
  CHECK(area_violation);
}

TEST_CASE("a duplicated child shows up as an overlap") {
  std::string text = slurp(data_path("rules_r12.trd"));
  auto pos = text.find("\nchild=");
  REQUIRE(pos != std::string::npos);
  auto end = text.find('\n', pos + 1);
  std::string line = text.substr(pos, end - pos);
  text.insert(pos, line);
  RuleSet rs = load_ruleset_any(text, deg(60));
  ConsistencyReport rep = check_ruleset(rs);
  bool overlap = false;
  for (const RuleViolation& v : rep.violations) overlap |= v.kind == "overlap";
  CHECK(overlap);
}

TEST_CASE("substitution matrix and its area identity at the square point") {
  RuleSet rs = load_ruleset_file(data_path("rules_r12.trd"), RuleVariant::R12, deg(90));
  SubstitutionMatrix m = substitution_matrix(rs);
  CHECK(m.collapsed[0][0] == 7);
  CHECK(m.collapsed[0][1] == 16);
  CHECK(m.collapsed[1][0] == 3);
  CHECK(m.collapsed[1][1] == 7);
  // column sums weighted by tile areas reproduce inflation^2 x parent area
  const double tri = std::sqrt(3.0) / 4.0, rho = 1.0;
  const double lam2 = rs.inflation_factor * rs.inflation_factor;
  CHECK(m.collapsed[0][0] * tri + m.collapsed[1][0] * rho == doctest::Approx(lam2 * tri));
  CHECK(m.collapsed[0][1] * tri + m.collapsed[1][1] * rho == doctest::Approx(lam2 * rho));
  // full matrix column sums match the collapsed ones
  for (std::size_t j = 0; j < m.ids.size(); ++j) {
    long long tri_count = 0, rho_count = 0;
    for (std::size_t i = 0; i < m.ids.size(); ++i) {
      if (rs.prototiles[i].kind == TileKind::Triangle)
        tri_count += m.full[i][j];
      else
        rho_count += m.full[i][j];
    }
    int pj = rs.prototiles[j].kind == TileKind::Triangle ? 0 : 1;
    CHECK(tri_count == m.collapsed[0][pj]);
    CHECK(rho_count == m.collapsed[1][pj]);
  }
}

TEST_CASE("perron analysis") {
  SUBCASE("reducible matrices are rejected") {
    std::array<std::array<long long, 2>, 2> m{{{2, 0}, {0, 2}}};
    CHECK_THROWS_AS(perron_frequencies(m), NotPrimitive);
  }
  SUBCASE("hand-solvable 2x2") {
    std::array<std::array<long long, 2>, 2> m{{{3, 2}, {1, 2}}};
    PerronResult r = perron_frequencies(m);
    CHECK(r.eigenvalue == doctest::Approx(4.0));
    CHECK(r.f_triangle == doctest::Approx(2.0 / 3.0));
    CHECK(r.f_rhombus == doctest::Approx(1.0 / 3.0));
  }
  SUBCASE("shipped collapsed matrix") {
    RuleSet rs = load_ruleset_file(data_path("rules_r6.trd"), RuleVariant::R6, deg(36));
    PerronResult r = perron_frequencies(substitution_matrix(rs).collapsed);
    CHECK(r.eigenvalue == doctest::Approx(7.0 + 4.0 * std::sqrt(3.0)).epsilon(1e-12));
    CHECK(r.eigenvalue ==
          doctest::Approx(rs.inflation_factor * rs.inflation_factor).epsilon(1e-10));
    CHECK(r.f_triangle == doctest::Approx(4.0 / (4.0 + std::sqrt(3.0))).epsilon(1e-12));
  }
}

TEST_CASE("R6 flips produce the mirror child multiset") {
  RuleSet rs = load_ruleset_file(data_path("rules_r6.trd"), RuleVariant::R6, deg(60));
  // the flip bit toggles through substitution, so the flipped parent's
  // children are exactly the stored children with flips negated
  for (const Rule& r : rs.rules) {
    std::multiset<std::pair<int, bool>> upright, flipped_expected;
    for (const ChildPlacement& c : r.children) {
      upright.insert({c.child, c.flip});
      flipped_expected.insert({c.child, !c.flip});
    }
    std::multiset<std::pair<int, bool>> flipped;
    for (const ChildPlacement& c : r.children) flipped.insert({c.child, c.flip != true});
    CHECK(flipped == flipped_expected);
    // and both chiralities appear somewhere in the rule set
  }
  bool any_flip = false;
  for (const Rule& r : rs.rules)
    for (const ChildPlacement& c : r.children) any_flip |= c.flip;
  CHECK(any_flip);
}
