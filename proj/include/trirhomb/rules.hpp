#pragma once

#include <array>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "trirhomb/tiling.hpp"

namespace trirhomb {

enum class RuleVariant { R28, R12, R6 };

std::string variant_name(RuleVariant v);
RuleVariant variant_from_name(const std::string& s);
int variant_rule_count(RuleVariant v);

struct Prototile {
  std::string id;
  TileKind kind = TileKind::Triangle;
  int k = 0;  // canonical orientation pose
  int m = 0;
  std::string labels;  // corner colours from the anchor, CCW: B/W per corner
};

struct ChildPlacement {
  int child = -1;  // prototile index
  Direction rotation;
  bool flip = false;
  ExactPoint anchor;
};

struct Rule {
  int parent = -1;  // prototile index
  std::string parent_shape;  // "triangle" | "rhombus"
  ExactPoint edge;           // inflated image of the parent's first edge
  std::vector<ChildPlacement> children;
};

struct MatchingSpec {
  std::array<std::set<std::string>, 2> pairs;  // allowed colour pairs per edge star
  bool arrows_opposed = true;
};

struct RuleSet {
  std::string family;  // R28 | R12 | R6 | R5ST
  AngleParam alpha = AngleParam::from(Rational(90));
  Rational conformal_alpha = Rational(90);
  std::vector<Prototile> prototiles;
  std::unordered_map<std::string, int> prototile_index;
  std::vector<Rule> rules;                    // one per prototile, same order
  std::array<std::vector<Direction>, 2> profile;  // boundary steps per class parity
  MatchingSpec matching;
  double inflation_factor = 0.0;  // linear factor at the conformal angle
  ExactPoint inflation_edge;      // image of the unit vector u(0,0)

  const Rule& rule_for(int prototile) const;
  ExactPoint inflate(const ExactPoint& p) const;
  // Boundary polygon of a rule's supertile region, in the parent frame.
  std::vector<ExactPoint> region_boundary(const Rule& r) const;
};

// Parses a rule-data document.  `variant` must match the file's declared
// family and rule count (28/12/6).
RuleSet load_ruleset(const std::string& text, RuleVariant variant, const AngleParam& a);
RuleSet load_ruleset_file(const std::string& path, RuleVariant variant, const AngleParam& a);
// Variant-agnostic entry point (used for the classical five-rule file).
RuleSet load_ruleset_any(const std::string& text, const AngleParam& a);
RuleSet load_ruleset_any_file(const std::string& path, const AngleParam& a);

// Serialization round-trips bit-exactly: parse(serialize(rs)) == rs.
std::string serialize_ruleset(const RuleSet& rs);

struct RuleViolation {
  std::string rule;
  std::string kind;  // area | overlap | coverage | decoration | structure
  std::string detail;
};

struct ConsistencyReport {
  std::vector<RuleViolation> violations;
  bool passed() const { return violations.empty(); }
  std::string text() const;
};

// Verifies, per rule: child areas balance the region area, children are
// pairwise disjoint and covered by the region, and decorations on shared
// child edges satisfy the file's matching declarations.
ConsistencyReport check_ruleset(const RuleSet& rs);

struct SubstitutionMatrix {
  std::vector<std::string> ids;
  std::vector<std::vector<long long>> full;     // [child][parent]
  std::array<std::array<long long, 2>, 2> collapsed{};  // [Triangle|Rhombus][...]
};

SubstitutionMatrix substitution_matrix(const RuleSet& rs);

struct PerronResult {
  double eigenvalue = 0.0;
  double f_triangle = 0.0;
  double f_rhombus = 0.0;
};

// Dominant eigenvalue and normalized tile frequencies of a primitive
// collapsed matrix; throws NotPrimitive otherwise.
PerronResult perron_frequencies(const std::array<std::array<long long, 2>, 2>& m);

}  // namespace trirhomb
