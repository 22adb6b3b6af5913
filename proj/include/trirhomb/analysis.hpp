#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "trirhomb/rules.hpp"

namespace trirhomb {

struct Overlap {
  int tile_a = -1;
  int tile_b = -1;
  double area = 0.0;
};

struct Gap {
  Vec2 location;
  double area_estimate = 0.0;
};

struct DecorationMismatch {
  int tile_a = -1;
  int tile_b = -1;
  std::string detail;
};

struct ValidationReport {
  std::vector<Overlap> overlaps;
  std::vector<Gap> gaps;
  std::vector<DecorationMismatch> decoration_mismatches;
  bool passed() const {
    return overlaps.empty() && gaps.empty() && decoration_mismatches.empty();
  }
  std::string text() const;
  std::string json() const;
};

// Overlaps by pairwise clipping among index-near tiles, gaps by sampling the
// eroded hull interior, decoration mismatches against the rule file's
// matching declarations.
ValidationReport validate(const Patch& p, const AngleParam& a, const RuleSet& rs,
                          double sample_density = 400.0);

struct Census {
  long long triangles = 0;
  long long rhombi = 0;
  long long green = 0;
  long long red = 0;
  std::map<std::string, long long> orientation_histogram;  // "k,m,flip"
  double total_area = 0.0;
  std::string text() const;
  std::string json() const;
};

Census census(const Patch& p);

enum class PeriodMatch {
  Decorated,  // prototile, orientation and flip must map identically
  Geometric,  // realized shape only (zero-area tiles ignored)
};

// Shortest translation (anchors of like tiles, |t| <= max_radius) mapping the
// eroded patch onto itself; absent if none survives.
std::optional<Vec2> periodicity_scan(const Patch& p, const AngleParam& a, double max_radius,
                                     PeriodMatch mode = PeriodMatch::Decorated);

struct StructureNode {
  ExactPoint center;
  std::vector<int> tiles;  // the six triangles of the hexagon
};

struct StructureGraph {
  std::vector<StructureNode> nodes;
  std::vector<std::pair<int, int>> edges;
  std::map<std::string, int> face_census;  // "triangle" | "rhombus" | "other"
  double edge_length = 0.0;
  std::string json() const;
};

// Hexagon centers (vertices surrounded by exactly six triangles), connected
// at the smallest `distance_ranks` distinct center distances; faces of the
// resulting planar graph classified by shape.
StructureGraph underlying_structure(const Patch& p, const AngleParam& a,
                                    const ValidationReport& validation, int distance_ranks = 1);

}  // namespace trirhomb
