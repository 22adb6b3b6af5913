#pragma once

#include <string>
#include <vector>

#include "trirhomb/rules.hpp"

namespace trirhomb {

struct SeedSpec {
  std::string prototile;  // id in the active rule set
  int rot_k = 0;          // 60-degree steps applied to the canonical pose
  bool flip = false;
  ExactPoint translation;

  std::string str() const;
  // Accepts "ID", "ID@k", "ID@k:flip".
  static SeedSpec parse(const std::string& s);
};

struct GenerationConfig {
  int depth = 0;
  AngleParam alpha = AngleParam::from(Rational(90));
  SeedSpec seed;
  int max_depth = 7;
};

// Replaces every tile by its rule's children; parent-major, child order as in
// the rule file.  Coordinates stay symbolic.
Patch substitute_once(const Patch& p, const RuleSet& rs);

// Seed tile substituted cfg.depth times.  Deterministic byte-for-byte.
Patch generate(const GenerationConfig& cfg, const RuleSet& rs);

// Tile counts per prototile after `depth` substitutions of the seed, computed
// by recursion over the rule data without materializing the patch.
std::vector<long long> generate_counts(const SeedSpec& seed, int depth, const RuleSet& rs);

// Same patch, new angle: symbolic data is untouched, only metadata and the
// numeric caches change.  Degenerate targets are refused.
Patch reparameterize(const Patch& p, const AngleParam& a_new);

struct ClassCounts {
  long long green = 0;
  long long red = 0;
};

// Checks that every triangle classifies (m in {0,1}) and returns the counts.
ClassCounts classify_triangles(const Patch& p);

Tile seed_tile(const SeedSpec& seed, const RuleSet& rs);

}  // namespace trirhomb
