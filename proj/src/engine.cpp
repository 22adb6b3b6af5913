#include "trirhomb/engine.hpp"

#include <unordered_map>

namespace trirhomb {

std::string SeedSpec::str() const {
  std::string s = prototile;
  if (rot_k != 0 || flip) s += "@" + std::to_string(rot_k);
  if (flip) s += ":flip";
  return s;
}

SeedSpec SeedSpec::parse(const std::string& s) {
  SeedSpec seed;
  std::string body = s;
  auto colon = body.find(':');
  if (colon != std::string::npos) {
    if (body.substr(colon + 1) != "flip")
      throw ParseError("malformed seed spec '" + s + "'");
    seed.flip = true;
    body = body.substr(0, colon);
  }
  auto at = body.find('@');
  if (at != std::string::npos) {
    seed.rot_k = std::atoi(body.substr(at + 1).c_str());
    body = body.substr(0, at);
  }
  if (body.empty()) throw ParseError("seed spec without prototile id");
  seed.prototile = body;
  return seed;
}

Tile seed_tile(const SeedSpec& seed, const RuleSet& rs) {
  auto it = rs.prototile_index.find(seed.prototile);
  if (it == rs.prototile_index.end())
    throw UnresolvedPrototile("seed prototile '" + seed.prototile + "' not in rule set");
  const Prototile& proto = rs.prototiles[it->second];
  Tile t;
  t.kind = proto.kind;
  t.anchor = seed.translation;
  t.orientation = Direction(proto.k + seed.rot_k, proto.m);
  t.flipped = seed.flip;
  t.prototile = it->second;
  return t;
}

Patch substitute_once(const Patch& p, const RuleSet& rs) {
  Patch out;
  out.meta = p.meta;
  out.meta.depth = p.meta.depth + 1;
  out.tiles.reserve(p.tiles.size() * 10);
  for (const Tile& t : p.tiles) {
    if (t.prototile < 0 || t.prototile >= static_cast<int>(rs.prototiles.size()))
      throw MissingRule("tile references prototile index " + std::to_string(t.prototile));
    const Prototile& proto = rs.prototiles[t.prototile];
    if (t.orientation.m != proto.m)
      throw MissingRule("tile orientation is incompatible with prototile " + proto.id);
    const Rule& rule = rs.rule_for(t.prototile);
    const int dk = t.orientation.k - proto.k;
    const Direction rot(dk, 0);
    const ExactPoint base = rs.inflate(t.anchor);
    for (const ChildPlacement& c : rule.children) {
      const Prototile& cproto = rs.prototiles[c.child];
      Tile child;
      child.kind = cproto.kind;
      child.anchor = base + c.anchor.rotated(rot);
      child.orientation =
          Direction(cproto.k + c.rotation.k + dk, cproto.m + c.rotation.m);
      child.flipped = c.flip != t.flipped;
      child.prototile = c.child;
      out.tiles.push_back(std::move(child));
    }
  }
  return out;
}

Patch generate(const GenerationConfig& cfg, const RuleSet& rs) {
  if (cfg.alpha.degenerate())
    throw DegenerateTarget("generation is undefined at alpha = " + cfg.alpha.alpha_deg.str());
  if (cfg.depth < 0 || cfg.depth > cfg.max_depth)
    throw DepthExceeded("depth " + std::to_string(cfg.depth) + " exceeds the cap of " +
                        std::to_string(cfg.max_depth));
  Patch p;
  p.meta.variant = rs.family;
  p.meta.alpha = cfg.alpha;
  p.meta.depth = 0;
  p.meta.seed = cfg.seed.str();
  p.tiles.push_back(seed_tile(cfg.seed, rs));
  for (int d = 0; d < cfg.depth; ++d) p = substitute_once(p, rs);
  p.meta.depth = cfg.depth;
  return p;
}

std::vector<long long> generate_counts(const SeedSpec& seed, int depth, const RuleSet& rs) {
  const int n = static_cast<int>(rs.prototiles.size());
  auto it = rs.prototile_index.find(seed.prototile);
  if (it == rs.prototile_index.end())
    throw UnresolvedPrototile("seed prototile '" + seed.prototile + "' not in rule set");
  std::vector<long long> counts(n, 0);
  counts[it->second] = 1;
  for (int d = 0; d < depth; ++d) {
    std::vector<long long> next(n, 0);
    for (int parent = 0; parent < n; ++parent) {
      if (counts[parent] == 0) continue;
      const Rule& rule = rs.rule_for(parent);
      for (const ChildPlacement& c : rule.children) next[c.child] += counts[parent];
    }
    counts = std::move(next);
  }
  return counts;
}

Patch reparameterize(const Patch& p, const AngleParam& a_new) {
  if (a_new.degenerate())
    throw DegenerateTarget("reparameterization target alpha = " + a_new.alpha_deg.str() +
                           " is degenerate");
  Patch out;
  out.tiles = p.tiles;
  out.meta = p.meta;
  out.meta.alpha = a_new;
  return out;
}

ClassCounts classify_triangles(const Patch& p) {
  ClassCounts c;
  for (const Tile& t : p.tiles) {
    if (t.kind != TileKind::Triangle) continue;
    if (triangle_class(t) == TriangleClass::Green)
      ++c.green;
    else
      ++c.red;
  }
  return c;
}

}  // namespace trirhomb
