#include "trirhomb/tiling.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace trirhomb {

std::vector<ExactPoint> tile_vertices(const Tile& t, const AngleParam& a, bool allow_degenerate) {
  const int k = t.orientation.k;
  const int m = t.orientation.m;
  if (t.kind == TileKind::Triangle) {
    return {t.anchor, t.anchor + ExactPoint::unit(k, m), t.anchor + ExactPoint::unit(k + 1, m)};
  }
  if (a.degenerate() && !allow_degenerate)
    throw DegenerateTile("rhombus is degenerate at alpha = " + a.alpha_deg.str());
  ExactPoint e0 = ExactPoint::unit(k, m);
  ExactPoint e1 = ExactPoint::unit(k, m + 1);
  return {t.anchor, t.anchor + e0, t.anchor + e0 + e1, t.anchor + e1};
}

double tile_area(const Tile& t, const AngleParam& a) {
  if (t.kind == TileKind::Triangle) return std::sqrt(3.0) / 4.0;
  return std::sin(a.radians());
}

TriangleClass triangle_class(const Tile& t) {
  if (t.kind != TileKind::Triangle)
    throw UnclassifiableOrientation("triangle class requested for a rhombus");
  if (t.orientation.m == 0) return TriangleClass::Green;
  if (t.orientation.m == 1) return TriangleClass::Red;
  throw UnclassifiableOrientation("triangle orientation has alpha order " +
                                  std::to_string(t.orientation.m));
}

// ---------------------------------------------------------------------------

void SpatialIndex::build(const std::vector<std::vector<Vec2>>& tile_polys, double cell) {
  cells_.clear();
  cell_ = cell;
  for (int id = 0; id < static_cast<int>(tile_polys.size()); ++id) {
    double x0 = 1e300, y0 = 1e300, x1 = -1e300, y1 = -1e300;
    for (const Vec2& v : tile_polys[id]) {
      x0 = std::min(x0, v.x);
      y0 = std::min(y0, v.y);
      x1 = std::max(x1, v.x);
      y1 = std::max(y1, v.y);
    }
    int ix0 = static_cast<int>(std::floor(x0 / cell_));
    int iy0 = static_cast<int>(std::floor(y0 / cell_));
    int ix1 = static_cast<int>(std::floor(x1 / cell_));
    int iy1 = static_cast<int>(std::floor(y1 / cell_));
    for (int ix = ix0; ix <= ix1; ++ix)
      for (int iy = iy0; iy <= iy1; ++iy) cells_[key(ix, iy)].push_back(id);
  }
}

std::vector<int> SpatialIndex::query(double x0, double y0, double x1, double y1) const {
  std::vector<int> out;
  int ix0 = static_cast<int>(std::floor(x0 / cell_));
  int iy0 = static_cast<int>(std::floor(y0 / cell_));
  int ix1 = static_cast<int>(std::floor(x1 / cell_));
  int iy1 = static_cast<int>(std::floor(y1 / cell_));
  for (int ix = ix0; ix <= ix1; ++ix)
    for (int iy = iy0; iy <= iy1; ++iy) {
      auto it = cells_.find(key(ix, iy));
      if (it == cells_.end()) continue;
      out.insert(out.end(), it->second.begin(), it->second.end());
    }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

const std::vector<std::vector<Vec2>>& Patch::polygons() const {
  if (polys.size() != tiles.size()) {
    polys.clear();
    polys.reserve(tiles.size());
    for (const Tile& t : tiles) {
      std::vector<ExactPoint> vs = tile_vertices(t, meta.alpha, /*allow_degenerate=*/true);
      std::vector<Vec2> pv;
      pv.reserve(vs.size());
      for (const ExactPoint& v : vs) pv.push_back(v.eval(meta.alpha));
      polys.push_back(std::move(pv));
    }
  }
  return polys;
}

void Patch::build_index(double cell) const {
  index.build(polygons(), cell);
}

std::vector<NeighborInfo> neighbors(const Patch& p, int tile, double tol) {
  if (p.index.empty() && !p.tiles.empty()) p.build_index();
  const auto& polys = p.polygons();
  const auto& mine = polys[tile];
  double x0 = 1e300, y0 = 1e300, x1 = -1e300, y1 = -1e300;
  for (const Vec2& v : mine) {
    x0 = std::min(x0, v.x);
    y0 = std::min(y0, v.y);
    x1 = std::max(x1, v.x);
    y1 = std::max(y1, v.y);
  }
  std::vector<NeighborInfo> out;
  for (int other : p.index.query(x0 - tol, y0 - tol, x1 + tol, y1 + tol)) {
    if (other == tile) continue;
    int shared = 0;
    for (const Vec2& a : mine)
      for (const Vec2& b : polys[other])
        if ((a - b).norm() < tol) {
          ++shared;
          break;
        }
    if (shared > 0) out.push_back({other, shared});
  }
  return out;
}

// ---------------------------------------------------------------------------

static const char* kind_code(TileKind k) { return k == TileKind::Triangle ? "T" : "R"; }

std::string serialize_patch(const Patch& p, const std::vector<std::string>& prototile_ids) {
  std::string out = "trirhomb-patch v1 variant=" + p.meta.variant +
                    " alpha=" + p.meta.alpha.alpha_deg.str() +
                    " depth=" + std::to_string(p.meta.depth);
  if (!p.meta.seed.empty()) out += " seed=" + p.meta.seed;
  out += '\n';
  for (const Tile& t : p.tiles) {
    const char* cls = "-";
    if (t.kind == TileKind::Triangle)
      cls = triangle_class(t) == TriangleClass::Green ? "G" : "R";
    const std::string& pid =
        (t.prototile >= 0 && t.prototile < static_cast<int>(prototile_ids.size()))
            ? prototile_ids[t.prototile]
            : "?";
    out += kind_code(t.kind);
    out += ' ' + std::to_string(t.orientation.k) + ' ' + std::to_string(t.orientation.m) + ' ' +
           std::to_string(t.flipped ? 1 : 0) + ' ' + cls + ' ' + pid +
           " anchor=" + t.anchor.serialize() + '\n';
  }
  return out;
}

static Patch parse_patch_impl(const std::string& text,
                              const std::unordered_map<std::string, int>* prototile_index,
                              std::vector<std::string>* ids_out) {
  Patch p;
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line.rfind("trirhomb-patch v1", 0) != 0)
    throw ParseError("not a trirhomb-patch v1 document");
  std::istringstream hdr(line.substr(17));
  std::string kv;
  while (hdr >> kv) {
    auto eq = kv.find('=');
    if (eq == std::string::npos) throw ParseError("malformed patch header field '" + kv + "'");
    std::string key = kv.substr(0, eq), val = kv.substr(eq + 1);
    if (key == "variant")
      p.meta.variant = val;
    else if (key == "alpha")
      p.meta.alpha = AngleParam::from(Rational::parse(val));
    else if (key == "depth")
      p.meta.depth = std::atoi(val.c_str());
    else if (key == "seed")
      p.meta.seed = val;
    else
      throw ParseError("unknown patch header field '" + key + "'");
  }
  std::unordered_map<std::string, int> local_ids;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    std::string kind, cls, pid, anchor;
    int k = 0, m = 0, flipped = 0;
    if (!(ls >> kind >> k >> m >> flipped >> cls >> pid >> anchor))
      throw ParseError("malformed patch tile line '" + line + "'");
    if (anchor.rfind("anchor=", 0) != 0)
      throw ParseError("malformed patch tile line '" + line + "'");
    Tile t;
    if (kind == "T")
      t.kind = TileKind::Triangle;
    else if (kind == "R")
      t.kind = TileKind::Rhombus;
    else
      throw ParseError("unknown tile kind '" + kind + "'");
    t.orientation = Direction(k, m);
    t.flipped = flipped != 0;
    t.anchor = ExactPoint::parse(anchor.substr(7));
    if (prototile_index) {
      auto it = prototile_index->find(pid);
      if (it == prototile_index->end())
        throw UnresolvedPrototile("patch references unknown prototile '" + pid + "'");
      t.prototile = it->second;
    } else {
      auto [it, inserted] = local_ids.try_emplace(pid, static_cast<int>(local_ids.size()));
      t.prototile = it->second;
      if (inserted && ids_out) ids_out->push_back(pid);
    }
    p.tiles.push_back(std::move(t));
  }
  return p;
}

Patch parse_patch(const std::string& text,
                  const std::unordered_map<std::string, int>& prototile_index) {
  return parse_patch_impl(text, &prototile_index, nullptr);
}

Patch parse_patch(const std::string& text, std::vector<std::string>* ids_out) {
  return parse_patch_impl(text, nullptr, ids_out);
}

}  // namespace trirhomb
