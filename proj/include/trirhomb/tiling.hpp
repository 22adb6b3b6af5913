#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "trirhomb/geometry.hpp"

namespace trirhomb {

enum class TileKind { Triangle, Rhombus };
enum class TriangleClass { Green, Red };

// A placed decorated tile.  `prototile` indexes the active rule set's
// prototile table; `flipped` selects the colour-negated decoration variant
// (the polygon itself is unchanged, both prototile shapes being mirror
// symmetric).
struct Tile {
  TileKind kind = TileKind::Triangle;
  ExactPoint anchor;
  Direction orientation;  // triangles: first edge; rhombi: the m=0 edge at the alpha corner
  bool flipped = false;
  int prototile = -1;

  friend bool operator==(const Tile& a, const Tile& b) {
    return a.kind == b.kind && a.anchor == b.anchor && a.orientation == b.orientation &&
           a.flipped == b.flipped && a.prototile == b.prototile;
  }
};

// Counter-clockwise vertices starting at the anchor.  Rhombi at alpha in
// {0, 180} are refused unless `allow_degenerate` (the renderer's limit mode).
std::vector<ExactPoint> tile_vertices(const Tile& t, const AngleParam& a,
                                      bool allow_degenerate = false);

double tile_area(const Tile& t, const AngleParam& a);

// Green for orientation m = 0, Red for m = 1.
TriangleClass triangle_class(const Tile& t);

// ---------------------------------------------------------------------------
// Spatial index: uniform grid over numeric coordinates at a reference alpha.
// ---------------------------------------------------------------------------

class SpatialIndex {
 public:
  void build(const std::vector<std::vector<Vec2>>& tile_polys, double cell);
  // Tiles whose bounding boxes overlap the given box.
  std::vector<int> query(double x0, double y0, double x1, double y1) const;
  bool empty() const { return cells_.empty(); }
  double cell_size() const { return cell_; }

 private:
  double cell_ = 1.0;
  std::unordered_map<std::int64_t, std::vector<int>> cells_;
  std::int64_t key(int ix, int iy) const {
    return (static_cast<std::int64_t>(ix) << 32) ^ static_cast<std::uint32_t>(iy);
  }
};

// ---------------------------------------------------------------------------
// Patch: an ordered tile list plus generation metadata and a spatial index.
// ---------------------------------------------------------------------------

struct PatchMeta {
  std::string variant;  // R28 | R12 | R6 | R5ST
  AngleParam alpha = AngleParam::from(Rational(90));
  int depth = 0;
  std::string seed;
};

struct Patch {
  std::vector<Tile> tiles;
  PatchMeta meta;

  // caches, rebuilt on demand at meta.alpha
  mutable SpatialIndex index;
  mutable std::vector<std::vector<Vec2>> polys;

  void build_index(double cell = 1.0) const;
  const std::vector<std::vector<Vec2>>& polygons() const;
  void invalidate() const {
    index = SpatialIndex();
    polys.clear();
  }
};

struct NeighborInfo {
  int tile = -1;
  int shared_vertices = 0;  // 1 = pivot contact, 2 = shared edge
};

// Tiles sharing at least one vertex with `tile` (numeric tolerance `tol`).
std::vector<NeighborInfo> neighbors(const Patch& p, int tile, double tol = 1e-9);

// ---------------------------------------------------------------------------
// Patch text format (versioned, exact integers/rationals only).
// ---------------------------------------------------------------------------

std::string serialize_patch(const Patch& p, const std::vector<std::string>& prototile_ids);
Patch parse_patch(const std::string& text,
                  const std::unordered_map<std::string, int>& prototile_index);
// Round-trips the stored prototile id strings when no rule set is in scope.
Patch parse_patch(const std::string& text, std::vector<std::string>* ids_out);

}  // namespace trirhomb
