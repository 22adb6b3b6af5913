#include "trirhomb/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

namespace trirhomb {

namespace {

double polygon_area(const std::vector<Vec2>& poly) {
  double s = 0.0;
  for (std::size_t i = 0; i < poly.size(); ++i) {
    const Vec2& a = poly[i];
    const Vec2& b = poly[(i + 1) % poly.size()];
    s += a.x * b.y - b.x * a.y;
  }
  return 0.5 * s;
}

std::vector<Vec2> clip_convex(std::vector<Vec2> subject, const std::vector<Vec2>& clip) {
  for (std::size_t i = 0; i < clip.size() && !subject.empty(); ++i) {
    const Vec2 a = clip[i];
    const Vec2 b = clip[(i + 1) % clip.size()];
    std::vector<Vec2> out;
    auto side = [&](const Vec2& p) {
      return (b.x - a.x) * (p.y - a.y) - (b.y - a.y) * (p.x - a.x);
    };
    for (std::size_t j = 0; j < subject.size(); ++j) {
      const Vec2 p = subject[j];
      const Vec2 q = subject[(j + 1) % subject.size()];
      double sp = side(p), sq = side(q);
      if (sp >= 0) out.push_back(p);
      if ((sp > 0 && sq < 0) || (sp < 0 && sq > 0)) {
        double t = sp / (sp - sq);
        out.push_back({p.x + t * (q.x - p.x), p.y + t * (q.y - p.y)});
      }
    }
    subject = std::move(out);
  }
  return subject;
}

double convex_overlap_area(const std::vector<Vec2>& a, const std::vector<Vec2>& b) {
  auto clipped = clip_convex(a, b);
  if (clipped.size() < 3) return 0.0;
  return std::abs(polygon_area(clipped));
}

bool point_in_convex(const Vec2& p, const std::vector<Vec2>& poly, double tol) {
  for (std::size_t i = 0; i < poly.size(); ++i) {
    const Vec2& a = poly[i];
    const Vec2& b = poly[(i + 1) % poly.size()];
    if ((b.x - a.x) * (p.y - a.y) - (b.y - a.y) * (p.x - a.x) < -tol) return false;
  }
  return true;
}

std::vector<Vec2> convex_hull(std::vector<Vec2> pts) {
  std::sort(pts.begin(), pts.end(), [](const Vec2& a, const Vec2& b) {
    return a.x < b.x || (a.x == b.x && a.y < b.y);
  });
  pts.erase(std::unique(pts.begin(), pts.end(),
                        [](const Vec2& a, const Vec2& b) { return a.x == b.x && a.y == b.y; }),
            pts.end());
  if (pts.size() < 3) return pts;
  auto cross = [](const Vec2& o, const Vec2& a, const Vec2& b) {
    return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
  };
  std::vector<Vec2> hull(2 * pts.size());
  std::size_t k = 0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    while (k >= 2 && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
    hull[k++] = pts[i];
  }
  for (std::size_t i = pts.size() - 1, t = k + 1; i > 0; --i) {
    while (k >= t && cross(hull[k - 2], hull[k - 1], pts[i - 1]) <= 0) --k;
    hull[k++] = pts[i - 1];
  }
  hull.resize(k - 1);
  return hull;
}

double dist_to_boundary(const Vec2& p, const std::vector<Vec2>& poly) {
  double best = 1e300;
  for (std::size_t i = 0; i < poly.size(); ++i) {
    const Vec2& a = poly[i];
    const Vec2& b = poly[(i + 1) % poly.size()];
    const double dx = b.x - a.x, dy = b.y - a.y;
    const double len2 = dx * dx + dy * dy;
    double t = len2 > 0 ? ((p.x - a.x) * dx + (p.y - a.y) * dy) / len2 : 0.0;
    t = std::clamp(t, 0.0, 1.0);
    best = std::min(best, std::hypot(p.x - (a.x + t * dx), p.y - (a.y + t * dy)));
  }
  return best;
}

// Tolerance-robust point registry: buckets at a coarse quantum, matches are
// confirmed by exact distance against the 3x3 bucket neighbourhood.
class PointRegistry {
 public:
  explicit PointRegistry(double tol = 1e-9, double q = 1e-3) : tol_(tol), q_(q) {}

  int find(const Vec2& v) const {
    auto [ix, iy] = cell(v);
    for (int dx = -1; dx <= 1; ++dx)
      for (int dy = -1; dy <= 1; ++dy) {
        auto it = buckets_.find(key(ix + dx, iy + dy));
        if (it == buckets_.end()) continue;
        for (int id : it->second)
          if ((points_[id] - v).norm() < tol_) return id;
      }
    return -1;
  }

  int find_or_add(const Vec2& v) {
    int id = find(v);
    if (id >= 0) return id;
    id = static_cast<int>(points_.size());
    points_.push_back(v);
    auto [ix, iy] = cell(v);
    buckets_[key(ix, iy)].push_back(id);
    return id;
  }

  const std::vector<Vec2>& points() const { return points_; }

 private:
  std::pair<std::int64_t, std::int64_t> cell(const Vec2& v) const {
    return {static_cast<std::int64_t>(std::floor(v.x / q_)),
            static_cast<std::int64_t>(std::floor(v.y / q_))};
  }
  static std::int64_t key(std::int64_t ix, std::int64_t iy) {
    return (ix << 32) ^ (iy & 0xffffffff);
  }
  double tol_, q_;
  std::vector<Vec2> points_;
  std::unordered_map<std::int64_t, std::vector<int>> buckets_;
};

// Boundary of the tiled region: tile edges not shared by a second tile.
// Tiles wind counter-clockwise, so the region lies to the left of every
// directed boundary edge; linked into loops, the outer boundary has positive
// signed area and interior holes have negative signed area.
struct RegionBoundary {
  std::vector<std::pair<Vec2, Vec2>> outer;
  std::vector<std::pair<Vec2, Vec2>> holes;
  std::vector<std::pair<Vec2, Vec2>> all() const {
    auto out = outer;
    out.insert(out.end(), holes.begin(), holes.end());
    return out;
  }
};

RegionBoundary region_boundary_edges(const std::vector<std::vector<Vec2>>& polys) {
  PointRegistry reg;
  std::map<std::pair<int, int>, int> count;
  std::map<std::pair<int, int>, std::pair<Vec2, Vec2>> geo;
  for (const auto& poly : polys) {
    std::vector<int> ids;
    for (const Vec2& v : poly) ids.push_back(reg.find_or_add(v));
    for (std::size_t j = 0; j < poly.size(); ++j) {
      int a = ids[j], b = ids[(j + 1) % poly.size()];
      if (a == b) continue;  // collapsed rhombus edge in the degenerate limit
      count[std::minmax(a, b)] += 1;
      if (a < b) geo[{a, b}] = {poly[j], poly[(j + 1) % poly.size()]};
    }
  }
  // directed unmatched edges, rebuilt with the tile's own direction
  std::map<int, std::vector<std::pair<int, std::pair<Vec2, Vec2>>>> out_edges;
  for (const auto& poly : polys) {
    std::vector<int> ids;
    for (const Vec2& v : poly) ids.push_back(reg.find_or_add(v));
    for (std::size_t j = 0; j < poly.size(); ++j) {
      int a = ids[j], b = ids[(j + 1) % poly.size()];
      if (a == b) continue;
      if (count[std::minmax(a, b)] == 1)
        out_edges[a].push_back({b, {poly[j], poly[(j + 1) % poly.size()]}});
    }
  }
  RegionBoundary rb;
  std::set<std::pair<int, int>> used;
  for (auto& [start, edges0] : out_edges) {
    for (auto& [to0, geo0] : edges0) {
      if (used.count({start, to0})) continue;
      // walk one loop, taking the sharpest left turn at junctions
      std::vector<std::pair<Vec2, Vec2>> loop;
      double area2 = 0.0;
      int from = start, to = to0;
      Vec2 ga = geo0.first, gb = geo0.second;
      while (!used.count({from, to})) {
        used.insert({from, to});
        loop.push_back({ga, gb});
        area2 += ga.x * gb.y - gb.x * ga.y;
        double back = std::atan2(ga.y - gb.y, ga.x - gb.x);
        int next = -1;
        double best_turn = -1.0;
        Vec2 na{}, nb{};
        for (auto& [cand, cgeo] : out_edges[to]) {
          if (used.count({to, cand})) {
            if (cand == from && out_edges[to].size() == 1) break;
            continue;
          }
          double turn = std::fmod(
              std::atan2(cgeo.second.y - cgeo.first.y, cgeo.second.x - cgeo.first.x) - back +
                  4 * M_PI,
              2 * M_PI);
          if (turn < 1e-12) turn = 2 * M_PI;
          if (turn > best_turn) {
            best_turn = turn;
            next = cand;
            na = cgeo.first;
            nb = cgeo.second;
          }
        }
        if (next < 0) break;
        from = to;
        to = next;
        ga = na;
        gb = nb;
      }
      auto& dst = area2 > 0 ? rb.outer : rb.holes;
      dst.insert(dst.end(), loop.begin(), loop.end());
    }
  }
  return rb;
}

double min_dist_to_edges(const Vec2& p, const std::vector<std::pair<Vec2, Vec2>>& edges) {
  double best = 1e300;
  for (const auto& [a, b] : edges) {
    const double dx = b.x - a.x, dy = b.y - a.y;
    const double len2 = dx * dx + dy * dy;
    double t = len2 > 0 ? ((p.x - a.x) * dx + (p.y - a.y) * dy) / len2 : 0.0;
    t = std::clamp(t, 0.0, 1.0);
    best = std::min(best, std::hypot(p.x - (a.x + t * dx), p.y - (a.y + t * dy)));
  }
  return best;
}

}  // namespace

// ---------------------------------------------------------------------------

ValidationReport validate(const Patch& patch, const AngleParam& a, const RuleSet& rs,
                          double sample_density) {
  ValidationReport rep;
  Patch p = patch;
  p.meta.alpha = a;
  p.invalidate();
  const auto& polys = p.polygons();
  p.build_index();
  const double tol = 1e-9;

  // overlaps among index-near tiles
  for (int i = 0; i < static_cast<int>(polys.size()); ++i) {
    double x0 = 1e300, y0 = 1e300, x1 = -1e300, y1 = -1e300;
    for (const Vec2& v : polys[i]) {
      x0 = std::min(x0, v.x);
      y0 = std::min(y0, v.y);
      x1 = std::max(x1, v.x);
      y1 = std::max(y1, v.y);
    }
    for (int j : p.index.query(x0, y0, x1, y1)) {
      if (j <= i) continue;
      double ov = convex_overlap_area(polys[i], polys[j]);
      if (ov >= tol) rep.overlaps.push_back({i, j, ov});
    }
  }

  // gaps: sample the interior of the tiled region, eroded by one edge
  // length, against the exact outer boundary (the patch boundary is a
  // zigzag, so a convex hull would overestimate the region badly; interior
  // holes must stay inside the sampled region)
  if (!polys.empty()) {
    auto boundary = region_boundary_edges(polys).outer;
    double x0 = 1e300, y0 = 1e300, x1 = -1e300, y1 = -1e300;
    for (const auto& [a, b] : boundary) {
      x0 = std::min({x0, a.x, b.x});
      y0 = std::min({y0, a.y, b.y});
      x1 = std::max({x1, a.x, b.x});
      y1 = std::max({y1, a.y, b.y});
    }
    // grid over boundary edges for fast distance queries
    const double cell = 1.0;
    std::unordered_map<std::int64_t, std::vector<int>> bgrid;
    auto bkey = [](std::int64_t ix, std::int64_t iy) { return (ix << 32) ^ (iy & 0xffffffff); };
    for (int e = 0; e < static_cast<int>(boundary.size()); ++e) {
      const auto& [a, b] = boundary[e];
      std::int64_t ix0 = static_cast<std::int64_t>(std::floor(std::min(a.x, b.x) / cell)) - 1;
      std::int64_t ix1 = static_cast<std::int64_t>(std::floor(std::max(a.x, b.x) / cell)) + 1;
      std::int64_t iy0 = static_cast<std::int64_t>(std::floor(std::min(a.y, b.y) / cell)) - 1;
      std::int64_t iy1 = static_cast<std::int64_t>(std::floor(std::max(a.y, b.y) / cell)) + 1;
      for (std::int64_t ix = ix0; ix <= ix1; ++ix)
        for (std::int64_t iy = iy0; iy <= iy1; ++iy) bgrid[bkey(ix, iy)].push_back(e);
    }
    auto near_boundary = [&](const Vec2& s) {
      std::int64_t ix = static_cast<std::int64_t>(std::floor(s.x / cell));
      std::int64_t iy = static_cast<std::int64_t>(std::floor(s.y / cell));
      auto it = bgrid.find(bkey(ix, iy));
      if (it == bgrid.end()) return false;
      for (int e : it->second) {
        const auto& [a, b] = boundary[e];
        const double dx = b.x - a.x, dy = b.y - a.y;
        const double len2 = dx * dx + dy * dy;
        double t = len2 > 0 ? ((s.x - a.x) * dx + (s.y - a.y) * dy) / len2 : 0.0;
        t = std::clamp(t, 0.0, 1.0);
        if (std::hypot(s.x - (a.x + t * dx), s.y - (a.y + t * dy)) < 1.0) return true;
      }
      return false;
    };
    const double step = 1.0 / std::sqrt(sample_density);
    const double jitter = step * 0.1937;  // keep sample rows off lattice lines
    for (double y = y0 + jitter; y <= y1; y += step) {
      // inside-ness per row by scanline parity over the boundary edges
      std::vector<double> crossings;
      for (const auto& [a, b] : boundary) {
        if ((a.y > y) == (b.y > y)) continue;
        crossings.push_back(a.x + (y - a.y) / (b.y - a.y) * (b.x - a.x));
      }
      std::sort(crossings.begin(), crossings.end());
      std::size_t ci = 0;
      bool inside = false;
      for (double x = x0 + jitter; x <= x1; x += step) {
        while (ci < crossings.size() && crossings[ci] <= x) {
          inside = !inside;
          ++ci;
        }
        if (!inside) continue;
        Vec2 s{x, y};
        if (near_boundary(s)) continue;
        bool covered = false;
        for (int id : p.index.query(x, y, x, y)) {
          if (point_in_convex(s, polys[id], 1e-9)) {
            covered = true;
            break;
          }
        }
        if (!covered) rep.gaps.push_back({s, step * step});
      }
    }
  }

  // decoration matching on shared edges
  for (int i = 0; i < static_cast<int>(p.tiles.size()); ++i) {
    for (const NeighborInfo& nb : neighbors(p, i, tol)) {
      if (nb.tile <= i || nb.shared_vertices < 2) continue;
      const int j = nb.tile;
      std::vector<std::pair<int, int>> shared;
      for (std::size_t vi = 0; vi < polys[i].size(); ++vi)
        for (std::size_t vj = 0; vj < polys[j].size(); ++vj)
          if ((polys[i][vi] - polys[j][vj]).norm() < tol)
            shared.emplace_back(static_cast<int>(vi), static_cast<int>(vj));
      if (shared.size() < 2) continue;
      std::vector<ExactPoint> vi_sym = tile_vertices(p.tiles[i], a, true);
      ExactPoint d = vi_sym[shared[1].first] - vi_sym[shared[0].first];
      int star = 1;
      for (int k6 = 0; k6 < 6; ++k6)
        for (int m = 0; m <= 1; ++m)
          if (d == ExactPoint::unit(k6, m) || d == -ExactPoint::unit(k6, m)) star = m;
      for (auto& [vi, vj] : shared) {
        const std::string& li = rs.prototiles[p.tiles[i].prototile].labels;
        const std::string& lj = rs.prototiles[p.tiles[j].prototile].labels;
        char ci = li[vi % li.size()];
        char cj = lj[vj % lj.size()];
        if (p.tiles[i].flipped) ci = ci == 'B' ? 'W' : 'B';
        if (p.tiles[j].flipped) cj = cj == 'B' ? 'W' : 'B';
        std::string pair{ci, cj};
        if (!rs.matching.pairs[star].count(pair))
          rep.decoration_mismatches.push_back(
              {i, j, "colours " + pair + " on a star-" + std::to_string(star) + " edge"});
      }
    }
  }
  return rep;
}

std::string ValidationReport::text() const {
  std::ostringstream out;
  out << "validation: " << (passed() ? "passed" : "failed") << '\n';
  out << "overlaps: " << overlaps.size() << '\n';
  for (const Overlap& o : overlaps)
    out << "  tiles " << o.tile_a << "," << o.tile_b << " area " << o.area << '\n';
  out << "gaps: " << gaps.size() << '\n';
  for (const Gap& g : gaps)
    out << "  near (" << g.location.x << "," << g.location.y << ") ~area " << g.area_estimate
        << '\n';
  out << "decoration_mismatches: " << decoration_mismatches.size() << '\n';
  for (const DecorationMismatch& d : decoration_mismatches)
    out << "  tiles " << d.tile_a << "," << d.tile_b << " " << d.detail << '\n';
  return out.str();
}

std::string ValidationReport::json() const {
  std::ostringstream out;
  out << "{\"passed\":" << (passed() ? "true" : "false") << ",\"overlaps\":" << overlaps.size()
      << ",\"gaps\":" << gaps.size()
      << ",\"decoration_mismatches\":" << decoration_mismatches.size() << "}";
  return out.str();
}

// ---------------------------------------------------------------------------

Census census(const Patch& p) {
  Census c;
  for (const Tile& t : p.tiles) {
    if (t.kind == TileKind::Triangle) {
      ++c.triangles;
      if (triangle_class(t) == TriangleClass::Green)
        ++c.green;
      else
        ++c.red;
    } else {
      ++c.rhombi;
    }
    std::string key = std::to_string(t.orientation.k) + "," + std::to_string(t.orientation.m) +
                      "," + (t.flipped ? "1" : "0");
    c.orientation_histogram[key] += 1;
    c.total_area += tile_area(t, p.meta.alpha);
  }
  return c;
}

std::string Census::text() const {
  std::ostringstream out;
  out << "triangles: " << triangles << " (green " << green << ", red " << red << ")\n";
  out << "rhombi: " << rhombi << '\n';
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9f", total_area);
  out << "total_area: " << buf << '\n';
  for (const auto& [k, v] : orientation_histogram)
    out << "orientation " << k << ": " << v << '\n';
  return out.str();
}

std::string Census::json() const {
  std::ostringstream out;
  out << "{\"triangles\":" << triangles << ",\"green\":" << green << ",\"red\":" << red
      << ",\"rhombi\":" << rhombi << ",\"total_area\":" << total_area << "}";
  return out.str();
}

// ---------------------------------------------------------------------------

namespace {

struct RealizedTile {
  Vec2 centroid;
  std::vector<Vec2> vertices;
  double area = 0.0;
};

std::string geometric_signature(const RealizedTile& t) {
  // vertex offsets from the centroid, rounded; sorted for stability
  std::vector<std::pair<long long, long long>> offs;
  for (const Vec2& v : t.vertices)
    offs.emplace_back(std::llround((v.x - t.centroid.x) * 1e6),
                      std::llround((v.y - t.centroid.y) * 1e6));
  std::sort(offs.begin(), offs.end());
  std::string s;
  for (auto& [x, y] : offs) s += std::to_string(x) + ":" + std::to_string(y) + ";";
  return s;
}

}  // namespace

std::optional<Vec2> periodicity_scan(const Patch& patch, const AngleParam& a, double max_radius,
                                     PeriodMatch mode) {
  if (patch.tiles.empty()) return std::nullopt;
  Patch p = patch;
  p.meta.alpha = a;
  p.invalidate();
  const double tol = 1e-9;

  std::vector<RealizedTile> real(p.tiles.size());
  const auto& polys = p.polygons();
  for (std::size_t i = 0; i < p.tiles.size(); ++i) {
    real[i].vertices = polys[i];
    Vec2 c{0, 0};
    for (const Vec2& v : polys[i]) {
      c.x += v.x;
      c.y += v.y;
    }
    c.x /= polys[i].size();
    c.y /= polys[i].size();
    real[i].centroid = c;
    real[i].area = std::abs(polygon_area(polys[i]));
  }

  auto ignored = [&](std::size_t i) {
    return mode == PeriodMatch::Geometric && real[i].area < 1e-9;
  };

  auto match_key = [&](std::size_t i) -> std::string {
    if (mode == PeriodMatch::Decorated) {
      const Tile& t = p.tiles[i];
      return std::to_string(t.prototile) + "|" + std::to_string(t.orientation.k) + "," +
             std::to_string(t.orientation.m) + "|" + (t.flipped ? "1" : "0");
    }
    return geometric_signature(real[i]);
  };

  PointRegistry locations(1e-9);
  std::vector<std::string> keys(p.tiles.size());
  std::unordered_map<int, int> tile_at;  // registry id -> tile
  std::vector<int> active;
  for (std::size_t i = 0; i < p.tiles.size(); ++i) {
    if (ignored(i)) continue;
    keys[i] = match_key(i);
    tile_at[locations.find_or_add(real[i].centroid)] = static_cast<int>(i);
    active.push_back(static_cast<int>(i));
  }
  if (active.empty()) return std::nullopt;

  // a translational period must relate every tile to a like tile, so its
  // candidates already appear among the like-tile differences of any one
  // witness; use a few central tiles to be safe
  Vec2 mid{0, 0};
  for (int i : active) {
    mid.x += real[i].centroid.x;
    mid.y += real[i].centroid.y;
  }
  mid.x /= active.size();
  mid.y /= active.size();
  std::vector<int> witnesses = active;
  std::sort(witnesses.begin(), witnesses.end(), [&](int a, int b) {
    return (real[a].centroid - mid).norm() < (real[b].centroid - mid).norm();
  });
  if (witnesses.size() > 4) witnesses.resize(4);

  std::vector<Vec2> candidates;
  std::vector<Vec2> cand_seen;
  auto remember = [&](Vec2 d) {
    if (d.y < -tol || (std::abs(d.y) < tol && d.x < 0)) {
      d.x = -d.x;
      d.y = -d.y;
    }
    for (const Vec2& c : cand_seen)
      if ((c - d).norm() < 1e-9) return;
    cand_seen.push_back(d);
    candidates.push_back(d);
  };
  for (int w : witnesses)
    for (int i : active) {
      if (i == w || keys[i] != keys[w]) continue;
      Vec2 d = real[i].centroid - real[w].centroid;
      if (d.norm() < tol || d.norm() > max_radius + tol) continue;
      remember(d);
    }
  std::sort(candidates.begin(), candidates.end(), [](const Vec2& a_, const Vec2& b_) {
    double na = a_.norm(), nb = b_.norm();
    if (std::abs(na - nb) > 1e-12) return na < nb;
    return a_.x < b_.x || (a_.x == b_.x && a_.y < b_.y);
  });

  // exact region boundary for the erosion test: only tiles whose translate
  // stays inside the patch are required to map
  std::vector<std::vector<Vec2>> live_polys;
  for (int i : active) live_polys.push_back(polys[i]);
  auto boundary = region_boundary_edges(live_polys).all();
  std::vector<double> boundary_dist(p.tiles.size(), 0.0);
  for (int i : active) boundary_dist[i] = min_dist_to_edges(real[i].centroid, boundary);

  for (const Vec2& t : candidates) {
    const double r = t.norm();
    bool ok = true;
    int tested = 0;
    for (int i : active) {
      if (boundary_dist[i] < r + 1.0) continue;  // eroded out
      ++tested;
      for (int sign : {1, -1}) {
        Vec2 shifted{real[i].centroid.x + sign * t.x, real[i].centroid.y + sign * t.y};
        int id = locations.find(shifted);
        if (id < 0 || keys[tile_at[id]] != keys[i]) {
          ok = false;
          break;
        }
      }
      if (!ok) break;
    }
    if (ok && tested > 0) return t;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------

StructureGraph underlying_structure(const Patch& patch, const AngleParam& a,
                                    const ValidationReport& validation, int distance_ranks) {
  if (!validation.passed())
    throw NotValidated("underlying structure requires a validated patch");
  StructureGraph g;
  Patch p = patch;
  p.meta.alpha = a;
  p.invalidate();
  const auto& polys = p.polygons();

  // cluster vertices, collecting incident tile corners
  struct Star {
    ExactPoint center;
    std::vector<int> triangles;
    int rhombi = 0;
  };
  PointRegistry reg(1e-9);
  std::vector<Star> stars;
  for (std::size_t i = 0; i < p.tiles.size(); ++i) {
    std::vector<ExactPoint> vs = tile_vertices(p.tiles[i], a, true);
    for (std::size_t vi = 0; vi < vs.size(); ++vi) {
      int id = reg.find_or_add(polys[i][vi]);
      if (id == static_cast<int>(stars.size())) stars.push_back({});
      Star& s = stars[id];
      s.center = vs[vi];
      if (p.tiles[i].kind == TileKind::Triangle)
        s.triangles.push_back(static_cast<int>(i));
      else
        ++s.rhombi;
    }
  }
  for (const Star& s : stars) {
    if (s.rhombi == 0 && s.triangles.size() == 6)
      g.nodes.push_back({s.center, s.triangles});
  }
  std::sort(g.nodes.begin(), g.nodes.end(), [](const StructureNode& x, const StructureNode& y) {
    return x.tiles < y.tiles;
  });
  if (g.nodes.empty()) return g;

  // distance-rank adjacency
  std::vector<Vec2> centers;
  centers.reserve(g.nodes.size());
  for (const StructureNode& n : g.nodes) centers.push_back(n.center.eval(a));
  std::vector<double> dists;
  for (std::size_t i = 0; i < centers.size(); ++i)
    for (std::size_t j = i + 1; j < centers.size(); ++j)
      dists.push_back((centers[i] - centers[j]).norm());
  std::sort(dists.begin(), dists.end());
  std::vector<double> distinct;
  for (double d : dists)
    if (distinct.empty() || d - distinct.back() > 1e-6) distinct.push_back(d);
  const int ranks = std::min<int>(distance_ranks, static_cast<int>(distinct.size()));
  if (ranks > 0) g.edge_length = distinct[0];
  for (std::size_t i = 0; i < centers.size(); ++i)
    for (std::size_t j = i + 1; j < centers.size(); ++j) {
      double d = (centers[i] - centers[j]).norm();
      for (int r = 0; r < ranks; ++r)
        if (std::abs(d - distinct[r]) <= 1e-6) {
          g.edges.emplace_back(static_cast<int>(i), static_cast<int>(j));
          break;
        }
    }

  // face extraction by half-edge walking (faces kept on the left)
  std::vector<std::vector<int>> adj(g.nodes.size());
  for (auto& [i, j] : g.edges) {
    adj[i].push_back(j);
    adj[j].push_back(i);
  }
  auto angle_of = [&](int i, int j) {
    return std::atan2(centers[j].y - centers[i].y, centers[j].x - centers[i].x);
  };
  std::set<std::pair<int, int>> visited;
  for (auto& [ei, ej] : g.edges) {
    for (auto h : {std::make_pair(ei, ej), std::make_pair(ej, ei)}) {
      if (visited.count(h)) continue;
      std::vector<int> face;
      auto cur = h;
      while (!visited.count(cur)) {
        visited.insert(cur);
        face.push_back(cur.first);
        int i = cur.first, j = cur.second;
        double back = angle_of(j, i);
        int best = -1;
        double best_turn = -1.0;
        for (int k : adj[j]) {
          if (k == i && adj[j].size() > 1) continue;
          double turn = std::fmod(angle_of(j, k) - back + 4 * M_PI, 2 * M_PI);
          if (turn < 1e-12) turn = 2 * M_PI;
          if (turn > best_turn) {
            best_turn = turn;
            best = k;
          }
        }
        cur = {j, best};
      }
      // drop the outer face via signed area
      std::vector<Vec2> poly;
      for (int idx : face) poly.push_back(centers[idx]);
      if (polygon_area(poly) <= 0) continue;
      if (face.size() == 3)
        g.face_census["triangle"] += 1;
      else if (face.size() == 4)
        g.face_census["rhombus"] += 1;
      else
        g.face_census["other"] += 1;
    }
  }
  return g;
}

std::string StructureGraph::json() const {
  std::ostringstream out;
  out << "{\"nodes\":" << nodes.size() << ",\"edges\":" << edges.size() << ",\"faces\":{";
  bool first = true;
  for (const auto& [k, v] : face_census) {
    if (!first) out << ',';
    first = false;
    out << '"' << k << "\":" << v;
  }
  out << "},\"edge_length\":" << edge_length << "}";
  return out.str();
}

}  // namespace trirhomb
