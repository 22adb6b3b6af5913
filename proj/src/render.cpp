#include "trirhomb/render.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace trirhomb {

namespace {

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v + 0.0);  // normalize -0
  // avoid "-0.000000"
  if (std::string(buf) == "-0.000000") return "0.000000";
  return buf;
}

const char* kGreen = "#7bb661";
const char* kRed = "#c4524e";
const char* kRhombus = "#d8cfc0";
const char* kGlue = "#3a3a3a";

std::string tile_fill(const Tile& t, const StyleSpec& s) {
  if (s.color_by == ColorBy::None) return "none";
  if (t.kind == TileKind::Rhombus) return s.glue_mode ? kGlue : kRhombus;
  switch (s.color_by) {
    case ColorBy::Kind:
      return "#9bbbd4";
    case ColorBy::Class:
      return triangle_class(t) == TriangleClass::Green ? kGreen : kRed;
    case ColorBy::Orientation: {
      static const char* palette[6] = {"#66c2a5", "#fc8d62", "#8da0cb",
                                       "#e78ac3", "#a6d854", "#ffd92f"};
      return palette[t.orientation.k % 6];
    }
    case ColorBy::None:
      break;
  }
  return "none";
}

struct Box {
  double x0 = 1e300, y0 = 1e300, x1 = -1e300, y1 = -1e300;
  void add(const Vec2& v) {
    x0 = std::min(x0, v.x);
    y0 = std::min(y0, v.y);
    x1 = std::max(x1, v.x);
    y1 = std::max(y1, v.y);
  }
};

void open_document(std::ostringstream& out, const Box& b) {
  const double pad_x = 0.05 * (b.x1 - b.x0 + 1e-9);
  const double pad_y = 0.05 * (b.y1 - b.y0 + 1e-9);
  // the y axis is flipped once at the document level so the mathematical
  // orientation is preserved
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"" << fmt(b.x0 - pad_x) << ' '
      << fmt(-b.y1 - pad_y) << ' ' << fmt(b.x1 - b.x0 + 2 * pad_x) << ' '
      << fmt(b.y1 - b.y0 + 2 * pad_y) << "\">\n";
  out << "<g transform=\"scale(1,-1)\">\n";
}

void close_document(std::ostringstream& out) { out << "</g>\n</svg>\n"; }

void emit_tiles(std::ostringstream& out, const Patch& p,
                const std::vector<std::vector<Vec2>>& polys, const AngleParam& a,
                const StyleSpec& s, double opacity, const RuleSet* rs) {
  char buf[64];
  for (std::size_t i = 0; i < p.tiles.size(); ++i) {
    const Tile& t = p.tiles[i];
    const bool degenerate = t.kind == TileKind::Rhombus && a.degenerate();
    std::string cls = t.kind == TileKind::Rhombus ? "rhombus" : "triangle";
    if (t.kind == TileKind::Rhombus && (s.glue_mode || degenerate)) cls += " glue";
    out << "<polygon class=\"" << cls << "\" points=\"";
    for (std::size_t vi = 0; vi < polys[i].size(); ++vi) {
      if (vi) out << ' ';
      out << fmt(polys[i][vi].x) << ',' << fmt(polys[i][vi].y);
    }
    out << "\" fill=\"" << (degenerate ? "none" : tile_fill(t, s)) << "\" stroke=\""
        << ((s.glue_mode || degenerate) && t.kind == TileKind::Rhombus ? kGlue : "#303030")
        << "\" stroke-width=\"" << fmt((s.glue_mode || degenerate) && t.kind == TileKind::Rhombus
                                           ? std::max(s.stroke_width, 0.04)
                                           : s.stroke_width);
    if (opacity != 1.0) {
      std::snprintf(buf, sizeof buf, "%.3f", opacity);
      out << "\" opacity=\"" << buf;
    }
    out << "\"/>\n";
    if (s.show_decorations && rs != nullptr && t.prototile >= 0) {
      const std::string& labels = rs->prototiles[t.prototile].labels;
      // corner dots and arrow ticks: black corners carry the forward arrow,
      // white corners the backward one
      Vec2 cen{0, 0};
      for (const Vec2& v : polys[i]) {
        cen.x += v.x;
        cen.y += v.y;
      }
      cen.x /= polys[i].size();
      cen.y /= polys[i].size();
      for (std::size_t vi = 0; vi < polys[i].size() && vi < labels.size(); ++vi) {
        char c = labels[vi];
        if (t.flipped) c = c == 'B' ? 'W' : 'B';
        Vec2 v = polys[i][vi];
        Vec2 in{v.x + 0.18 * (cen.x - v.x), v.y + 0.18 * (cen.y - v.y)};
        out << "<circle cx=\"" << fmt(in.x) << "\" cy=\"" << fmt(in.y)
            << "\" r=\"0.055000\" fill=\"" << (c == 'B' ? "#000000" : "#ffffff")
            << "\" stroke=\"#000000\" stroke-width=\"0.012000\"/>\n";
        const Vec2& w = polys[i][(vi + 1) % polys[i].size()];
        Vec2 dir{w.x - v.x, w.y - v.y};
        double sign = c == 'B' ? 1.0 : -1.0;
        Vec2 a0{v.x + 0.32 * dir.x, v.y + 0.32 * dir.y};
        Vec2 a1{v.x + (0.32 + sign * 0.10) * dir.x, v.y + (0.32 + sign * 0.10) * dir.y};
        out << "<line x1=\"" << fmt(a0.x) << "\" y1=\"" << fmt(a0.y) << "\" x2=\"" << fmt(a1.x)
            << "\" y2=\"" << fmt(a1.y)
            << "\" stroke=\"#1f4f8f\" stroke-width=\"0.030000\"/>\n";
      }
    }
  }
}

}  // namespace

std::string render_svg(const Patch& patch, const AngleParam& a, const StyleSpec& s,
                       const RuleSet* rs) {
  if (patch.tiles.empty()) throw EmptyPatch("cannot render an empty patch");
  Patch p = patch;
  p.meta.alpha = a;
  p.invalidate();
  const auto& polys = p.polygons();
  Box b;
  for (const auto& poly : polys)
    for (const Vec2& v : poly) b.add(v);
  std::ostringstream out;
  open_document(out, b);
  emit_tiles(out, p, polys, a, s, 1.0, rs);
  close_document(out);
  return out.str();
}

std::string render_structure(const Patch& patch, const StructureGraph& g, const AngleParam& a,
                             const StyleSpec& s) {
  if (patch.tiles.empty()) throw EmptyPatch("cannot render an empty patch");
  for (const StructureNode& n : g.nodes)
    for (int id : n.tiles)
      if (id < 0 || id >= static_cast<int>(patch.tiles.size()))
        throw MismatchedGraph("structure graph references tile " + std::to_string(id));
  Patch p = patch;
  p.meta.alpha = a;
  p.invalidate();
  const auto& polys = p.polygons();
  Box b;
  for (const auto& poly : polys)
    for (const Vec2& v : poly) b.add(v);
  std::ostringstream out;
  open_document(out, b);
  emit_tiles(out, p, polys, a, s, 0.35, nullptr);
  std::vector<Vec2> centers;
  for (const StructureNode& n : g.nodes) centers.push_back(n.center.eval(a));
  for (const auto& [i, j] : g.edges)
    out << "<line x1=\"" << fmt(centers[i].x) << "\" y1=\"" << fmt(centers[i].y) << "\" x2=\""
        << fmt(centers[j].x) << "\" y2=\"" << fmt(centers[j].y)
        << "\" stroke=\"#10316b\" stroke-width=\"0.060000\"/>\n";
  for (const Vec2& c : centers)
    out << "<circle cx=\"" << fmt(c.x) << "\" cy=\"" << fmt(c.y)
        << "\" r=\"0.120000\" fill=\"#10316b\"/>\n";
  close_document(out);
  return out.str();
}

std::vector<SweepFrame> render_sweep(const Patch& p, const SweepSpec& sw, const StyleSpec& s) {
  if (sw.frames < 2) throw ParseError("a sweep needs at least 2 frames");
  std::vector<SweepFrame> out;
  const Rational a0 = sw.alpha_start.alpha_deg;
  const Rational a1 = sw.alpha_end.alpha_deg;
  for (int i = 0; i < sw.frames; ++i) {
    // exact rational interpolation so that special angles are hit exactly
    Rational t(i, sw.frames - 1);
    Rational alpha = a0 + (a1 - a0) * t;
    AngleParam a = AngleParam::from(alpha);
    SweepFrame frame;
    frame.alpha = a;
    frame.svg = render_svg(p, a, s, nullptr);
    out.push_back(std::move(frame));
  }
  return out;
}

std::string sweep_manifest(const std::vector<SweepFrame>& frames) {
  std::string out;
  for (std::size_t i = 0; i < frames.size(); ++i) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "frame_%04zu.svg", i);
    out += std::string(buf) + " alpha=" + frames[i].alpha.alpha_deg.str() + "\n";
  }
  return out;
}

}  // namespace trirhomb
