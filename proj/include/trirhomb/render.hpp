#pragma once

#include <string>
#include <vector>

#include "trirhomb/analysis.hpp"

namespace trirhomb {

enum class ColorBy { Kind, Class, Orientation, None };

struct StyleSpec {
  bool show_decorations = false;
  ColorBy color_by = ColorBy::Class;
  bool show_structure_overlay = false;
  bool glue_mode = false;  // thin-rhombus emphasis
  double stroke_width = 0.02;
};

struct SweepSpec {
  AngleParam alpha_start = AngleParam::from(Rational(0));
  AngleParam alpha_end = AngleParam::from(Rational(180));
  int frames = 2;  // >= 2; interpolation is exact-rational
};

// One polygon element per tile in patch order, 6-decimal coordinates,
// y axis flipped once at the document level.  Deterministic byte-for-byte.
std::string render_svg(const Patch& p, const AngleParam& a, const StyleSpec& s,
                       const RuleSet* rs = nullptr);

// Base tiling at reduced opacity with node markers and edge segments.
std::string render_structure(const Patch& p, const StructureGraph& g, const AngleParam& a,
                             const StyleSpec& s);

struct SweepFrame {
  AngleParam alpha = AngleParam::from(Rational(0));
  std::string svg;
};

std::vector<SweepFrame> render_sweep(const Patch& p, const SweepSpec& sw, const StyleSpec& s);

// frame -> alpha listing, exact rationals
std::string sweep_manifest(const std::vector<SweepFrame>& frames);

}  // namespace trirhomb
