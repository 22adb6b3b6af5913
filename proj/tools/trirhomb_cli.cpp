// Command-line front end: generation, validation, analysis and rendering of
// triangle-rhombus substitution tilings.
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "trirhomb/analysis.hpp"
#include "trirhomb/engine.hpp"
#include "trirhomb/render.hpp"

namespace fs = std::filesystem;
using namespace trirhomb;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFindings = 1;
constexpr int kExitUsage = 2;

std::string default_rules_dir() {
  if (const char* env = std::getenv("TRIRHOMB_RULES_DIR")) return env;
  return "data";
}

std::string rules_path(const std::string& rules_dir, const std::string& variant) {
  std::string name = variant;
  for (char& c : name) c = static_cast<char>(std::tolower(c));
  return rules_dir + "/rules_" + name + ".trd";
}

// All outputs are written atomically: temp file in the target directory,
// then rename.
void write_atomic(const std::string& path, const std::string& content) {
  fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write '" + tmp.string() + "'");
    out << content;
  }
  fs::rename(tmp, target);
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct CommonOpts {
  std::string alpha = "90";
  std::string variant = "R12";
  std::string rules_file;
  std::string rules_dir = default_rules_dir();

  AngleParam angle() const { return AngleParam::from_string(alpha); }
  RuleSet load(bool require_interior) const {
    AngleParam a = angle();
    if (require_interior && a.degenerate())
      throw DegenerateTarget("alpha = " + a.alpha_deg.str() + " is degenerate");
    std::string path = rules_file.empty() ? rules_path(rules_dir, variant) : rules_file;
    return load_ruleset_file(path, variant_from_name(variant), a);
  }
};

RuleSet load_for_patch(const Patch& p, const CommonOpts& opts) {
  CommonOpts o = opts;
  o.variant = p.meta.variant;
  o.alpha = p.meta.alpha.alpha_deg.str();
  return o.load(false);
}

std::vector<std::string> prototile_ids(const RuleSet& rs) {
  std::vector<std::string> ids;
  for (const Prototile& p : rs.prototiles) ids.push_back(p.id);
  return ids;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"triangle-rhombus substitution tiling toolkit"};
  app.require_subcommand(1);
  app.set_config("--config", "", "read options from a key=value file");
  app.get_config_formatter_base()->valueSeparator('=');
  app.failure_message(CLI::FailureMessage::help);

  CommonOpts common;

  // generate
  auto* cmd_gen = app.add_subcommand("generate", "grow a patch by substitution");
  int depth = 3;
  std::string seed = "GT0";
  std::string out_path = "patch.trp";
  cmd_gen->add_option("--variant", common.variant, "rule family: R28, R12 or R6");
  cmd_gen->add_option("--alpha", common.alpha, "rhombus angle in degrees (rational)");
  cmd_gen->add_option("--depth", depth, "substitution steps");
  cmd_gen->add_option("--seed", seed, "seed prototile, e.g. GT0 or RH2@1");
  cmd_gen->add_option("--rules", common.rules_file, "rule data file");
  cmd_gen->add_option("--rules-dir", common.rules_dir, "rule data directory");
  cmd_gen->add_option("-o,--output", out_path, "patch file to write");

  // check-rules
  auto* cmd_check = app.add_subcommand("check-rules", "verify a rule data file");
  bool check_json = false;
  cmd_check->add_option("--variant", common.variant, "rule family: R28, R12 or R6");
  cmd_check->add_option("--alpha", common.alpha, "rhombus angle in degrees (rational)");
  cmd_check->add_option("--rules", common.rules_file, "rule data file");
  cmd_check->add_option("--rules-dir", common.rules_dir, "rule data directory");
  cmd_check->add_flag("--json", check_json, "machine readable report");

  // validate
  auto* cmd_val = app.add_subcommand("validate", "check a patch for overlaps, gaps, decorations");
  std::string in_path;
  bool val_json = false;
  std::string val_alpha;
  cmd_val->add_option("--input", in_path, "patch file")->required();
  cmd_val->add_option("--alpha", val_alpha, "evaluate at this angle instead of the stored one");
  cmd_val->add_option("--rules", common.rules_file, "rule data file");
  cmd_val->add_option("--rules-dir", common.rules_dir, "rule data directory");
  cmd_val->add_flag("--json", val_json, "machine readable report");

  // census
  auto* cmd_census = app.add_subcommand("census", "tile counts and frequencies");
  bool census_json = false;
  cmd_census->add_option("--input", in_path, "patch file")->required();
  cmd_census->add_flag("--json", census_json, "machine readable report");

  // scan-period
  auto* cmd_scan = app.add_subcommand("scan-period", "search for a translational period");
  double max_radius = 10.0;
  bool geometric = false;
  std::string scan_alpha;
  cmd_scan->add_option("--input", in_path, "patch file")->required();
  cmd_scan->add_option("--max-radius", max_radius, "candidate length bound in edge units");
  cmd_scan->add_option("--alpha", scan_alpha, "evaluate at this angle instead of the stored one");
  cmd_scan->add_flag("--geometric", geometric,
                     "match shapes only, ignoring decorations and zero-area tiles");

  // structure
  auto* cmd_struct = app.add_subcommand("structure", "extract the hexagon-center structure");
  std::string struct_svg;
  cmd_struct->add_option("--input", in_path, "patch file")->required();
  cmd_struct->add_option("--rules", common.rules_file, "rule data file");
  cmd_struct->add_option("--rules-dir", common.rules_dir, "rule data directory");
  cmd_struct->add_option("--svg", struct_svg, "also write an overlay document");

  // render
  auto* cmd_render = app.add_subcommand("render", "emit an SVG document");
  std::string render_out = "patch.svg";
  std::string color_by = "class";
  std::string render_alpha;
  bool decorations = false, glue = false, overlay = false;
  double stroke = 0.02;
  cmd_render->add_option("--input", in_path, "patch file")->required();
  cmd_render->add_option("-o,--output", render_out, "SVG file to write");
  cmd_render->add_option("--alpha", render_alpha, "render at this angle instead of the stored one");
  cmd_render->add_option("--color-by", color_by, "kind | class | orientation | none");
  cmd_render->add_flag("--decorations", decorations, "draw corner labels and arrows");
  cmd_render->add_flag("--glue", glue, "thin-rhombus emphasis");
  cmd_render->add_flag("--structure", overlay, "overlay the hexagon-center structure");
  cmd_render->add_option("--stroke-width", stroke, "stroke width in edge units");
  cmd_render->add_option("--rules", common.rules_file, "rule data file");
  cmd_render->add_option("--rules-dir", common.rules_dir, "rule data directory");

  // sweep
  auto* cmd_sweep = app.add_subcommand("sweep", "render an angle sweep");
  std::string sweep_dir = "sweep";
  std::string from = "0", to = "180";
  int frames = 19;
  cmd_sweep->add_option("--input", in_path, "patch file")->required();
  cmd_sweep->add_option("--from", from, "first angle");
  cmd_sweep->add_option("--to", to, "last angle");
  cmd_sweep->add_option("--frames", frames, "frame count (>= 2)");
  cmd_sweep->add_option("-o,--output", sweep_dir, "output directory");

  CLI11_PARSE(app, argc, argv);

  try {
    if (cmd_gen->parsed()) {
      RuleSet rs = common.load(/*require_interior=*/true);
      GenerationConfig cfg;
      cfg.alpha = common.angle();
      cfg.depth = depth;
      cfg.seed = SeedSpec::parse(seed);
      Patch p = generate(cfg, rs);
      write_atomic(out_path, serialize_patch(p, prototile_ids(rs)));
      std::printf("wrote %s (%zu tiles)\n", out_path.c_str(), p.tiles.size());
      return kExitOk;
    }
    if (cmd_check->parsed()) {
      AngleParam a = common.angle();
      if (a.degenerate()) throw DegenerateTarget("alpha = " + a.alpha_deg.str() + " is degenerate");
      std::string path =
          common.rules_file.empty() ? rules_path(common.rules_dir, common.variant) : common.rules_file;
      RuleSet rs = load_ruleset_file(path, variant_from_name(common.variant), a);
      ConsistencyReport rep = check_ruleset(rs);
      if (check_json) {
        std::printf("{\"rules\":%zu,\"violations\":%zu,\"inflation_factor\":%.12f}\n",
                    rs.rules.size(), rep.violations.size(), rs.inflation_factor);
      } else {
        std::printf("rules: %zu, inflation factor %.9f\n%s", rs.rules.size(),
                    rs.inflation_factor, rep.text().c_str());
      }
      return rep.passed() ? kExitOk : kExitFindings;
    }
    if (cmd_val->parsed()) {
      std::vector<std::string> ids;
      Patch p = parse_patch(slurp(in_path), &ids);
      if (!val_alpha.empty()) p = reparameterize(p, AngleParam::from_string(val_alpha));
      RuleSet rs = load_for_patch(p, common);
      ValidationReport rep = validate(p, p.meta.alpha, rs);
      std::printf("%s", val_json ? (rep.json() + "\n").c_str() : rep.text().c_str());
      return rep.passed() ? kExitOk : kExitFindings;
    }
    if (cmd_census->parsed()) {
      Patch p = parse_patch(slurp(in_path), nullptr);
      Census c = census(p);
      std::printf("%s", census_json ? (c.json() + "\n").c_str() : c.text().c_str());
      return kExitOk;
    }
    if (cmd_scan->parsed()) {
      Patch p = parse_patch(slurp(in_path), nullptr);
      AngleParam a = scan_alpha.empty() ? p.meta.alpha : AngleParam::from_string(scan_alpha);
      auto hit = periodicity_scan(p, a, max_radius,
                                  geometric ? PeriodMatch::Geometric : PeriodMatch::Decorated);
      if (hit)
        std::printf("period t=(%.9f,%.9f) |t|=%.9f\n", hit->x, hit->y, hit->norm());
      else
        std::printf("no period within radius %.3f\n", max_radius);
      return kExitOk;
    }
    if (cmd_struct->parsed()) {
      std::vector<std::string> ids;
      Patch p = parse_patch(slurp(in_path), &ids);
      RuleSet rs = load_for_patch(p, common);
      ValidationReport rep = validate(p, p.meta.alpha, rs);
      if (!rep.passed()) {
        std::fprintf(stderr, "patch failed validation; structure needs a valid patch\n%s",
                     rep.text().c_str());
        return kExitFindings;
      }
      StructureGraph g = underlying_structure(p, p.meta.alpha, rep);
      std::printf("%s\n", g.json().c_str());
      if (!struct_svg.empty())
        write_atomic(struct_svg, render_structure(p, g, p.meta.alpha, StyleSpec{}));
      return kExitOk;
    }
    if (cmd_render->parsed()) {
      std::vector<std::string> ids;
      Patch p = parse_patch(slurp(in_path), &ids);
      AngleParam a = render_alpha.empty() ? p.meta.alpha : AngleParam::from_string(render_alpha);
      StyleSpec s;
      s.show_decorations = decorations;
      s.glue_mode = glue;
      s.stroke_width = stroke;
      if (color_by == "kind")
        s.color_by = ColorBy::Kind;
      else if (color_by == "class")
        s.color_by = ColorBy::Class;
      else if (color_by == "orientation")
        s.color_by = ColorBy::Orientation;
      else if (color_by == "none")
        s.color_by = ColorBy::None;
      else
        throw ParseError("unknown --color-by value '" + color_by + "'");
      std::string svg;
      if (overlay) {
        RuleSet rs = load_for_patch(p, common);
        ValidationReport rep = validate(p, a, rs);
        if (!rep.passed()) {
          std::fprintf(stderr, "patch failed validation; cannot overlay structure\n");
          return kExitFindings;
        }
        svg = render_structure(p, underlying_structure(p, a, rep), a, s);
      } else if (decorations) {
        RuleSet rs = load_for_patch(p, common);
        svg = render_svg(p, a, s, &rs);
      } else {
        svg = render_svg(p, a, s);
      }
      write_atomic(render_out, svg);
      std::printf("wrote %s\n", render_out.c_str());
      return kExitOk;
    }
    if (cmd_sweep->parsed()) {
      Patch p = parse_patch(slurp(in_path), nullptr);
      SweepSpec sw;
      sw.alpha_start = AngleParam::from_string(from);
      sw.alpha_end = AngleParam::from_string(to);
      sw.frames = frames;
      StyleSpec s;
      auto result = render_sweep(p, sw, s);
      fs::create_directories(sweep_dir);
      for (std::size_t i = 0; i < result.size(); ++i) {
        char name[32];
        std::snprintf(name, sizeof name, "frame_%04zu.svg", i);
        write_atomic(sweep_dir + "/" + name, result[i].svg);
      }
      write_atomic(sweep_dir + "/manifest.txt", sweep_manifest(result));
      std::printf("wrote %d frames to %s\n", frames, sweep_dir.c_str());
      return kExitOk;
    }
  } catch (const DegenerateTarget& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitUsage;
  } catch (const ParseError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitUsage;
  } catch (const Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitUsage;
  }
  return kExitUsage;
}
