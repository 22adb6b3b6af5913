#include "trirhomb/rules.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

namespace trirhomb {

std::string variant_name(RuleVariant v) {
  switch (v) {
    case RuleVariant::R28: return "R28";
    case RuleVariant::R12: return "R12";
    case RuleVariant::R6: return "R6";
  }
  return "?";
}

RuleVariant variant_from_name(const std::string& s) {
  if (s == "R28") return RuleVariant::R28;
  if (s == "R12") return RuleVariant::R12;
  if (s == "R6") return RuleVariant::R6;
  throw ParseError("unknown rule variant '" + s + "'");
}

int variant_rule_count(RuleVariant v) {
  switch (v) {
    case RuleVariant::R28: return 28;
    case RuleVariant::R12: return 12;
    case RuleVariant::R6: return 6;
  }
  return 0;
}

const Rule& RuleSet::rule_for(int prototile) const {
  for (const Rule& r : rules)
    if (r.parent == prototile) return r;
  throw MissingRule("no rule for prototile index " + std::to_string(prototile));
}

// Direction class on the 12-fold star: class(k, m) = 2k + 3m mod 12.
static int dir_class(int k, int m) { return (((2 * k + 3 * m) % 12) + 12) % 12; }

ExactPoint RuleSet::inflate(const ExactPoint& p) const {
  // Multiplication by the inflation unit, transported from the declared
  // image of u(0,0) by the 30-degree lattice automorphism.
  ExactPoint r;
  for (int k = 0; k < 2; ++k)
    for (int m = ExactPoint::kMinOrder; m <= ExactPoint::kMaxOrder; ++m) {
      std::int32_t v = p.get(k, m);
      if (v == 0) continue;
      ExactPoint img = inflation_edge.zhat_pow(dir_class(k, m));
      for (std::size_t i = 0; i < r.c.size(); ++i) r.c[i] += v * img.c[i];
    }
  return r;
}

std::vector<ExactPoint> RuleSet::region_boundary(const Rule& r) const {
  const Prototile& parent = prototiles[r.parent];
  std::vector<ExactPoint> corners;
  std::vector<int> steps;  // direction class of each side's pre-image edge
  const int k = parent.k, m = parent.m;
  if (parent.kind == TileKind::Triangle) {
    corners = {ExactPoint{}, ExactPoint::unit(k, m), ExactPoint::unit(k + 1, m)};
    steps = {dir_class(k, m), dir_class(k + 2, m), dir_class(k + 4, m)};
  } else {
    ExactPoint e0 = ExactPoint::unit(k, m), e1 = ExactPoint::unit(k, m + 1);
    corners = {ExactPoint{}, e0, e0 + e1, e1};
    steps = {dir_class(k, m), dir_class(k, m + 1), dir_class(k + 3, m), dir_class(k + 3, m + 1)};
  }
  std::vector<ExactPoint> boundary;
  for (std::size_t i = 0; i < corners.size(); ++i) {
    ExactPoint p = inflate(corners[i]);
    boundary.push_back(p);
    const int d = steps[i];
    const auto& base = profile[d % 2];
    const int shift = d - (d % 2);
    for (std::size_t j = 0; j + 1 < base.size(); ++j) {
      Direction s = base[j];
      p = p + ExactPoint::unit(s.k + shift / 2, s.m);
      boundary.push_back(p);
    }
  }
  return boundary;
}

// ---------------------------------------------------------------------------
// parsing
// ---------------------------------------------------------------------------

namespace {

std::vector<std::pair<std::string, std::string>> split_fields(const std::string& line) {
  std::vector<std::pair<std::string, std::string>> out;
  std::istringstream in(line);
  std::string tok;
  in >> tok;  // keyword
  while (in >> tok) {
    auto eq = tok.find('=');
    if (eq == std::string::npos) throw ParseError("malformed field '" + tok + "'");
    out.emplace_back(tok.substr(0, eq), tok.substr(eq + 1));
  }
  return out;
}

std::vector<Direction> parse_steps(const std::string& val) {
  std::vector<Direction> out;
  std::size_t i = 0;
  while (i < val.size()) {
    if (val[i] != '(') throw ParseError("malformed profile steps '" + val + "'");
    auto close = val.find(')', i);
    if (close == std::string::npos) throw ParseError("malformed profile steps '" + val + "'");
    std::string body = val.substr(i + 1, close - i - 1);
    auto comma = body.find(',');
    out.emplace_back(std::atoi(body.substr(0, comma).c_str()),
                     std::atoi(body.substr(comma + 1).c_str()));
    i = close + 1;
    if (i < val.size() && val[i] == ',') ++i;
  }
  return out;
}

}  // namespace

RuleSet load_ruleset_any(const std::string& text, const AngleParam& a) {
  RuleSet rs;
  rs.alpha = a;
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line.rfind("trirhomb-rules v1", 0) != 0)
    throw ParseError("not a trirhomb-rules v1 document");
  for (auto& [key, val] : split_fields("x " + line.substr(17))) {
    if (key == "variant")
      rs.family = val;
    else if (key == "conformal_alpha")
      rs.conformal_alpha = Rational::parse(val);
    else
      throw ParseError("unknown rules header field '" + key + "'");
  }
  std::string section;
  std::ptrdiff_t cur = -1;
  while (std::getline(in, line)) {
    while (!line.empty() && (line.back() == '\n' || line.back() == '\r')) line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    if (line[0] == '[') {
      section = line;
      continue;
    }
    if (section == "[profile]") {
      auto eq = line.find('=');
      if (eq == std::string::npos) throw ParseError("malformed profile line '" + line + "'");
      std::string key = line.substr(0, eq);
      auto steps = parse_steps(line.substr(eq + 1));
      if (key == "steps_even")
        rs.profile[0] = steps;
      else if (key == "steps_odd")
        rs.profile[1] = steps;
      else
        throw ParseError("unknown profile key '" + key + "'");
      continue;
    }
    if (section == "[prototiles]") {
      if (line.rfind("prototile ", 0) != 0)
        throw ParseError("unexpected line in [prototiles]: '" + line + "'");
      Prototile p;
      for (auto& [key, val] : split_fields(line)) {
        if (key == "id")
          p.id = val;
        else if (key == "kind")
          p.kind = val == "triangle" ? TileKind::Triangle : TileKind::Rhombus;
        else if (key == "k")
          p.k = std::atoi(val.c_str());
        else if (key == "m")
          p.m = std::atoi(val.c_str());
        else if (key == "labels")
          p.labels = val;
        else
          throw ParseError("unknown prototile field '" + key + "'");
      }
      if (p.id.empty()) throw ParseError("prototile without id");
      std::size_t want = p.kind == TileKind::Triangle ? 3 : 4;
      if (p.labels.size() != want)
        throw ParseError("prototile " + p.id + " has " + std::to_string(p.labels.size()) +
                         " corner labels, expected " + std::to_string(want));
      rs.prototile_index[p.id] = static_cast<int>(rs.prototiles.size());
      rs.prototiles.push_back(std::move(p));
      continue;
    }
    if (section.rfind("[rules:", 0) == 0) {
      std::string sec_variant = section.substr(7, section.size() - 8);
      if (sec_variant != rs.family)
        throw VariantMismatch("file declares variant " + rs.family + " but contains section " +
                              section);
      if (line.rfind("rule ", 0) == 0) {
        Rule r;
        for (auto& [key, val] : split_fields(line)) {
          if (key == "parent") {
            auto it = rs.prototile_index.find(val);
            if (it == rs.prototile_index.end())
              throw UnresolvedPrototile("rule parent '" + val + "' is not a prototile");
            r.parent = it->second;
          } else if (key == "parent_shape") {
            r.parent_shape = val;
          } else if (key == "edge") {
            r.edge = ExactPoint::parse(val);
          } else {
            throw ParseError("unknown rule field '" + key + "'");
          }
        }
        rs.rules.push_back(std::move(r));
        cur = static_cast<std::ptrdiff_t>(rs.rules.size()) - 1;
        continue;
      }
      if (line.rfind("child", 0) == 0) {
        if (cur < 0) throw ParseError("child placement before any rule");
        ChildPlacement c;
        for (auto& [key, val] : split_fields("child " + line)) {
          if (key == "child") {
            auto it = rs.prototile_index.find(val);
            if (it == rs.prototile_index.end())
              throw UnresolvedPrototile("child '" + val + "' is not a prototile");
            c.child = it->second;
          } else if (key == "rot") {
            auto steps = parse_steps(val);
            if (steps.size() != 1) throw ParseError("malformed rot '" + val + "'");
            c.rotation = steps[0];
          } else if (key == "flip") {
            c.flip = val == "1";
          } else if (key == "at") {
            c.anchor = ExactPoint::parse(val);
          } else {
            throw ParseError("unknown child field '" + key + "'");
          }
        }
        rs.rules[cur].children.push_back(std::move(c));
        continue;
      }
      throw ParseError("unexpected line in " + section + ": '" + line + "'");
    }
    if (section == "[matching]") {
      if (line.rfind("match ", 0) == 0) {
        int star = -1;
        std::set<std::string> pairs;
        for (auto& [key, val] : split_fields(line)) {
          if (key == "star") {
            star = std::atoi(val.c_str());
          } else if (key == "pairs") {
            std::istringstream ps(val);
            std::string item;
            while (std::getline(ps, item, ',')) pairs.insert(item);
          } else {
            throw ParseError("unknown match field '" + key + "'");
          }
        }
        if (star != 0 && star != 1) throw ParseError("match star must be 0 or 1");
        rs.matching.pairs[star] = std::move(pairs);
        continue;
      }
      if (line.rfind("arrows=", 0) == 0) {
        rs.matching.arrows_opposed = line.substr(7) == "opposed";
        continue;
      }
      throw ParseError("unexpected line in [matching]: '" + line + "'");
    }
    throw ParseError("line outside any section: '" + line + "'");
  }

  if (rs.rules.empty()) throw ParseError("rule file contains no rules");
  if (rs.profile[0].empty() || rs.profile[1].empty())
    throw ParseError("rule file is missing boundary profiles");

  // Every prototile needs a rule and vice versa.
  if (rs.rules.size() != rs.prototiles.size())
    throw VariantMismatch("rule count " + std::to_string(rs.rules.size()) +
                          " does not match prototile count " +
                          std::to_string(rs.prototiles.size()));
  std::set<int> parents;
  for (const Rule& r : rs.rules) parents.insert(r.parent);
  if (parents.size() != rs.rules.size())
    throw ParseError("duplicate rules for one prototile");

  // Derive the inflation image of u(0,0) from each rule's declared edge and
  // cross-check that all rules agree.
  bool have = false;
  for (const Rule& r : rs.rules) {
    const Prototile& p = rs.prototiles[r.parent];
    ExactPoint e0 = r.edge.zhat_pow(-dir_class(p.k, p.m));
    if (!have) {
      rs.inflation_edge = e0;
      have = true;
    } else if (!(e0 == rs.inflation_edge)) {
      throw ParseError("rules declare inconsistent inflation edges");
    }
  }
  rs.inflation_factor = rs.inflation_edge.eval(rs.conformal_alpha.to_double()).norm();
  if (rs.inflation_factor <= 1.0)
    throw ParseError("declared inflation factor is not greater than 1");
  return rs;
}

RuleSet load_ruleset(const std::string& text, RuleVariant variant, const AngleParam& a) {
  RuleSet rs = load_ruleset_any(text, a);
  if (rs.family != variant_name(variant))
    throw VariantMismatch("file is for variant " + rs.family + ", requested " +
                          variant_name(variant));
  if (static_cast<int>(rs.rules.size()) != variant_rule_count(variant))
    throw VariantMismatch("variant " + rs.family + " must have " +
                          std::to_string(variant_rule_count(variant)) + " rules, file has " +
                          std::to_string(rs.rules.size()));
  return rs;
}

static std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open rule file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

RuleSet load_ruleset_file(const std::string& path, RuleVariant variant, const AngleParam& a) {
  return load_ruleset(read_file(path), variant, a);
}

RuleSet load_ruleset_any_file(const std::string& path, const AngleParam& a) {
  return load_ruleset_any(read_file(path), a);
}

std::string serialize_ruleset(const RuleSet& rs) {
  std::ostringstream out;
  out << "trirhomb-rules v1 variant=" << rs.family
      << " conformal_alpha=" << rs.conformal_alpha.num;
  if (rs.conformal_alpha.den != 1) out << '/' << rs.conformal_alpha.den;
  out << '\n';
  out << "[profile]\n";
  for (int parity = 0; parity < 2; ++parity) {
    out << (parity == 0 ? "steps_even=" : "steps_odd=");
    for (std::size_t i = 0; i < rs.profile[parity].size(); ++i) {
      if (i) out << ',';
      out << '(' << rs.profile[parity][i].k << ',' << rs.profile[parity][i].m << ')';
    }
    out << '\n';
  }
  out << "[prototiles]\n";
  for (const Prototile& p : rs.prototiles)
    out << "prototile id=" << p.id
        << " kind=" << (p.kind == TileKind::Triangle ? "triangle" : "rhombus") << " k=" << p.k
        << " m=" << p.m << " labels=" << p.labels << '\n';
  out << "[rules:" << rs.family << "]\n";
  for (const Rule& r : rs.rules) {
    out << "rule parent=" << rs.prototiles[r.parent].id << " parent_shape=" << r.parent_shape
        << " edge=" << r.edge.serialize() << '\n';
    for (const ChildPlacement& c : r.children)
      out << "child=" << rs.prototiles[c.child].id << " rot=(" << c.rotation.k << ','
          << c.rotation.m << ") flip=" << (c.flip ? 1 : 0) << " at=" << c.anchor.serialize()
          << '\n';
  }
  out << "[matching]\n";
  for (int star = 0; star < 2; ++star) {
    out << "match star=" << star << " pairs=";
    bool first = true;
    for (const std::string& p : rs.matching.pairs[star]) {
      if (!first) out << ',';
      first = false;
      out << p;
    }
    out << '\n';
  }
  out << "arrows=" << (rs.matching.arrows_opposed ? "opposed" : "free") << '\n';
  return out.str();
}

// ---------------------------------------------------------------------------
// consistency checking
// ---------------------------------------------------------------------------

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

// Sutherland-Hodgman clip of a convex polygon against a convex polygon.
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

bool point_in_polygon(const Vec2& p, const std::vector<Vec2>& poly) {
  bool in = false;
  for (std::size_t i = 0, j = poly.size() - 1; i < poly.size(); j = i++) {
    if ((poly[i].y > p.y) != (poly[j].y > p.y)) {
      double t = (p.y - poly[i].y) / (poly[j].y - poly[i].y);
      double x = poly[i].x + t * (poly[j].x - poly[i].x);
      if (p.x < x) in = !in;
    }
  }
  return in;
}

Tile placed_tile(const RuleSet& rs, const ChildPlacement& c) {
  const Prototile& proto = rs.prototiles[c.child];
  Tile t;
  t.kind = proto.kind;
  t.anchor = c.anchor;
  t.orientation = Direction(proto.k + c.rotation.k, proto.m + c.rotation.m);
  t.flipped = c.flip;
  t.prototile = c.child;
  return t;
}

}  // namespace

ConsistencyReport check_ruleset(const RuleSet& rs) {
  ConsistencyReport rep;
  const AngleParam& a = rs.alpha;
  const double tol = 1e-9;

  // Cross-check: the declared inflation edge must reproduce the dominant
  // eigenvalue of the collapsed substitution matrix at the conformal angle.
  SubstitutionMatrix M = substitution_matrix(rs);
  try {
    PerronResult pf = perron_frequencies(M.collapsed);
    if (std::abs(pf.eigenvalue - rs.inflation_factor * rs.inflation_factor) > 1e-9)
      rep.violations.push_back(
          {"*", "structure",
           "declared edge length squared " +
               std::to_string(rs.inflation_factor * rs.inflation_factor) +
               " does not match the dominant eigenvalue " + std::to_string(pf.eigenvalue)});
  } catch (const NotPrimitive&) {
    rep.violations.push_back({"*", "structure", "collapsed substitution matrix is not primitive"});
  }

  for (const Rule& r : rs.rules) {
    const std::string rname = rs.prototiles[r.parent].id;
    std::vector<ExactPoint> region = rs.region_boundary(r);
    std::vector<Vec2> regionv;
    regionv.reserve(region.size());
    for (const ExactPoint& p : region) regionv.push_back(p.eval(a));

    // (a) area balance
    double region_area = polygon_area(regionv);
    double child_area = 0.0;
    std::vector<Tile> tiles;
    std::vector<std::vector<Vec2>> polys;
    for (const ChildPlacement& c : r.children) {
      Tile t = placed_tile(rs, c);
      child_area += tile_area(t, a);
      std::vector<Vec2> poly;
      for (const ExactPoint& v : tile_vertices(t, a)) poly.push_back(v.eval(a));
      tiles.push_back(std::move(t));
      polys.push_back(std::move(poly));
    }
    if (std::abs(region_area - child_area) > tol)
      rep.violations.push_back({rname, "area",
                                "child areas sum to " + std::to_string(child_area) +
                                    " but the parent region has area " +
                                    std::to_string(region_area)});

    // (b) pairwise overlaps
    for (std::size_t i = 0; i < polys.size(); ++i)
      for (std::size_t j = i + 1; j < polys.size(); ++j) {
        double ov = convex_overlap_area(polys[i], polys[j]);
        if (ov >= tol)
          rep.violations.push_back({rname, "overlap",
                                    "children " + std::to_string(i) + " and " + std::to_string(j) +
                                        " overlap with area " + std::to_string(ov)});
      }

    // (c) children inside the parent polygon (centroid containment; together
    // with (a) and (b) this pins the exact cover)
    for (std::size_t i = 0; i < polys.size(); ++i) {
      Vec2 cen{0, 0};
      for (const Vec2& v : polys[i]) {
        cen.x += v.x;
        cen.y += v.y;
      }
      cen.x /= polys[i].size();
      cen.y /= polys[i].size();
      if (!point_in_polygon(cen, regionv))
        rep.violations.push_back(
            {rname, "coverage", "child " + std::to_string(i) + " lies outside the parent region"});
    }

    // (d) decoration matching across shared child edges
    for (std::size_t i = 0; i < polys.size(); ++i)
      for (std::size_t j = i + 1; j < polys.size(); ++j) {
        // find shared vertices
        std::vector<std::pair<int, int>> shared;
        for (std::size_t vi = 0; vi < polys[i].size(); ++vi)
          for (std::size_t vj = 0; vj < polys[j].size(); ++vj)
            if ((polys[i][vi] - polys[j][vj]).norm() < tol)
              shared.emplace_back(static_cast<int>(vi), static_cast<int>(vj));
        if (shared.size() < 2) continue;  // pivot contact only
        // edge star: parity of the shared edge's direction class
        const Vec2 e = polys[i][shared[1].first] - polys[i][shared[0].first];
        (void)e;
        int star = 0;  // determined from symbolic data below
        {
          std::vector<ExactPoint> vi_sym = tile_vertices(tiles[i], a);
          ExactPoint d = vi_sym[shared[1].first] - vi_sym[shared[0].first];
          // a unit tile edge has a single direction class
          star = 1;
          for (int k6 = 0; k6 < 6; ++k6)
            for (int m = 0; m <= 1; ++m)
              if (d == ExactPoint::unit(k6, m) || d == -ExactPoint::unit(k6, m)) star = m;
        }
        for (auto& [vi, vj] : shared) {
          char ci = rs.prototiles[tiles[i].prototile].labels[vi];
          char cj = rs.prototiles[tiles[j].prototile].labels[vj];
          if (tiles[i].flipped) ci = ci == 'B' ? 'W' : 'B';
          if (tiles[j].flipped) cj = cj == 'B' ? 'W' : 'B';
          std::string pair{ci, cj};
          if (!rs.matching.pairs[star].count(pair))
            rep.violations.push_back({rname, "decoration",
                                      "corner colours " + pair + " meet on a star-" +
                                          std::to_string(star) + " edge of children " +
                                          std::to_string(i) + "," + std::to_string(j)});
        }
      }
  }
  return rep;
}

std::string ConsistencyReport::text() const {
  if (violations.empty()) return "consistency: ok (0 violations)\n";
  std::string out = "consistency: " + std::to_string(violations.size()) + " violation(s)\n";
  for (const RuleViolation& v : violations)
    out += "  rule " + v.rule + " [" + v.kind + "] " + v.detail + "\n";
  return out;
}

SubstitutionMatrix substitution_matrix(const RuleSet& rs) {
  SubstitutionMatrix m;
  const int n = static_cast<int>(rs.prototiles.size());
  for (const Prototile& p : rs.prototiles) m.ids.push_back(p.id);
  m.full.assign(n, std::vector<long long>(n, 0));
  for (const Rule& r : rs.rules)
    for (const ChildPlacement& c : r.children) m.full[c.child][r.parent] += 1;
  // collapse to Triangle/Rhombus; every parent of a kind must produce the
  // same collapsed column, which substitution geometry already forces
  for (const Rule& r : rs.rules) {
    int pj = rs.prototiles[r.parent].kind == TileKind::Triangle ? 0 : 1;
    std::array<long long, 2> col{0, 0};
    for (const ChildPlacement& c : r.children)
      col[rs.prototiles[c.child].kind == TileKind::Triangle ? 0 : 1] += 1;
    m.collapsed[0][pj] = col[0];
    m.collapsed[1][pj] = col[1];
  }
  return m;
}

PerronResult perron_frequencies(const std::array<std::array<long long, 2>, 2>& m) {
  // primitive <=> some power strictly positive; for 2x2 check M and M^2
  auto positive = [](const std::array<std::array<long long, 2>, 2>& x) {
    return x[0][0] > 0 && x[0][1] > 0 && x[1][0] > 0 && x[1][1] > 0;
  };
  std::array<std::array<long long, 2>, 2> m2{};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k) m2[i][j] += m[i][k] * m[k][j];
  if (!positive(m) && !positive(m2))
    throw NotPrimitive("collapsed substitution matrix is not primitive");
  const double a = static_cast<double>(m[0][0]), b = static_cast<double>(m[0][1]);
  const double c = static_cast<double>(m[1][0]), d = static_cast<double>(m[1][1]);
  const double tr = a + d, det = a * d - b * c;
  const double disc = std::sqrt(tr * tr - 4.0 * det);
  PerronResult r;
  r.eigenvalue = (tr + disc) / 2.0;
  // right eigenvector: (a - lambda) x + b y = 0
  double x, y;
  if (std::abs(b) > 1e-30) {
    x = b;
    y = r.eigenvalue - a;
  } else {
    x = r.eigenvalue - d;
    y = c;
  }
  double s = x + y;
  r.f_triangle = x / s;
  r.f_rhombus = y / s;
  return r;
}

}  // namespace trirhomb
