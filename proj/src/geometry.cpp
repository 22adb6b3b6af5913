#include "trirhomb/geometry.hpp"

#include <cstdio>
#include <cstdlib>

namespace trirhomb {

Rational Rational::parse(const std::string& s) {
  if (s.empty()) throw ParseError("empty rational");
  auto slash = s.find('/');
  if (slash != std::string::npos) {
    const std::string a = s.substr(0, slash), b = s.substr(slash + 1);
    if (a.empty() || b.empty()) throw ParseError("malformed rational '" + s + "'");
    char* end = nullptr;
    std::int64_t num = std::strtoll(a.c_str(), &end, 10);
    if (*end != '\0') throw ParseError("malformed rational '" + s + "'");
    std::int64_t den = std::strtoll(b.c_str(), &end, 10);
    if (*end != '\0') throw ParseError("malformed rational '" + s + "'");
    return Rational(num, den);
  }
  auto dot = s.find('.');
  if (dot != std::string::npos) {
    std::string digits = s.substr(0, dot) + s.substr(dot + 1);
    std::size_t places = s.size() - dot - 1;
    if (places == 0 || places > 15) throw ParseError("malformed decimal '" + s + "'");
    char* end = nullptr;
    std::int64_t num = std::strtoll(digits.c_str(), &end, 10);
    if (*end != '\0') throw ParseError("malformed decimal '" + s + "'");
    std::int64_t den = 1;
    for (std::size_t i = 0; i < places; ++i) den *= 10;
    return Rational(num, den);
  }
  char* end = nullptr;
  std::int64_t num = std::strtoll(s.c_str(), &end, 10);
  if (*end != '\0') throw ParseError("malformed rational '" + s + "'");
  return Rational(num);
}

std::string ExactPoint::serialize() const {
  std::string out = "{";
  bool first = true;
  for (int m = kMinOrder; m <= kMaxOrder; ++m)
    for (int k = 0; k < 2; ++k) {
      std::int32_t v = get(k, m);
      if (v == 0) continue;
      if (!first) out += ',';
      first = false;
      char buf[64];
      std::snprintf(buf, sizeof buf, "(%d,%d):%d", k, m, v);
      out += buf;
    }
  out += '}';
  return out;
}

ExactPoint ExactPoint::parse(const std::string& s) {
  ExactPoint p;
  std::size_t i = 0;
  auto skip = [&](char c) {
    if (i >= s.size() || s[i] != c) throw ParseError("malformed point '" + s + "'");
    ++i;
  };
  auto read_int = [&]() {
    std::size_t start = i;
    if (i < s.size() && (s[i] == '-' || s[i] == '+')) ++i;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
    if (i == start) throw ParseError("malformed point '" + s + "'");
    return std::atoi(s.substr(start, i - start).c_str());
  };
  skip('{');
  if (i < s.size() && s[i] == '}') return p;
  while (true) {
    skip('(');
    int k = read_int();
    skip(',');
    int m = read_int();
    skip(')');
    skip(':');
    int v = read_int();
    if (k < 0 || k > 5) throw ParseError("point key k out of range in '" + s + "'");
    ExactPoint u = unit(k, m);
    for (std::size_t j = 0; j < p.c.size(); ++j) p.c[j] += v * u.c[j];
    if (i < s.size() && s[i] == ',') {
      ++i;
      continue;
    }
    skip('}');
    break;
  }
  return p;
}

}  // namespace trirhomb
