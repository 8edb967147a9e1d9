#include "thetaforge/svg.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "thetaforge/geometry.hpp"

namespace thetaforge {

namespace {

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string label_for(const Wall& w, int max_terms) {
  const Series f = w.function();
  Series shown;
  int n = 0;
  for (const auto& [m, c] : f.terms()) {
    if (n++ == max_terms) break;
    shown.add_term(m, c);
  }
  std::string s = shown.to_string();
  if (static_cast<int>(f.size()) > max_terms) s += " + ...";
  return s;
}

struct Point {
  double x, y;
};

}  // namespace

std::string export_svg(const ScatteringDiagram& d, const std::vector<Chamber>& chambers, const SvgOptions& options) {
  const double half = options.size / 2.0;
  const double reach = half * 0.8;
  auto at = [&](Exponent v, double r) {
    const double len = std::hypot(static_cast<double>(v.m1), static_cast<double>(v.m2));
    return Point{half + r * v.m1 / len, half - r * v.m2 / len};
  };

  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << options.size << "\" height=\"" << options.size
     << "\" viewBox=\"0 0 " << options.size << " " << options.size << "\">\n";
  os << "<title>scattering diagram b=" << d.b() << " c=" << d.c() << " cutoff=" << d.cutoff() << "</title>\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

  for (const auto& ch : chambers) {
    if (!ch.is_cluster) continue;
    if (ch.whole_plane) {
      os << "<circle class=\"cluster\" cx=\"" << fmt(half) << "\" cy=\"" << fmt(half) << "\" r=\"" << fmt(reach)
         << "\" fill=\"#dbe9f6\"/>\n";
      continue;
    }
    const Point a = at(ch.low_ray, reach), b = at(ch.high_ray, reach);
    const bool large = omega(ch.low_ray, ch.high_ray) <= 0;
    os << "<path class=\"cluster\" d=\"M " << fmt(half) << " " << fmt(half) << " L " << fmt(a.x) << " " << fmt(a.y)
       << " A " << fmt(reach) << " " << fmt(reach) << " 0 " << (large ? 1 : 0) << " 0 " << fmt(b.x) << " "
       << fmt(b.y) << " Z\" fill=\"#dbe9f6\"/>\n";
  }

  // Trivial walls keep their axis drawn, labelled "1".
  for (const auto& w : d.walls()) {
    if (!w.trivial()) continue;
    for (Exponent r : w.support()) {
      const Point e = at(r, reach);
      os << "<line class=\"trivial\" x1=\"" << fmt(half) << "\" y1=\"" << fmt(half) << "\" x2=\"" << fmt(e.x)
         << "\" y2=\"" << fmt(e.y) << "\" stroke=\"#bbbbbb\" stroke-dasharray=\"4 3\"/>\n";
    }
    const Point t = at(w.direction, reach + 12);
    os << "<text x=\"" << fmt(t.x) << "\" y=\"" << fmt(t.y) << "\" font-size=\"11\" text-anchor=\"middle\">1</text>\n";
  }

  for (const auto& s : d.rays()) {
    const Point e = at(s.ray, reach);
    os << "<line class=\"wall\" x1=\"" << fmt(half) << "\" y1=\"" << fmt(half) << "\" x2=\"" << fmt(e.x)
       << "\" y2=\"" << fmt(e.y) << "\" stroke=\"black\" stroke-width=\"1.2\"/>\n";
    const Point t = at(s.ray, reach + 12);
    os << "<text x=\"" << fmt(t.x) << "\" y=\"" << fmt(t.y) << "\" font-size=\"11\" text-anchor=\"middle\">"
       << label_for(s.wall, options.label_terms) << "</text>\n";
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace thetaforge
