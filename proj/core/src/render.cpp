#include <cmath>
#include <cstdio>
#include <string>

#include "dcpack/io.hpp"

namespace dcpack {

namespace {

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  std::string s = buf;
  // Trim trailing zeros for compact, still deterministic output.
  while (s.size() > 1 && s.back() == '0') s.pop_back();
  if (!s.empty() && s.back() == '.') s.pop_back();
  if (s == "-0") s = "0";
  return s;
}

// Golden-angle hue walk: neighbouring ids get well separated colours.
std::string fill_for(std::size_t index) {
  const double hue = std::fmod(index * 137.508, 360.0);
  const int light = index % 2 == 0 ? 62 : 48;
  return "hsl(" + num(hue) + ",65%," + std::to_string(light) + "%)";
}

}  // namespace

std::string render_svg(const ResultFile& result) {
  const bool strip = is_strip(result.container);
  double size = result.upper;
  if (result.placement) size = result.placement->container_size;
  double width = strip ? std::get<StripContainer>(result.container).width : 0.0;

  // Drawing box in model coordinates.
  double x0 = 0.0;
  double y0 = 0.0;
  double w = 0.0;
  double h = 0.0;
  if (strip) {
    w = size;
    h = width;
  } else {
    x0 = -size;
    y0 = -size;
    w = 2.0 * size;
    h = 2.0 * size;
  }
  const double margin = 0.02 * std::max(w, h) + 1e-9;
  const double stroke = 0.004 * std::max(w, h) + 1e-9;
  const double pixels = 600.0;
  const double scale = pixels / std::max(w, h);

  std::string svg;
  svg += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" +
         num((w + 2 * margin) * scale) + "\" height=\"" +
         num((h + 2 * margin) * scale) + "\" viewBox=\"" + num(x0 - margin) +
         " " + num(-(y0 + h) - margin) + " " + num(w + 2 * margin) + " " +
         num(h + 2 * margin) + "\">\n";
  svg += "<title>" + result.instance_name + " size " + num(size) +
         "</title>\n";
  // Model y points up; SVG y points down, so every y is negated.
  if (strip) {
    svg += "<rect x=\"0\" y=\"" + num(-width) + "\" width=\"" + num(size) +
           "\" height=\"" + num(width) +
           "\" fill=\"none\" stroke=\"black\" stroke-width=\"" + num(stroke) +
           "\"/>\n";
  } else {
    svg += "<circle cx=\"0\" cy=\"0\" r=\"" + num(size) +
           "\" fill=\"none\" stroke=\"black\" stroke-width=\"" + num(stroke) +
           "\"/>\n";
  }
  if (result.placement) {
    const auto& centers = result.placement->centers;
    for (std::size_t k = 0; k < centers.size(); ++k) {
      const double r = k < result.radii.size() ? result.radii[k] : 0.0;
      svg += "<circle id=\"c" + std::to_string(k + 1) + "\" cx=\"" +
             num(centers[k].x) + "\" cy=\"" + num(-centers[k].y) + "\" r=\"" +
             num(r) + "\" fill=\"" + fill_for(k) +
             "\" fill-opacity=\"0.85\" stroke=\"black\" stroke-width=\"" +
             num(stroke / 2) + "\"/>\n";
    }
  }
  svg += "</svg>\n";
  return svg;
}

}  // namespace dcpack
