#include "stiefel/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "stiefel/error.hpp"

namespace stiefel {

namespace {

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", v == 0.0 ? 0.0 : v);
  return buf;
}

}  // namespace

std::vector<SvgItem> grid_layout(std::span<const PlanarPolygon> polygons, std::size_t columns,
                                 double spacing) {
  if (columns == 0) throw Error(ErrorKind::InvalidArgument, "grid_layout: zero columns");
  std::vector<SvgItem> items;
  items.reserve(polygons.size());
  for (std::size_t k = 0; k < polygons.size(); ++k) {
    const auto& p = polygons[k];
    auto v = vertices(p);
    v.pop_back();
    Complex centroid{};
    for (const auto& z : v) centroid += z;
    if (!v.empty()) centroid /= static_cast<double>(v.size());
    const Point2 cell{spacing * static_cast<double>(k % columns),
                      -spacing * static_cast<double>(k / columns)};
    items.push_back({p, cell - centroid, 1.0, std::nullopt, std::nullopt});
  }
  return items;
}

void emit_svg(std::span<const SvgItem> items, std::ostream& out) {
  std::vector<SvgPath> paths;
  paths.reserve(items.size());
  for (const auto& item : items) {
    auto v = vertices(item.polygon);
    v.pop_back();
    for (auto& z : v) z = item.offset + item.scale * z;
    paths.push_back({std::move(v), item.stroke, item.fill});
  }
  emit_svg_paths(paths, out);
}

void emit_svg_paths(std::span<const SvgPath> paths, std::ostream& out) {
  double lo_x = std::numeric_limits<double>::infinity();
  double lo_y = lo_x;
  double hi_x = -lo_x;
  double hi_y = -lo_x;
  for (const auto& path : paths) {
    for (const auto& z : path.loop) {
      lo_x = std::min(lo_x, z.real());
      hi_x = std::max(hi_x, z.real());
      lo_y = std::min(lo_y, -z.imag());
      hi_y = std::max(hi_y, -z.imag());
    }
  }
  if (!(lo_x <= hi_x)) {
    lo_x = lo_y = 0.0;
    hi_x = hi_y = 1.0;
  }
  double w = hi_x - lo_x;
  double h = hi_y - lo_y;
  const double extent = std::max({w, h, 1e-9});
  const double margin = 0.05 * extent;
  lo_x -= margin;
  lo_y -= margin;
  w += 2.0 * margin;
  h += 2.0 * margin;
  w = std::max(w, 1e-9);
  h = std::max(h, 1e-9);
  const double stroke_width = 0.004 * std::max(w, h);
  const double pixels = 800.0;
  const double width_px = w >= h ? pixels : pixels * w / h;
  const double height_px = w >= h ? pixels * h / w : pixels;

  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << num(width_px)
      << "\" height=\"" << num(height_px) << "\" viewBox=\"" << num(lo_x) << ' ' << num(lo_y)
      << ' ' << num(w) << ' ' << num(h) << "\">\n";
  out << "<g stroke-width=\"" << num(stroke_width) << "\" stroke-linejoin=\"round\">\n";
  for (std::size_t k = 0; k < paths.size(); ++k) {
    const auto& path = paths[k];
    out << "<path d=\"";
    for (std::size_t i = 0; i < path.loop.size(); ++i) {
      out << (i == 0 ? "M " : " L ") << num(path.loop[i].real()) << ' '
          << num(-path.loop[i].imag());
    }
    out << " Z\" fill=\"" << path.fill.value_or("none") << "\"";
    if (path.fill) out << " fill-opacity=\"0.35\"";
    out << " stroke=\""
        << path.stroke.value_or(kDefaultPalette[k % kDefaultPalette.size()]) << "\"/>\n";
  }
  out << "</g>\n</svg>\n";
  out.flush();
  if (!out) throw Error(ErrorKind::IoFailure, "emit_svg: write failed");
}

}  // namespace stiefel
