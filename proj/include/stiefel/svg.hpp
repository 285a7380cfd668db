#pragma once

#include <array>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "stiefel/planar.hpp"

namespace stiefel {

/// Stroke colors cycled by item index when an item names none.
inline constexpr std::array<const char*, 6> kDefaultPalette = {
    "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};

/// A closed loop of points in drawing coordinates (last point not repeated).
/// A fill, when given, is drawn at 35% opacity.
struct SvgPath {
  std::vector<Point2> loop;
  std::optional<std::string> stroke;
  std::optional<std::string> fill;
};

/// A polygon drawn from vertex `offset`, scaled about that vertex.
struct SvgItem {
  PlanarPolygon polygon;
  Point2 offset{};
  double scale = 1.0;
  std::optional<std::string> stroke;
  std::optional<std::string> fill;
};

/// Places polygons on a grid with `columns` cells per row, each centered on
/// its vertex centroid. Cells are `spacing` apart.
std::vector<SvgItem> grid_layout(std::span<const PlanarPolygon> polygons, std::size_t columns,
                                 double spacing = 1.2);

/// SVG 1.1 with one <path> per entry. The viewBox fits all points with a 5%
/// margin and the y axis points up. Throws IoFailure if the stream fails.
void emit_svg(std::span<const SvgItem> items, std::ostream& out);
void emit_svg_paths(std::span<const SvgPath> paths, std::ostream& out);

}  // namespace stiefel
