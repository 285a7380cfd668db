#pragma once

#include <ostream>

#include "stiefel/spatial.hpp"

namespace stiefel {

enum class ExportFormat { csv_vertices, obj_polyline };

/// Writes the n vertices of p, starting at the origin. CSV has an "x,y,z"
/// header and one row per vertex; OBJ has one `v` line per vertex and a
/// closed `l` polyline. Throws IoFailure if the stream fails.
void export_space_polygon(const SpacePolygon& p, ExportFormat format, std::ostream& out);

}  // namespace stiefel
