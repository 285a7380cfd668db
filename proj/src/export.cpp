#include "stiefel/export.hpp"

#include "stiefel/document.hpp"
#include "stiefel/error.hpp"

namespace stiefel {

void export_space_polygon(const SpacePolygon& p, ExportFormat format, std::ostream& out) {
  auto v = vertices(p);
  v.pop_back();
  if (format == ExportFormat::csv_vertices) {
    out << "x,y,z\n";
    for (const auto& u : v) {
      out << format_double(u[0]) << ',' << format_double(u[1]) << ',' << format_double(u[2])
          << '\n';
    }
  } else {
    for (const auto& u : v) {
      out << "v " << format_double(u[0]) << ' ' << format_double(u[1]) << ' '
          << format_double(u[2]) << '\n';
    }
    out << 'l';
    for (std::size_t k = 1; k <= v.size(); ++k) out << ' ' << k;
    if (!v.empty()) out << " 1";
    out << '\n';
  }
  out.flush();
  if (!out) throw Error(ErrorKind::IoFailure, "export_space_polygon: write failed");
}

}  // namespace stiefel
