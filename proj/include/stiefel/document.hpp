#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "stiefel/ensemble.hpp"
#include "stiefel/linalg.hpp"
#include "stiefel/planar.hpp"
#include "stiefel/spatial.hpp"

namespace stiefel {

inline constexpr int kDocumentVersion = 1;

enum class PolygonKind { planar, spatial };

/// Versioned JSON form of a polygon:
///
///   {"version": 1, "kind": "planar" | "spatial", "n": N,
///    "edges": [[re, im], ...] | [[x, y, z], ...],
///    "signs": [+-1, ...],   optional, planar lift choice
///    "theta": [rad, ...],   optional, spatial framing choice
///    "seed": S}             optional provenance
///
/// Parsing rejects documents whose edges fail closure or perimeter checks.
struct PolygonDocument {
  std::variant<PlanarPolygon, SpacePolygon> polygon;
  std::optional<std::vector<int>> signs;
  std::optional<std::vector<double>> theta;
  std::optional<std::uint64_t> seed;

  PolygonKind kind() const;
  std::size_t size() const;
  const PlanarPolygon& planar() const;
  const SpacePolygon& spatial() const;

  friend bool operator==(const PolygonDocument&, const PolygonDocument&) = default;
};

/// Frame form written by `lift`:
///
///   {"version": 1, "kind": "planar_frame", "n": N, "x": [...], "y": [...]}
///   {"version": 1, "kind": "spatial_frame", "n": N, "x": [[re, im], ...], "y": ...}
struct FrameDocument {
  std::variant<StiefelFrame, HermitianFrame> frame;
  std::optional<std::vector<int>> signs;
  std::optional<std::vector<double>> theta;

  friend bool operator==(const FrameDocument&, const FrameDocument&) = default;
};

/// Doubles are written with 17 significant digits; output is deterministic.
std::string to_json(const PolygonDocument& doc);
std::string to_json(const FrameDocument& doc);
std::string to_json(const std::vector<PolygonDocument>& docs);
std::string to_json(const std::vector<FrameDocument>& docs);
std::string to_json(const EnsembleReport& report);

/// Header line and one data row.
std::string csv_header();
std::string to_csv_row(const EnsembleReport& report);

/// Accepts one document object or an array of them. Throws InvalidDocument
/// for schema violations and NotClosed / NotNormalized for bad geometry.
std::vector<PolygonDocument> parse_polygon_documents(const std::string& text);
PolygonDocument parse_polygon_document(const std::string& text);
std::vector<FrameDocument> parse_frame_documents(const std::string& text);

/// Planar signs as a bitstring: '0' is +1, '1' is -1.
std::vector<int> parse_sign_bits(const std::string& bits);
std::string format_sign_bits(const std::vector<int>& signs);

std::string format_double(double v);

}  // namespace stiefel
