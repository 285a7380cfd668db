#include "stiefel/document.hpp"

#include <cstdio>
#include <sstream>

#include "json.hpp"
#include "stiefel/error.hpp"

namespace stiefel {

using nlohmann::json;

namespace {

[[noreturn]] void bad_document(const std::string& why) {
  throw Error(ErrorKind::InvalidDocument, "invalid document: " + why);
}

void write_list(std::ostringstream& os, const std::vector<int>& values) {
  os << '[';
  for (std::size_t i = 0; i < values.size(); ++i) os << (i ? ", " : "") << values[i];
  os << ']';
}

void write_list(std::ostringstream& os, const std::vector<double>& values) {
  os << '[';
  for (std::size_t i = 0; i < values.size(); ++i) os << (i ? ", " : "") << format_double(values[i]);
  os << ']';
}

void write_complex_list(std::ostringstream& os, const std::vector<Complex>& values) {
  os << '[';
  for (std::size_t i = 0; i < values.size(); ++i) {
    os << (i ? ", " : "") << '[' << format_double(values[i].real()) << ", "
       << format_double(values[i].imag()) << ']';
  }
  os << ']';
}

void write_vec3_list(std::ostringstream& os, const std::vector<Vec3>& values) {
  os << '[';
  for (std::size_t i = 0; i < values.size(); ++i) {
    os << (i ? ", " : "") << '[' << format_double(values[i][0]) << ", "
       << format_double(values[i][1]) << ", " << format_double(values[i][2]) << ']';
  }
  os << ']';
}

void write_polygon_body(std::ostringstream& os, const PolygonDocument& doc, const char* indent) {
  os << indent << "\"version\": " << kDocumentVersion << ",\n";
  os << indent << "\"kind\": \"" << (doc.kind() == PolygonKind::planar ? "planar" : "spatial")
     << "\",\n";
  os << indent << "\"n\": " << doc.size() << ",\n";
  os << indent << "\"edges\": ";
  if (doc.kind() == PolygonKind::planar) {
    write_complex_list(os, doc.planar().edges());
  } else {
    write_vec3_list(os, doc.spatial().edges());
  }
  if (doc.signs) {
    os << ",\n" << indent << "\"signs\": ";
    write_list(os, *doc.signs);
  }
  if (doc.theta) {
    os << ",\n" << indent << "\"theta\": ";
    write_list(os, *doc.theta);
  }
  if (doc.seed) os << ",\n" << indent << "\"seed\": " << *doc.seed;
  os << '\n';
}

void write_frame_body(std::ostringstream& os, const FrameDocument& doc, const char* indent) {
  const bool planar = std::holds_alternative<StiefelFrame>(doc.frame);
  os << indent << "\"version\": " << kDocumentVersion << ",\n";
  os << indent << "\"kind\": \"" << (planar ? "planar_frame" : "spatial_frame") << "\",\n";
  if (planar) {
    const auto& f = std::get<StiefelFrame>(doc.frame);
    os << indent << "\"n\": " << f.size() << ",\n";
    os << indent << "\"x\": ";
    write_list(os, f.x.values());
    os << ",\n" << indent << "\"y\": ";
    write_list(os, f.y.values());
  } else {
    const auto& f = std::get<HermitianFrame>(doc.frame);
    os << indent << "\"n\": " << f.size() << ",\n";
    os << indent << "\"x\": ";
    write_complex_list(os, f.x.values());
    os << ",\n" << indent << "\"y\": ";
    write_complex_list(os, f.y.values());
  }
  if (doc.signs) {
    os << ",\n" << indent << "\"signs\": ";
    write_list(os, *doc.signs);
  }
  if (doc.theta) {
    os << ",\n" << indent << "\"theta\": ";
    write_list(os, *doc.theta);
  }
  os << '\n';
}

double number(const json& j, const char* what) {
  if (!j.is_number()) bad_document(std::string(what) + " must be a number");
  return j.get<double>();
}

std::size_t declared_size(const json& obj) {
  if (!obj.contains("n") || !obj["n"].is_number_integer() || obj["n"].get<long long>() < 3) {
    bad_document("\"n\" must be an integer >= 3");
  }
  return obj["n"].get<std::size_t>();
}

void check_version(const json& obj) {
  if (!obj.is_object()) bad_document("expected a JSON object");
  if (!obj.contains("version") || !obj["version"].is_number_integer()) {
    bad_document("missing integer \"version\"");
  }
  if (obj["version"].get<int>() != kDocumentVersion) bad_document("unsupported version");
}

std::vector<Complex> complex_list(const json& j, std::size_t n, const char* what) {
  if (!j.is_array() || j.size() != n) {
    bad_document(std::string(what) + " must be an array of n pairs");
  }
  std::vector<Complex> out;
  out.reserve(n);
  for (const auto& e : j) {
    if (!e.is_array() || e.size() != 2) bad_document(std::string(what) + " entries must be pairs");
    out.emplace_back(number(e[0], what), number(e[1], what));
  }
  return out;
}

std::vector<double> real_list(const json& j, std::size_t n, const char* what) {
  if (!j.is_array() || j.size() != n) bad_document(std::string(what) + " must have n numbers");
  std::vector<double> out;
  out.reserve(n);
  for (const auto& e : j) out.push_back(number(e, what));
  return out;
}

std::vector<int> sign_list(const json& j, std::size_t n) {
  if (!j.is_array() || j.size() != n) bad_document("\"signs\" must have n entries");
  std::vector<int> out;
  for (const auto& e : j) {
    if (!e.is_number_integer() || (e.get<int>() != 1 && e.get<int>() != -1)) {
      bad_document("\"signs\" entries must be 1 or -1");
    }
    out.push_back(e.get<int>());
  }
  return out;
}

PolygonDocument polygon_from_json(const json& obj) {
  check_version(obj);
  if (!obj.contains("kind") || !obj["kind"].is_string()) bad_document("missing \"kind\"");
  const std::string kind = obj["kind"].get<std::string>();
  const std::size_t n = declared_size(obj);
  if (!obj.contains("edges")) bad_document("missing \"edges\"");
  const json& edges = obj["edges"];

  PolygonDocument doc;
  if (kind == "planar") {
    PlanarPolygon p(complex_list(edges, n, "\"edges\""));
    p.validate();
    doc.polygon = std::move(p);
  } else if (kind == "spatial") {
    if (!edges.is_array() || edges.size() != n) bad_document("\"edges\" must have n triples");
    std::vector<Vec3> list;
    list.reserve(n);
    for (const auto& e : edges) {
      if (!e.is_array() || e.size() != 3) bad_document("spatial edges must be triples");
      list.push_back({number(e[0], "edge"), number(e[1], "edge"), number(e[2], "edge")});
    }
    SpacePolygon p(std::move(list));
    p.validate();
    doc.polygon = std::move(p);
  } else {
    bad_document("\"kind\" must be \"planar\" or \"spatial\"");
  }
  if (obj.contains("signs")) {
    if (kind != "planar") bad_document("\"signs\" only applies to planar polygons");
    doc.signs = sign_list(obj["signs"], n);
  }
  if (obj.contains("theta")) {
    if (kind != "spatial") bad_document("\"theta\" only applies to spatial polygons");
    doc.theta = real_list(obj["theta"], n, "\"theta\"");
  }
  if (obj.contains("seed")) {
    if (!obj["seed"].is_number_unsigned() && !obj["seed"].is_number_integer()) {
      bad_document("\"seed\" must be an integer");
    }
    doc.seed = obj["seed"].get<std::uint64_t>();
  }
  return doc;
}

FrameDocument frame_from_json(const json& obj) {
  check_version(obj);
  if (!obj.contains("kind") || !obj["kind"].is_string()) bad_document("missing \"kind\"");
  const std::string kind = obj["kind"].get<std::string>();
  const std::size_t n = declared_size(obj);
  if (!obj.contains("x") || !obj.contains("y")) bad_document("missing \"x\" or \"y\"");
  FrameDocument doc;
  if (kind == "planar_frame") {
    StiefelFrame f{RealVector(real_list(obj["x"], n, "\"x\"")),
                   RealVector(real_list(obj["y"], n, "\"y\""))};
    if (!is_orthonormal(f, 1e-10)) {
      throw Error(ErrorKind::FrameInvalid, "frame document is not orthonormal");
    }
    doc.frame = std::move(f);
  } else if (kind == "spatial_frame") {
    HermitianFrame f{ComplexVector(complex_list(obj["x"], n, "\"x\"")),
                     ComplexVector(complex_list(obj["y"], n, "\"y\""))};
    if (!is_orthonormal(f, 1e-10)) {
      throw Error(ErrorKind::FrameInvalid, "frame document is not orthonormal");
    }
    doc.frame = std::move(f);
  } else {
    bad_document("\"kind\" must be \"planar_frame\" or \"spatial_frame\"");
  }
  if (obj.contains("signs")) doc.signs = sign_list(obj["signs"], n);
  if (obj.contains("theta")) doc.theta = real_list(obj["theta"], n, "\"theta\"");
  return doc;
}

json parse_text(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    bad_document(std::string("malformed JSON: ") + e.what());
  }
}

}  // namespace

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

PolygonKind PolygonDocument::kind() const {
  return std::holds_alternative<PlanarPolygon>(polygon) ? PolygonKind::planar
                                                       : PolygonKind::spatial;
}

std::size_t PolygonDocument::size() const {
  return kind() == PolygonKind::planar ? planar().size() : spatial().size();
}

const PlanarPolygon& PolygonDocument::planar() const { return std::get<PlanarPolygon>(polygon); }
const SpacePolygon& PolygonDocument::spatial() const { return std::get<SpacePolygon>(polygon); }

std::string to_json(const PolygonDocument& doc) {
  std::ostringstream os;
  os << "{\n";
  write_polygon_body(os, doc, "  ");
  os << "}\n";
  return os.str();
}

std::string to_json(const FrameDocument& doc) {
  std::ostringstream os;
  os << "{\n";
  write_frame_body(os, doc, "  ");
  os << "}\n";
  return os.str();
}

std::string to_json(const std::vector<PolygonDocument>& docs) {
  std::ostringstream os;
  os << "[\n";
  for (std::size_t i = 0; i < docs.size(); ++i) {
    os << "  {\n";
    write_polygon_body(os, docs[i], "    ");
    os << "  }" << (i + 1 < docs.size() ? "," : "") << '\n';
  }
  os << "]\n";
  return os.str();
}

std::string to_json(const std::vector<FrameDocument>& docs) {
  std::ostringstream os;
  os << "[\n";
  for (std::size_t i = 0; i < docs.size(); ++i) {
    os << "  {\n";
    write_frame_body(os, docs[i], "    ");
    os << "  }" << (i + 1 < docs.size() ? "," : "") << '\n';
  }
  os << "]\n";
  return os.str();
}

std::string to_json(const EnsembleReport& r) {
  std::ostringstream os;
  os << "{\n";
  os << "  \"version\": " << kDocumentVersion << ",\n";
  os << "  \"kind\": \"" << to_string(r.kind) << "\",\n";
  os << "  \"n\": " << r.n << ",\n";
  os << "  \"sample_count\": " << r.sample_count << ",\n";
  os << "  \"seed\": " << r.seed << ",\n";
  os << "  \"obtuse_fraction\": "
     << (r.obtuse_fraction ? format_double(*r.obtuse_fraction) : "null") << ",\n";
  os << "  \"class_fractions\": ";
  if (r.class_fractions) {
    os << "{\"convex\": " << format_double(r.class_fractions->convex)
       << ", \"reflex\": " << format_double(r.class_fractions->reflex)
       << ", \"crossed\": " << format_double(r.class_fractions->crossed) << "}";
  } else {
    os << "null";
  }
  os << ",\n";
  os << "  \"mean_edge_length\": " << format_double(r.mean_edge_length) << ",\n";
  os << "  \"mean_diameter\": " << format_double(r.mean_diameter) << ",\n";
  os << "  \"degenerate_count\": " << r.degenerate_count << "\n";
  os << "}\n";
  return os.str();
}

std::string csv_header() {
  return "kind,n,sample_count,seed,obtuse_fraction,convex_fraction,reflex_fraction,"
         "crossed_fraction,mean_edge_length,mean_diameter,degenerate_count\n";
}

std::string to_csv_row(const EnsembleReport& r) {
  std::ostringstream os;
  os << to_string(r.kind) << ',' << r.n << ',' << r.sample_count << ',' << r.seed << ',';
  os << (r.obtuse_fraction ? format_double(*r.obtuse_fraction) : "") << ',';
  if (r.class_fractions) {
    os << format_double(r.class_fractions->convex) << ','
       << format_double(r.class_fractions->reflex) << ','
       << format_double(r.class_fractions->crossed) << ',';
  } else {
    os << ",,,";
  }
  os << format_double(r.mean_edge_length) << ',' << format_double(r.mean_diameter) << ','
     << r.degenerate_count << '\n';
  return os.str();
}

std::vector<PolygonDocument> parse_polygon_documents(const std::string& text) {
  const json j = parse_text(text);
  std::vector<PolygonDocument> out;
  if (j.is_array()) {
    if (j.empty()) bad_document("empty document list");
    for (const auto& item : j) out.push_back(polygon_from_json(item));
  } else {
    out.push_back(polygon_from_json(j));
  }
  return out;
}

PolygonDocument parse_polygon_document(const std::string& text) {
  auto docs = parse_polygon_documents(text);
  if (docs.size() != 1) bad_document("expected exactly one polygon");
  return std::move(docs.front());
}

std::vector<FrameDocument> parse_frame_documents(const std::string& text) {
  const json j = parse_text(text);
  std::vector<FrameDocument> out;
  if (j.is_array()) {
    for (const auto& item : j) out.push_back(frame_from_json(item));
  } else {
    out.push_back(frame_from_json(j));
  }
  return out;
}

std::vector<int> parse_sign_bits(const std::string& bits) {
  std::vector<int> out;
  out.reserve(bits.size());
  for (const char c : bits) {
    if (c == '0') {
      out.push_back(1);
    } else if (c == '1') {
      out.push_back(-1);
    } else {
      throw Error(ErrorKind::InvalidArgument, "sign bitstring may only contain 0 and 1");
    }
  }
  return out;
}

std::string format_sign_bits(const std::vector<int>& signs) {
  std::string out;
  out.reserve(signs.size());
  for (const int s : signs) out.push_back(s < 0 ? '1' : '0');
  return out;
}

}  // namespace stiefel
