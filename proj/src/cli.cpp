#include "stiefel/cli.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "stiefel/document.hpp"
#include "stiefel/ensemble.hpp"
#include "stiefel/error.hpp"
#include "stiefel/export.hpp"
#include "stiefel/paths.hpp"
#include "stiefel/sampling.hpp"
#include "stiefel/svg.hpp"
#include "stiefel/tiling.hpp"

namespace stiefel {

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::IoFailure, "cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  if (!in && !in.eof()) throw Error(ErrorKind::IoFailure, "cannot read " + path);
  return buf.str();
}

void write_output(const std::string& path, const std::string& text, std::ostream& out) {
  if (path == "-") {
    out << text;
    out.flush();
    if (!out) throw Error(ErrorKind::IoFailure, "cannot write standard output");
    return;
  }
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw Error(ErrorKind::IoFailure, "cannot open " + path + " for writing");
  file << text;
  file.close();
  if (!file) throw Error(ErrorKind::IoFailure, "cannot write " + path);
}

bool ends_with(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() &&
         s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

std::vector<double> read_angles(const std::string& path) {
  const std::string text = read_file(path);
  try {
    const auto j = nlohmann::json::parse(text);
    if (!j.is_array()) throw Error(ErrorKind::InvalidDocument, "theta file must hold an array");
    std::vector<double> out;
    for (const auto& v : j) {
      if (!v.is_number()) throw Error(ErrorKind::InvalidDocument, "theta entries must be numbers");
      out.push_back(v.get<double>());
    }
    return out;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::InvalidDocument, std::string("malformed theta file: ") + e.what());
  }
}

std::vector<int> planar_signs(const PolygonDocument& doc, const std::string& bits) {
  std::vector<int> signs;
  if (!bits.empty()) {
    signs = parse_sign_bits(bits);
  } else if (doc.signs) {
    signs = *doc.signs;
  } else {
    signs.assign(doc.size(), 1);
  }
  if (signs.size() != doc.size()) {
    throw Error(ErrorKind::InvalidArgument, "sign bitstring length must equal n");
  }
  return signs;
}

std::vector<double> spatial_angles(const PolygonDocument& doc) {
  return doc.theta ? *doc.theta : std::vector<double>(doc.size(), 0.0);
}

std::string svg_of(const std::vector<SvgItem>& items) {
  std::ostringstream os;
  emit_svg(items, os);
  return os.str();
}

std::string frame_name(std::size_t k, const char* ext) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "frame_%04zu.%s", k, ext);
  return buf;
}

struct SampleArgs {
  std::size_t n = 0;
  int dim = 2;
  bool convex = false;
  std::uint64_t seed = 0;
  std::size_t count = 1;
  std::string out = "-";
};

void run_sample(const SampleArgs& a, std::ostream& out) {
  if (a.convex && a.dim == 3) throw UsageError("--convex applies to --dim 2 only");
  std::vector<PolygonDocument> docs;
  docs.reserve(a.count);
  for (std::size_t i = 0; i < a.count; ++i) {
    SeededRng rng = SeededRng::for_sample(a.seed, i);
    PolygonDocument doc;
    if (a.dim == 2) {
      const StiefelFrame f = a.convex ? sample_convex_frame(a.n, rng) : sample_stiefel(a.n, rng);
      doc.polygon = frame_to_polygon(f);
      doc.signs = lift_signs(f);
    } else {
      doc.polygon = sample_space_polygon(a.n, rng);
    }
    doc.seed = a.seed;
    docs.push_back(std::move(doc));
  }
  write_output(a.out, a.count == 1 ? to_json(docs.front()) : to_json(docs), out);
}

struct StatsArgs {
  std::string kind;
  std::size_t n = 0;
  std::size_t samples = 0;
  std::uint64_t seed = 0;
  bool csv = false;
  bool json = false;
  std::size_t threads = 0;
};

void run_stats(const StatsArgs& a, std::ostream& out) {
  const auto kind = parse_ensemble_kind(a.kind);
  if (!kind) throw UsageError("--kind must be triangle, quad or ngon");
  if (*kind == EnsembleKind::ngon && a.n == 0) throw UsageError("--kind ngon needs --n");
  if (*kind == EnsembleKind::triangle && a.n != 0 && a.n != 3) {
    throw UsageError("--kind triangle implies --n 3");
  }
  if (*kind == EnsembleKind::quad && a.n != 0 && a.n != 4) {
    throw UsageError("--kind quad implies --n 4");
  }
  EnsembleSpec spec;
  spec.kind = *kind;
  spec.n = a.n;
  spec.samples = a.samples;
  spec.seed = a.seed;
  spec.shards = a.threads;
  const EnsembleReport report = ensemble_report(spec);
  write_output("-", a.csv ? csv_header() + to_csv_row(report) : to_json(report), out);
}

struct MorphArgs {
  std::string from;
  std::string to;
  std::string method = "stiefel";
  std::size_t frames = 30;
  long long relabel = 0;
  std::string signs;
  std::string out_dir;
};

template <typename Scalar, typename Write>
void write_morph(const MorphPath<Scalar>& path, std::size_t frames, Write&& write) {
  for (std::size_t k = 0; k < frames; ++k) {
    const double t = frames == 1 ? 0.0 : static_cast<double>(k) / static_cast<double>(frames - 1);
    write(k, path.eval(t));
  }
}

template <typename Scalar>
MorphPath<Scalar> make_path(const std::string& method, const Frame2<Scalar>& f0,
                            const Frame2<Scalar>& f1) {
  if (method == "geodesic") return grassmann_geodesic(f0, f1);
  return stiefel_path(f0, f1);
}

void run_morph(const MorphArgs& a, std::ostream& out) {
  if (a.method != "stiefel" && a.method != "geodesic") {
    throw UsageError("--method must be stiefel or geodesic");
  }
  if (a.frames < 2) throw UsageError("--frames must be at least 2");
  const PolygonDocument from = parse_polygon_document(read_file(a.from));
  const PolygonDocument to = parse_polygon_document(read_file(a.to));
  if (from.kind() != to.kind()) {
    throw Error(ErrorKind::InvalidArgument, "morph endpoints must both be planar or both spatial");
  }
  if (from.size() != to.size()) {
    throw Error(ErrorKind::InvalidArgument, "morph endpoints must have the same n");
  }
  std::error_code ec;
  std::filesystem::create_directories(a.out_dir, ec);
  if (ec) throw Error(ErrorKind::IoFailure, "cannot create " + a.out_dir + ": " + ec.message());
  const std::filesystem::path dir(a.out_dir);

  if (from.kind() == PolygonKind::planar) {
    const StiefelFrame f0 = polygon_to_frame(from.planar(), planar_signs(from, ""));
    const StiefelFrame f1 = cyclic_relabel(
        polygon_to_frame(to.planar(), planar_signs(to, a.signs)), a.relabel);
    const auto path = make_path(a.method, f0, f1);
    write_morph(path, a.frames, [&](std::size_t k, const StiefelFrame& f) {
      const SvgItem item{frame_to_polygon(f), {}, 1.0, std::nullopt, std::nullopt};
      write_output((dir / frame_name(k, "svg")).string(), svg_of({item}), out);
    });
  } else {
    if (!a.signs.empty()) throw UsageError("--signs applies to planar polygons only");
    const HermitianFrame f0 = space_polygon_to_frame(from.spatial(), spatial_angles(from));
    HermitianFrame f1 = space_polygon_to_frame(to.spatial(), spatial_angles(to));
    if (a.relabel != 0) {
      const std::size_t n = f1.size();
      const std::size_t k = static_cast<std::size_t>(((a.relabel % static_cast<long long>(n)) +
                                                      static_cast<long long>(n)) %
                                                     static_cast<long long>(n));
      HermitianFrame r{ComplexVector(n), ComplexVector(n)};
      for (std::size_t i = 0; i < n; ++i) {
        r.x[i] = f1.x[(i + k) % n];
        r.y[i] = f1.y[(i + k) % n];
      }
      f1 = std::move(r);
    }
    const auto path = make_path(a.method, f0, f1);
    write_morph(path, a.frames, [&](std::size_t k, const HermitianFrame& f) {
      std::ostringstream os;
      export_space_polygon(frame_to_space_polygon(f), ExportFormat::obj_polyline, os);
      write_output((dir / frame_name(k, "obj")).string(), os.str(), out);
    });
  }
}

struct TileArgs {
  std::string quad;
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::string out;
};

void run_tile(const TileArgs& a, std::ostream& out) {
  const PolygonDocument doc = parse_polygon_document(read_file(a.quad));
  if (doc.kind() != PolygonKind::planar || doc.size() != 4) {
    throw Error(ErrorKind::InvalidArgument, "tile needs a planar quadrilateral");
  }
  std::ostringstream os;
  emit_tiling({a.rows, a.cols, doc.planar()}, os);
  write_output(a.out, os.str(), out);
}

struct LiftArgs {
  std::string in;
  std::string signs;
  bool enumerate = false;
  std::string theta;
  std::string out;
};

void run_lift(const LiftArgs& a, std::ostream& out) {
  const PolygonDocument doc = parse_polygon_document(read_file(a.in));
  if (doc.kind() == PolygonKind::planar) {
    if (!a.theta.empty()) throw UsageError("--theta applies to spatial polygons only");
    if (a.enumerate) {
      std::vector<FrameDocument> docs;
      for (auto& f : lift_variants(doc.planar())) {
        std::vector<int> signs = lift_signs(f);
        docs.push_back({std::move(f), std::move(signs), std::nullopt});
      }
      write_output(a.out, to_json(docs), out);
      return;
    }
    const std::vector<int> signs = planar_signs(doc, a.signs);
    const FrameDocument frame{polygon_to_frame(doc.planar(), signs), signs, std::nullopt};
    write_output(a.out, to_json(frame), out);
    return;
  }
  if (!a.signs.empty() || a.enumerate) {
    throw UsageError("--signs and --enumerate apply to planar polygons only");
  }
  const std::vector<double> angles = a.theta.empty() ? spatial_angles(doc) : read_angles(a.theta);
  if (angles.size() != doc.size()) {
    throw Error(ErrorKind::InvalidArgument, "theta must have n entries");
  }
  write_output(a.out,
               to_json(FrameDocument{space_polygon_to_frame(doc.spatial(), angles), std::nullopt,
                                     angles}),
               out);
}

struct RenderArgs {
  std::string in;
  std::string out;
  std::size_t columns = 0;
};

void run_render(const RenderArgs& a, std::ostream& out) {
  const auto docs = parse_polygon_documents(read_file(a.in));
  if (docs.front().kind() == PolygonKind::spatial) {
    if (docs.size() != 1) {
      throw Error(ErrorKind::InvalidArgument, "render exports one spatial polygon");
    }
    ExportFormat format;
    if (ends_with(a.out, ".obj")) {
      format = ExportFormat::obj_polyline;
    } else if (ends_with(a.out, ".csv")) {
      format = ExportFormat::csv_vertices;
    } else {
      throw UsageError("spatial polygons render to .obj or .csv");
    }
    std::ostringstream os;
    export_space_polygon(docs.front().spatial(), format, os);
    write_output(a.out, os.str(), out);
    return;
  }
  std::vector<PlanarPolygon> polygons;
  for (const auto& d : docs) {
    if (d.kind() != PolygonKind::planar) {
      throw Error(ErrorKind::InvalidArgument, "render cannot mix planar and spatial polygons");
    }
    polygons.push_back(d.planar());
  }
  std::size_t columns = a.columns;
  if (columns == 0) {
    columns = 1;
    while (columns * columns < polygons.size()) ++columns;
  }
  write_output(a.out, svg_of(grid_layout(polygons, columns)), out);
}

void report_error(std::ostream& err, std::string_view kind, const std::string& message) {
  err << nlohmann::json{{"error", kind}, {"message", message}}.dump() << '\n';
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Random and morphing polygons from orthonormal frames", "stiefel-poly"};
  app.require_subcommand(1);

  SampleArgs sample;
  auto* sample_cmd = app.add_subcommand("sample", "Draw random closed polygons");
  sample_cmd->add_option("--n", sample.n, "Number of edges")
      ->required()
      ->check(CLI::Range(3, 1 << 26));
  sample_cmd->add_option("--dim", sample.dim, "2 for planar, 3 for spatial")
      ->check(CLI::IsMember({2, 3}));
  sample_cmd->add_flag("--convex", sample.convex, "Convexify planar samples");
  sample_cmd->add_option("--seed", sample.seed, "Random seed");
  sample_cmd->add_option("--count", sample.count, "Number of polygons")
      ->check(CLI::Range(1, 1 << 24));
  sample_cmd->add_option("--out", sample.out, "Output JSON file, - for standard output");

  StatsArgs stats;
  auto* stats_cmd = app.add_subcommand("stats", "Ensemble statistics");
  stats_cmd->add_option("--kind", stats.kind, "triangle, quad or ngon")->required();
  stats_cmd->add_option("--n", stats.n, "Number of edges (ngon)")->check(CLI::Range(3, 1 << 24));
  stats_cmd->add_option("--samples", stats.samples, "Number of samples")
      ->required()
      ->check(CLI::PositiveNumber);
  stats_cmd->add_option("--seed", stats.seed, "Random seed");
  auto* csv = stats_cmd->add_flag("--csv", stats.csv, "CSV output");
  auto* json = stats_cmd->add_flag("--json", stats.json, "JSON output (default)");
  csv->excludes(json);
  stats_cmd->add_option("--threads", stats.threads, "Worker threads, 0 for one per core");

  MorphArgs morph;
  auto* morph_cmd = app.add_subcommand("morph", "Interpolate between two polygons");
  morph_cmd->add_option("--from", morph.from, "Start polygon JSON")->required();
  morph_cmd->add_option("--to", morph.to, "End polygon JSON")->required();
  morph_cmd->add_option("--method", morph.method, "stiefel or geodesic");
  morph_cmd->add_option("--frames", morph.frames, "Number of frames");
  morph_cmd->add_option("--relabel", morph.relabel, "Cyclic shift of the end polygon's edges");
  morph_cmd->add_option("--signs", morph.signs, "Lift signs of the end polygon as 0/1 bits");
  morph_cmd->add_option("--out-dir", morph.out_dir, "Output directory")->required();

  TileArgs tile;
  auto* tile_cmd = app.add_subcommand("tile", "Tile the plane with a quadrilateral");
  tile_cmd->add_option("--quad", tile.quad, "Quadrilateral JSON")->required();
  tile_cmd->add_option("--rows", tile.rows, "Lattice rows")
      ->required()
      ->check(CLI::PositiveNumber);
  tile_cmd->add_option("--cols", tile.cols, "Lattice columns")
      ->required()
      ->check(CLI::PositiveNumber);
  tile_cmd->add_option("--out", tile.out, "Output SVG file")->required();

  LiftArgs lift;
  auto* lift_cmd = app.add_subcommand("lift", "Lift a polygon to a frame");
  lift_cmd->add_option("--in", lift.in, "Polygon JSON")->required();
  auto* signs = lift_cmd->add_option("--signs", lift.signs, "Planar lift signs as 0/1 bits");
  auto* enumerate = lift_cmd->add_flag("--enumerate", lift.enumerate, "All 2^n planar lifts");
  signs->excludes(enumerate);
  lift_cmd->add_option("--theta", lift.theta, "JSON array of spatial framing angles");
  lift_cmd->add_option("--out", lift.out, "Output JSON file")->required();

  RenderArgs render;
  auto* render_cmd = app.add_subcommand("render", "Draw polygons as SVG (or OBJ/CSV for spatial)");
  render_cmd->add_option("--in", render.in, "Polygon JSON")->required();
  render_cmd->add_option("--out", render.out, "Output file")->required();
  render_cmd->add_option("--columns", render.columns, "Grid columns, 0 for square layout");

  std::vector<std::string> argv_store;
  argv_store.reserve(args.size() + 1);
  argv_store.push_back("stiefel-poly");
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& a : argv_store) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (sample_cmd->parsed()) run_sample(sample, out);
    if (stats_cmd->parsed()) run_stats(stats, out);
    if (morph_cmd->parsed()) run_morph(morph, out);
    if (tile_cmd->parsed()) run_tile(tile, out);
    if (lift_cmd->parsed()) run_lift(lift, out);
    if (render_cmd->parsed()) run_render(render, out);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    report_error(err, to_string(e.kind()), e.what());
    return e.kind() == ErrorKind::IoFailure ? kExitIo : kExitValidation;
  }
  return kExitOk;
}

}  // namespace stiefel
