#include "stiefel/ensemble.hpp"

#include <algorithm>
#include <cmath>
#include <thread>
#include <vector>

#include "stiefel/error.hpp"
#include "stiefel/sampling.hpp"

namespace stiefel {

namespace {

constexpr std::size_t kPairwiseLimit = 1000;

struct SampleRecord {
  int cls = -1;  // -1: degenerate
  double edge = 0.0;
  double diam = 0.0;
};

SampleRecord measure(EnsembleKind kind, std::size_t n, std::uint64_t seed, std::uint64_t index) {
  SeededRng rng = SeededRng::for_sample(seed, index);
  const PlanarPolygon p = sample_polygon(n, rng);
  SampleRecord rec;
  double total = 0.0;
  for (const auto& e : p.edges()) total += std::abs(e);
  rec.edge = total / static_cast<double>(n);
  rec.diam = diameter(p);
  try {
    switch (kind) {
      case EnsembleKind::triangle: rec.cls = static_cast<int>(classify_triangle(p)); break;
      case EnsembleKind::quad: rec.cls = static_cast<int>(classify_quadrilateral(p)); break;
      case EnsembleKind::ngon: rec.cls = 0; break;
    }
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::Degenerate && e.kind() != ErrorKind::ZeroEdge) throw;
    rec.cls = -1;
  }
  return rec;
}

double cross3(Point2 o, Point2 a, Point2 b) { return cross(a - o, b - o); }

}  // namespace

const char* to_string(EnsembleKind kind) {
  switch (kind) {
    case EnsembleKind::triangle: return "triangle";
    case EnsembleKind::quad: return "quad";
    case EnsembleKind::ngon: return "ngon";
  }
  return "?";
}

std::optional<EnsembleKind> parse_ensemble_kind(const std::string& s) {
  if (s == "triangle") return EnsembleKind::triangle;
  if (s == "quad") return EnsembleKind::quad;
  if (s == "ngon") return EnsembleKind::ngon;
  return std::nullopt;
}

std::vector<Point2> convex_hull(std::span<const Point2> points) {
  std::vector<Point2> pts(points.begin(), points.end());
  std::sort(pts.begin(), pts.end(), [](const Point2& a, const Point2& b) {
    return a.real() < b.real() || (a.real() == b.real() && a.imag() < b.imag());
  });
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() < 3) return pts;
  std::vector<Point2> hull(2 * pts.size());
  std::size_t k = 0;
  for (const auto& p : pts) {
    while (k >= 2 && cross3(hull[k - 2], hull[k - 1], p) <= 0.0) --k;
    hull[k++] = p;
  }
  const std::size_t lower = k + 1;
  for (std::size_t i = pts.size() - 1; i-- > 0;) {
    while (k >= lower && cross3(hull[k - 2], hull[k - 1], pts[i]) <= 0.0) --k;
    hull[k++] = pts[i];
  }
  hull.resize(k - 1);
  return hull;
}

double diameter_pairwise(std::span<const Point2> points) {
  double best = 0.0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    for (std::size_t j = i + 1; j < points.size(); ++j) {
      best = std::max(best, std::norm(points[i] - points[j]));
    }
  }
  return std::sqrt(best);
}

double diameter_calipers(std::span<const Point2> points) {
  const std::vector<Point2> h = convex_hull(points);
  const std::size_t m = h.size();
  if (m < 2) return 0.0;
  if (m == 2) return std::abs(h[0] - h[1]);
  double best = 0.0;
  std::size_t j = 1;
  for (std::size_t i = 0; i < m; ++i) {
    const std::size_t ni = (i + 1) % m;
    while (std::abs(cross3(h[i], h[ni], h[(j + 1) % m])) >
           std::abs(cross3(h[i], h[ni], h[j]))) {
      j = (j + 1) % m;
    }
    best = std::max({best, std::norm(h[i] - h[j]), std::norm(h[ni] - h[j])});
  }
  return std::sqrt(best);
}

double diameter(const PlanarPolygon& p) {
  auto v = vertices(p);
  v.pop_back();
  if (v.size() <= kPairwiseLimit) return diameter_pairwise(v);
  return diameter_calipers(v);
}

EnsembleReport ensemble_report(const EnsembleSpec& spec) {
  if (spec.samples < 1) {
    throw Error(ErrorKind::InvalidArgument, "ensemble_report: need at least one sample");
  }
  std::size_t n = spec.n;
  if (spec.kind == EnsembleKind::triangle) n = 3;
  if (spec.kind == EnsembleKind::quad) n = 4;
  if (n < 3) throw Error(ErrorKind::InvalidArgument, "ensemble_report: need n >= 3");

  std::size_t shards = spec.shards;
  if (shards == 0) shards = std::max(1u, std::thread::hardware_concurrency());
  shards = std::min(shards, spec.samples);

  std::vector<SampleRecord> records(spec.samples);
  auto run_range = [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) records[i] = measure(spec.kind, n, spec.seed, i);
  };
  if (shards == 1) {
    run_range(0, spec.samples);
  } else {
    std::vector<std::thread> workers;
    std::vector<std::exception_ptr> failures(shards);
    const std::size_t chunk = (spec.samples + shards - 1) / shards;
    for (std::size_t s = 0; s < shards; ++s) {
      const std::size_t begin = std::min(spec.samples, s * chunk);
      const std::size_t end = std::min(spec.samples, begin + chunk);
      workers.emplace_back([&, s, begin, end] {
        try {
          run_range(begin, end);
        } catch (...) {
          failures[s] = std::current_exception();
        }
      });
    }
    for (auto& w : workers) w.join();
    for (const auto& f : failures) {
      if (f) std::rethrow_exception(f);
    }
  }

  EnsembleReport report;
  report.kind = spec.kind;
  report.n = n;
  report.sample_count = spec.samples;
  report.seed = spec.seed;

  std::vector<double> edges(records.size());
  std::vector<double> diams(records.size());
  std::size_t counts[3] = {0, 0, 0};
  for (std::size_t i = 0; i < records.size(); ++i) {
    edges[i] = records[i].edge;
    diams[i] = records[i].diam;
    if (records[i].cls < 0) {
      ++report.degenerate_count;
    } else {
      ++counts[records[i].cls];
    }
  }
  const double count = static_cast<double>(records.size());
  report.mean_edge_length = compensated_sum(std::span<const double>(edges)) / count;
  report.mean_diameter = compensated_sum(std::span<const double>(diams)) / count;

  const std::size_t classified = records.size() - report.degenerate_count;
  const double denom = classified > 0 ? static_cast<double>(classified) : 1.0;
  if (spec.kind == EnsembleKind::triangle) {
    report.obtuse_fraction =
        static_cast<double>(counts[static_cast<int>(TriangleClass::obtuse)]) / denom;
  } else if (spec.kind == EnsembleKind::quad) {
    ClassFractions f;
    f.convex = static_cast<double>(counts[static_cast<int>(QuadClass::convex)]) / denom;
    f.reflex = static_cast<double>(counts[static_cast<int>(QuadClass::reflex)]) / denom;
    f.crossed = static_cast<double>(counts[static_cast<int>(QuadClass::crossed)]) / denom;
    report.class_fractions = f;
  }
  return report;
}

}  // namespace stiefel
