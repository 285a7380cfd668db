#include <cmath>
#include <cstdlib>
#include <limits>

#include "doctest.h"
#include "stiefel/document.hpp"
#include "stiefel/error.hpp"
#include "stiefel/sampling.hpp"

#include "json.hpp"

using namespace stiefel;
using Json = nlohmann::json;

namespace {

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an error");
  return ErrorKind::InvalidArgument;
}

PolygonDocument planar_doc(std::size_t n, std::uint64_t seed) {
  SeededRng rng(seed);
  const auto f = sample_stiefel(n, rng);
  PolygonDocument d;
  d.polygon = frame_to_polygon(f);
  d.signs = lift_signs(f);
  d.seed = seed;
  return d;
}

PolygonDocument spatial_doc(std::size_t n, std::uint64_t seed) {
  SeededRng rng(seed);
  PolygonDocument d;
  d.polygon = sample_space_polygon(n, rng);
  d.theta = twisted_framing(n, 2);
  return d;
}

}  // namespace

TEST_CASE("format_double is lossless") {
  SeededRng rng(71);
  for (int k = 0; k < 10000; ++k) {
    const double v = rng.normal() * std::pow(10.0, rng.normal() * 20.0);
    CHECK(std::stod(format_double(v)) == v);
  }
  CHECK(format_double(0.5) == "0.5");
  CHECK(format_double(-2.0) == "-2");
  CHECK(std::strtod(format_double(std::numeric_limits<double>::denorm_min()).c_str(), nullptr) ==
        std::numeric_limits<double>::denorm_min());
}

TEST_CASE("polygon document round trip is byte identical") {
  for (std::size_t n : {3, 4, 17, 500}) {
    for (const auto& doc : {planar_doc(n, n), spatial_doc(n, n + 1)}) {
      const std::string first = to_json(doc);
      const auto parsed = parse_polygon_document(first);
      CHECK(parsed == doc);
      CHECK(to_json(parsed) == first);
    }
  }
  std::vector<PolygonDocument> docs{planar_doc(5, 1), spatial_doc(6, 2), planar_doc(3, 3)};
  const std::string text = to_json(docs);
  const auto back = parse_polygon_documents(text);
  CHECK(back == docs);
  CHECK(to_json(back) == text);
}

TEST_CASE("polygon document is valid JSON with the documented keys") {
  const auto doc = planar_doc(4, 9);
  const auto j = nlohmann::json::parse(to_json(doc));
  CHECK(j["version"] == 1);
  CHECK(j["kind"] == "planar");
  CHECK(j["n"] == 4);
  CHECK(j["edges"].size() == 4);
  CHECK(j["edges"][0].size() == 2);
  CHECK(j["signs"].size() == 4);
  CHECK(j["seed"] == 9);
  CHECK_FALSE(j.contains("theta"));

  const auto s = nlohmann::json::parse(to_json(spatial_doc(5, 10)));
  CHECK(s["kind"] == "spatial");
  CHECK(s["edges"][0].size() == 3);
  CHECK(s["theta"].size() == 5);
  CHECK_FALSE(s.contains("seed"));
}

TEST_CASE("frame document round trip") {
  SeededRng rng(72);
  FrameDocument real{sample_stiefel(6, rng), lift_signs(sample_stiefel(6, rng)), std::nullopt};
  FrameDocument complex{sample_stiefel_complex(7, rng), std::nullopt, twisted_framing(7, 1)};
  for (const auto& doc : {real, complex}) {
    const std::string text = to_json(doc);
    const auto parsed = parse_frame_documents(text);
    REQUIRE(parsed.size() == 1);
    CHECK(parsed[0] == doc);
    CHECK(to_json(parsed[0]) == text);
  }
  const std::vector<FrameDocument> both{real, complex};
  CHECK(to_json(parse_frame_documents(to_json(both))) == to_json(both));

  auto j = nlohmann::json::parse(to_json(real));
  j["y"][0] = j["y"][0].get<double>() + 0.1;
  CHECK(kind_of([&] { parse_frame_documents(j.dump()); }) == ErrorKind::FrameInvalid);
}

TEST_CASE("polygon document rejects schema violations") {
  const std::string good = to_json(planar_doc(4, 11));
  auto mutate = [&](auto&& edit) {
    auto j = nlohmann::json::parse(good);
    edit(j);
    return j.dump();
  };
  auto rejected = [](const std::string& text) {
    return kind_of([&] { parse_polygon_document(text); });
  };

  CHECK(rejected("not json") == ErrorKind::InvalidDocument);
  CHECK(rejected("[]") == ErrorKind::InvalidDocument);
  CHECK(rejected("42") == ErrorKind::InvalidDocument);
  CHECK(rejected(mutate([](Json& j) { j["version"] = 2; })) == ErrorKind::InvalidDocument);
  CHECK(rejected(mutate([](Json& j) { j.erase("version"); })) == ErrorKind::InvalidDocument);
  CHECK(rejected(mutate([](Json& j) { j["kind"] = "curved"; })) == ErrorKind::InvalidDocument);
  CHECK(rejected(mutate([](Json& j) { j["n"] = 5; })) == ErrorKind::InvalidDocument);
  CHECK(rejected(mutate([](Json& j) { j["n"] = 2; })) == ErrorKind::InvalidDocument);
  CHECK(rejected(mutate([](Json& j) { j["edges"][0] = {1.0}; })) == ErrorKind::InvalidDocument);
  CHECK(rejected(mutate([](Json& j) { j["edges"][0][0] = "x"; })) == ErrorKind::InvalidDocument);
  CHECK(rejected(mutate([](Json& j) { j["signs"][0] = 0; })) == ErrorKind::InvalidDocument);
  CHECK(rejected(mutate([](Json& j) { j["signs"].erase(0); })) == ErrorKind::InvalidDocument);
  CHECK(rejected(mutate([](Json& j) { j["theta"] = {0, 0, 0, 0}; })) ==
        ErrorKind::InvalidDocument);
  CHECK(rejected(mutate([](Json& j) { j["seed"] = "seven"; })) == ErrorKind::InvalidDocument);

  // Geometry failures keep their own kinds.
  CHECK(rejected(mutate([](Json& j) {
          j["edges"][0][0] = j["edges"][0][0].get<double>() + 0.1;
        })) == ErrorKind::NotClosed);
  CHECK(rejected(mutate([](Json& j) {
          for (auto& e : j["edges"]) {
            e[0] = 2.0 * e[0].get<double>();
            e[1] = 2.0 * e[1].get<double>();
          }
        })) == ErrorKind::NotNormalized);

  // Several documents where one is expected.
  CHECK(rejected(to_json(std::vector<PolygonDocument>{planar_doc(4, 1), planar_doc(4, 2)})) ==
        ErrorKind::InvalidDocument);
  CHECK(kind_of([] { parse_polygon_documents("[]"); }) == ErrorKind::InvalidDocument);
}

TEST_CASE("sign bitstrings") {
  CHECK(parse_sign_bits("0110") == std::vector<int>{1, -1, -1, 1});
  CHECK(format_sign_bits({1, -1, -1, 1}) == "0110");
  CHECK(format_sign_bits(parse_sign_bits("10001")) == "10001");
  CHECK(kind_of([] { parse_sign_bits("01x"); }) == ErrorKind::InvalidArgument);
}

TEST_CASE("ensemble report JSON and CSV") {
  const auto quad = ensemble_report({EnsembleKind::quad, 0, 500, 4, 1});
  const auto j = nlohmann::json::parse(to_json(quad));
  CHECK(j["kind"] == "quad");
  CHECK(j["n"] == 4);
  CHECK(j["sample_count"] == 500);
  CHECK(j["seed"] == 4);
  CHECK(j["obtuse_fraction"].is_null());
  CHECK(j["class_fractions"]["convex"].get<double>() == quad.class_fractions->convex);
  CHECK(j["mean_edge_length"].get<double>() == quad.mean_edge_length);

  const auto tri = ensemble_report({EnsembleKind::triangle, 0, 500, 4, 1});
  CHECK(nlohmann::json::parse(to_json(tri))["class_fractions"].is_null());

  const std::string header = csv_header();
  const std::string row = to_csv_row(tri);
  auto fields = [](const std::string& line) {
    std::size_t count = 1;
    for (char c : line) count += c == ',';
    return count;
  };
  CHECK(header.back() == '\n');
  CHECK(row.back() == '\n');
  CHECK(fields(header) == 11);
  CHECK(fields(row) == 11);
  CHECK(row.rfind("triangle,3,500,4,", 0) == 0);
  CHECK(row.find(",,,") != std::string::npos);
}
