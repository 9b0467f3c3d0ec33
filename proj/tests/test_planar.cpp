#include <catch2/catch_amalgamated.hpp>

#include "bnh/planar.hpp"
#include "fixtures.hpp"

using bnh::face_structure;
using bnh::FaceStructure;

TEST_CASE("euler formula on the corpus") {
  for (const auto& name : fixtures::corpus_names()) {
    INFO(name);
    REQUIRE(bnh::planar_euler_ok(fixtures::pd(name)));
  }
}

TEST_CASE("kink faces") {
  auto d = fixtures::pd("unknot_kink_plus");
  auto fs = face_structure(d);
  // figure-eight curve: two monogon lobes plus the outside
  REQUIRE(fs.num_faces() == 3);
  std::vector<size_t> sizes;
  for (const auto& f : fs.faces) sizes.push_back(f.size());
  std::sort(sizes.begin(), sizes.end());
  REQUIRE(sizes == std::vector<size_t>{1, 1, 2});
}

TEST_CASE("trefoil faces") {
  auto d = fixtures::pd("trefoil_left");
  auto fs = face_structure(d);
  // V=3, E=6, F=5
  REQUIRE(fs.num_faces() == 5);
}

TEST_CASE("regions and circle geometry for the unknot resolutions") {
  auto d = fixtures::pd("unknot");
  auto fs = face_structure(d);
  auto rd = bnh::regions(fs, 0);
  auto sc = bnh::resolve(d, 0);
  auto g = bnh::circle_geometry(fs, rd, sc);
  REQUIRE(g.depth == std::vector<int>{0});
  REQUIRE(g.ccw == std::vector<bool>{true});  // loops default counterclockwise
}

TEST_CASE("hopf oriented resolution is a nested pair") {
  auto d = fixtures::pd("hopf_plus");
  auto fs = face_structure(d);
  // both crossings positive: the oriented resolution is the all-0 state
  auto sc = bnh::resolve(d, 0);
  REQUIRE(sc.count() == 2);
  auto rd = bnh::regions(fs, 0);
  auto g = bnh::circle_geometry(fs, rd, sc);
  std::vector<int> depths = g.depth;
  std::sort(depths.begin(), depths.end());
  REQUIRE(depths == std::vector<int>{0, 1});
}

TEST_CASE("trefoil Seifert state geometry") {
  auto d = fixtures::pd("trefoil_left");
  auto fs = face_structure(d);
  auto sc = bnh::resolve(d, 0b111);  // oriented resolution (all crossings negative)
  REQUIRE(sc.count() == 2);
  auto rd = bnh::regions(fs, 0b111);
  auto g = bnh::circle_geometry(fs, rd, sc);
  // Seifert circles of the standard trefoil diagram are nested
  std::vector<int> depths = g.depth;
  std::sort(depths.begin(), depths.end());
  REQUIRE(depths == std::vector<int>{0, 1});
}

TEST_CASE("circle sides are well defined on random states") {
  for (const auto& name : fixtures::corpus_names()) {
    auto d = fixtures::pd(name);
    auto fs = face_structure(d);
    int n = static_cast<int>(d.crossings.size());
    for (uint32_t s = 0; s < (1u << n); ++s) {
      auto rd = bnh::regions(fs, s);
      auto sc = bnh::resolve(d, s);
      INFO(name << " state " << s);
      REQUIRE_NOTHROW(bnh::circle_geometry(fs, rd, sc));
    }
  }
}
