#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "bnh/diagram.hpp"
#include "fixtures.hpp"

using bnh::Diagram;
using bnh::DiagramError;
using bnh::DiagramErrorKind;

TEST_CASE("parse 0-crossing unknot") {
  auto d = fixtures::pd("unknot");
  REQUIRE(d.crossings.empty());
  REQUIRE(d.num_components() == 1);
  REQUIRE(d.is_loop_component(0));
  auto sc = bnh::resolve(d, 0);
  REQUIRE(sc.count() == 1);
}

TEST_CASE("parse trefoil") {
  auto d = bnh::parse_pd("X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)");
  REQUIRE(d.crossings.size() == 3);
  REQUIRE(d.num_components() == 1);
  REQUIRE(d.n_plus() + d.n_minus() == 3);
  // classical PD of 3_1: all crossings negative in the standard convention
  REQUIRE(d.n_minus() == 3);
}

TEST_CASE("parse Hopf link") {
  auto d = bnh::parse_pd("X(1,3,2,4) X(3,1,4,2)");
  REQUIRE(d.crossings.size() == 2);
  REQUIRE(d.num_components() == 2);
  REQUIRE(d.n_plus() == 2);
  REQUIRE(bnh::linking_number(d) == 1);
}

TEST_CASE("parse errors are distinct") {
  REQUIRE_THROWS_AS(bnh::parse_pd("X(1,2,3)"), DiagramError);
  try {
    bnh::parse_pd("X(1,2,3)");
  } catch (const DiagramError& e) {
    REQUIRE(e.kind() == DiagramErrorKind::MalformedTuple);
  }
  try {
    bnh::parse_pd("X(1,1,1,2)");
  } catch (const DiagramError& e) {
    REQUIRE(e.kind() == DiagramErrorKind::BadStrandCount);
  }
}

TEST_CASE("kink signs") {
  auto plus = bnh::parse_pd("X(1,1,2,2)");
  REQUIRE(plus.n_plus() == 1);
  auto minus = bnh::parse_pd("X(1,2,2,1)");
  REQUIRE(minus.n_minus() == 1);
}

TEST_CASE("resolve circle counts") {
  auto tre = fixtures::pd("trefoil_left");
  // all-1 state is the oriented (Seifert) resolution of this all-negative
  // diagram: two circles; all-0 is fully disoriented: three circles
  REQUIRE(bnh::resolve(tre, 0b111).count() == 2);
  REQUIRE(bnh::resolve(tre, 0b000).count() == 3);

  auto hopf = fixtures::pd("hopf_plus");
  REQUIRE(bnh::resolve(hopf, 0b10).count() == 1);
  REQUIRE(bnh::resolve(hopf, 0b01).count() == 1);
  REQUIRE(bnh::resolve(hopf, 0b00).count() == 2);
  REQUIRE(bnh::resolve(hopf, 0b11).count() == 2);

  auto kink = fixtures::pd("unknot_kink_plus");
  REQUIRE(bnh::resolve(kink, 0b0).count() == 2);  // oriented resolution at bit 0
  REQUIRE(bnh::resolve(kink, 0b1).count() == 1);
}

TEST_CASE("flipping one state bit changes circle count by one") {
  std::mt19937 rng(5);
  for (const auto& name : fixtures::corpus_names()) {
    auto d = fixtures::pd(name);
    int n = static_cast<int>(d.crossings.size());
    if (n == 0) continue;
    for (int trial = 0; trial < 20; ++trial) {
      uint32_t s = rng() & ((1u << n) - 1);
      int c0 = bnh::resolve(d, s).count();
      int bit = rng() % n;
      int c1 = bnh::resolve(d, s ^ (1u << bit)).count();
      REQUIRE(std::abs(c0 - c1) == 1);
    }
  }
}

TEST_CASE("resolve is relabeling-equivariant") {
  std::mt19937 rng(9);
  auto d = fixtures::pd("figure8");
  // random relabeling of edges
  auto edges = d.edges();
  std::vector<int> perm(edges.size());
  for (size_t i = 0; i < perm.size(); ++i) perm[i] = static_cast<int>(i) + 1;
  std::shuffle(perm.begin(), perm.end(), rng);
  std::map<int, int> relab;
  for (size_t i = 0; i < edges.size(); ++i) relab[edges[i]] = perm[i];
  auto d2 = bnh::relabeled(d, relab);
  bnh::validate(d2);
  // crossing order is preserved, so states correspond directly
  for (uint32_t s = 0; s < 16; ++s) {
    REQUIRE(bnh::resolve(d, s).count() == bnh::resolve(d2, s).count());
  }
}

TEST_CASE("linking numbers") {
  REQUIRE(bnh::linking_number(fixtures::pd("unlink2")) == 0);
  REQUIRE(bnh::linking_number(fixtures::pd("hopf_plus")) == 1);
  REQUIRE(bnh::linking_number(fixtures::pd("hopf_minus")) == -1);
  auto knot = fixtures::pd("trefoil_left");
  REQUIRE(bnh::linking_number(knot) == 0);
  REQUIRE(bnh::linking_matrix(knot).size() == 1);
  auto t24 = fixtures::pd("torus24");
  REQUIRE(t24.num_components() == 2);
  REQUIRE(t24.n_plus() == 4);
  REQUIRE(bnh::linking_number(t24) == 2);
}

TEST_CASE("mirror") {
  auto d = fixtures::pd("trefoil_left");
  auto m = bnh::mirror(d);
  REQUIRE(m.n_plus() == d.n_minus());
  REQUIRE(m.n_minus() == d.n_plus());
  REQUIRE(bnh::same_diagram(bnh::mirror(m), d));
  REQUIRE(bnh::same_diagram(m, fixtures::pd("trefoil_right")));
  REQUIRE(!bnh::same_diagram(m, d));

  // mirror negates framings
  Diagram framed = d;
  framed.framing = {3};
  REQUIRE(bnh::mirror(framed).framing == std::vector<int>{-3});
}

TEST_CASE("disjoint union") {
  auto u = fixtures::pd("unknot");
  auto uu = bnh::disjoint_union(u, u);
  REQUIRE(uu.num_components() == 2);
  REQUIRE(uu.crossings.empty());
  REQUIRE(bnh::same_diagram(uu, fixtures::pd("unlink2")));

  auto mix = bnh::disjoint_union(fixtures::pd("trefoil_left"), fixtures::pd("hopf_plus"));
  REQUIRE(mix.num_components() == 3);
  REQUIRE(mix.crossings.size() == 5);
  bnh::validate(mix);
}

TEST_CASE("figure eight sanity") {
  auto d = fixtures::pd("figure8");
  REQUIRE(d.num_components() == 1);
  REQUIRE(d.n_plus() == 2);
  REQUIRE(d.n_minus() == 2);
}

TEST_CASE("round trip through text") {
  for (const auto& name : fixtures::corpus_names()) {
    auto d = fixtures::pd(name);
    auto d2 = bnh::parse_pd(bnh::to_text(d));
    REQUIRE(bnh::same_diagram(d, d2));
  }
}

TEST_CASE("basepoint parsing and validation") {
  auto d = bnh::parse_pd("X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)\nbasepoint: 2\n");
  REQUIRE(d.basepoint == 2);
  REQUIRE_THROWS_AS(bnh::parse_pd("X(1,1,2,2)\nbasepoint: 9\n"), DiagramError);
}
