#include <catch2/catch_amalgamated.hpp>

#include "bnh/cable.hpp"
#include "bnh/homology.hpp"
#include "bnh/simplify.hpp"
#include "fixtures.hpp"

using bnh::cable;
using bnh::Diagram;
using bnh::FrobeniusTheory;

TEST_CASE("cables of the zero-framed unknot are unlinks") {
  auto u = fixtures::pd("unknot");

  auto c20 = cable(u, 2, 0);
  REQUIRE(c20.crossings.empty());
  REQUIRE(c20.num_components() == 2);
  REQUIRE(bnh::same_diagram(c20, fixtures::pd("unlink2")));

  auto c11 = cable(u, 1, 1);
  REQUIRE(c11.crossings.empty());
  REQUIRE(c11.num_components() == 2);
  // the reversed copy runs clockwise
  REQUIRE(c11.loop_cw == std::vector<bool>{false, true});

  auto c00 = cable(u, 0, 0);
  REQUIRE(c00.empty());
}

TEST_CASE("one-cable realizes the framing as writhe") {
  auto u = fixtures::pd("unknot");
  Diagram framed = u;
  framed.framing = {-1};
  auto c = cable(framed, 1, 0);
  REQUIRE(c.num_components() == 1);
  REQUIRE(c.crossings.size() == 1);
  REQUIRE(c.writhe() == -1);
  // still the unknot
  auto h = bnh::homology(bnh::simplify(
      bnh::build_complex(c, FrobeniusTheory::bar_natan())));
  REQUIRE(h.total_free_rank() == 2);
  REQUIRE(h.total_torsion().empty());
}

TEST_CASE("the (1,1)-cable of the -1-framed unknot is a full negative twist") {
  auto u = fixtures::pd("unknot");
  Diagram framed = u;
  framed.framing = {-1};
  auto c = cable(framed, 1, 1);
  REQUIRE(c.crossings.size() == 4);  // the kink blows up into a 2x2 grid
  REQUIRE(c.num_components() == 2);
  bnh::validate(c);
  REQUIRE(bnh::planar_euler_ok(c));
  // one full twist between antiparallel strands: linking number +1 with
  // these orientations (reversing one component of lk=-1 parallel strands)
  REQUIRE(std::abs(bnh::linking_number(c)) == 1);
  // as an unoriented link this is a Hopf link: Bar-Natan free rank 4 and no
  // torsion
  auto h = bnh::homology(bnh::simplify(
      bnh::build_complex(c, FrobeniusTheory::bar_natan())));
  REQUIRE(h.total_free_rank() == 4);
  REQUIRE(h.total_torsion().empty());
}

TEST_CASE("two-cable of the blackboard-framed trefoil") {
  auto t = fixtures::pd("trefoil_left");
  Diagram framed = t;
  framed.framing = {t.writhe()};  // no twist region needed
  auto c = cable(framed, 2, 0);
  REQUIRE(c.crossings.size() == 12);
  REQUIRE(c.num_components() == 2);
  bnh::validate(c);
  REQUIRE(bnh::planar_euler_ok(c));
  // parallel copies link once per crossing sign
  REQUIRE(bnh::linking_number(c) == t.writhe());
}

TEST_CASE("cable circle count at the all-zero state matches a direct trace") {
  auto u = fixtures::pd("unknot");
  Diagram framed = u;
  framed.framing = {-1};
  auto c = cable(framed, 1, 1);
  // spot check the resolution machinery end to end on the cable
  auto sc = bnh::resolve(c, 0);
  int total_arcs = 0;
  for (const auto& circ : sc.circles) total_arcs += static_cast<int>(circ.size());
  REQUIRE(total_arcs == static_cast<int>(c.edges().size()));
  for (uint32_t s = 0; s < 16; ++s) REQUIRE(bnh::resolve(c, s).count() >= 1);
}

TEST_CASE("cable rejects multi-component input") {
  REQUIRE_THROWS_AS(cable(fixtures::pd("hopf_plus"), 2, 0), bnh::DiagramError);
}
