#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "bnh/kunneth.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

using bnh::FrobeniusTheory;
using bnh::HomologyClass;
using bnh::Poly;
using bnh::SyntheticSummand;

namespace {
const auto kBN = FrobeniusTheory::bar_natan();
}

TEST_CASE("kunneth for two unknots") {
  auto rep = bnh::kunneth_mu(fixtures::pd("unknot"), fixtures::pd("unknot"), kBN);
  REQUIRE(rep.accounting_ok);
  REQUIRE(rep.iso_verdict);
  REQUIRE(rep.mu_injective);
  REQUIRE(rep.joint.module->total_free_rank() == 4);
}

TEST_CASE("kunneth for unknot and trefoil") {
  auto rep = bnh::kunneth_mu(fixtures::pd("unknot"), fixtures::pd("trefoil_left"), kBN);
  REQUIRE(rep.accounting_ok);
  REQUIRE(rep.iso_verdict);  // one factor free: Tor vanishes
  REQUIRE(rep.mu_injective);
}

TEST_CASE("kunneth for two trefoils balances with Tor correction") {
  auto rep = bnh::kunneth_mu(fixtures::pd("trefoil_left"), fixtures::pd("trefoil_left"), kBN);
  REQUIRE(!rep.iso_verdict);  // both factors carry H-torsion
  REQUIRE(rep.accounting_ok);
  REQUIRE(rep.mu_injective);
  // the Tor gate content: pairwise gcds of {H, H} x {H, H}
  REQUIRE(rep.tor_total.torsion.size() == 4);
}

TEST_CASE("glue transport through actual diagrams") {
  auto rep = bnh::kunneth_mu(fixtures::pd("trefoil_left"), fixtures::pd("unknot"), kBN);
  REQUIRE(rep.iso_verdict);
  // delta: a torsion generator of the trefoil; s: a free generator of the unknot
  int h_t = 0, idx_t = -1;
  for (const auto& [h, dd] : rep.left.module->degrees) {
    for (int j = 0; j < dd.num_gens(); ++j)
      if (dd.gens[j].is_torsion()) {
        h_t = h;
        idx_t = j;
      }
  }
  REQUIRE(idx_t >= 0);
  auto delta = bnh::class_generator(rep.left.module, h_t, idx_t);
  auto s = bnh::class_generator(rep.right.module, 0, 0);

  auto out = bnh::glue_torsion_transport(rep, delta, s);
  REQUIRE(out.gate_passed);
  REQUIRE(out.consistent);
  REQUIRE(!out.transported.infinite);
  REQUIRE(out.transported.order == bnh::torsion_order(delta).order);

  // free (x) free transports to infinite order
  auto free_left = bnh::class_generator(
      rep.left.module, 0,
      [&] {
        const auto* dd = rep.left.module->degree(0);
        for (int j = 0; j < dd->num_gens(); ++j)
          if (dd->gens[j].is_free()) return j;
        return -1;
      }());
  auto out2 = bnh::glue_torsion_transport(rep, free_left, s);
  REQUIRE(out2.gate_passed);
  REQUIRE(out2.consistent);
  REQUIRE(out2.transported.infinite);
}

TEST_CASE("glue transport refuses when the Tor gate fails") {
  auto m0 = bnh::synthetic_module(0, {{0, Poly::h_power(2)}});
  auto m1 = bnh::synthetic_module(0, {{0, Poly::h()}});
  auto d0 = bnh::class_generator(m0, 0, 0);
  auto d1 = bnh::class_generator(m1, 0, 0);
  auto rep = bnh::glue_torsion_transport_synthetic(m0, d0, m1, d1);
  REQUIRE(!rep.gate_passed);
  REQUIRE(!rep.refusal.empty());
}

TEST_CASE("randomized synthetic glue transport") {
  std::mt19937 rng(77);
  std::uniform_int_distribution<int> n_summands(1, 4), tor_k(1, 4), coin(0, 1);
  int done = 0;
  while (done < 100) {
    // one side free (so the gate passes), the other mixed
    std::vector<SyntheticSummand> free_side, mixed;
    int nf = n_summands(rng), nm = n_summands(rng);
    for (int i = 0; i < nf; ++i) free_side.push_back({2 * i, Poly::zero()});
    for (int i = 0; i < nm; ++i)
      mixed.push_back({2 * i, coin(rng) ? Poly::zero() : Poly::h_power(tor_k(rng))});
    auto m0 = bnh::synthetic_module(0, coin(rng) ? free_side : mixed);
    auto m1 = bnh::synthetic_module(0, coin(rng) ? free_side : mixed);
    bool gate = bnh::tor1(m0->total_decomp(), m1->total_decomp()).torsion.empty();
    const auto* da = m0->degree(0);
    const auto* db = m1->degree(0);
    HomologyClass v{m0, 0, {}}, w{m1, 0, {}};
    v.coords.assign(da->num_gens(), Poly::zero());
    w.coords.assign(db->num_gens(), Poly::zero());
    for (auto& c : v.coords)
      if (coin(rng)) c = oracle::random_poly(rng, 2, false);
    for (auto& c : w.coords)
      if (coin(rng)) c = oracle::random_poly(rng, 2, false);
    bnh::normalize_coords(*da, v.coords);
    bnh::normalize_coords(*db, w.coords);

    auto rep = bnh::glue_torsion_transport_synthetic(m0, v, m1, w);
    REQUIRE(rep.gate_passed == gate);
    if (!gate) continue;
    REQUIRE(rep.consistent);
    // symmetry of the transported order
    auto rep_sym = bnh::glue_torsion_transport_synthetic(m1, w, m0, v);
    REQUIRE(rep_sym.gate_passed);
    REQUIRE(rep_sym.transported == rep.transported);
    ++done;
  }
}
