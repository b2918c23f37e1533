#include <random>

#include <gtest/gtest.h>

#include "gsc/errors.hpp"
#include "gsc/lattice.hpp"
#include "gsc/serialize.hpp"

using namespace gsc;

TEST(Lattice, CountingIdentity) {
  for (int vx = 1; vx <= 4; ++vx)
    for (int vy = 2; vy <= 5; ++vy) {
      Lattice L(vx, vy);
      EXPECT_EQ(L.num_edges() - L.num_plaquettes() - L.num_vertices(), 1) << vx << "x" << vy;
      EXPECT_EQ(L.num_vertices(), vx * vy);
    }
}

TEST(Lattice, RejectsTinyGrids) {
  EXPECT_THROW(build_lattice(0, 2), TooSmall);
  EXPECT_THROW(build_lattice(1, 1), TooSmall);
}

TEST(Lattice, RoughBoundariesBlockFluxMoves) {
  auto L = build_lattice(2, 3);
  int shared = -1;
  EXPECT_THROW(L->plaquette_neighbor(L->plaquette_id(0, 0), Direction::Left, &shared), BoundaryBlocked);
  EXPECT_EQ(L->plaquette_neighbor(L->plaquette_id(0, 1), Direction::Down, &shared), -1);
  EXPECT_EQ(L->plaquette_neighbor(L->plaquette_id(0, 1), Direction::Up, &shared), L->plaquette_id(1, 1));
}

TEST(Lattice, LeftGaugeReductionRecoversLabel) {
  auto G = build_group(GroupSpec::symmetric(3));
  auto L = build_lattice(2, 3);
  std::mt19937 rng(5);
  for (int g = 0; g < G->order(); ++g) {
    auto c = left_gauge_config(*L, g);
    EXPECT_TRUE(is_flux_free(*L, *G, c));
    for (int t = 0; t < 5; ++t)
      for (int v = 0; v < L->num_vertices(); ++v) c = apply_gauge(*L, c, v, static_cast<int>(rng() % 6), *G);
    auto red = left_gauge_reduce(*L, *G, c);
    EXPECT_EQ(red.label, g);
    EXPECT_EQ(red.canonical, left_gauge_config(*L, g));
    EXPECT_EQ(apply_gauge_word(*L, *G, red.canonical, red.word), c);
    EXPECT_EQ(holonomy_checked(*L, *G, c), g);
  }
}

TEST(Lattice, GaugePreservesFlux) {
  auto G = build_group(GroupSpec::dihedral(4));
  auto L = build_lattice(2, 2);
  Configuration c(L->num_edges());
  std::mt19937 rng(9);
  for (auto& x : c) x = static_cast<int>(rng() % 8);
  for (int v = 0; v < L->num_vertices(); ++v) {
    auto d = apply_gauge(*L, c, v, 5, *G);
    for (int p = 0; p < L->num_plaquettes(); ++p) {
      int m1 = plaquette_flux(*L, p, c, *G), m2 = plaquette_flux(*L, p, d, *G);
      bool conj = false;
      for (int h = 0; h < 8; ++h) conj = conj || G->conj(m1, h) == m2;
      EXPECT_TRUE(conj);
    }
  }
}

TEST(Lattice, JsonRoundTrip) {
  auto G = build_group(GroupSpec::symmetric(3));
  auto L = build_lattice(3, 2);
  auto L2 = lattice_from_json(lattice_to_json(*L));
  EXPECT_EQ(L2->vx(), 3);
  EXPECT_EQ(L2->num_edges(), L->num_edges());
  auto c = left_gauge_config(*L, G->parse("r"));
  EXPECT_EQ(configuration_from_json(configuration_to_json(c, *G), *G), c);
  EXPECT_FALSE(render_configuration(*L, *G, c).empty());
}
