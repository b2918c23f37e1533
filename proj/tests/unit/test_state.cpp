#include <sstream>

#include <gtest/gtest.h>

#include "gsc/errors.hpp"
#include "gsc/state.hpp"
#include "oracle.hpp"

using namespace gsc;

namespace {

GroupPtr S3() { return build_group(GroupSpec::symmetric(3)); }

}  // namespace

TEST(Rng, DeterministicPerSeed) {
  Rng a(42), b(42), c(43);
  for (int i = 0; i < 10; ++i) {
    auto x = a.next_u64();
    EXPECT_EQ(x, b.next_u64());
    (void)c.next_u64();
  }
  EXPECT_NE(Rng(1).next_u64(), Rng(2).next_u64());
  EXPECT_NE(Rng::derive(7, 0), Rng::derive(7, 1));
}

TEST(State, CodeStatesAreOrthonormalAndDecode) {
  auto G = S3();
  auto lat = build_lattice(1, 2);
  for (int g = 0; g < G->order(); ++g) {
    auto st = code_state(G, lat, g);
    EXPECT_NEAR(st.norm2(), 1.0, 1e-12);
    auto dec = decode_logical(st);
    EXPECT_LT(dec.leakage, 1e-12);
    ASSERT_EQ(dec.amps.size(), 1u);
    EXPECT_EQ(dec.amps.begin()->first, std::vector<int>{g});
    for (int h = 0; h < g; ++h) EXPECT_LT(std::abs(inner(code_state(G, lat, h), st)), 1e-12);
  }
}

TEST(State, EncodeLogicalSuperposition) {
  auto G = S3();
  auto lat = build_lattice(1, 2);
  auto st = encode_logical(G, {{"G", lat, whole_group(G)}}, {{{0}, 1.0}, {{G->parse("r")}, cplx(0, 1)}});
  auto dec = decode_logical(st);
  EXPECT_NEAR(std::abs(dec.amps[{0}]), std::sqrt(0.5), 1e-12);
  EXPECT_NEAR(std::arg(dec.amps[{G->parse("r")}] / dec.amps[{0}]), std::acos(-1.0) / 2, 1e-12);
}

TEST(State, DetectionRoundIsTrivialOnCodeStates) {
  auto G = build_group(GroupSpec::dihedral(4));
  auto lat = build_lattice(1, 2);
  Rng rng(3);
  auto st = code_state(G, lat, G->parse("a"));
  auto before = st;
  auto rec = detection_round(st, rng, Policy::Sample);
  EXPECT_TRUE(rec.all_trivial());
  EXPECT_NEAR(fidelity(before, st), 1.0, 1e-12);
}

TEST(State, PostselectionFailsOnError) {
  auto G = S3();
  auto lat = build_lattice(1, 2);
  Rng rng(1);
  auto st = code_state(G, lat, 0);
  apply_left(st, st.patches[0].reg(lat->v_edge(0, 0)), G->parse("r"));
  EXPECT_THROW(detection_round(st, rng, Policy::PostselectTrivial), PostselectionFailed);
}

TEST(State, RoundMapMatchesOracleProjector) {
  auto G = build_group(GroupSpec::cyclic(3));
  auto lat = build_lattice(1, 2);
  oracle::ConfigSpace S(G, lat);
  auto P = oracle::code_projector(S);
  for (std::int64_t y = 0; y < S.dim; y += 7) {
    auto out = oracle::to_dense_map(S, postselected_round_map(oracle::basis_state(S, y)));
    for (std::int64_t x = 0; x < S.dim; ++x) {
      cplx got = out.count(x) ? out[x] : cplx(0);
      EXPECT_NEAR(std::abs(got - P.coeff(x, y)), 0.0, 1e-12);
    }
  }
}

TEST(State, VertexKrausWeightsSumToOne) {
  auto G = S3();
  auto lat = build_lattice(1, 2);
  auto st = code_state(G, lat, 0);
  apply_left(st, st.patches[0].reg(0), G->parse("s"));
  auto rd = representations(G);
  const auto& R = rd->irreps[2];
  apply_diag(st, st.patches[0].reg(lat->v_edge(0, 0)), R, 0, 1);
  double total = 0;
  for (auto [key, w] : vertex_outcome_weights(st, 0, 0)) total += w;
  EXPECT_NEAR(total, 1.0, 1e-10);
}

TEST(State, FluxMoveClearsSource) {
  auto G = S3();
  auto lat = build_lattice(2, 3);
  Rng rng(8);
  auto st = code_state(G, lat, 0);
  apply_left(st, st.patches[0].reg(lat->h_edge(0, 1)), G->parse("r"));
  int p = lat->plaquette_id(0, 1);
  int m = plaquette_measure(st, 0, p, rng);
  ASSERT_NE(m, 0);
  move_flux(st, 0, p, Direction::Up, m);
  EXPECT_NEAR(plaquette_distribution(st, 0, p)[0], 1.0, 1e-12);
  auto dq = plaquette_distribution(st, 0, lat->plaquette_id(1, 1));
  EXPECT_NEAR(dq[0], 0.0, 1e-12);
}

TEST(State, SaveLoadRoundTrip) {
  auto G = S3();
  auto st = code_state(G, build_lattice(1, 2), G->parse("r"));
  std::stringstream buf;
  save_state(st, buf);
  auto back = load_state(buf, G);
  EXPECT_NEAR(fidelity(st, back), 1.0, 1e-12);
}
