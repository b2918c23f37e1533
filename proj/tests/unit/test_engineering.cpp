#include <gtest/gtest.h>

#include "gsc/errors.hpp"
#include "gsc/engineering.hpp"

using namespace gsc;

TEST(Engineering, GateParsing) {
  auto cx = parse_gate(2, "CX12");
  EXPECT_EQ(cx.perm, (Perm{0, 1, 3, 2}));
  auto sw = parse_gate(3, "SWAP13");
  EXPECT_EQ(sw.perm[4], 1u);
  auto ccx = parse_gate(3, "CCX132");
  EXPECT_EQ(ccx.perm[5], 7u);
  EXPECT_EQ(ccx.then(ccx).perm, ReversibleGate::identity(3).perm);
  EXPECT_THROW(parse_gate(2, "CX13"), Error);
}

TEST(Engineering, GccxStructure) {
  auto r = build_gccx();
  EXPECT_EQ(r.G->order(), 64);
  EXPECT_TRUE(r.relations_ok);
  EXPECT_TRUE(r.knit_ok);
  EXPECT_TRUE(r.to_json().contains("short_relations_hold"));
}

TEST(Engineering, GcnxOrders) {
  EXPECT_EQ(build_gcnx(1).order, 8u);
  EXPECT_EQ(build_gcnx(2).order, 64u);
  auto g3 = build_gcnx(3);
  EXPECT_EQ(g3.order, 2048u);
  EXPECT_TRUE(g3.levels_in_group);
}

TEST(Engineering, GpiFactorization) {
  auto g = build_gpi(2, {parse_gate(2, "CX12")});
  EXPECT_EQ(g.order, 8u);
  EXPECT_TRUE(g.factorization_unique);
  EXPECT_EQ(g.paulis->size() * g.stabilizer->size(), 8);
}

TEST(Engineering, ReversingBinaryRoundTrip) {
  for (std::int64_t x = 0; x < 64; ++x) EXPECT_EQ(reversing_binary_inv(reversing_binary(x)), x);
}

TEST(Engineering, D2nRoundTrip) {
  for (int n = 2; n <= 4; ++n)
    for (int p = 0; p < 2; ++p)
      for (int q = 0; q < (1 << n); ++q) EXPECT_EQ(d2n_encode(n, d2n_decode(n, p, q)), std::make_pair(p, q));
}

TEST(Engineering, D2nMultiplicationIsDihedral) {
  const int n = 3, N = 8;
  std::pair<int, int> s{1, 0}, r{0, 1};
  EXPECT_EQ(d2n_multiply(n, s, s), std::make_pair(0, 0));
  EXPECT_EQ(d2n_multiply(n, d2n_multiply(n, s, r), s), std::make_pair(0, N - 1));
}

TEST(Engineering, CliffordLevels) {
  EXPECT_EQ(clifford_level(MonomialOp::pauli_x(1, 1)).level, 1);
  EXPECT_EQ(clifford_level(MonomialOp::t_gate(1, 1)).level, 3);
  EXPECT_EQ(clifford_level(parse_gate(2, "CX12")).level, 2);
  EXPECT_EQ(clifford_level(parse_gate(3, "CCX123")).level, 3);
}

TEST(Engineering, EncodingTablesVerify) {
  for (const char* w : {"D4", "S3", "GCCX"}) {
    auto t = pauli_encoding_table(w);
    EXPECT_FALSE(t.entries.empty());
    EXPECT_TRUE(t.all_ok()) << w;
  }
}

TEST(Engineering, CircuitEvaluation) {
  auto img = evaluate_circuit("X(1)", {2, 2});
  EXPECT_EQ(img, (std::vector<int>{2, 3, 0, 1}));
}
