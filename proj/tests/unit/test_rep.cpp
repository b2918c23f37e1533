#include <gtest/gtest.h>

#include "gsc/errors.hpp"
#include "gsc/rep.hpp"

using namespace gsc;

namespace {

void expect_unitary_homomorphism(const GroupPtr& G, const Irrep& R) {
  for (int g = 0; g < G->order(); ++g) {
    EXPECT_LT((R(g) * R(g).adjoint() - CMatrix::identity(R.dim)).max_abs(), 1e-10);
    for (int h = 0; h < G->order(); ++h) EXPECT_LT((R(g) * R(h) - R(G->mul(g, h))).max_abs(), 1e-10);
  }
}

}  // namespace

TEST(Rep, S3CharacterTable) {
  auto G = build_group(GroupSpec::symmetric(3));
  auto T = character_table(G);
  ASSERT_EQ(T.num_irreps(), 3);
  EXPECT_EQ(T.dims, (std::vector<int>{1, 1, 2}));
  EXPECT_EQ(T.labels[0], "A");
  int s = G->parse("s"), r = G->parse("r");
  EXPECT_NEAR(T.chi(1, s).real(), -1.0, 1e-12);
  EXPECT_NEAR(T.chi(2, r).real(), -1.0, 1e-12);
}

TEST(Rep, IrrepMatricesAreUnitaryHomomorphisms) {
  for (auto spec : {GroupSpec::symmetric(3), GroupSpec::dihedral(4), GroupSpec::alternating(4)}) {
    auto G = build_group(spec);
    auto rd = representations(G);
    for (const auto& R : rd->irreps) {
      expect_unitary_homomorphism(G, R);
      for (int g = 0; g < G->order(); ++g) {
        auto chi = rd->table.chi(static_cast<int>(&R - rd->irreps.data()), g);
        EXPECT_LT(std::abs(R(g).trace() - chi), 1e-10);
      }
    }
  }
}

TEST(Rep, IrrepBasisIsOrthonormal) {
  auto G = build_group(GroupSpec::symmetric(3));
  auto basis = irrep_basis_states(G);
  ASSERT_EQ(static_cast<int>(basis.size()), G->order());
  for (const auto& a : basis)
    for (const auto& b : basis) {
      cplx s = 0;
      for (int g = 0; g < G->order(); ++g) s += std::conj(a.vec[g]) * b.vec[g];
      EXPECT_LT(std::abs(s - cplx(&a == &b ? 1.0 : 0.0)), 1e-10);
    }
}

TEST(Rep, FusionOfTwoDimensionalS3Irrep) {
  auto G = build_group(GroupSpec::symmetric(3));
  auto F = clebsch_gordan(G, 2, 2);
  std::vector<int> mult(3, 0);
  for (auto [k, m] : F.summands) mult[k] += m;
  EXPECT_EQ(mult, (std::vector<int>{1, 1, 1}));
  EXPECT_LT((F.cg.adjoint() * F.cg - CMatrix::identity(F.cg.cols)).max_abs(), 1e-10);
}

TEST(Rep, RestrictionAndInduction) {
  auto G = build_group(GroupSpec::symmetric(3));
  auto Z2 = subgroup_closure(G, {G->parse("s")});
  auto n = induced_trivial_multiplicities(*Z2);
  EXPECT_EQ(n, (std::vector<int>{1, 0, 1}));
  auto res = restrict_multiplicities(*Z2, representations(G)->irreps[2]);
  int total = 0;
  for (int m : res) total += m;
  EXPECT_EQ(total, 2);
}

TEST(Rep, IsotypicProjectorOfRegularRep) {
  auto G = build_group(GroupSpec::cyclic(3));
  std::vector<CMatrix> reg;
  for (int g = 0; g < 3; ++g) {
    CMatrix M(3, 3);
    for (int x = 0; x < 3; ++x) M(G->mul(g, x), x) = 1.0;
    reg.push_back(M);
  }
  const auto& W = representations(G)->irreps[1];
  auto P = isotypic_projector(reg, W, 0, 0);
  EXPECT_LT((P * P - P).max_abs(), 1e-10);
  EXPECT_NEAR(P.trace().real(), 1.0, 1e-10);
}

TEST(Rep, RoundMultiplicityRejectsNonIntegers) {
  EXPECT_EQ(round_multiplicity(2.0000000001), 2);
  EXPECT_THROW(round_multiplicity(1.5), NumericalDegeneracy);
}
