#include <gtest/gtest.h>

#include "gsc/errors.hpp"
#include "gsc/group.hpp"
#include "gsc/perm.hpp"

using namespace gsc;

namespace {

GroupPtr D4() { return build_group(GroupSpec::dihedral(4)); }
GroupPtr S3() { return build_group(GroupSpec::symmetric(3)); }

}  // namespace

TEST(Group, OrdersOfStandardFamilies) {
  EXPECT_EQ(build_group(GroupSpec::cyclic(7))->order(), 7);
  EXPECT_EQ(build_group(GroupSpec::dihedral(5))->order(), 10);
  EXPECT_EQ(build_group(GroupSpec::symmetric(4))->order(), 24);
  EXPECT_EQ(build_group(GroupSpec::alternating(4))->order(), 12);
  EXPECT_EQ(build_group(GroupSpec::direct_product({GroupSpec::cyclic(2), GroupSpec::cyclic(3)}))->order(), 6);
  EXPECT_EQ(build_group(GroupSpec::named("GCCX"))->order(), 64);
}

TEST(Group, TablesValidate) {
  for (auto spec : {GroupSpec::cyclic(5), GroupSpec::dihedral(4), GroupSpec::symmetric(4), GroupSpec::named("D4_abc")}) {
    auto G = build_group(spec);
    auto chk = validate_group(*G);
    EXPECT_TRUE(chk.ok()) << G->label() << ": " << chk.message;
  }
}

TEST(Group, OrderCapIsEnforced) {
  EXPECT_THROW(build_group(GroupSpec::symmetric(6), 100), OrderCapExceeded);
}

TEST(Group, D4AliasesAndRelations) {
  auto G = D4();
  int a = G->parse("a"), b = G->parse("b"), c = G->parse("c");
  EXPECT_EQ(G->element_order(a), 2);
  EXPECT_EQ(G->element_order(b), 2);
  EXPECT_EQ(G->element_order(c), 2);
  // b is the central rotation by pi.
  for (int g = 0; g < G->order(); ++g) EXPECT_EQ(G->mul(b, g), G->mul(g, b));
  EXPECT_EQ(G->mul(a, c), G->mul(G->mul(c, a), b));
  EXPECT_EQ(G->parse("ab"), G->mul(a, b));
  EXPECT_FALSE(G->try_parse("zz").has_value());
}

TEST(Group, ConjugacyClassCounts) {
  EXPECT_EQ(conjugacy_classes(*S3()).size(), 3u);
  EXPECT_EQ(conjugacy_classes(*D4()).size(), 5u);
  EXPECT_EQ(conjugacy_classes(*build_group(GroupSpec::alternating(4))).size(), 4u);
  EXPECT_EQ(conjugacy_classes(*build_group(GroupSpec::cyclic(6))).size(), 6u);
}

TEST(Group, SubgroupsAndNormality) {
  auto G = S3();
  auto Z3 = subgroup_closure(G, {G->parse("r")});
  auto Z2 = subgroup_closure(G, {G->parse("s")});
  EXPECT_EQ(Z3->size(), 3);
  EXPECT_EQ(Z2->size(), 2);
  EXPECT_TRUE(is_normal(*Z3));
  EXPECT_FALSE(is_normal(*Z2));
  EXPECT_EQ(Z3->as_group()->order(), 3);
  for (int k = 0; k < Z3->size(); ++k) EXPECT_EQ(Z3->project(Z3->embed(k)), k);
}

TEST(Group, KnitDecompositionFactorsUniquely) {
  auto G = D4();
  auto H = subgroup_closure(G, {G->parse("a"), G->parse("b")});
  auto K = subgroup_closure(G, {G->parse("c")});
  auto knit = knit_decompose(G, H, K);
  for (int g = 0; g < G->order(); ++g) {
    auto [h, k] = knit.factor_hk[g];
    EXPECT_TRUE(H->contains(h));
    EXPECT_TRUE(K->contains(k));
    EXPECT_EQ(G->mul(h, k), g);
    auto [k2, h2] = knit.factor_kh[g];
    EXPECT_EQ(G->mul(k2, h2), g);
  }
}

TEST(Group, KnitDecompositionRejectsOverlap) {
  auto G = D4();
  auto H = subgroup_closure(G, {G->parse("a"), G->parse("b")});
  auto K = subgroup_closure(G, {G->parse("b")});
  EXPECT_THROW(knit_decompose(G, H, K), NotAKnitProduct);
}

TEST(Group, AutomorphismsValidate) {
  auto G = D4();
  int a = G->parse("a"), c = G->parse("c");
  auto phi = automorphism_from_images(G, {{a, c}, {c, a}});
  EXPECT_EQ(phi(G->parse("b")), G->parse("b"));
  EXPECT_TRUE(phi.compose(phi).is_identity());
  EXPECT_THROW(automorphism_from_images(G, {{a, G->parse("b")}, {c, G->parse("b")}}), Error);
  auto inner = inner_automorphism(G, c);
  for (int g = 0; g < G->order(); ++g) EXPECT_EQ(inner(g), G->conj(g, c));
}

TEST(Perm, SchreierSimsOrders) {
  EXPECT_EQ(perm_group_order(4, {perm_from_cycles("(1 2)", 4), perm_from_cycles("(1 2 3 4)", 4)}), 24u);
  EXPECT_EQ(perm_group_order(5, {perm_from_cycles("(1 2 3)", 5), perm_from_cycles("(3 4 5)", 5)}), 60u);
  StabChain sc(4, {perm_from_cycles("(1 2 3 4)", 4)});
  EXPECT_TRUE(sc.contains(perm_from_cycles("(1 3)(2 4)", 4)));
  EXPECT_FALSE(sc.contains(perm_from_cycles("(1 2)", 4)));
}

TEST(Perm, CycleNotationRoundTrip) {
  auto p = perm_from_cycles("(1 3 2)(4 5)", 5);
  EXPECT_EQ(perm_from_cycles(perm_to_cycles(p), 5), p);
  EXPECT_TRUE(perm_is_identity(perm_compose(p, perm_inverse(p))));
}

TEST(Perm, QubitOneIsMostSignificant) {
  auto x1 = x_gate(3, 1);
  EXPECT_EQ(x1[0], 4u);
  auto cx = mcx_gate(2, {1}, 2);
  EXPECT_EQ(cx[2], 3u);
  EXPECT_EQ(cx[1], 1u);
}
