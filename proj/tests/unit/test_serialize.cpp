#include <gtest/gtest.h>

#include "gsc/errors.hpp"
#include "gsc/serialize.hpp"

using namespace gsc;

TEST(Serialize, GroupSpecRoundTrip) {
  for (const char* s : {"Z3", "D4", "S3", "A4", "Z2xZ2", "D4_abc", "GCCX"}) {
    auto spec = parse_group_spec(s);
    auto back = group_spec_from_json(group_spec_to_json(spec));
    EXPECT_EQ(back.label(), spec.label()) << s;
    EXPECT_EQ(build_group(back)->order(), build_group(spec)->order());
  }
}

TEST(Serialize, JsonObjectSpec) {
  auto spec = parse_group_spec(R"({"variant": "dihedral", "params": {"n": 5}})");
  EXPECT_EQ(build_group(spec)->order(), 10);
}

TEST(Serialize, RejectsUnknownInput) {
  EXPECT_THROW(parse_group_spec("Q17"), InvalidSpec);
  EXPECT_THROW(group_spec_from_json({{"variant", "cyclic"}, {"params", {{"n", 3}}}, {"extra", 1}}), InvalidSpec);
}

TEST(Serialize, MultiplicityReport) {
  auto G = build_group(GroupSpec::symmetric(3));
  auto j = multiplicity_report(G, subgroup_closure(G, {G->parse("s")}));
  EXPECT_EQ(j["induced_trivial"]["decomposition"], "A+C");
}

TEST(Serialize, CharacterTableJson) {
  auto G = build_group(GroupSpec::dihedral(4));
  auto j = character_table_to_json(character_table(G));
  EXPECT_FALSE(j.dump().empty());
  EXPECT_EQ(group_table_to_json(*G).value("order", 0), 8);
}
