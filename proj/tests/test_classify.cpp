#include <gtest/gtest.h>

#include "wsu/wsu.hpp"

using namespace wsu;

TEST(InFormation, Examples) {
  const auto a4 = alternating(4);
  EXPECT_FALSE(in_formation(a4, FormationTag::WSupersoluble));
  EXPECT_TRUE(in_formation(a4, FormationTag::AbelianSylow));
  EXPECT_TRUE(in_formation(a4, FormationTag::Soluble));
  EXPECT_FALSE(in_formation(a4, FormationTag::Supersoluble));
  EXPECT_TRUE(in_formation(a4, FormationTag::Metanilpotent));
  EXPECT_TRUE(is_supersoluble(symmetric(3)));
  EXPECT_FALSE(is_nilpotent(symmetric(3)));
  EXPECT_TRUE(is_nilpotent(dihedral(16)));
  EXPECT_FALSE(is_soluble(alternating(5)));
  EXPECT_FALSE(is_w_supersoluble(alternating(5)));
  EXPECT_TRUE(in_formation(alternating(5), FormationTag::AbelianSylow));
  EXPECT_FALSE(in_formation(symmetric(4), FormationTag::Metanilpotent));
  EXPECT_FALSE(in_formation(symmetric(4), FormationTag::WSupersoluble));
  EXPECT_TRUE(in_formation(cyclic(1), FormationTag::Abelian));
}

TEST(InFormation, ParseRoundTrip) {
  for (auto f : kAllFormations) EXPECT_EQ(parse_formation(to_string(f)), f);
  EXPECT_FALSE(parse_formation("Bogus"));
}

TEST(PPredicate, Examples) {
  const auto a4 = alternating(4), s3 = symmetric(3);
  EXPECT_TRUE(p_predicate(a4, 5, PKind::PClosed));
  EXPECT_TRUE(p_predicate(a4, 5, PKind::PNilpotent));
  EXPECT_TRUE(p_predicate(a4, 2, PKind::PClosed));
  EXPECT_FALSE(p_predicate(a4, 3, PKind::PClosed));
  EXPECT_TRUE(p_predicate(a4, 3, PKind::PNilpotent));
  EXPECT_FALSE(p_predicate(s3, 2, PKind::PClosed));
  EXPECT_TRUE(p_predicate(s3, 2, PKind::PNilpotent));
  EXPECT_FALSE(p_predicate(s3, 3, PKind::PNilpotent));
}

TEST(Siding, Examples) {
  EXPECT_TRUE(is_siding(cyclic(12)));
  EXPECT_TRUE(is_siding(elementary_abelian(2, 3)));
  EXPECT_TRUE(is_siding(paper_group(PaperGroupId::g24_8)));
  EXPECT_FALSE(is_siding(symmetric(4)));
  EXPECT_TRUE(is_siding(symmetric(3)));
  EXPECT_TRUE(is_siding(dihedral(16)));
  EXPECT_FALSE(is_siding(alternating(4)));
}

TEST(SylowTower, Examples) {
  EXPECT_TRUE(has_supersoluble_sylow_tower(dihedral(8)));
  EXPECT_TRUE(has_supersoluble_sylow_tower(cyclic(30)));
  EXPECT_FALSE(has_supersoluble_sylow_tower(alternating(4)));
  EXPECT_TRUE(has_supersoluble_sylow_tower(paper_group(PaperGroupId::g18_3)));
  EXPECT_FALSE(has_supersoluble_sylow_tower(symmetric(4)));
}

TEST(Primitive, Examples) {
  EXPECT_FALSE(primitive_decomposition(cyclic(4)).primitive);
  const auto s3 = primitive_decomposition(symmetric(3));
  ASSERT_TRUE(s3.primitive);
  EXPECT_EQ(s3.primitivator->order(), 2u);
  EXPECT_EQ(s3.unique_minimal_normal->order(), 3u);
  EXPECT_TRUE(s3.soluble_package_holds);
  const auto a4 = primitive_decomposition(alternating(4));
  ASSERT_TRUE(a4.primitive);
  EXPECT_EQ(a4.primitivator->order(), 3u);
  EXPECT_EQ(a4.unique_minimal_normal->order(), 4u);
  EXPECT_TRUE(a4.soluble_package_checked);
  EXPECT_TRUE(a4.soluble_package_holds);
  const auto s4 = primitive_decomposition(symmetric(4));
  ASSERT_TRUE(s4.primitive);
  EXPECT_EQ(s4.primitivator->order(), 6u);
  EXPECT_FALSE(primitive_decomposition(elementary_abelian(2, 2)).primitive);
}

TEST(ClassificationReport, TextBlockForA4) {
  const auto text = classify(alternating(4)).render_text();
  EXPECT_NE(text.find("WSupersoluble false\n"), std::string::npos);
  EXPECT_NE(text.find("AbelianSylow true\n"), std::string::npos);
  EXPECT_NE(text.find("p2_closed true\n"), std::string::npos);
  EXPECT_NE(text.find("Primitive true\n"), std::string::npos);
  const auto rec = classify(alternating(4)).render_structured("A4");
  EXPECT_NE(rec.find("group=A4 predicate=WSupersoluble value=false"), std::string::npos);
}

TEST(Memo, RepeatedCallsAgree) {
  const auto g = paper_group(PaperGroupId::g144_115);
  for (int i = 0; i < 3; ++i) {
    EXPECT_FALSE(is_w_supersoluble(g));
    EXPECT_TRUE(is_soluble(g));
  }
}

TEST(Memo, FaultBypassesCachedAnswers) {
  const auto g = symmetric(4);
  EXPECT_TRUE(is_soluble(g));
  EXPECT_FALSE(is_w_supersoluble(g));
  {
    wsu::testing::ScopedFault f(wsu::testing::Fault::WSupersolubleMeansSoluble);
    EXPECT_TRUE(is_w_supersoluble(g));
  }
  EXPECT_FALSE(is_w_supersoluble(g));
}

TEST(SubgroupClassification, ParentLatticeMatchesOwnTable) {
  const auto g = paper_group(PaperGroupId::g72_40);
  const auto& lat = g.lattice();
  for (std::size_t i = 0; i < lat.size(); ++i)
    EXPECT_EQ(subgroup_is_w_supersoluble(g, i), is_w_supersoluble(subgroup_table(g, lat[i].members).table)) << i;
}

namespace {

// E49 x| S3 as affine maps of F7^2: translations plus diag(2,4) and the
// coordinate swap, which together act irreducibly.
GroupTable affine_e49_by_s3() {
  auto affine = [](int a, int b, int c, int d, int tx, int ty) {
    Permutation p = Permutation::identity(49);
    for (int x = 0; x < 7; ++x)
      for (int y = 0; y < 7; ++y) {
        const int nx = (a * x + b * y + tx) % 7, ny = (c * x + d * y + ty) % 7;
        p.images[x * 7 + y] = static_cast<std::uint32_t>(nx * 7 + ny);
      }
    return p;
  };
  return from_permutation_generators(49, {affine(1, 0, 0, 1, 1, 0), affine(1, 0, 0, 1, 0, 1), affine(2, 0, 0, 4, 0, 0), affine(0, 1, 1, 0, 0, 0)});
}

}  // namespace

TEST(InFormation, WSupersolubleButNotSupersoluble) {
  const auto g = affine_e49_by_s3();
  ASSERT_EQ(g.order(), 294u);
  EXPECT_TRUE(is_w_supersoluble(g));
  EXPECT_FALSE(is_supersoluble(g));
  EXPECT_TRUE(has_supersoluble_sylow_tower(g));
  EXPECT_EQ(residual(g, FormationTag::Supersoluble).residual.order(), 49u);
  EXPECT_EQ(residual(g, FormationTag::WSupersoluble).residual.order(), 1u);
  const auto mins = select_subgroups(g, SubgroupSelection::MinimalNormal);
  ASSERT_EQ(mins.size(), 1u);
  EXPECT_EQ(mins.front().order(), 49u);
}
