#include <gtest/gtest.h>

#include <set>

#include "wsu/wsu.hpp"

using namespace wsu;

namespace {

const PaperExample& example(PaperGroupId id) {
  static std::map<PaperGroupId, PaperExample> cache;
  auto it = cache.find(id);
  if (it == cache.end()) it = cache.emplace(id, paper_example(id)).first;
  return it->second;
}

void expect_bundle_passes(PaperGroupId id) {
  const auto& ex = example(id);
  EXPECT_EQ(ex.group.order(), paper_group_order(id));
  for (const auto& c : ex.checks) EXPECT_TRUE(c.passed) << to_string(id) << ": " << c.name << " " << c.detail;
  EXPECT_TRUE(ex.passed());
}

}  // namespace

TEST(PaperGroups, AllBundlesPass) {
  for (auto id : kAllPaperGroups) expect_bundle_passes(id);
}

TEST(PaperGroups, IdsRoundTrip) {
  for (auto id : kAllPaperGroups) EXPECT_EQ(parse_paper_group(to_string(id)), id);
  EXPECT_FALSE(parse_paper_group("g1_1"));
}

TEST(PaperGroups, A4) {
  const auto g = paper_group(PaperGroupId::a4);
  EXPECT_EQ(g.order(), 12u);
  EXPECT_TRUE(in_formation(g, FormationTag::AbelianSylow));
  EXPECT_FALSE(is_w_supersoluble(g));
}

TEST(PaperGroups, Order18) {
  const auto& ex = example(PaperGroupId::g18_3);
  ASSERT_TRUE(ex.a && ex.b);
  EXPECT_TRUE(subgroup_isomorphic_to(ex.group, *ex.a, elementary_abelian(3, 2)));
  EXPECT_TRUE(subgroup_isomorphic_to(ex.group, *ex.b, cyclic(2)));
  EXPECT_TRUE(is_p_subnormal(ex.group, *ex.a));
  EXPECT_TRUE(is_p_subnormal(ex.group, *ex.b));
  EXPECT_FALSE(mutually_sn_permutable(ex.group, *ex.a, *ex.b).holds);
}

TEST(PaperGroups, Order75) {
  const auto g = paper_group(PaperGroupId::e25_z3);
  EXPECT_EQ(g.order(), 75u);
  EXPECT_FALSE(is_w_supersoluble(g));
  const auto z3 = sylow(g, 3);
  EXPECT_EQ(g.order() / z3.order(), 25u);
  EXPECT_FALSE(is_p_subnormal(g, z3));
}

TEST(PaperGroups, SidingOrder24) {
  const auto g = paper_group(PaperGroupId::g24_8);
  EXPECT_TRUE(is_siding(g));
  EXPECT_TRUE(is_supersoluble(g));
  EXPECT_FALSE(is_metacyclic(g));
  EXPECT_FALSE(is_t_group(g));
}

TEST(PaperGroups, CounterexamplesMissOnlyTheirHypothesis) {
  // Order 144: both factors w-supersoluble and P-subnormal, B nilpotent but
  // not normal, so only the normality in the first sufficient condition fails.
  const auto& ex = example(PaperGroupId::g144_115);
  ASSERT_TRUE(ex.a && ex.b);
  const auto& g = ex.group;
  const auto& lat = g.lattice();
  FactorFlagTable flags(g);
  const auto fa = flags(lat.index_of(ex.a->members));
  const auto fb = flags(lat.index_of(ex.b->members));
  EXPECT_TRUE(fa.w_supersoluble && fa.p_subnormal);
  EXPECT_TRUE(fb.w_supersoluble && fb.p_subnormal && fb.nilpotent);
  EXPECT_FALSE(fb.normal);
  EXPECT_FALSE(is_prime(g.order() / ex.b->order()));
  EXPECT_FALSE(is_w_supersoluble(g));
}

TEST(FactorizationScan, WholeGroupAlwaysPresent) {
  for (const auto& g : {cyclic(1), symmetric(3), alternating(4)}) {
    const auto recs = factorization_scan(g);
    const auto top = g.lattice().top();
    EXPECT_TRUE(std::any_of(recs.begin(), recs.end(), [&](const auto& r) { return r.a_index == top && r.b_index == top; }));
  }
}

TEST(FactorizationScan, A4ContainsV4TimesZ3) {
  const auto g = alternating(4);
  const auto v4 = sylow(g, 2);
  bool found = false;
  for (const auto& r : factorization_scan(g)) {
    if (!(r.a == v4) || r.b.order() != 3) continue;
    found = true;
    EXPECT_TRUE(r.a_flags.w_supersoluble);
    EXPECT_TRUE(r.a_flags.p_subnormal);
    EXPECT_TRUE(r.b_flags.nilpotent);
    EXPECT_FALSE(r.b_flags.p_subnormal);
  }
  EXPECT_TRUE(found);
}

TEST(FactorizationScan, SixContainsA3TimesTwo) {
  const auto g = symmetric(3);
  const auto recs = factorization_scan(g);
  EXPECT_TRUE(std::any_of(recs.begin(), recs.end(), [](const auto& r) { return r.a.order() == 3 && r.b.order() == 2; }));
}

TEST(FactorizationScan, RecordsAreFactorizationsWithoutSwaps) {
  const auto g = symmetric(4);
  const auto recs = factorization_scan(g);
  std::set<std::pair<std::size_t, std::size_t>> seen;
  for (const auto& r : recs) {
    EXPECT_GE(r.a_index, r.b_index);
    EXPECT_TRUE(complex_product(g, r.a, r.b).equals_parent);
    EXPECT_TRUE(seen.insert({r.a_index, r.b_index}).second);
  }
  // Brute-force count of unordered factorizations.
  const auto& lat = g.lattice();
  std::size_t expected = 0;
  for (std::size_t a = 0; a < lat.size(); ++a)
    for (std::size_t b = 0; b <= a; ++b) expected += product_set(g, lat[a].members, lat[b].members).count() == g.order();
  EXPECT_EQ(recs.size(), expected);
}

TEST(FactorizationScan, FilterAppliesLast) {
  const auto g = symmetric(4);
  const auto all = factorization_scan(g);
  const auto kept = factorization_scan(g, [](const FactorizationRecord& r) { return r.theorem1_hypotheses(); });
  EXPECT_EQ(kept.size(), static_cast<std::size_t>(std::count_if(all.begin(), all.end(), [](const auto& r) { return r.theorem1_hypotheses(); })));
}

TEST(FactorizationScan, FlagsMatchDirectComputation) {
  const auto g = paper_group(PaperGroupId::g72_40);
  for (const auto& r : factorization_scan(g)) {
    for (const auto& [s, f] : {std::pair{r.a, r.a_flags}, std::pair{r.b, r.b_flags}}) {
      const auto t = subgroup_table(g, s.members).table;
      EXPECT_EQ(f.w_supersoluble, is_w_supersoluble(t));
      EXPECT_EQ(f.nilpotent, is_nilpotent(t));
      EXPECT_EQ(f.siding, is_siding(t));
      EXPECT_EQ(f.normal, is_normal(g, s));
      EXPECT_EQ(f.subnormal, is_subnormal(g, s));
      EXPECT_EQ(f.p_subnormal, is_p_subnormal(g, s));
    }
  }
}

TEST(Corpus, OrderOneIsTrivialOnly) {
  const auto c = corpus_generate(1);
  ASSERT_EQ(c.size(), 1u);
  EXPECT_EQ(c[0].group.order(), 1u);
}

TEST(Corpus, Order24Membership) {
  const auto c = corpus_generate(24);
  std::set<std::size_t> orders;
  for (const auto& e : c) orders.insert(e.group.order());
  for (std::size_t o = 1; o <= 24; ++o) EXPECT_TRUE(orders.count(o)) << o;
  auto has = [&](const GroupTable& g) {
    return std::any_of(c.begin(), c.end(), [&](const auto& e) { return is_isomorphic(e.group, g).isomorphic; });
  };
  EXPECT_TRUE(has(alternating(4)));
  EXPECT_TRUE(has(dihedral(12)));
  EXPECT_TRUE(has(paper_group(PaperGroupId::g24_8)));
  EXPECT_TRUE(has(symmetric(4)));
}

TEST(Corpus, DuplicateFreeAndDeterministic) {
  const auto a = corpus_generate(48), b = corpus_generate(48);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].manifest_line(), b[i].manifest_line());
    EXPECT_EQ(a[i].group.flat_table(), b[i].group.flat_table());
  }
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < i; ++j)
      if (a[i].fp == a[j].fp) EXPECT_FALSE(is_isomorphic(a[i].group, a[j].group).isomorphic) << a[i].name << " vs " << a[j].name;
}

TEST(Corpus, RejectsOrderAboveLatticeCap) {
  try {
    corpus_generate(lattice_cap() + 1);
    ADD_FAILURE() << "expected InvalidParameter";
  } catch (const GroupError& e) {
    EXPECT_EQ(e.code(), ErrorCode::InvalidParameter);
  }
}

TEST(Corpus, ManifestLine) {
  const auto c = corpus_generate(6);
  for (const auto& e : c) {
    EXPECT_EQ(e.manifest_line(), e.name + " " + std::to_string(e.group.order()) + " " + e.construction + " " + e.fp.to_string());
    EXPECT_TRUE(is_isomorphic(parse_group_expr(e.construction), e.group).isomorphic) << e.construction;
  }
}
