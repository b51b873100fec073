#include <gtest/gtest.h>

#include <filesystem>
#include <random>

#include "wsu/wsu.hpp"

using namespace wsu;

namespace {

std::vector<std::vector<Element>> rows_of(const GroupTable& g) {
  std::vector<std::vector<Element>> rows(g.order(), std::vector<Element>(g.order()));
  for (Element i = 0; i < g.order(); ++i)
    for (Element j = 0; j < g.order(); ++j) rows[i][j] = g.mul(i, j);
  return rows;
}

bool has_element_of_order(const GroupTable& g, std::uint32_t o) {
  for (Element x = 0; x < g.order(); ++x)
    if (g.element_order(x) == o) return true;
  return false;
}

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const GroupError& e) {
    return e.code();
  }
  ADD_FAILURE() << "no GroupError thrown";
  return ErrorCode::ParseError;
}

void expect_group_axioms(const GroupTable& g) {
  const auto n = g.order();
  for (Element i = 0; i < n; ++i) {
    std::vector<bool> row(n), col(n);
    for (Element j = 0; j < n; ++j) {
      row[g.mul(i, j)] = true;
      col[g.mul(j, i)] = true;
    }
    EXPECT_EQ(std::count(row.begin(), row.end(), true), static_cast<long>(n));
    EXPECT_EQ(std::count(col.begin(), col.end(), true), static_cast<long>(n));
    EXPECT_EQ(g.mul(g.identity(), i), i);
    EXPECT_EQ(g.mul(i, g.inv(i)), g.identity());
  }
}

}  // namespace

TEST(CayleyTable, TrivialGroup) {
  const auto g = from_cayley_table(1, {{0}});
  EXPECT_EQ(g.order(), 1u);
  EXPECT_EQ(g.identity(), 0u);
}

TEST(CayleyTable, CyclicThree) {
  const auto g = from_cayley_table(3, {{0, 1, 2}, {1, 2, 0}, {2, 0, 1}});
  EXPECT_EQ(g.order(), 3u);
  EXPECT_EQ(g.element_order(1), 3u);
  EXPECT_EQ(g.element_order(2), 3u);
}

TEST(CayleyTable, SixFromPermutations) {
  const auto s3 = from_permutation_generators(3, {Permutation::from_cycles(3, "(0 1)"), Permutation::from_cycles(3, "(0 1 2)")});
  const auto g = from_cayley_table(6, rows_of(s3));
  EXPECT_EQ(g.order(), 6u);
  EXPECT_FALSE(g.is_abelian());
}

TEST(CayleyTable, RejectsBadTables) {
  EXPECT_EQ(code_of([] { from_cayley_table(2, {{0, 0}, {1, 1}}); }), ErrorCode::NotLatinSquare);
  EXPECT_EQ(code_of([] { from_cayley_table(3, {{0, 2, 1}, {2, 1, 0}, {1, 0, 2}}); }), ErrorCode::NoIdentity);
  // A Latin square with identity 0 that is not associative.
  const std::vector<std::vector<Element>> loop = {
      {0, 1, 2, 3, 4}, {1, 0, 3, 4, 2}, {2, 4, 0, 1, 3}, {3, 2, 4, 0, 1}, {4, 3, 1, 2, 0}};
  EXPECT_EQ(code_of([&] { from_cayley_table(5, loop); }), ErrorCode::NotAssociative);
}

TEST(PermutationGenerators, Examples) {
  EXPECT_EQ(from_permutation_generators(3, {}).order(), 1u);
  const auto s3 = from_permutation_generators(3, {Permutation::from_cycles(3, "(0 1)"), Permutation::from_cycles(3, "(0 1 2)")});
  EXPECT_EQ(s3.order(), 6u);
  const auto c4 = from_permutation_generators(6, {Permutation::from_cycles(6, "(0 1 2 3)(4 5)")});
  EXPECT_EQ(c4.order(), 4u);
  EXPECT_TRUE(c4.is_abelian());
  EXPECT_TRUE(has_element_of_order(c4, 4));
}

TEST(PermutationGenerators, CapExceeded) {
  const std::size_t saved = order_cap();
  order_cap() = 100;
  EXPECT_EQ(code_of([] { symmetric(5); }), ErrorCode::OrderCapExceeded);
  order_cap() = saved;
}

TEST(NamedGroups, Orders) {
  EXPECT_EQ(cyclic(12).order(), 12u);
  EXPECT_TRUE(cyclic(12).is_abelian());
  const auto e9 = elementary_abelian(3, 2);
  EXPECT_EQ(e9.order(), 9u);
  EXPECT_EQ(e9.exponent(), 3u);
  EXPECT_EQ(alternating(4).order(), 12u);
  EXPECT_EQ(symmetric(4).order(), 24u);
  EXPECT_EQ(dihedral(10).order(), 10u);
  EXPECT_EQ(named_group({NamedGroupSpec::Kind::ElementaryAbelian, 2, 3}).order(), 8u);
  EXPECT_EQ(code_of([] { elementary_abelian(4, 2); }), ErrorCode::InvalidParameter);
  EXPECT_EQ(code_of([] { dihedral(7); }), ErrorCode::InvalidParameter);
}

TEST(DirectProduct, Examples) {
  const auto s3 = symmetric(3);
  EXPECT_TRUE(is_isomorphic(direct_product(s3, cyclic(1)), s3).isomorphic);
  EXPECT_TRUE(has_element_of_order(direct_product(cyclic(2), cyclic(3)), 6));
  const auto e = direct_product(cyclic(3), cyclic(3));
  EXPECT_EQ(e.order(), 9u);
  EXPECT_EQ(e.exponent(), 3u);
}

TEST(SemidirectProduct, InversionGivesNonabelianSix) {
  const auto z3 = cyclic(3), z2 = cyclic(2);
  auto act = ActionSpec::trivial(z3, z2);
  for (Element x = 0; x < 3; ++x) act.automorphism_of[1][x] = z3.inv(x);
  const auto g = semidirect_product(z3, z2, act);
  EXPECT_EQ(g.order(), 6u);
  EXPECT_FALSE(g.is_abelian());
}

TEST(SemidirectProduct, TrivialActionIsDirectProduct) {
  for (auto [n, h] : {std::pair{cyclic(4), symmetric(3)}, std::pair{elementary_abelian(2, 2), cyclic(3)}}) {
    const auto sd = semidirect_product(n, h, ActionSpec::trivial(n, h));
    EXPECT_EQ(sd.flat_table(), direct_product(n, h).flat_table());
  }
}

TEST(SemidirectProduct, InnerBlockOfOrder36) {
  const auto e9 = elementary_abelian(3, 2), z4 = cyclic(4);
  std::size_t with_kernel_two = 0;
  for (const auto& act : all_actions(e9, z4)) {
    std::size_t kernel = 0;
    for (Element h = 0; h < 4; ++h) {
      bool id = true;
      for (Element x = 0; x < 9; ++x) id = id && act.automorphism_of[h][x] == x;
      kernel += id;
    }
    if (kernel != 2) continue;
    ++with_kernel_two;
    EXPECT_EQ(semidirect_product(e9, z4, act).order(), 36u);
  }
  EXPECT_GT(with_kernel_two, 0u);
}

TEST(SemidirectProduct, RejectsNonAutomorphism) {
  const auto z3 = cyclic(3), z2 = cyclic(2);
  auto act = ActionSpec::trivial(z3, z2);
  act.automorphism_of[1] = {0, 0, 0};
  EXPECT_EQ(code_of([&] { semidirect_product(z3, z2, act); }), ErrorCode::NotAutomorphism);
  auto hom = ActionSpec::trivial(z3, z2);
  hom.automorphism_of[0] = {0, 2, 1};
  EXPECT_EQ(code_of([&] { semidirect_product(z3, z2, hom); }), ErrorCode::NotHomomorphism);
}

TEST(Quotient, Examples) {
  const auto s3 = symmetric(3);
  const auto q1 = quotient_group(s3, trivial_subgroup(s3));
  EXPECT_EQ(q1.table.order(), 6u);
  auto proj = q1.projection;
  std::sort(proj.begin(), proj.end());
  EXPECT_EQ(std::unique(proj.begin(), proj.end()), proj.end());

  EXPECT_EQ(quotient_group(s3, derived(s3)).table.order(), 2u);
  const auto g18 = paper_group(PaperGroupId::g18_3);
  EXPECT_EQ(quotient_group(g18, sylow(g18, 3)).table.order(), 2u);

  Element reflection = 0;
  for (Element x = 0; x < 6; ++x)
    if (s3.element_order(x) == 2) reflection = x;
  const std::vector<Element> gen{reflection};
  EXPECT_EQ(code_of([&] { quotient_group(s3, subgroup_generated(s3, gen)); }), ErrorCode::NotNormal);
}

TEST(Quotient, ProjectionIsHomomorphism) {
  for (const auto& g : {symmetric(4), dihedral(12), paper_group(PaperGroupId::g18_3)}) {
    for (std::size_t n : g.lattice().normal_indices()) {
      const auto q = quotient_group(g, g.lattice()[n]);
      EXPECT_EQ(q.table.order() * g.lattice().order_of(n), g.order());
      for (Element a = 0; a < g.order(); ++a)
        for (Element b = 0; b < g.order(); ++b) ASSERT_EQ(q.projection[g.mul(a, b)], q.table.mul(q.projection[a], q.projection[b]));
    }
  }
}

TEST(Isomorphism, Examples) {
  const auto g = dihedral(12);
  const auto self = is_isomorphic(g, g);
  ASSERT_TRUE(self.isomorphic);
  ASSERT_TRUE(self.witness);
  EXPECT_TRUE(is_isomorphism(g, g, *self.witness));
  EXPECT_FALSE(is_isomorphic(cyclic(4), elementary_abelian(2, 2)).isomorphic);
  const auto r = is_isomorphic(dihedral(12), direct_product(symmetric(3), cyclic(2)));
  ASSERT_TRUE(r.isomorphic);
  EXPECT_TRUE(is_isomorphism(dihedral(12), direct_product(symmetric(3), cyclic(2)), *r.witness));
  EXPECT_FALSE(is_isomorphic(alternating(4), dihedral(12)).isomorphic);
}

TEST(Isomorphism, RelabelledTablesAreIsomorphic) {
  std::mt19937 rng(20240607);
  for (const auto& g : {alternating(4), dihedral(16), paper_group(PaperGroupId::g18_3), symmetric(4)}) {
    std::vector<Element> perm(g.order());
    std::iota(perm.begin(), perm.end(), Element{0});
    std::shuffle(perm.begin() + 1, perm.end(), rng);
    std::vector<std::vector<Element>> rows(g.order(), std::vector<Element>(g.order()));
    for (Element i = 0; i < g.order(); ++i)
      for (Element j = 0; j < g.order(); ++j) rows[perm[i]][perm[j]] = perm[g.mul(i, j)];
    const auto h = from_cayley_table(g.order(), rows);
    const auto r = is_isomorphic(g, h);
    ASSERT_TRUE(r.isomorphic);
    EXPECT_TRUE(is_isomorphism(g, h, *r.witness));
    EXPECT_TRUE(is_isomorphic(h, g).isomorphic);
    EXPECT_EQ(fingerprint(g), fingerprint(h));
  }
}

TEST(Axioms, ConstructedTables) {
  for (const auto& g : {cyclic(7), elementary_abelian(2, 3), symmetric(4), alternating(5), dihedral(14), paper_group(PaperGroupId::g24_8)})
    expect_group_axioms(g);
}

TEST(TextFormats, CayleyRoundTrip) {
  for (const auto& g : {cyclic(1), symmetric(3), paper_group(PaperGroupId::g72_40)}) {
    const auto text = to_cayley_text(g);
    const auto back = parse_cayley_text(text);
    EXPECT_EQ(back.flat_table(), g.flat_table());
    EXPECT_EQ(to_cayley_text(back), text);
  }
}

TEST(TextFormats, CayleyErrors) {
  EXPECT_EQ(code_of([] { parse_cayley_text("rows 2\n0 1\n1 0\n"); }), ErrorCode::ParseError);
  EXPECT_EQ(code_of([] { parse_cayley_text("order 2\n0 1\n1\n"); }), ErrorCode::ParseError);
  EXPECT_EQ(code_of([] { parse_cayley_text("order 2\n0 1\n1 2\n"); }), ErrorCode::ParseError);
  EXPECT_EQ(code_of([] { parse_cayley_text("order 2\n0 1\n0 1\n"); }), ErrorCode::NotLatinSquare);
}

TEST(TextFormats, GeneratorRoundTrip) {
  GeneratorFile f{6, {Permutation::from_cycles(6, "(0 1)(2 3 4)"), Permutation::from_cycles(6, "(0 5)")}};
  const auto text = to_generator_text(f);
  const auto back = parse_generator_text(text);
  EXPECT_EQ(back.degree, 6u);
  ASSERT_EQ(back.gens.size(), 2u);
  EXPECT_EQ(to_generator_text(back), text);
  EXPECT_EQ(back.gens[0].images, f.gens[0].images);
}

TEST(TextFormats, LoadEitherFormat) {
  const auto dir = std::filesystem::temp_directory_path() / "wsu_group_core_test";
  std::filesystem::create_directories(dir);
  const auto cayley = (dir / "s3.txt").string();
  const auto gens = (dir / "s3.gens").string();
  write_file(cayley, to_cayley_text(symmetric(3)));
  write_file(gens, "degree 3\n(0 1)\n(0 1 2)\n");
  EXPECT_EQ(load_group_file(cayley).order(), 6u);
  EXPECT_TRUE(is_isomorphic(load_group_file(gens), symmetric(3)).isomorphic);
  EXPECT_TRUE(is_isomorphic(parse_group_expr("file:" + gens), symmetric(3)).isomorphic);
  std::filesystem::remove_all(dir);
}

TEST(GroupExpressions, Grammar) {
  EXPECT_EQ(parse_group_expr("trivial").order(), 1u);
  EXPECT_EQ(parse_group_expr("cyclic:5").order(), 5u);
  EXPECT_EQ(parse_group_expr("elementary:2:3").order(), 8u);
  EXPECT_EQ(parse_group_expr("symmetric:4").order(), 24u);
  EXPECT_EQ(parse_group_expr("alternating:4").order(), 12u);
  EXPECT_EQ(parse_group_expr("dihedral:8").order(), 8u);
  EXPECT_EQ(parse_group_expr("product(cyclic:2, product(cyclic:3,cyclic:5))").order(), 30u);
  EXPECT_EQ(parse_group_expr("paper:g18_3").order(), 18u);
  const auto sd = parse_group_expr("semidirect(cyclic:3,cyclic:2,action#1)");
  EXPECT_TRUE(is_isomorphic(sd, symmetric(3)).isomorphic);
  EXPECT_EQ(code_of([] { parse_group_expr("cyclic"); }), ErrorCode::ParseError);
  EXPECT_EQ(code_of([] { parse_group_expr("product(cyclic:2"); }), ErrorCode::ParseError);
  EXPECT_EQ(code_of([] { parse_group_expr("paper:nope"); }), ErrorCode::ParseError);
  EXPECT_EQ(code_of([] { parse_group_expr("banana:3"); }), ErrorCode::ParseError);
  EXPECT_EQ(code_of([] { parse_group_expr("semidirect(cyclic:3,cyclic:2,action#9)"); }), ErrorCode::InvalidParameter);
}

TEST(GroupExpressions, CorpusConstructionsRebuild) {
  for (const auto& e : corpus_generate(40)) {
    const auto g = parse_group_expr(e.construction);
    EXPECT_TRUE(is_isomorphic(g, e.group).isomorphic) << e.construction;
  }
}
