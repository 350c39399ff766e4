#include <gtest/gtest.h>

#include <random>

#include "pogroup/divisibility.hpp"
#include "pogroup/structure.hpp"

using namespace pogroup;

namespace {

PoGroup rationals() { return make_group(coordinate(BaseRing::rationals()), "Q"); }

// atoms of an integer product-ordered group read off a box: nonzero positives that are not sums of two
Mat box_atoms(size_t d, int box) {
  std::vector<Vec> pos;
  std::vector<long> c(d, 0);
  std::function<void(size_t)> go = [&](size_t i) {
    if (i == d) {
      Vec v;
      for (auto x : c) v.push_back(Rat(x));
      if (!is_zero(v)) pos.push_back(v);
      return;
    }
    for (c[i] = 0; c[i] <= box; ++c[i]) go(i + 1);
  };
  go(0);
  std::set<Vec> sums;
  for (auto &a : pos)
    for (auto &b : pos) sums.insert(a + b);
  Mat out;
  for (auto &v : pos)
    if (!sums.count(v)) out.push_back(v);
  std::sort(out.begin(), out.end());
  return out;
}

// product of a coordinate Z and a two-block lex Z^2: Q(G) is not a lex summand
PoGroup product_with_lex() { return make_group(product_of({coordinate(), lex_coords(2)}), "Z x lex Z^2"); }

}  // namespace

TEST(DirectSum, Shapes) {
  PoGroup z = make_group(coordinate(), "Z");
  EXPECT_EQ(direct_sum({z, rationals()}, SumMode::LexBlocks).presentation(), stabilizing_group(1).presentation());
  EXPECT_EQ(direct_sum({z, z}, SumMode::Product).presentation(), product_integers(2).presentation());
  EXPECT_TRUE(direct_sum({}, SumMode::Product).trivial());
}

TEST(DirectSum, QuotientOfSum) {
  PoGroup p2 = product_integers(2);
  Module bottom = Module::lattice(2, {ints({1, 0})});
  EXPECT_TRUE(verify_sum_quotient({{p2, bottom}, {p2, bottom}}).is_yes());
  auto single = verify_sum_quotient({{p2, bottom}});
  EXPECT_TRUE(single.is_yes()) << single.witness;
  PoGroup l2 = lex_integers(2);
  EXPECT_TRUE(verify_sum_quotient({{l2, atomic_subgroup(l2)}, {rationals(), Module(1)}}).is_yes());
  EXPECT_THROW(verify_sum_quotient({{p2, Module::lattice(2, {ints({1, 1})})}}), PoError);
}

TEST(DirectSum, AtomsOfSumAgainstBox) {
  EXPECT_TRUE(verify_atoms_of_sum({product_integers(2), rationals()}).is_yes());
  EXPECT_TRUE(verify_atoms_of_sum({product_integers(2)}).is_yes());
  EXPECT_TRUE(verify_atoms_of_sum({product_integers(2), product_integers(1)}).is_yes());
  auto s = direct_sum({product_integers(2), product_integers(1)}, SumMode::Product);
  Mat a = atoms_or_throw(s);
  std::sort(a.begin(), a.end());
  EXPECT_EQ(a, box_atoms(3, 3));
}

TEST(Complement, LexPlaneChoices) {
  PoGroup l2 = lex_integers(2);
  EXPECT_TRUE(is_quasi_atomic_complement(Module::lattice(2, {ints({0, 1})}), l2).is_yes());
  EXPECT_TRUE(is_quasi_atomic_complement(Module::lattice(2, {ints({1, 1})}), l2).is_yes());
  EXPECT_TRUE(is_quasi_atomic_complement(Module::lattice(2, {ints({1, 0})}), l2).is_no());
  auto c = find_quasi_atomic_complement(l2);
  ASSERT_TRUE(c);
  EXPECT_TRUE(c->complement == Module::lattice(2, {ints({0, 1})}));
  EXPECT_TRUE(is_direct_summand_split(c->complement, l2).is_yes());
}

TEST(Complement, MultipliersAgainstSearch) {
  for (auto &e : corpus()) {
    if (!e.group.directed || e.name == "never-terminates") continue;
    auto c = find_quasi_atomic_complement(e.group);
    ASSERT_TRUE(c) << e.name;
    EXPECT_TRUE(is_quasi_atomic_complement(c->complement, e.group).is_yes()) << e.name;
    Module sum = c->complement + quasi_atomic_subgroup(e.group);
    for (auto &[g, n] : c->perElementMultipliers) {
      EXPECT_TRUE(sum.contains(Rat(n) * g)) << e.name;
      for (long k = 1; k < n; ++k) EXPECT_FALSE(sum.contains(Rat(k) * g)) << e.name;
    }
  }
}

TEST(Complement, NonDirectedNoSummand) {
  auto G = make_group(cone_of({ints({1})}, 1, {BaseRing::rationals()}), "Q with N", false);
  EXPECT_TRUE(quasi_atomic_subgroup(G) == Module::lattice(1, {ints({1})}));
  auto c = find_quasi_atomic_complement(G);
  ASSERT_TRUE(c);
  EXPECT_TRUE(c->complement.is_zero());
  EXPECT_TRUE(is_quasi_atomic_complement(c->complement, G).is_yes());
  EXPECT_TRUE(is_direct_summand_split(c->complement, G).is_no());
}

TEST(Complement, DivisibleComplementSplits) {
  for (size_t n = 1; n <= 3; ++n) {
    PoGroup G = stabilizing_group(n);
    auto c = find_quasi_atomic_complement(G);
    ASSERT_TRUE(c);
    bool divisible = c->complement.divisible_basis().size() == c->complement.rank();
    if (n == 1) EXPECT_TRUE(divisible);
    if (divisible) EXPECT_TRUE(is_direct_summand_split(c->complement, G).is_yes());
  }
}

TEST(LexSplit, Cases) {
  PoGroup l2 = lex_integers(2);
  auto q = quotient_unchecked(l2, quasi_atomic_subgroup(l2));
  EXPECT_TRUE(verify_lex_split(l2, make_hom(q.group, l2, {ints({0}), ints({1})})).is_yes());
  EXPECT_TRUE(verify_lex_split(l2, make_hom(q.group, l2, {ints({1}), ints({1})})).is_yes());
  EXPECT_THROW(verify_lex_split(l2, make_hom(q.group, l2, {ints({1}), ints({0})})), PoError);
  EXPECT_TRUE(verify_lex_split(trivial_group(), identity_hom(trivial_group())).is_yes());
  PoGroup bad = product_with_lex();
  EXPECT_TRUE(verify_lex_split(bad, canonical_section(bad)).is_no());
}

TEST(LexSplit, TorsionMonoidQuotientIsTrivial) {
  PoGroup G = corpus()[2].group;
  EXPECT_TRUE(quasi_atomic_subgroup(G) == G.carrier);
  EXPECT_TRUE(verify_lex_split(G, canonical_section(G)).is_yes());
  // the atomic subgroup is Z, which has no complement inside the rank-one carrier Z[1/3]
  Module A = atomic_subgroup(G);
  EXPECT_EQ(A.rank(), G.carrier.rank());
  EXPECT_FALSE(A.contains(G.carrier));
}

TEST(LexSplit, CorollaryUseful) {
  for (size_t n = 1; n <= 5; ++n) EXPECT_TRUE(verify_cor_useful(lex_integers(n), 8).is_yes()) << n;
  auto s = verify_cor_useful(stabilizing_group(1), 8);
  EXPECT_TRUE(s.is_yes());
  EXPECT_NE(s.witness.find("antimatter tail"), std::string::npos);
  EXPECT_TRUE(verify_cor_useful(product_integers(2), 8).is_yes());
  EXPECT_TRUE(verify_cor_useful(product_with_lex(), 8).is_no());
  EXPECT_THROW(verify_cor_useful(make_group(lazy_lex(6)), 8), PoError);
}

TEST(LexSplit, NAtomicProductSums) {
  std::mt19937 rng(17);
  for (int t = 0; t < 12; ++t) {
    size_t k = 1 + rng() % 3, best = 0;
    std::vector<PoGroup> parts;
    for (size_t i = 0; i < k; ++i) {
      size_t n = 1 + rng() % 3;
      best = std::max(best, n);
      parts.push_back(lex_integers(n));
    }
    auto c = classify(qa_sequence(direct_sum(parts, SumMode::Product), 10));
    EXPECT_EQ(c.str(), "NAtomic(" + std::to_string(best) + ")");
  }
}
