#include <gtest/gtest.h>

#include "pogroup/divisibility.hpp"

using namespace pogroup;

namespace {

PoGroup torsion() { return make_group(torsion_monoid_node()); }

// x in the N-span of atoms by exhaustive search over bounded coefficients
bool span_oracle(const Mat &atoms, const Vec &x, int bound) {
  std::function<bool(size_t, Vec)> go = [&](size_t i, Vec rest) {
    if (is_zero(rest)) return true;
    if (i == atoms.size()) return false;
    for (int c = 0; c <= bound; ++c) {
      if (go(i + 1, rest)) return true;
      rest = rest - atoms[i];
    }
    return false;
  };
  return go(0, x);
}

}  // namespace

TEST(AtomicMonoid, TorsionExample) {
  auto G = torsion();
  EXPECT_TRUE(atomic_monoid_contains(Vec{Rat(2)}, G).is_yes());
  EXPECT_TRUE(atomic_monoid_contains(Vec{make_rat(2, 3)}, G).is_no());
  EXPECT_TRUE(atomic_monoid_contains(Vec{make_rat(5, 3)}, G).is_no());
}

TEST(AtomicMonoid, ConeAgreesWithOracle) {
  Mat gens = {ints({2, 0}), ints({0, 3}), ints({1, 1}), ints({3, 1})};
  auto G = make_group(cone_of(gens, 2));
  Mat A = atoms_or_throw(G);
  EXPECT_EQ(A.size(), 3u);  // (3,1) = (2,0) + (1,1)
  for (int a = 0; a <= 6; ++a)
    for (int b = 0; b <= 6; ++b) {
      Vec x = ints({a, b});
      EXPECT_EQ(atomic_monoid_contains(x, G).is_yes(), span_oracle(A, x, 6)) << to_string(x);
    }
}

TEST(AtomicSubgroups, LexAndProduct) {
  auto L = lex_integers(3);
  EXPECT_EQ(atomic_subgroup(L), Module::lattice(3, {ints({1, 0, 0})}));
  EXPECT_EQ(almost_atomic_subgroup(L), atomic_subgroup(L));
  EXPECT_EQ(quasi_atomic_subgroup(L), Module::lattice(3, {ints({1, 0, 0})}));
  auto P = product_integers(2);
  EXPECT_EQ(atomic_subgroup(P), P.carrier);
  auto Q = make_group(product_coords(2, BaseRing::rationals()));
  EXPECT_TRUE(quasi_atomic_subgroup(Q).is_zero());
  EXPECT_TRUE(almost_atomic_subgroup(trivial_group()).is_zero());
}

TEST(AtomicSubgroups, TorsionExample) {
  auto G = torsion();
  EXPECT_EQ(atomic_subgroup(G), Module::lattice(1, {ints({1})}));
  EXPECT_EQ(quasi_atomic_subgroup(G), G.carrier);
}

TEST(ElementClasses, NamedExamples) {
  auto F = five_indeterminate_group();
  EXPECT_EQ(classify_element(ints({0, 0, 0, -1, 2}), F), ElementClass::AlmostAtomic);
  EXPECT_EQ(classify_element(Vec{make_rat(1, 2), Rat(0), Rat(0), Rat(0), Rat(0)}, F), ElementClass::NonQuasiAtomic);
  auto R = make_group(rp_node());
  EXPECT_EQ(classify_element(ints({-1, 2}), R), ElementClass::QuasiAtomic);
  EXPECT_FALSE(atomic_subgroup(R).contains(ints({-1, 2})));
  auto T = torsion();
  EXPECT_EQ(classify_element(Vec{make_rat(2, 3)}, T), ElementClass::QuasiAtomic);
  EXPECT_EQ(classify_element(Vec{Rat(2)}, T), ElementClass::Atomic);
  EXPECT_THROW(classify_element(ints({0, 0, 0, -1, 1}), F), PoError);
}

TEST(ElementClasses, IrreducibilityAtEveryLevel) {
  // 1 stays irreducible however deep the family is truncated
  for (int N = 1; N <= 12; ++N) {
    auto k = geom::truncated_generators(torsion_monoid_node(), N);
    long one = k.scale.get_si();
    auto t = geom::knapsack_table(k.parts, one);
    bool reducible = false;
    for (long p : k.parts)
      if (p < one && t[one - p] >= 1) reducible = true;
    EXPECT_FALSE(reducible) << N;
  }
}

TEST(Localization, ValuationModel) {
  auto G = lex_integers(2);
  auto q = localize_at_atoms(G, {ints({1, 0})});
  EXPECT_EQ(presentation(q.group.order), presentation(coordinate()));
  auto id = localize_at_atoms(G, {});
  EXPECT_EQ(id.group.presentation(), G.presentation());
  EXPECT_THROW(localize_at_atoms(G, {ints({0, 1})}), PoError);
}

TEST(Localization, ComposesAcrossStages) {
  auto G = product_integers(3);
  auto a = localize_at_atoms(G, {ints({1, 0, 0})});
  Vec b = a.projection(ints({0, 1, 0}));
  auto ab = localize_at_atoms(a.group, {b});
  auto both = localize_at_atoms(G, {ints({1, 0, 0}), ints({0, 1, 0})});
  EXPECT_EQ(presentation(ab.group.order), presentation(both.group.order));
}
