#include <gtest/gtest.h>

#include <set>

#include "pogroup/group.hpp"

using namespace pogroup;

namespace {

OrderNode torsion_monoid() { return geometric_of({Rat(1)}, {{Rat(2), Int(3), 1}}); }

// brute force: closure of {1} and 2/3^n (n <= L) under addition, up to a bound
std::set<Rat> geometric_oracle(int L, const Rat &bound) {
  std::vector<Rat> vals{Rat(1)};
  for (int n = 1; n <= L; ++n) {
    Int pw;
    mpz_pow_ui(pw.get_mpz_t(), Int(3).get_mpz_t(), n);
    vals.push_back(Rat(2) / Rat(pw));
  }
  std::set<Rat> seen{Rat(0)};
  std::vector<Rat> frontier{Rat(0)};
  while (!frontier.empty()) {
    std::vector<Rat> next;
    for (auto &a : frontier)
      for (auto &v : vals) {
        Rat s = a + v;
        if (s <= bound && seen.insert(s).second) next.push_back(s);
      }
    frontier = next;
  }
  return seen;
}

}  // namespace

TEST(OrderPositivity, LexTopCoordinateDecides) {
  auto G = make_group(lex_coords(2));
  EXPECT_TRUE(is_positive(ints({-5, 1}), G).is_yes());
  EXPECT_TRUE(is_positive(ints({-5, -1}), G).is_no());
  EXPECT_EQ(compare(ints({0, 1}), ints({100, 0}), G), Comparison::Greater);
}

TEST(OrderPositivity, ProductIsComponentwise) {
  auto G = make_group(product_coords(2));
  EXPECT_TRUE(is_positive(ints({1, -1}), G).is_no());
  EXPECT_EQ(compare(ints({1, 0}), ints({0, 1}), G), Comparison::Incomparable);
}

TEST(OrderPositivity, ConeGeneratedMembership) {
  auto G = make_group(cone_of({ints({2, 0}), ints({0, 3}), ints({1, 1})}, 2));
  EXPECT_TRUE(is_positive(ints({3, 1}), G).is_yes());
  EXPECT_TRUE(is_positive(ints({2, 3}), G).is_yes());
  EXPECT_TRUE(is_positive(ints({1, 0}), G).is_no());
  EXPECT_TRUE(is_positive(ints({0, 1}), G).is_no());
  EXPECT_TRUE(is_positive(ints({0, 2}), G).is_no());
  auto a = atoms(G);
  ASSERT_TRUE(a);
  EXPECT_EQ(a->size(), 3u);
}

TEST(OrderPositivity, NonPointedConeRejected) {
  EXPECT_THROW(make_group(cone_of({ints({1, 0}), ints({-1, 0}), ints({0, 1})}, 2)), PoError);
}

TEST(GeometricCone, TorsionMonoidMembership) {
  auto G = make_group(torsion_monoid());
  EXPECT_TRUE(is_positive(Vec{make_rat(2, 3)}, G).is_yes());
  EXPECT_TRUE(is_positive(Vec{make_rat(4, 3)}, G).is_yes());
  EXPECT_TRUE(is_positive(Vec{make_rat(1, 3)}, G).is_no());
  EXPECT_TRUE(is_positive(Vec{make_rat(5, 9)}, G).is_no());
  EXPECT_TRUE(is_positive(Vec{make_rat(13, 9)}, G).is_yes());
  EXPECT_THROW(is_positive(Vec{make_rat(1, 2)}, G), PoError);
  auto a = atoms(G);
  ASSERT_TRUE(a);
  EXPECT_EQ(*a, Mat{Vec{Rat(1)}});
}

TEST(GeometricCone, CarryTruncationAgreesWithBruteForce) {
  auto G = make_group(torsion_monoid());
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> num(0, 40), lev(0, 3);
  auto reachable = geometric_oracle(5, Rat(40));
  for (int i = 0; i < 200; ++i) {
    Int pw;
    mpz_pow_ui(pw.get_mpz_t(), Int(3).get_mpz_t(), lev(rng));
    Rat x = Rat(num(rng)) / Rat(pw);
    x.canonicalize();
    bool expect = reachable.count(x) > 0;
    EXPECT_EQ(is_positive(Vec{x}, G).is_yes(), expect) << x;
  }
}

TEST(GeometricCone, ReducibleFiniteGenerator) {
  // 2/3 is three copies of 2/9
  auto G = make_group(geometric_of({make_rat(2, 3), Rat(1)}, {{Rat(2), Int(3), 2}}));
  auto a = atoms(G);
  ASSERT_TRUE(a);
  EXPECT_EQ(*a, Mat{Vec{Rat(1)}});
}

TEST(Quotients, LexQuotientKeepsTopBlock) {
  auto G = make_group(lex_of({coordinate(), coordinate(BaseRing::rationals())}));
  auto q = quotient_unchecked(G, Module::lattice(2, {ints({1, 0})}));
  EXPECT_EQ(q.group.dim(), 1u);
  EXPECT_EQ(q.projection(Vec{Rat(3), make_rat(1, 2)}), Vec{make_rat(1, 2)});
  EXPECT_THROW(quotient_unchecked(G, Module(2, {}, {}, {ints({0, 1})})), PoError);
}

TEST(Quotients, ConeQuotientProjectsGenerators) {
  auto G = make_group(cone_of({ints({1, 0, 0}), ints({0, 1, 0}), ints({0, 0, 1}), ints({1, 1, 0})}, 3));
  auto q = quotient_unchecked(G, Module::lattice(3, {ints({0, 0, 1})}));
  EXPECT_EQ(q.group.dim(), 2u);
  auto &P = q.projection.matrix;
  EXPECT_TRUE(is_zero(mat_apply(P, ints({0, 0, 5}))));
  for (size_t j = 0; j < 2; ++j) EXPECT_EQ(mat_apply(P, q.projection.lift(unit_vec(2, j))), unit_vec(2, j));
}

TEST(Quotients, LazyWindowShifts) {
  auto G = make_group(lazy_lex(4));
  auto q = quotient_unchecked(G, Module::lattice(4, {unit_vec(4, 0)}));
  EXPECT_EQ(q.group.order.offset, 1u);
  EXPECT_EQ(presentation(q.group.order), presentation(G.order));
  EXPECT_TRUE(q.projection.windowed);
}
