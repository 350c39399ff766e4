#include <gtest/gtest.h>

#include <random>

#include "pogroup/exact_algebra.hpp"

using namespace pogroup;

namespace {

// brute-force oracle: is v an integer combination of gens with |coeff| <= box
bool combo_oracle(const Vec &v, const Mat &gens, int box) {
  size_t k = gens.size();
  std::vector<int> c(k, -box);
  if (k == 0) return is_zero(v);
  while (true) {
    Vec s = zero_vec(v.size());
    for (size_t i = 0; i < k; ++i) s = s + Rat(c[i]) * gens[i];
    if (s == v) return true;
    size_t i = 0;
    while (i < k && c[i] == box) c[i++] = -box;
    if (i == k) return false;
    ++c[i];
  }
}

Mat rows(std::initializer_list<std::initializer_list<long>> rs) {
  Mat m;
  for (auto &r : rs) m.push_back(ints(r));
  return m;
}

}  // namespace

TEST(Hermite, IdentityIsFixed) {
  auto h = hermite_form(identity(2));
  EXPECT_EQ(h.H, identity(2));
  EXPECT_EQ(h.U, identity(2));
}

TEST(Hermite, AlreadyCanonical) {
  auto h = hermite_form(rows({{2, 0}, {0, 3}}));
  EXPECT_EQ(h.H, rows({{2, 0}, {0, 3}}));
}

TEST(Hermite, ReducesToCanonicalRows) {
  Mat m = rows({{2, 2}, {2, -2}});
  auto h = hermite_form(m);
  EXPECT_EQ(h.H, rows({{2, 2}, {0, 4}}));
  EXPECT_EQ(matmul(h.U, m), h.H);
  // same row lattice, checked by small combinations both ways
  for (auto &r : h.H) EXPECT_TRUE(combo_oracle(r, m, 3));
  for (auto &r : m) EXPECT_TRUE(combo_oracle(r, h.H, 3));
}

TEST(Hermite, InvertedPrimeNormalizesPivots) {
  auto R = BaseRing::inverted({Int(3)});
  auto h = hermite_form(rows({{3, 1}, {0, 9}}), R);
  EXPECT_EQ(h.H[0][0], 1);
  EXPECT_EQ(h.H[1][1], 1);
}

TEST(Hermite, RandomRowSpacePreserved) {
  std::mt19937 rng(11);
  std::uniform_int_distribution<int> d(-6, 6);
  for (int t = 0; t < 60; ++t) {
    Mat m(3, zero_vec(3));
    for (auto &r : m)
      for (auto &x : r) x = d(rng);
    auto h = hermite_form(m);
    EXPECT_EQ(matmul(h.U, m), h.H);
    for (auto &r : m) EXPECT_TRUE(solve_membership(r, h.H).has_value());
    for (auto &r : h.H) EXPECT_TRUE(solve_membership(r, m).has_value());
  }
}

TEST(Smith, Diag23) {
  auto s = smith_form(rows({{2, 0}, {0, 3}}));
  EXPECT_EQ(s.D, rows({{1, 0}, {0, 6}}));
}

TEST(Smith, ZeroMatrix) {
  auto s = smith_form(rows({{0, 0}, {0, 0}}));
  EXPECT_EQ(s.D, rows({{0, 0}, {0, 0}}));
}

TEST(Smith, UnitsOverInvertedThree) {
  auto s = smith_form(rows({{3, 0}, {0, 9}}), BaseRing::inverted({Int(3)}));
  EXPECT_EQ(s.D, identity(2));
}

TEST(Smith, RandomProductIdentityAndChain) {
  std::mt19937 rng(5);
  std::uniform_int_distribution<int> d(-8, 8);
  for (int t = 0; t < 60; ++t) {
    Mat m(3, zero_vec(4));
    for (auto &r : m)
      for (auto &x : r) x = d(rng);
    auto s = smith_form(m);
    EXPECT_EQ(matmul(matmul(s.U, m), s.V), s.D);
    auto diag = s.diagonal();
    for (size_t i = 0; i + 1 < diag.size(); ++i) {
      if (diag[i + 1] == 0) continue;
      ASSERT_NE(diag[i], 0);
      EXPECT_TRUE(is_integral(diag[i + 1] / diag[i]));
    }
  }
}

TEST(Quotient, TorsionSix) {
  auto f = quotient_presentation(2, BaseRing::integers(), rows({{2, 0}, {0, 3}}));
  EXPECT_EQ(f.freeRank, 0u);
  EXPECT_EQ(f.torsion, std::vector<Int>{6});
}

TEST(Quotient, FreeRankOne) {
  auto f = quotient_presentation(2, BaseRing::integers(), rows({{1, 0}}));
  EXPECT_EQ(f.freeRank, 1u);
  EXPECT_TRUE(f.torsion.empty());
}

TEST(Quotient, UnitGenerator) {
  auto f = quotient_presentation(1, BaseRing::inverted({Int(3)}), rows({{3}}));
  EXPECT_TRUE(f.trivial());
}

TEST(Quotient, InvariantUnderRecombination) {
  std::mt19937 rng(3);
  std::uniform_int_distribution<int> d(-5, 5);
  for (int t = 0; t < 40; ++t) {
    Mat g(3, zero_vec(3));
    for (auto &r : g)
      for (auto &x : r) x = d(rng);
    Mat g2 = g;
    std::swap(g2[0], g2[2]);
    g2[1] = g2[1] + Rat(d(rng)) * g2[0];
    g2[2] = g2[2] - Rat(d(rng)) * g2[1];
    EXPECT_EQ(quotient_presentation(3, BaseRing::integers(), g),
              quotient_presentation(3, BaseRing::integers(), g2));
  }
}

TEST(Membership, Present) {
  auto c = solve_membership(ints({2, 3}), rows({{2, 0}, {0, 3}}));
  ASSERT_TRUE(c);
  EXPECT_EQ(*c, ints({1, 1}));
}

TEST(Membership, Absent) {
  EXPECT_FALSE(solve_membership(ints({1, 1}), rows({{2, 0}, {0, 3}})));
}

TEST(Membership, InvertedScalar) {
  auto c = solve_membership(Vec{make_rat(1, 3)}, rows({{1}}), BaseRing::inverted({Int(3)}));
  ASSERT_TRUE(c);
  EXPECT_EQ((*c)[0], make_rat(1, 3));
  EXPECT_FALSE(solve_membership(Vec{make_rat(1, 2)}, rows({{1}}), BaseRing::inverted({Int(3)})));
}

TEST(Membership, AgreesWithBoxOracle) {
  std::mt19937 rng(17);
  std::uniform_int_distribution<int> d(-10, 10);
  for (int t = 0; t < 80; ++t) {
    // square full-rank instances keep the coefficient box proven: |c| <= |adj| |v|
    Mat g(2, zero_vec(2));
    for (auto &r : g)
      for (auto &x : r) x = d(rng) % 4;
    Rat det = g[0][0] * g[1][1] - g[0][1] * g[1][0];
    if (det == 0) continue;
    Vec v = {Rat(d(rng) % 4), Rat(d(rng) % 4)};
    auto c = solve_membership(v, g);
    EXPECT_EQ(c.has_value(), combo_oracle(v, g, 24));
    if (c) EXPECT_EQ(vecmat(*c, g, 2), v);
  }
}

TEST(Saturate, SingleGenerator) {
  EXPECT_EQ(saturate(rows({{2, 0}}), 2), rows({{1, 0}}));
}

TEST(Saturate, IndexTwo) {
  Mat s = saturate(rows({{1, 1}, {1, -1}}), 2);
  EXPECT_EQ(s, identity(2));
  // coset oracle: (1,0) is outside the index-2 lattice but twice it is inside
  EXPECT_FALSE(combo_oracle(ints({1, 0}), rows({{1, 1}, {1, -1}}), 3));
  EXPECT_TRUE(combo_oracle(ints({2, 0}), rows({{1, 1}, {1, -1}}), 3));
}

TEST(Saturate, Empty) { EXPECT_TRUE(saturate({}, 2).empty()); }
