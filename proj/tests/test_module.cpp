#include <gtest/gtest.h>

#include "pogroup/lp.hpp"
#include "pogroup/module.hpp"

using namespace pogroup;

namespace {
Module z3_line() { return Module(1, {ints({1})}, {{Int(3), {ints({1})}}}); }
}  // namespace

TEST(ModuleMembership, InvertedThree) {
  Module m = z3_line();
  EXPECT_TRUE(m.contains(Vec{make_rat(2, 27)}));
  EXPECT_FALSE(m.contains(Vec{make_rat(1, 2)}));
}

TEST(ModuleMembership, MixedCoordinates) {
  // Z + Q in two coordinates, plus a Z[1/2] diagonal
  Module m(3, {ints({1, 0, 0}), ints({0, 0, 1})}, {{Int(2), {ints({0, 0, 1})}}}, {ints({0, 1, 0})});
  EXPECT_TRUE(m.contains(Vec{Rat(3), make_rat(5, 7), make_rat(1, 8)}));
  EXPECT_FALSE(m.contains(Vec{make_rat(1, 2), Rat(0), Rat(0)}));
  EXPECT_FALSE(m.contains(Vec{Rat(0), Rat(0), make_rat(1, 3)}));
}

TEST(ModuleMembership, NonCoordinateDivisibleDirection) {
  // Z^2 plus Z[1/3](1,1): (1/3,1/3) in, (1/3,0) out
  Module m(2, {ints({1, 0}), ints({0, 1})}, {{Int(3), {ints({1, 1})}}});
  EXPECT_TRUE(m.contains(Vec{make_rat(1, 3), make_rat(1, 3)}));
  EXPECT_TRUE(m.contains(Vec{make_rat(4, 3), make_rat(1, 3)}));
  EXPECT_FALSE(m.contains(Vec{make_rat(1, 3), Rat(0)}));
}

TEST(ModuleContainment, DivisibleParts) {
  Module z = Module::lattice(1, {ints({1})});
  EXPECT_TRUE(z3_line().contains(z));
  EXPECT_FALSE(z.contains(z3_line()));
  EXPECT_EQ(z3_line(), Module(1, {ints({3})}, {{Int(3), {ints({9})}}}));
}

TEST(ModuleIntersect, Lattices) {
  Module a = Module::lattice(2, {ints({2, 0}), ints({0, 1})});
  Module b = Module::lattice(2, {ints({1, 1}), ints({0, 3})});
  Module c = intersect(a, b);
  EXPECT_TRUE(a.contains(c) && b.contains(c));
  EXPECT_TRUE(c.contains(ints({2, 2})));
  EXPECT_TRUE(c.contains(ints({0, 3})));
  EXPECT_FALSE(c.contains(ints({0, 1})));
}

TEST(QuotientTypeTest, PrueferThree) {
  auto t = quotient_type(z3_line(), Module::lattice(1, {ints({1})}));
  EXPECT_EQ(t.rank, 0u);
  EXPECT_TRUE(t.torsion.empty());
  EXPECT_EQ(t.prufer.at(Int(3)), 1u);
  EXPECT_EQ(t.qmodz, 0u);
}

TEST(QuotientTypeTest, RationalsModIntegers) {
  auto t = quotient_type(Module(1, {}, {}, {ints({1})}), Module::lattice(1, {ints({1})}));
  EXPECT_EQ(t.qmodz, 1u);
  EXPECT_TRUE(t.prufer.empty());
}

TEST(QuotientTypeTest, FiniteTorsionAndFreeParts) {
  Module z2 = Module::lattice(2, identity(2));
  auto t = quotient_type(z2, Module::lattice(2, {ints({2, 0}), ints({0, 3})}));
  EXPECT_EQ(t.torsion, std::vector<Int>{6});
  auto u = quotient_type(z2, Module::lattice(2, {ints({1, 0})}));
  EXPECT_EQ(u.rank, 1u);
  EXPECT_TRUE(u.finitely_generated());
  auto w = quotient_type(z3_line(), Module(1, {ints({2})}, {{Int(3), {ints({2})}}}));
  EXPECT_EQ(w.torsion, std::vector<Int>{2});
  EXPECT_TRUE(w.prufer.empty());
}

TEST(QuotientTypeTest, DivisibleTorsionFreeRanks) {
  Module m(2, {ints({1, 0}), ints({0, 1})}, {{Int(3), {ints({0, 1})}}}, {});
  auto t = quotient_type(m, Module::lattice(2, {ints({1, 0})}));
  EXPECT_EQ(t.rank, 1u);
  EXPECT_EQ(t.pdivRank.at(Int(3)), 1u);
}

TEST(ElementOrder, PrueferClasses) {
  Module den = Module::lattice(1, {ints({1})});
  EXPECT_EQ(element_order(Vec{make_rat(2, 3)}, den), 3);
  EXPECT_EQ(element_order(Vec{make_rat(4, 3)}, den), 3);
  EXPECT_EQ(element_order(Vec{make_rat(2, 9)}, den), 9);
  EXPECT_EQ(element_order(Vec{Rat(5)}, den), 1);
}

TEST(LinearProgram, ConeMembership) {
  Mat g = {ints({1, 0}), ints({1, 1})};
  EXPECT_TRUE(cone_contains_mod(g, {}, ints({3, 1})));
  EXPECT_FALSE(cone_contains_mod(g, {}, ints({0, 1})));
  EXPECT_TRUE(cone_contains_mod(g, {ints({1, 0})}, ints({-5, 1})));
}

TEST(LinearProgram, PointedFunctional) {
  Mat g = {ints({2, 0}), ints({0, 3}), ints({1, 1})};
  auto l = pointed_functional(g, 2);
  ASSERT_TRUE(l);
  for (auto &v : g) EXPECT_GE(dot(*l, v), 1);
  EXPECT_FALSE(pointed_functional({ints({1, 0}), ints({-1, 0})}, 2));
}
