#pragma once

#include "pogroup/sequence.hpp"

namespace pogroup {

// exponent data of a monomial domain; divisibility is taken to be decided by monomials
struct MonomialPresentation {
  std::vector<std::string> indeterminates;
  Mat finiteExponentGens;
  std::vector<GeometricFamily> families;
  std::vector<Region> rayRegions;  // dense exponents: the value monoid as a union of regions
  Mat rayAtoms;
  std::vector<Template> rayTemplates;
  std::vector<BaseRing> rayRings;
  std::vector<BaseRing> lexRings;  // valuation-style presentations: value group ordered lexicographically
  bool localizedAtMonomialMaximal = false;
};

inline PoGroup build_divisibility_group(const MonomialPresentation &p) {
  size_t d = p.indeterminates.size();
  if (d == 0) throw PoError("MalformedPresentation", "no indeterminates");
  std::string prov = "monomial exponents of k[" ;
  for (size_t i = 0; i < d; ++i) prov += (i ? "," : "") + p.indeterminates[i];
  prov += "]; divisibility assumed monomial";
  if (!p.lexRings.empty()) {
    if (p.lexRings.size() != d) throw PoError("MalformedPresentation", "lex rings do not match the indeterminates");
    std::vector<OrderNode> kids;
    for (auto &r : p.lexRings) kids.push_back(coordinate(r));
    return make_group(lex_of(kids), prov);
  }
  if (!p.rayRegions.empty()) {
    OrderNode n;
    n.kind = OrderKind::Predicate;
    n.rings = p.rayRings.empty() ? std::vector<BaseRing>(d, BaseRing::integers()) : p.rayRings;
    if (n.rings.size() != d) throw PoError("MalformedPresentation", "ring list does not match the indeterminates");
    n.regions = p.rayRegions;
    n.atoms = p.rayAtoms;
    n.templates = p.rayTemplates;
    n.note = "case rules";
    return make_group(n, prov);
  }
  for (auto &g : p.finiteExponentGens) {
    if (g.size() != d) throw PoError("MalformedPresentation", "exponent vector has the wrong length");
    for (auto &x : g)
      if (x < 0) throw PoError("MalformedPresentation", "negative exponent without a case rule");
  }
  if (!p.families.empty()) {
    if (d != 1) throw PoError("MalformedPresentation", "geometric families need a single indeterminate");
    Vec fin;
    for (auto &g : p.finiteExponentGens) fin.push_back(g[0]);
    return make_group(geometric_of(fin, p.families), prov);
  }
  return make_group(cone_of(p.finiteExponentGens, d), prov);
}

// quotient by the semisaturation of the chosen atoms (inverting the matching irreducibles)
inline QuotientResult localize_at_atoms(const PoGroup &G, const Mat &atomSubset, const Budget &b = {}) {
  Mat all = atoms_or_throw(G, b);
  for (auto &a : atomSubset)
    if (std::find(all.begin(), all.end(), a) == all.end()) throw PoError("NotAnAtom", to_string(a) + " is not an atom");
  Module S = Module::lattice(G.dim(), atomSubset);
  Module sat = G.dim() ? node_semisat(G.order, S, b) : Module(0);
  return quotient_unchecked(G, sat);
}

// ---- corpus models

inline Constraint ge(Vec coef, long rhs = 0) { return {std::move(coef), Constraint::Rel::GE, Rat(rhs)}; }
inline Constraint eq(Vec coef, long rhs) { return {std::move(coef), Constraint::Rel::EQ, Rat(rhs)}; }

inline OrderNode torsion_monoid_node() { return geometric_of({Rat(1)}, {{Rat(2), Int(3), 1}}); }

// exponents (x in Q, y in Z): y = 0 or 1 needs x >= 0, y >= 2 is unrestricted
inline OrderNode rp_node() {
  OrderNode n;
  n.kind = OrderKind::Predicate;
  n.rings = {BaseRing::rationals(), BaseRing::integers()};
  n.regions = {Region{{eq(ints({0, 1}), 0), ge(ints({1, 0}))}}, Region{{eq(ints({0, 1}), 1), ge(ints({1, 0}))}},
               Region{{ge(ints({0, 1}), 2)}}};
  n.atoms = {ints({0, 1})};
  n.templates = {{ints({0, 0}), ints({1, 0}), Template::Param::PosRational},
                 {ints({0, 1}), ints({0, 0}), Template::Param::None},
                 {ints({0, 2}), ints({1, 0}), Template::Param::AnyRational},
                 {ints({0, 3}), ints({1, 0}), Template::Param::AnyRational}};
  n.note = "x^a (a>=0), y x^a (a>=0), y^k x^a (k>=2)";
  return n;
}

// exponents (z, w): w^0 and w^1 need z-exponent >= 0, w^m/z^n allowed for m >= 2
inline OrderNode zw_node() {
  OrderNode n;
  n.kind = OrderKind::Predicate;
  n.rings = {BaseRing::integers(), BaseRing::integers()};
  n.regions = {Region{{eq(ints({0, 1}), 0), ge(ints({1, 0}))}}, Region{{eq(ints({0, 1}), 1), ge(ints({1, 0}))}},
               Region{{ge(ints({0, 1}), 2)}}};
  n.atoms = {ints({1, 0}), ints({0, 1})};
  n.templates = {{ints({1, 0}), ints({0, 0}), Template::Param::None},
                 {ints({0, 1}), ints({0, 0}), Template::Param::None},
                 {ints({0, 2}), ints({1, 0}), Template::Param::AnyInteger}};
  n.note = "z, w, w^m/z^n (m>=2)";
  return n;
}

inline PoGroup lex_integers(size_t n) { return make_group(lex_coords(n), "Z^" + std::to_string(n) + " lex"); }
inline PoGroup product_integers(size_t n) { return make_group(product_coords(n), "Z^" + std::to_string(n) + " product"); }

// (Z^n) + Q lex with Q most significant
inline PoGroup stabilizing_group(size_t n) {
  std::vector<OrderNode> kids(n, coordinate());
  kids.push_back(coordinate(BaseRing::rationals()));
  return make_group(lex_of(kids), "Z^" + std::to_string(n) + " + Q lex");
}

inline PoGroup torsion_ring_group() { return make_group(lex_of({coordinate(), torsion_monoid_node()}), "ring T"); }

inline PoGroup five_indeterminate_group() {
  return make_group(product_of({coordinate(BaseRing::rationals()), rp_node(), zw_node()}), "t,x,y,z,w");
}

struct CorpusEntry {
  std::string name;
  std::string description;
  PoGroup group;
  std::optional<Mat> atoms;
  std::optional<std::string> classification;
  std::vector<std::pair<Vec, ElementClass>> elementClasses;
  std::vector<std::pair<Vec, long>> h1Orders;  // Ahat complex, degree 1, in stage-1 coordinates
  std::vector<std::pair<Module, bool>> convexity;
  std::vector<std::pair<Module, bool>> directedness;
};

inline std::vector<CorpusEntry> corpus() {
  std::vector<CorpusEntry> c;
  auto add = [&](std::string name, std::string desc, PoGroup g) {
    CorpusEntry e;
    e.name = std::move(name);
    e.description = std::move(desc);
    e.group = std::move(g);
    c.push_back(std::move(e));
    return &c.back();
  };
  MonomialPresentation two;
  two.indeterminates = {"x1", "x2"};
  two.lexRings = {BaseRing::integers(), BaseRing::integers()};
  add("valuation-2d", "two-dimensional discrete valuation ring", build_divisibility_group(two))->atoms =
      Mat{ints({1, 0})};

  auto *primes = add("primes-free", "free group on three primes, product order", product_integers(3));
  primes->convexity = {{Module::lattice(3, {ints({0, 1, -1})}), true}};
  primes->directedness = {{Module::lattice(3, {ints({0, 1, -1})}), false}};

  MonomialPresentation tor;
  tor.indeterminates = {"x"};
  tor.finiteExponentGens = {ints({1})};
  tor.families = {{Rat(2), Int(3), 1}};
  auto *t = add("torsion-monoid", "k[x, x^(2/3^n)]", build_divisibility_group(tor));
  t->atoms = Mat{ints({1})};
  t->elementClasses = {{Vec{Rat(2)}, ElementClass::Atomic}, {Vec{make_rat(2, 3)}, ElementClass::QuasiAtomic}};
  t->classification = "NAtomic(1)";

  auto *five = add("five-indeterminates", "exponents of t, x, y, z, w", five_indeterminate_group());
  five->elementClasses = {{ints({0, 0, 0, -1, 2}), ElementClass::AlmostAtomic},
                          {Vec{make_rat(1, 2), Rat(0), Rat(0), Rat(0), Rat(0)}, ElementClass::NonQuasiAtomic}};

  auto *rp = add("rp-predicate", "exponents of x (rational) and y", make_group(rp_node(), "R_P"));
  rp->atoms = Mat{ints({0, 1})};
  rp->elementClasses = {{ints({-1, 2}), ElementClass::QuasiAtomic}};

  auto *lex = add("lex-integers", "Z^n lex, n = 3", lex_integers(3));
  lex->atoms = Mat{ints({1, 0, 0})};
  lex->classification = "NAtomic(3)";
  lex->convexity = {{Module::lattice(3, {ints({1, 0, 0})}), true}};

  add("terminates-two", "Z^2 lex valuation model", lex_integers(2))->classification = "NAtomic(2)";
  add("never-terminates", "countable lex sum, lazy window of width 6", make_group(lazy_lex(6), "lazy"))
      ->classification = "InfiniteAntimatter";
  add("stabilizes", "Z + Q lex", stabilizing_group(1))->classification = "NAntimatter(1)";
  add("homology-z4", "Z^4 lex", lex_integers(4))->classification = "NAtomic(4)";
  auto *T = add("torsion-ring", "Z + Z[1/3] lex, the top block carrying the geometric cone", torsion_ring_group());
  T->classification = "NAtomic(2)";
  T->h1Orders = {{Vec{Rat(1)}, 1}, {Vec{make_rat(2, 3)}, 3}, {Vec{make_rat(4, 3)}, 3}, {Vec{make_rat(2, 9)}, 9}};
  add("generated-by-positive", "carrier Q with cone generated by 1",
      make_group(cone_of({ints({1})}, 1, {BaseRing::rationals()}), "Q with N", false));
  return c;
}

}  // namespace pogroup
