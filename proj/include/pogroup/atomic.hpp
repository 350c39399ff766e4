#pragma once

#include "pogroup/ideals.hpp"

namespace pogroup {

enum class ElementClass { Atomic, AlmostAtomic, QuasiAtomic, NonQuasiAtomic, Unknown };

inline std::string class_name(ElementClass c) {
  switch (c) {
  case ElementClass::Atomic: return "Atomic";
  case ElementClass::AlmostAtomic: return "AlmostAtomic";
  case ElementClass::QuasiAtomic: return "QuasiAtomic";
  case ElementClass::NonQuasiAtomic: return "NonQuasiAtomic";
  default: return "Unknown";
  }
}

namespace detail {

inline std::string coef_string(const std::vector<long> &c) {
  std::string w;
  for (size_t i = 0; i < c.size(); ++i) w += (i ? "," : "") + std::to_string(c[i]);
  return "(" + w + ")";
}

// nonnegative integer combination of atoms equal to x
inline std::optional<std::vector<long>> atom_combination(const Mat &A, const Vec &x, const Budget &b) {
  size_t d = x.size();
  if (is_zero(x)) return std::vector<long>(A.size(), 0);
  if (A.empty()) return std::nullopt;
  if (d == 1) {
    // knapsack over the scaled values
    Int den = x[0].get_den();
    for (auto &a : A) den = lcm(den, a[0].get_den());
    Rat X = x[0] * Rat(den);
    if (X < 0) return std::nullopt;
    if (X > Rat(b.knapsackLimit)) throw PoError("AtomsUnknown", "knapsack budget exceeded");
    std::vector<long> parts;
    for (auto &a : A) parts.push_back(Rat(a[0] * Rat(den)).get_num().get_si());
    long xi = X.get_num().get_si();
    auto t = geom::knapsack_table(parts, xi);
    if (t[xi] < 0) return std::nullopt;
    std::vector<long> c(A.size(), 0);
    long v = xi;
    while (v > 0)
      for (size_t i = 0; i < parts.size(); ++i)
        if (parts[i] <= v && t[v - parts[i]] == t[v] - 1) {
          c[i]++;
          v -= parts[i];
          break;
        }
    return c;
  }
  auto l = pointed_functional(A, d);
  if (!l) throw PoError("AtomsUnknown", "atoms do not lie in a pointed cone");
  try {
    return cone::decompose(A, *l, x, b.searchLimit * 10);
  } catch (const std::runtime_error &) {
    throw PoError("AtomsUnknown", "atomic decomposition search budget exceeded");
  }
}

}  // namespace detail

inline TriBool atomic_monoid_contains(const Vec &x, const PoGroup &G, const Budget &b = {}) {
  require_in_carrier(x, G);
  Mat A = atoms_or_throw(G, b);
  try {
    auto c = detail::atom_combination(A, x, b);
    if (!c) return TriBool::no("not a nonnegative integer combination of atoms");
    return TriBool::yes("atom coefficients " + detail::coef_string(*c));
  } catch (const PoError &) {
    return TriBool::unknown("search budget");
  }
}

inline Module atomic_subgroup(const PoGroup &G, const Budget &b = {}) {
  return Module::lattice(G.dim(), atoms_or_throw(G, b));
}

// literal definition: <g in G+ : g + a in A(G) for some a in A(G)+>; such g lies in A(G)
inline Module almost_atomic_subgroup(const PoGroup &G, const Budget &b = {}) {
  Module A = atomic_subgroup(G, b);
  Mat gens = atoms_or_throw(G, b);
  for (auto &v : A.lattice_basis()) {
    if (is_positive_element(v, G, b)) gens.push_back(v);
    if (is_positive_element(-v, G, b)) gens.push_back(-v);
  }
  Module AA = Module::lattice(G.dim(), gens);
  if (!(AA == A)) throw AlgebraError("almost-atomic subgroup differs from the atomic subgroup");
  return AA;
}

inline Module quasi_atomic_subgroup(const PoGroup &G, const Budget &b = {}) {
  if (G.dim() == 0) return Module(0);
  return node_semisat(G.order, atomic_subgroup(G, b), b);
}

// h in G+ with g + h in H, by bounded search over small combinations of H's generators
inline std::optional<Vec> semisat_witness(const Vec &g, const Module &H, const PoGroup &G, const Budget &b = {}) {
  Mat hb = H.all_gens();
  if (hb.size() > 4) hb.resize(4);
  std::optional<Vec> found;
  long steps = 0;
  std::function<void(size_t, Vec)> go = [&](size_t i, Vec acc) {
    if (found || ++steps > b.searchLimit) return;
    if (i == hb.size()) {
      Vec h = acc - g;
      if (G.carrier.contains(h) && is_positive(h, G, b).is_yes()) found = h;
      return;
    }
    for (int c = 0; c <= 8 && !found; ++c) {
      go(i + 1, acc + Rat(c) * hb[i]);
      if (c) go(i + 1, acc - Rat(c) * hb[i]);
    }
  };
  go(0, zero_vec(G.dim()));
  return found;
}

struct ElementReport {
  ElementClass cls = ElementClass::Unknown;
  std::string witness;
};

inline ElementReport classify_element_detail(const Vec &x, const PoGroup &G, const Budget &b = {}) {
  require_in_carrier(x, G);
  auto pos = is_positive(x, G, b);
  if (pos.is_no()) throw PoError("NotPositive", to_string(x) + " is not positive");
  if (pos.is_unknown()) return {ElementClass::Unknown, "positivity undecided"};
  auto at = atomic_monoid_contains(x, G, b);
  if (at.is_yes()) return {ElementClass::Atomic, at.witness};
  Module A = atomic_subgroup(G, b);
  if (A.contains(x)) {
    // x = p - n with p, n atomic, so x + n is atomic
    return {ElementClass::AlmostAtomic, "lies in the atomic subgroup"};
  }
  Module Q = quasi_atomic_subgroup(G, b);
  if (!Q.contains(x)) return {ElementClass::NonQuasiAtomic, "outside the quasi-atomic subgroup"};
  // search t in mon(A) with t - x positive
  Mat atoms = atoms_or_throw(G, b);
  size_t k = atoms.size();
  long steps = 0;
  std::string w;
  std::function<bool(size_t, long, Vec)> go = [&](size_t i, long left, Vec acc) {
    if (++steps > b.searchLimit) return false;
    if (i == k) {
      Vec h = acc - x;
      if (is_positive(h, G, b).is_yes()) {
        w = "h=" + to_string(h) + " makes x+h atomic";
        return true;
      }
      return false;
    }
    for (long c = 0; c <= left; ++c)
      if (go(i + 1, left - c, acc + Rat(c) * atoms[i])) return true;
    return false;
  };
  if (k && go(0, std::min<long>(b.maxCoefficientSum, k <= 2 ? b.maxCoefficientSum : 16), zero_vec(G.dim())))
    return {ElementClass::QuasiAtomic, w};
  return {ElementClass::Unknown, "bounded search found no h"};
}

inline ElementClass classify_element(const Vec &x, const PoGroup &G, const Budget &b = {}) {
  return classify_element_detail(x, G, b).cls;
}

}  // namespace pogroup
