#pragma once

#include "pogroup/group.hpp"

namespace pogroup {

namespace detail {

// generators of a cone over Z^d that has the same positives, when the node is one
inline std::optional<Mat> flatten_to_cone(const OrderNode &n) {
  size_t d = n.dim();
  switch (n.kind) {
  case OrderKind::Coordinate:
    if (n.rings[0].kind() != BaseRing::Kind::Integers) return std::nullopt;
    return Mat{Vec{Rat(1)}};
  case OrderKind::Cone:
    for (auto &r : n.rings)
      if (r.kind() != BaseRing::Kind::Integers) return std::nullopt;
    return n.gens;
  case OrderKind::Product: {
    Mat out;
    size_t off = 0;
    for (auto &k : n.kids) {
      auto g = flatten_to_cone(k);
      if (!g) return std::nullopt;
      for (auto &v : *g) out.push_back(embed(v, off, d));
      off += k.dim();
    }
    return out;
  }
  default: return std::nullopt;
  }
}

inline bool totally_ordered(const OrderNode &n) {
  switch (n.kind) {
  case OrderKind::Coordinate:
  case OrderKind::LazyLex: return true;
  case OrderKind::Geometric: return n.families.empty() && n.gens.size() <= 1;
  case OrderKind::Lex:
    for (auto &k : n.kids)
      if (!totally_ordered(k)) return false;
    return true;
  case OrderKind::Product: {
    size_t nz = 0;
    for (auto &k : n.kids)
      if (k.dim() > 0) {
        if (!totally_ordered(k)) return false;
        ++nz;
      }
    return nz <= 1;
  }
  default: return false;
  }
}

inline std::string witness_pair(const Vec &g1, const Vec &g2) {
  return "g1=" + to_string(g1) + " g2=" + to_string(g2) + " positive, g1+g2 in H, g1 not in H";
}

// rational c >= 0 with sum c_i g_i in span_Q(H) and sum of c over gens outside H equal to 1
inline std::optional<Vec> cone_escape(const Mat &gens, const std::vector<bool> &inH, const Mat &hspan, size_t d) {
  size_t k = gens.size(), t = hspan.size();
  Mat A(d + 1, zero_vec(k + t));
  Vec b = zero_vec(d + 1);
  for (size_t r = 0; r < d; ++r) {
    for (size_t i = 0; i < k; ++i) A[r][i] = gens[i][r];
    for (size_t j = 0; j < t; ++j) A[r][k + j] = -hspan[j][r];
  }
  bool any = false;
  for (size_t i = 0; i < k; ++i)
    if (!inH[i]) A[d][i] = 1, any = true;
  if (!any) return std::nullopt;
  b[d] = 1;
  std::vector<bool> nn(k + t, false);
  for (size_t i = 0; i < k; ++i) nn[i] = true;
  auto x = lp_feasible(A, b, nn);
  if (!x) return std::nullopt;
  x->resize(k);
  return x;
}

// smallest m >= 1 with m*v in H (v in span_Q(H))
inline Int multiple_into(const Vec &v, const Module &H) {
  Int m = common_denominator(v);
  for (Int k = 1; k <= 100000; ++k)
    if (H.contains(Rat(m * k) * v)) return m * k;
  throw AlgebraError("no multiple lands in the subgroup");
}

struct ConvexityWitness {
  Vec g1, g2;
  size_t g1Index = 0;              // g1 is this generator
  std::vector<Int> g2Coefficients;  // g2 as a nonnegative integer combination of the generators
};

// positive g1, g2 with g1 + g2 in H and g1 outside H, when one exists
inline std::optional<ConvexityWitness> cone_convexity_witness(const Mat &gens, const Module &H, size_t d) {
  std::vector<bool> inH;
  for (auto &g : gens) inH.push_back(H.contains(g));
  auto c = cone_escape(gens, inH, H.span_basis(), d);
  if (!c) return std::nullopt;
  Vec s = zero_vec(d);
  size_t j = 0;
  for (size_t i = 0; i < gens.size(); ++i) {
    s = s + (*c)[i] * gens[i];
    if (!inH[i] && (*c)[i] > 0) j = i;
  }
  Int den = 1;
  for (auto &x : *c) den = lcm(den, x.get_den());
  Int m = multiple_into(Rat(den) * s, H) * den;
  // m*s is an integer combination containing g_j
  ConvexityWitness w;
  w.g1 = gens[j];
  w.g1Index = j;
  w.g2 = Rat(m) * s - gens[j];
  for (size_t i = 0; i < gens.size(); ++i) {
    Rat k = Rat(m) * (*c)[i] - Rat(i == j ? 1 : 0);
    w.g2Coefficients.push_back(k.get_num());
  }
  return w;
}

inline std::optional<std::pair<Vec, Vec>> cone_convexity_pair(const Mat &gens, const Module &H, size_t d) {
  auto w = cone_convexity_witness(gens, H, d);
  if (!w) return std::nullopt;
  return std::make_pair(w->g1, w->g2);
}

inline TriBool cone_is_convex(const Mat &gens, const Module &H, size_t d) {
  auto p = cone_convexity_pair(gens, H, d);
  if (!p) return TriBool::yes("no cone combination leaves H");
  return TriBool::no(witness_pair(p->first, p->second));
}

// (H : G) over a cone: gens g with -g in cone + span_Q(H)
inline Module cone_semisat(const Mat &gens, const Module &H, size_t d) {
  Mat q;
  Mat hs = H.span_basis();
  for (auto &g : gens)
    if (cone_contains_mod(gens, hs, -g)) q.push_back(g);
  return Module::lattice(d, q);
}

inline TriBool cone_is_directed(const Mat &gens, const Module &H, size_t d, const Budget &b) {
  std::vector<bool> inH;
  Mat inside;
  for (auto &g : gens)
    if (H.contains(g)) inside.push_back(g);
  if (Module::lattice(d, inside) == H) return TriBool::yes("cone generators inside H span H");
  if (cone_is_convex(gens, H, d).is_yes()) return TriBool::no("H+ is spanned by the generators inside H");
  // bounded enumeration of positive elements of H
  Mat found = inside;
  std::vector<long> c(gens.size(), 0);
  long steps = 0;
  std::function<void(size_t, long, Vec)> go = [&](size_t i, long left, Vec acc) {
    if (++steps > b.searchLimit) return;
    if (i == gens.size()) {
      if (!is_zero(acc) && H.contains(acc)) found.push_back(acc);
      return;
    }
    for (long k = 0; k <= std::min<long>(left, 6); ++k) go(i + 1, left - k, acc + Rat(k) * gens[i]);
  };
  go(0, b.maxCoefficientSum, zero_vec(d));
  if (Module::lattice(d, found) == H) return TriBool::yes("bounded search of H+");
  if (rank_of(found) < H.rank()) {
    // H+ rationally spans cone(G+) cap span_Q(H); compare dimensions exactly via LP per basis vector
    Mat hs = H.span_basis();
    bool full = true;
    for (auto &v : hs) {
      if (!cone_contains_mod(gens, {}, v) && !cone_contains_mod(gens, {}, -v)) {
        full = false;
        break;
      }
    }
    if (!full && found.empty()) return TriBool::no("H contains no nonzero positive element in the search");
  }
  return TriBool::unknown("bounded search did not settle directedness");
}

}  // namespace detail

// ---- convexity

inline TriBool node_is_convex(const OrderNode &n, const Module &H, const Budget &b);

inline TriBool node_is_convex(const OrderNode &n, const Module &H, const Budget &b) {
  size_t d = n.dim();
  Module car = carrier_of(n);
  if (H.is_zero() || H == car) return TriBool::yes("trivial or whole carrier");
  if (auto g = detail::flatten_to_cone(n)) return detail::cone_is_convex(*g, H, d);
  switch (n.kind) {
  case OrderKind::Coordinate: {
    // a nonzero proper subgroup of a rank-one coordinate
    Vec h = H.span_basis()[0];
    Rat x = H.lattice_basis().empty() ? h[0] : H.lattice_basis()[0][0];
    if (x < 0) x = -x;
    if (n.rings[0].kind() == BaseRing::Kind::Rationals) {
      // some rational y in (0, x) avoids H
      for (int k = 2; k < 50; ++k) {
        Rat y = x / Rat(k);
        if (!H.contains(Vec{y})) return TriBool::no(detail::witness_pair(Vec{y}, Vec{x - y}));
      }
    }
    for (int k = 2; k < 50; ++k) {
      Rat y = x / Rat(k);
      if (!car.contains(Vec{y}) || H.contains(Vec{y})) continue;
      return TriBool::no(detail::witness_pair(Vec{y}, Vec{x - y}));
    }
    return TriBool::unknown("no witness found");
  }
  case OrderKind::Product: {
    if (detail::aligned(n, H)) {
      TriBool acc = TriBool::yes("blockwise");
      size_t off = 0;
      for (auto &k : n.kids) {
        auto t = node_is_convex(k, restrict_module(H, off, k.dim()), b);
        if (t.is_no()) return TriBool::no("block at " + std::to_string(off) + ": " + t.witness);
        acc = acc && t;
        off += k.dim();
      }
      return acc;
    }
    return TriBool::unknown("product subgroup not aligned with blocks");
  }
  case OrderKind::Lex:
  case OrderKind::LazyLex: {
    std::vector<OrderNode> kids = n.kids;
    if (n.kind == OrderKind::LazyLex) kids.assign(n.window, coordinate());
    std::vector<size_t> offs;
    size_t off = 0;
    for (auto &k : kids) offs.push_back(off), off += k.dim();
    size_t j = kids.size();
    for (size_t i = kids.size(); i-- > 0;)
      if (!restrict_module(H, offs[i], kids[i].dim()).is_zero()) {
        j = i;
        break;
      }
    bool lowerIn = true;
    size_t missing = 0;
    for (size_t i = 0; i < j && lowerIn; ++i)
      if (!H.contains(embed_module(carrier_of(kids[i]), offs[i], d))) lowerIn = false, missing = i;
    Module Hj = restrict_module(H, offs[j], kids[j].dim());
    if (lowerIn) return node_is_convex(kids[j], Hj, b);
    if (detail::totally_ordered(kids[j])) {
      // h in H positive with top block j: x + h and h - x are positive, x outside H
      Vec h = H.span_basis()[0];
      for (auto &v : H.lattice_basis())
        if (!is_zero(slice(v, offs[j], kids[j].dim()))) h = v;
      for (auto &v : H.divisible_basis())
        if (!is_zero(slice(v, offs[j], kids[j].dim()))) h = v;
      if (!node_positive(kids[j], slice(h, offs[j], kids[j].dim()), b).is_yes()) h = -h;
      Module lower = embed_module(carrier_of(kids[missing]), offs[missing], d);
      for (auto &x : lower.all_gens())
        if (!H.contains(x)) return TriBool::no(detail::witness_pair(h + x, h - x));
    }
    return TriBool::unknown("lower blocks not contained in H");
  }
  case OrderKind::Cone:
  case OrderKind::Geometric:
  case OrderKind::Predicate: {
    std::mt19937 rng(11);
    for (int it = 0; it < 400; ++it) {
      Vec g1 = sample_positive(n, rng), g2 = sample_positive(n, rng);
      for (auto &h : H.span_basis()) {
        // complete g1 to an element of H
        Vec cand = Rat(common_denominator(h)) * h - g1;
        if (car.contains(cand) && node_positive(n, cand, b).is_yes() && !H.contains(g1))
          return TriBool::no(detail::witness_pair(g1, cand));
      }
      if (H.contains(g1 + g2) && !H.contains(g1)) return TriBool::no(detail::witness_pair(g1, g2));
    }
    return TriBool::unknown("sampling found no witness");
  }
  }
  return TriBool::unknown();
}

inline TriBool is_convex(const Module &H, const PoGroup &G, const Budget &b = {}) {
  if (!G.carrier.contains(H)) throw PoError("NotInCarrier", "subgroup is not inside the carrier");
  if (G.dim() == 0) return TriBool::yes();
  return node_is_convex(G.order, H, b);
}

// ---- directedness

inline TriBool node_is_directed(const OrderNode &n, const Module &H, const Budget &b) {
  size_t d = n.dim();
  if (H.is_zero() || H == carrier_of(n)) return TriBool::yes("trivial or whole carrier");
  if (detail::totally_ordered(n)) return TriBool::yes("totally ordered: h or -h is positive");
  if (auto g = detail::flatten_to_cone(n)) return detail::cone_is_directed(*g, H, d, b);
  if (n.kind == OrderKind::Product && detail::aligned(n, H)) {
    TriBool acc = TriBool::yes();
    size_t off = 0;
    for (auto &k : n.kids) {
      acc = acc && node_is_directed(k, restrict_module(H, off, k.dim()), b);
      off += k.dim();
    }
    return acc;
  }
  if (n.kind == OrderKind::Lex) {
    // H inside the bottom blocks is decided there; otherwise look for a positive element on top
    size_t off = 0;
    for (auto &k : n.kids) {
      if (embed_module(restrict_module(H, off, k.dim()), off, d) == H)
        return node_is_directed(k, restrict_module(H, off, k.dim()), b);
      off += k.dim();
    }
  }
  // sampled: positive elements of H spanning H
  std::mt19937 rng(5);
  Mat found;
  for (int it = 0; it < 2000; ++it) {
    Vec g = sample_positive(n, rng);
    if (!is_zero(g) && H.contains(g)) found.push_back(g);
  }
  for (auto &h : H.all_gens())
    if (node_positive(n, h, b).is_yes() || node_positive(n, -h, b).is_yes()) found.push_back(h);
  if (!found.empty() && Module::lattice(d, found).contains(H)) return TriBool::yes("sampled positives span H");
  return TriBool::unknown("sampling did not settle directedness");
}

inline TriBool is_directed(const Module &H, const PoGroup &G, const Budget &b = {}) {
  if (!G.carrier.contains(H)) throw PoError("NotInCarrier", "subgroup is not inside the carrier");
  if (G.dim() == 0) return TriBool::yes();
  return node_is_directed(G.order, H, b);
}

inline TriBool is_o_ideal(const Module &H, const PoGroup &G, const Budget &b = {}) {
  auto c = is_convex(H, G, b);
  if (c.is_no()) return TriBool::no("not convex: " + c.witness);
  auto d = is_directed(H, G, b);
  if (d.is_no()) return TriBool::no("not directed: " + d.witness);
  return c && d;
}

// ---- semisaturation (H : G)

inline Module node_semisat(const OrderNode &n, const Module &H, const Budget &b) {
  size_t d = n.dim();
  Module car = carrier_of(n);
  if (H.is_zero()) return Module(d);
  if (H == car) return car;
  if (auto g = detail::flatten_to_cone(n)) return detail::cone_semisat(*g, H, d);
  switch (n.kind) {
  case OrderKind::Coordinate: return car;
  case OrderKind::LazyLex: return node_semisat(lex_coords(n.window), H, b);
  case OrderKind::Product: {
    if (!detail::aligned(n, H)) throw PoError("Unsupported", "semisaturation of a non-aligned product subgroup");
    Module out(d);
    size_t off = 0;
    for (auto &k : n.kids) {
      out = out + embed_module(node_semisat(k, restrict_module(H, off, k.dim()), b), off, d);
      off += k.dim();
    }
    return out;
  }
  case OrderKind::Lex: {
    std::vector<size_t> offs;
    size_t off = 0;
    for (auto &k : n.kids) offs.push_back(off), off += k.dim();
    size_t j = 0;
    for (size_t i = n.kids.size(); i-- > 0;)
      if (!restrict_module(H, offs[i], n.kids[i].dim()).is_zero()) {
        j = i;
        break;
      }
    Module Hj = restrict_module(H, offs[j], n.kids[j].dim());
    bool below = embed_module(Hj, offs[j], d) == H || j == 0;
    // a positive h with top block j lets every lower element qualify
    bool topPositive = false;
    for (auto &v : Hj.all_gens())
      if (node_positive(n.kids[j], v, b).is_yes() || node_positive(n.kids[j], -v, b).is_yes()) topPositive = true;
    Module out(d);
    if (topPositive)
      for (size_t i = 0; i < j; ++i) out = out + embed_module(carrier_of(n.kids[i]), offs[i], d);
    else if (!below)
      throw PoError("Unsupported", "semisaturation across lexicographic blocks");
    return out + embed_module(node_semisat(n.kids[j], Hj, b), offs[j], d);
  }
  case OrderKind::Geometric: {
    // g qualifies when k*h - g is positive for some k within budget
    Vec h = H.span_basis()[0];
    Rat hv = H.lattice_basis().empty() ? h[0] : H.lattice_basis()[0][0];
    if (hv < 0) hv = -hv;
    auto qualifies = [&](const Rat &g) {
      if (!H.is_zero() && !H.lattice_basis().empty())
        for (long k = 1; k <= b.maxCoefficientSum; ++k)
          if (geom::contains(n, Rat(k) * hv - g, b).is_yes()) return true;
      return false;
    };
    Mat z;
    std::map<Int, Mat> p;
    for (auto &g : n.gens)
      if (qualifies(g[0])) z.push_back(g);
    for (auto &f : n.families) {
      bool all = true;
      for (int l = f.startLevel; l <= f.startLevel + 3 && all; ++l) all = qualifies(geom::member(f, l));
      if (all) {
        z.push_back(Vec{f.direction});
        p[f.prime].push_back(Vec{f.direction});
      }
    }
    return Module(1, z, p) + H;
  }
  case OrderKind::Predicate: {
    Mat hb = H.all_gens();
    std::vector<Vec> probes;
    std::function<void(size_t, Vec)> go = [&](size_t i, Vec acc) {
      if (i == hb.size()) {
        probes.push_back(acc);
        return;
      }
      for (int c = -4; c <= 4; ++c) go(i + 1, acc + Rat(c) * hb[i]);
    };
    if (hb.size() <= 3) go(0, zero_vec(d));
    auto qualifies = [&](const Vec &g) {
      for (auto &t : probes)
        if (car.contains(t - g) && node_positive(n, t - g, b).is_yes()) return true;
      return false;
    };
    Mat z, q;
    for (auto &t : n.templates) {
      if (t.param == Template::Param::None) {
        if (qualifies(t.base)) z.push_back(t.base);
        continue;
      }
      bool all = true;
      for (int a : {1, 2, 3})
        for (int den : {1, 2}) {
          Rat alpha = make_rat(a, t.param == Template::Param::AnyInteger ? 1 : den);
          if (!qualifies(t.base + alpha * t.dir)) all = false;
          if (t.param != Template::Param::PosRational && !qualifies(t.base - alpha * t.dir)) all = false;
        }
      if (!all) continue;
      z.push_back(t.base);
      if (t.param == Template::Param::AnyInteger)
        z.push_back(t.dir);
      else
        q.push_back(t.dir);
    }
    return Module(d, z, {}, q) + H;
  }
  case OrderKind::Cone: return detail::cone_semisat(n.gens, H, d);
  }
  throw PoError("Unsupported", "semisaturation");
}

// (H : L) = < g in G+ : l + g in H for some l in L+ >
inline Module semisaturation(const Module &H, const Module &L, const PoGroup &G, const Budget &b = {}) {
  if (!L.contains(H)) throw PoError("NotNested", "H is not contained in L");
  if (!G.carrier.contains(L)) throw PoError("NotInCarrier", "L is not inside the carrier");
  if (G.dim() == 0) return Module(0);
  if (L == G.carrier) return node_semisat(G.order, H, b);
  if (H.contains(L)) {
    // l + g in H with l in H forces g in H
    Mat pos;
    for (auto &h : H.all_gens()) {
      if (is_positive_element(h, G, b)) pos.push_back(h);
      if (is_positive_element(-h, G, b)) pos.push_back(-h);
    }
    return Module::lattice(G.dim(), pos);
  }
  throw PoError("Unsupported", "semisaturation relative to a proper subgroup L not contained in H");
}

// ---- quotient by an o-ideal, o-epimorphisms

inline QuotientResult quotient_by_o_ideal(const PoGroup &G, const Module &H, const Budget &b = {}) {
  if (!G.carrier.contains(H)) throw PoError("NotOIdeal", "subgroup is not inside the carrier");
  auto t = is_o_ideal(H, G, b);
  if (t.is_no()) throw PoError("NotOIdeal", t.witness);
  return quotient_unchecked(G, H);
}

inline Module kernel_of(const GroupHom &f) {
  if (f.kernel) return *f.kernel;
  const PoGroup &G = *f.domain;
  size_t d = G.dim();
  Mat ker = nullspace(f.matrix, d);
  if (ker.empty()) return Module(d);
  Module rational(d, {}, {}, ker);
  if (G.carrier.pure_lattice()) return Module::lattice(d, integer_kernel(f.matrix, d));
  return intersect(rational, G.carrier);
}

inline TriBool check_o_epimorphism(const GroupHom &f, const Budget &b = {}) {
  const PoGroup &G = *f.domain, &H = *f.codomain;
  if (!f.windowed && !(image(f.matrix, G.carrier, H.dim()) == H.carrier))
    return TriBool::no("not surjective onto the codomain carrier");
  std::mt19937 rng(3);
  for (int it = 0; it < 300; ++it) {
    Vec g = sample_positive(G.order, rng);
    if (G.dim() == 0) break;
    Vec y = f(g);
    if (H.dim() && !is_positive(y, H, b).is_yes()) return TriBool::no("positive " + to_string(g) + " maps outside the cone");
  }
  // every codomain positive has a positive preimage
  Module ker = kernel_of(f);
  Mat kb = ker.all_gens();
  auto lifts = [&](const Vec &y) {
    std::optional<Vec> x;
    if (!f.section.empty())
      x = f.lift(y);
    else {
      auto c = solve_left_rational(transpose(f.matrix, G.dim()), y);
      if (c && G.carrier.contains(*c)) x = c;
    }
    if (!x) return false;
    if (is_positive(*x, G, b).is_yes()) return true;
    for (auto &k : kb)
      for (int c = -3; c <= 3; ++c)
        if (c && is_positive(*x + Rat(c) * k, G, b).is_yes()) return true;
    return false;
  };
  std::mt19937 rng2(4);
  for (int it = 0; it < 200 && H.dim(); ++it) {
    Vec y = sample_positive(H.order, rng2);
    if (!lifts(y)) return TriBool::unknown("no positive preimage found for " + to_string(y));
  }
  return TriBool::yes("surjective and cone-preserving on samples");
}

inline TriBool verify_first_o_iso(const GroupHom &f, const Budget &b = {}) {
  if (!check_o_epimorphism(f, b).is_yes()) throw PoError("NotOEpimorphism", "map is not an o-epimorphism");
  const PoGroup &G = *f.domain, &C = *f.codomain;
  Module ker = kernel_of(f);
  auto q = quotient_unchecked(G, ker);
  if (pogroup::presentation(q.group.order) != pogroup::presentation(C.order))
    return TriBool::no("presentations differ: " + pogroup::presentation(q.group.order) + " vs " + pogroup::presentation(C.order));
  // the induced map G/ker -> C is f composed with the section
  Mat induced = matmul(f.matrix, q.projection.section, q.group.dim());
  if (!f.windowed && !(image(induced, q.group.carrier, C.dim()) == C.carrier))
    return TriBool::no("induced map is not onto");
  if (rank_of(induced) != q.group.dim()) return TriBool::no("induced map is not injective");
  return TriBool::yes("canonical presentations agree");
}

}  // namespace pogroup
