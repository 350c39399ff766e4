#pragma once

#include <functional>
#include <memory>
#include <random>
#include <unordered_map>

#include "pogroup/lp.hpp"
#include "pogroup/module.hpp"

namespace pogroup {

struct TriBool {
  enum class V { Yes, No, Unknown };
  V v = V::Unknown;
  std::string witness;
  static TriBool yes(std::string w = "") { return {V::Yes, std::move(w)}; }
  static TriBool no(std::string w = "") { return {V::No, std::move(w)}; }
  static TriBool unknown(std::string w = "") { return {V::Unknown, std::move(w)}; }
  static TriBool of(bool b, std::string w = "") { return b ? yes(std::move(w)) : no(std::move(w)); }
  bool is_yes() const { return v == V::Yes; }
  bool is_no() const { return v == V::No; }
  bool is_unknown() const { return v == V::Unknown; }
  std::string str() const { return v == V::Yes ? "Yes" : v == V::No ? "No" : "Unknown"; }
};

inline TriBool operator&&(const TriBool &a, const TriBool &b) {
  if (a.is_no()) return a;
  if (b.is_no()) return b;
  if (a.is_unknown()) return a;
  if (b.is_unknown()) return b;
  return TriBool::yes(a.witness.empty() ? b.witness : a.witness);
}

struct Budget {
  long maxCoefficientSum = 64;
  int maxFamilyLevel = 12;
  int maxDepth = 16;
  long knapsackLimit = 20000000;
  long searchLimit = 200000;
};

struct GeometricFamily {
  Rat direction;  // members are direction / p^n, n >= startLevel
  Int prime;
  int startLevel = 1;
};

struct Constraint {
  enum class Rel { GE, EQ, GT };
  Vec coef;
  Rel rel = Rel::GE;
  Rat rhs;
  bool holds(const Vec &x) const {
    Rat s = dot(coef, x);
    return rel == Rel::GE ? s >= rhs : rel == Rel::EQ ? s == rhs : s > rhs;
  }
};

struct Region {
  std::vector<Constraint> constraints;
  bool holds(const Vec &x) const {
    for (auto &c : constraints)
      if (!c.holds(x)) return false;
    return true;
  }
};

// base + a*dir; a ranges over the parameter set
struct Template {
  enum class Param { None, PosRational, AnyRational, AnyInteger };
  Vec base, dir;
  Param param = Param::None;
};

enum class OrderKind { Coordinate, Product, Lex, Cone, Geometric, Predicate, LazyLex };

inline std::string kind_name(OrderKind k) {
  switch (k) {
  case OrderKind::Coordinate: return "Coordinate";
  case OrderKind::Product: return "Product";
  case OrderKind::Lex: return "LexBlocks";
  case OrderKind::Cone: return "ConeGenerated";
  case OrderKind::Geometric: return "GeometricCone";
  case OrderKind::Predicate: return "PredicateCone";
  case OrderKind::LazyLex: return "LazyLex";
  }
  return "?";
}

struct OrderNode {
  OrderKind kind = OrderKind::Product;
  std::vector<OrderNode> kids;  // Product / Lex (least significant first)
  std::vector<BaseRing> rings;  // leaf coordinates
  Mat gens;                     // Cone generators; Geometric finite generators
  std::vector<GeometricFamily> families;
  std::vector<Region> regions;
  Mat atoms;  // Predicate: declared atoms
  std::vector<Template> templates;
  std::string note;  // Predicate closure note
  size_t window = 0, offset = 0;  // LazyLex
  Vec functional;                 // Cone pointedness certificate

  size_t dim() const {
    switch (kind) {
    case OrderKind::Product:
    case OrderKind::Lex: {
      size_t d = 0;
      for (auto &k : kids) d += k.dim();
      return d;
    }
    case OrderKind::LazyLex: return window;
    default: return rings.size();
    }
  }
  bool trivial() const { return dim() == 0; }

  std::vector<BaseRing> leaf_rings() const {
    if (kind == OrderKind::Product || kind == OrderKind::Lex) {
      std::vector<BaseRing> r;
      for (auto &k : kids) {
        auto kr = k.leaf_rings();
        r.insert(r.end(), kr.begin(), kr.end());
      }
      return r;
    }
    if (kind == OrderKind::LazyLex) return std::vector<BaseRing>(window, BaseRing::integers());
    return rings;
  }
};

// ---- constructors

inline OrderNode coordinate(BaseRing r = BaseRing::integers()) {
  OrderNode n;
  n.kind = OrderKind::Coordinate;
  n.rings = {r};
  return n;
}
inline OrderNode product_of(std::vector<OrderNode> kids) {
  OrderNode n;
  n.kind = OrderKind::Product;
  n.kids = std::move(kids);
  return n;
}
inline OrderNode lex_of(std::vector<OrderNode> kids) {
  OrderNode n;
  n.kind = OrderKind::Lex;
  n.kids = std::move(kids);
  return n;
}
inline OrderNode product_coords(size_t k, BaseRing r = BaseRing::integers()) {
  return product_of(std::vector<OrderNode>(k, coordinate(r)));
}
inline OrderNode lex_coords(size_t k, BaseRing r = BaseRing::integers()) {
  return lex_of(std::vector<OrderNode>(k, coordinate(r)));
}
inline OrderNode cone_of(Mat gens, size_t dim, std::vector<BaseRing> rings = {}) {
  OrderNode n;
  n.kind = OrderKind::Cone;
  n.rings = rings.empty() ? std::vector<BaseRing>(dim, BaseRing::integers()) : rings;
  n.gens = std::move(gens);
  return n;
}
inline OrderNode geometric_of(Vec finite, std::vector<GeometricFamily> fams) {
  OrderNode n;
  n.kind = OrderKind::Geometric;
  std::vector<Int> ps;
  for (auto &f : fams) ps.push_back(f.prime);
  n.rings = {BaseRing::inverted(ps)};
  for (auto &x : finite) n.gens.push_back(Vec{x});
  n.families = std::move(fams);
  return n;
}
inline OrderNode lazy_lex(size_t window, size_t offset = 0) {
  OrderNode n;
  n.kind = OrderKind::LazyLex;
  n.window = window;
  n.offset = offset;
  return n;
}

// ---- helpers on coordinate slices

inline Vec slice(const Vec &x, size_t off, size_t len) { return Vec(x.begin() + off, x.begin() + off + len); }

inline Vec embed(const Vec &x, size_t off, size_t total) {
  Vec v = zero_vec(total);
  for (size_t i = 0; i < x.size(); ++i) v[off + i] = x[i];
  return v;
}

inline Module restrict_module(const Module &m, size_t off, size_t len) {
  auto cut = [&](const Mat &g) {
    Mat out;
    for (auto &v : g) out.push_back(slice(v, off, len));
    return out;
  };
  std::map<Int, Mat> p;
  for (auto &[pr, gs] : m.pgens()) p[pr] = cut(gs);
  return Module(len, cut(m.zgens()), p, cut(m.qgens()));
}

inline Module embed_module(const Module &m, size_t off, size_t total) {
  auto put = [&](const Mat &g) {
    Mat out;
    for (auto &v : g) out.push_back(embed(v, off, total));
    return out;
  };
  std::map<Int, Mat> p;
  for (auto &[pr, gs] : m.pgens()) p[pr] = put(gs);
  return Module(total, put(m.zgens()), p, put(m.qgens()));
}

inline Module carrier_of(const OrderNode &n) {
  size_t d = n.dim();
  if (n.kind == OrderKind::Geometric) {
    Mat z = n.gens;
    std::map<Int, Mat> p;
    for (auto &f : n.families) {
      z.push_back(Vec{f.direction});
      p[f.prime].push_back(Vec{f.direction});
    }
    if (z.empty()) return Module(1);
    return Module(1, z, p);
  }
  return Module::full(d, n.leaf_rings());
}

// ---- geometric families: carry normal form membership

namespace geom {

inline void normalize_family(GeometricFamily &f) {
  while (f.direction != 0 && mpz_divisible_p(f.direction.get_num().get_mpz_t(), f.prime.get_mpz_t())) {
    f.direction /= Rat(f.prime);
    f.startLevel -= 1;
  }
}

inline Rat member(const GeometricFamily &f, int n) {
  Int pw;
  mpz_pow_ui(pw.get_mpz_t(), f.prime.get_mpz_t(), std::abs(n));
  return n >= 0 ? Rat(f.direction / Rat(pw)) : Rat(f.direction * Rat(pw));
}

// truncation level beyond which no normal-form representation of x can reach
inline int truncation_level(const OrderNode &n, const Rat &x) {
  int N = 0;
  for (auto &f : n.families) {
    N = std::max(N, f.startLevel);
    if (x != 0) N = std::max(N, -valuation(x, f.prime));
    for (auto &g : n.gens) N = std::max(N, -valuation(g[0], f.prime));
    N = std::max(N, -valuation(f.direction, f.prime));
  }
  return N;
}

struct Knapsack {
  Int scale;
  std::vector<long> parts;   // integer generator values after scaling
  std::vector<Rat> members;  // the matching generator values
};

inline Knapsack truncated_generators(const OrderNode &n, int N) {
  Knapsack k;
  k.scale = 1;
  for (auto &f : n.families) {
    Int pw;
    mpz_pow_ui(pw.get_mpz_t(), f.prime.get_mpz_t(), std::max(N, 0));
    k.scale = lcm(k.scale, pw);
  }
  Int den = 1;
  for (auto &g : n.gens) den = lcm(den, g[0].get_den());
  k.scale = lcm(k.scale, den);
  std::vector<Rat> vals;
  for (auto &g : n.gens) vals.push_back(g[0]);
  for (auto &f : n.families)
    for (int l = f.startLevel; l <= N; ++l) vals.push_back(member(f, l));
  std::sort(vals.begin(), vals.end());
  vals.erase(std::unique(vals.begin(), vals.end()), vals.end());
  for (auto &v : vals) {
    Rat s = v * Rat(k.scale);
    k.parts.push_back(s.get_num().get_si());
    k.members.push_back(v);
  }
  return k;
}

// reach[v] = fewest parts summing to v (or -1); reach[0] = 0
inline std::vector<int> knapsack_table(const std::vector<long> &parts, long X) {
  std::vector<int> best(X + 1, -1);
  best[0] = 0;
  for (long v = 1; v <= X; ++v)
    for (long p : parts)
      if (p <= v && best[v - p] >= 0 && (best[v] < 0 || best[v - p] + 1 < best[v])) best[v] = best[v - p] + 1;
  return best;
}

// x in the monoid generated by finite gens and the family at levels <= N
inline TriBool truncated_contains(const OrderNode &n, const Rat &x, int N, const Budget &b) {
  if (x < 0) return TriBool::no("negative");
  if (x == 0) return TriBool::yes("0");
  auto k = truncated_generators(n, N);
  Rat X = x * Rat(k.scale);
  if (!is_integral(X)) return TriBool::no("denominator beyond truncation");
  if (X > Rat(b.knapsackLimit)) return TriBool::unknown("knapsack budget");
  long xi = X.get_num().get_si();
  auto t = knapsack_table(k.parts, xi);
  return TriBool::of(t[xi] >= 0, "level " + std::to_string(N));
}

inline TriBool contains(const OrderNode &n, const Rat &x, const Budget &b) {
  if (!carrier_of(n).contains(Vec{x})) return TriBool::no("outside carrier");
  return truncated_contains(n, x, truncation_level(n, x), b);
}

}  // namespace geom

// ---- cone-generated membership (exact; the functional bounds the search)

namespace cone {

inline std::string key(const Vec &v) { return to_string(v); }

inline bool dfs(const Mat &gens, const Vec &l, const Vec &x, size_t from, std::vector<long> &coef,
                std::unordered_map<std::string, bool> &memo, long &steps, long limit) {
  if (is_zero(x)) return true;
  if (dot(l, x) < 1) return false;
  if (++steps > limit) throw std::runtime_error("cone search budget");
  std::string k = key(x) + "#" + std::to_string(from);
  if (auto it = memo.find(k); it != memo.end() && !it->second) return false;
  for (size_t i = from; i < gens.size(); ++i) {
    Vec y = x - gens[i];
    if (dot(l, y) < 0) continue;
    coef[i]++;
    if (dfs(gens, l, y, i, coef, memo, steps, limit)) return true;
    coef[i]--;
  }
  memo[k] = false;
  return false;
}

// nonnegative integer coefficients expressing x, if any
inline std::optional<std::vector<long>> decompose(const Mat &gens, const Vec &l, const Vec &x, long limit = 2000000) {
  if (is_zero(x)) return std::vector<long>(gens.size(), 0);
  if (gens.empty()) return std::nullopt;
  if (!cone_contains_mod(gens, {}, x)) return std::nullopt;
  // independent generators: the rational solution is unique
  if (rank_of(gens) == gens.size()) {
    auto c = solve_left_rational(gens, x);
    if (!c) return std::nullopt;
    std::vector<long> out;
    for (auto &v : *c) {
      if (!is_integral(v) || v < 0) return std::nullopt;
      out.push_back(v.get_num().get_si());
    }
    return out;
  }
  std::vector<long> coef(gens.size(), 0);
  std::unordered_map<std::string, bool> memo;
  long steps = 0;
  if (dfs(gens, l, x, 0, coef, memo, steps, limit)) return coef;
  return std::nullopt;
}

}  // namespace cone

// ---- positivity

inline TriBool node_positive(const OrderNode &n, const Vec &x, const Budget &b);

inline bool block_nonzero(const Vec &x) { return !is_zero(x); }

inline TriBool node_positive(const OrderNode &n, const Vec &x, const Budget &b) {
  switch (n.kind) {
  case OrderKind::Coordinate: return TriBool::of(x[0] >= 0);
  case OrderKind::Product: {
    size_t off = 0;
    TriBool acc = TriBool::yes();
    for (auto &k : n.kids) {
      auto t = node_positive(k, slice(x, off, k.dim()), b);
      if (t.is_no()) return TriBool::no("coordinate block " + std::to_string(off) + " not positive");
      acc = acc && t;
      off += k.dim();
    }
    return acc;
  }
  case OrderKind::Lex: {
    size_t off = n.dim();
    for (size_t i = n.kids.size(); i-- > 0;) {
      off -= n.kids[i].dim();
      Vec part = slice(x, off, n.kids[i].dim());
      if (is_zero(part)) continue;
      return node_positive(n.kids[i], part, b);
    }
    return TriBool::yes("zero");
  }
  case OrderKind::LazyLex: {
    for (size_t i = x.size(); i-- > 0;)
      if (x[i] != 0) return TriBool::of(x[i] > 0);
    return TriBool::yes("zero");
  }
  case OrderKind::Cone: {
    try {
      auto c = cone::decompose(n.gens, n.functional, x);
      if (!c) return TriBool::no("no nonnegative integer combination");
      std::string w;
      for (size_t i = 0; i < c->size(); ++i) w += (i ? "," : "") + std::to_string((*c)[i]);
      return TriBool::yes("coefficients (" + w + ")");
    } catch (const std::runtime_error &) {
      return TriBool::unknown("search budget");
    }
  }
  case OrderKind::Geometric: return geom::contains(n, x[0], b);
  case OrderKind::Predicate: {
    for (size_t i = 0; i < n.regions.size(); ++i)
      if (n.regions[i].holds(x)) return TriBool::yes("region " + std::to_string(i));
    return TriBool::no("no region holds");
  }
  }
  return TriBool::unknown();
}

// ---- sampling (deterministic for a given rng state)

inline Rat sample_ring_element(const BaseRing &r, std::mt19937 &rng, bool positive) {
  std::uniform_int_distribution<int> d(positive ? 0 : -4, 4);
  Rat v(d(rng));
  if (r.kind() == BaseRing::Kind::Rationals) {
    std::uniform_int_distribution<int> den(1, 4);
    v /= Rat(den(rng));
  } else if (r.kind() == BaseRing::Kind::Inverted) {
    std::uniform_int_distribution<int> e(0, 2);
    Int pw;
    mpz_pow_ui(pw.get_mpz_t(), r.primes()[0].get_mpz_t(), e(rng));
    v /= Rat(pw);
  }
  v.canonicalize();
  return v;
}

inline Vec sample_any(const OrderNode &n, std::mt19937 &rng) {
  Vec v;
  if (n.kind == OrderKind::Geometric) {
    std::uniform_int_distribution<int> d(-4, 4);
    Rat s = Rat(d(rng));
    for (auto &f : n.families) s += Rat(d(rng)) * geom::member(f, f.startLevel + std::abs(d(rng)) % 3);
    return {s};
  }
  for (auto &r : n.leaf_rings()) v.push_back(sample_ring_element(r, rng, false));
  return v;
}

inline Vec sample_positive(const OrderNode &n, std::mt19937 &rng) {
  std::uniform_int_distribution<int> c(0, 2);
  switch (n.kind) {
  case OrderKind::Coordinate: return {sample_ring_element(n.rings[0], rng, true)};
  case OrderKind::Product: {
    Vec v;
    for (auto &k : n.kids) {
      Vec p = sample_positive(k, rng);
      v.insert(v.end(), p.begin(), p.end());
    }
    return v;
  }
  case OrderKind::Lex: {
    if (n.kids.empty()) return {};
    std::uniform_int_distribution<size_t> t(0, n.kids.size() - 1);
    size_t top = t(rng);
    Vec v;
    for (size_t i = 0; i < n.kids.size(); ++i) {
      Vec p;
      if (i < top)
        p = sample_any(n.kids[i], rng);
      else if (i == top) {
        p = sample_positive(n.kids[i], rng);
        if (is_zero(p)) return zero_vec(n.dim());
      }
      else
        p = zero_vec(n.kids[i].dim());
      v.insert(v.end(), p.begin(), p.end());
    }
    return v;
  }
  case OrderKind::LazyLex: {
    std::uniform_int_distribution<size_t> t(0, n.window ? n.window - 1 : 0);
    std::uniform_int_distribution<int> d(-3, 3), pos(0, 3);
    size_t top = t(rng);
    Vec v = zero_vec(n.window);
    for (size_t i = 0; i < top; ++i) v[i] = d(rng);
    if (n.window) v[top] = pos(rng);
    if (n.window && v[top] == 0) return zero_vec(n.window);
    return v;
  }
  case OrderKind::Cone: {
    Vec v = zero_vec(n.dim());
    for (auto &g : n.gens) v = v + Rat(c(rng)) * g;
    return v;
  }
  case OrderKind::Geometric: {
    Rat s = 0;
    for (auto &g : n.gens) s += Rat(c(rng)) * g[0];
    for (auto &f : n.families)
      for (int l = f.startLevel; l < f.startLevel + 3; ++l) s += Rat(c(rng)) * geom::member(f, l);
    return {s};
  }
  case OrderKind::Predicate: {
    Vec v = zero_vec(n.dim());
    for (int rep = 0; rep < 2; ++rep) {
      if (n.templates.empty()) break;
      std::uniform_int_distribution<size_t> t(0, n.templates.size() - 1);
      const Template &tp = n.templates[t(rng)];
      std::uniform_int_distribution<int> a(-3, 3), ap(1, 6), den(1, 3);
      Rat alpha = 0;
      switch (tp.param) {
      case Template::Param::None: break;
      case Template::Param::PosRational: alpha = Rat(ap(rng)) / Rat(den(rng)); break;
      case Template::Param::AnyRational: alpha = Rat(a(rng)) / Rat(den(rng)); break;
      case Template::Param::AnyInteger: alpha = Rat(a(rng)); break;
      }
      alpha.canonicalize();
      v = v + (tp.base + alpha * tp.dir);
    }
    return v;
  }
  }
  return {};
}

// ---- canonical presentation text (offsets of lazy windows are excluded)

inline std::string presentation(const OrderNode &n) {
  std::string s = kind_name(n.kind);
  switch (n.kind) {
  case OrderKind::Coordinate: return s + "(" + n.rings[0].name() + ")";
  case OrderKind::Product:
  case OrderKind::Lex: {
    s += "[";
    for (size_t i = 0; i < n.kids.size(); ++i) s += (i ? "," : "") + presentation(n.kids[i]);
    return s + "]";
  }
  case OrderKind::LazyLex: return s + "(window=" + std::to_string(n.window) + ")";
  case OrderKind::Cone: {
    Mat g = n.gens;
    std::sort(g.begin(), g.end());
    s += "(";
    for (auto &r : n.rings) s += r.name() + ";";
    for (auto &v : g) s += to_string(v);
    return s + ")";
  }
  case OrderKind::Geometric: {
    s += "(" + n.rings[0].name();
    for (auto &g : n.gens) s += ";" + g[0].get_str();
    for (auto &f : n.families)
      s += ";{" + f.direction.get_str() + "/" + f.prime.get_str() + "^n,n>=" + std::to_string(f.startLevel) + "}";
    return s + ")";
  }
  case OrderKind::Predicate: {
    s += "(";
    for (auto &r : n.rings) s += r.name() + ";";
    s += std::to_string(n.regions.size()) + " regions;" + n.note + ")";
    return s;
  }
  }
  return s;
}

}  // namespace pogroup
