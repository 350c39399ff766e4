#pragma once

#include "pogroup/order.hpp"

namespace pogroup {

struct PoError : std::runtime_error {
  std::string code;
  PoError(std::string c, const std::string &msg) : std::runtime_error(c + ": " + msg), code(std::move(c)) {}
};

struct PoGroup {
  OrderNode order;
  Module carrier;
  std::string provenance;
  bool directed = true;
  size_t dim() const { return order.dim(); }
  bool trivial() const { return dim() == 0 || carrier.is_zero(); }
  std::string presentation() const { return pogroup::presentation(order) + " on " + carrier.str(); }
};

namespace detail {

inline bool template_integer_param(const Template &t) { return t.param == Template::Param::AnyInteger; }

// the subgroup spanned by a node's cone (directedness test)
inline std::optional<Module> cone_span(const OrderNode &n) {
  size_t d = n.dim();
  switch (n.kind) {
  case OrderKind::Cone: return Module::lattice(d, n.gens);
  case OrderKind::Predicate: {
    Mat z, q;
    for (auto &t : n.templates) {
      z.push_back(t.base);
      if (t.param == Template::Param::None) continue;
      if (template_integer_param(t))
        z.push_back(t.dir);
      else
        q.push_back(t.dir);
    }
    return Module(d, z, {}, q);
  }
  default: return std::nullopt;
  }
}

inline void prepare_node(OrderNode &n, bool &directed) {
  size_t d = n.dim();
  switch (n.kind) {
  case OrderKind::Product:
  case OrderKind::Lex:
    for (auto &k : n.kids) prepare_node(k, directed);
    break;
  case OrderKind::Coordinate:
  case OrderKind::LazyLex: break;
  case OrderKind::Cone: {
    Module car = Module::full(d, n.rings);
    Mat g;
    for (auto &v : n.gens) {
      if (v.size() != d) throw PoError("MalformedPresentation", "cone generator has wrong length");
      if (!car.contains(v)) throw PoError("NotInCarrier", "cone generator " + to_string(v) + " outside carrier");
      if (!is_zero(v) && std::find(g.begin(), g.end(), v) == g.end()) g.push_back(v);
    }
    n.gens = g;
    if (!g.empty()) {
      auto l = pointed_functional(g, d);
      if (!l) throw PoError("MalformedPresentation", "cone is not pointed");
      n.functional = *l;
    } else {
      n.functional = zero_vec(d);
    }
    if (!(*cone_span(n) == car)) directed = false;
    break;
  }
  case OrderKind::Geometric: {
    if (n.families.size() > 1) throw PoError("MalformedPresentation", "at most one geometric family per coordinate");
    for (auto &g : n.gens)
      if (g[0] <= 0) throw PoError("MalformedPresentation", "geometric generators must be positive");
    for (auto &f : n.families) {
      if (f.direction <= 0) throw PoError("MalformedPresentation", "family direction must be positive");
      if (!is_prime(f.prime)) throw PoError("MalformedPresentation", "family prime is not prime");
      geom::normalize_family(f);
    }
    break;
  }
  case OrderKind::Predicate: {
    Module car = Module::full(d, n.rings);
    for (auto &a : n.atoms)
      if (!car.contains(a) || !node_positive(n, a, Budget{}).is_yes() || is_zero(a))
        throw PoError("MalformedPresentation", "declared atom is not a positive element");
    if (!(*cone_span(n) == car)) directed = false;
    break;
  }
  }
}

}  // namespace detail

inline PoGroup make_group(OrderNode order, std::string provenance = "", bool requireDirected = true) {
  PoGroup g;
  bool directed = true;
  detail::prepare_node(order, directed);
  g.order = std::move(order);
  g.carrier = carrier_of(g.order);
  g.provenance = std::move(provenance);
  g.directed = directed;
  if (requireDirected && !directed)
    throw PoError("MalformedPresentation", "group is not directed (carrier is not spanned by the cone)");
  return g;
}

inline PoGroup trivial_group() { return make_group(product_of({}), "trivial"); }

inline void require_in_carrier(const Vec &g, const PoGroup &G) {
  if (g.size() != G.dim() || !G.carrier.contains(g))
    throw PoError("NotInCarrier", to_string(g) + " is not in the carrier");
}

inline TriBool is_positive(const Vec &g, const PoGroup &G, const Budget &b = {}) {
  require_in_carrier(g, G);
  if (G.dim() == 0) return TriBool::yes("zero");
  return node_positive(G.order, g, b);
}

inline bool is_positive_element(const Vec &g, const PoGroup &G, const Budget &b = {}) {
  return !is_zero(g) && is_positive(g, G, b).is_yes();
}

enum class Comparison { Less, Equal, Greater, Incomparable, Unknown };

inline std::string comparison_name(Comparison c) {
  switch (c) {
  case Comparison::Less: return "Less";
  case Comparison::Equal: return "Equal";
  case Comparison::Greater: return "Greater";
  case Comparison::Incomparable: return "Incomparable";
  default: return "Unknown";
  }
}

inline Comparison compare(const Vec &a, const Vec &b, const PoGroup &G, const Budget &bud = {}) {
  require_in_carrier(a, G);
  require_in_carrier(b, G);
  if (a == b) return Comparison::Equal;
  auto up = is_positive(b - a, G, bud), down = is_positive(a - b, G, bud);
  if (up.is_yes()) return Comparison::Less;
  if (down.is_yes()) return Comparison::Greater;
  if (up.is_no() && down.is_no()) return Comparison::Incomparable;
  return Comparison::Unknown;
}

// ---- atoms

inline std::optional<Mat> node_atoms(const OrderNode &n, const Budget &b) {
  size_t d = n.dim();
  switch (n.kind) {
  case OrderKind::Coordinate:
    if (n.rings[0].kind() == BaseRing::Kind::Integers) return Mat{Vec{Rat(1)}};
    return Mat{};
  case OrderKind::Product: {
    Mat out;
    size_t off = 0;
    for (auto &k : n.kids) {
      auto a = node_atoms(k, b);
      if (!a) return std::nullopt;
      for (auto &v : *a) out.push_back(embed(v, off, d));
      off += k.dim();
    }
    return out;
  }
  case OrderKind::Lex: {
    size_t off = 0;
    for (auto &k : n.kids) {
      if (k.dim() == 0) continue;
      auto a = node_atoms(k, b);
      if (!a) return std::nullopt;
      Mat out;
      for (auto &v : *a) out.push_back(embed(v, off, d));
      return out;
    }
    return Mat{};
  }
  case OrderKind::LazyLex:
    if (d == 0) return Mat{};
    return Mat{unit_vec(d, 0)};
  case OrderKind::Cone: {
    Mat out;
    for (size_t i = 0; i < n.gens.size(); ++i) {
      bool reducible = false;
      for (size_t j = 0; j < n.gens.size() && !reducible; ++j) {
        if (i == j) continue;
        Vec r = n.gens[i] - n.gens[j];
        if (is_zero(r)) continue;
        auto t = node_positive(n, r, b);
        if (t.is_unknown()) return std::nullopt;
        reducible = t.is_yes();
      }
      if (!reducible) out.push_back(n.gens[i]);
    }
    return out;
  }
  case OrderKind::Geometric: {
    Mat out;
    for (auto &g : n.gens) {
      Rat x = g[0];
      bool reducible = false;
      int N = geom::truncation_level(n, x);
      // a family member is p copies of the next one
      for (auto &f : n.families)
        for (int l = f.startLevel; l <= N; ++l)
          if (x == geom::member(f, l)) reducible = true;
      if (!reducible) {
        auto k = geom::truncated_generators(n, N);
        Rat X = x * Rat(k.scale);
        if (X > Rat(b.knapsackLimit)) return std::nullopt;
        long xi = X.get_num().get_si();
        auto t = geom::knapsack_table(k.parts, xi);
        for (long p : k.parts)
          if (p < xi && t[xi - p] >= 1) reducible = true;
      }
      if (!reducible) out.push_back(g);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }
  case OrderKind::Predicate: return n.atoms;
  }
  return std::nullopt;
}

inline std::optional<Mat> atoms(const PoGroup &G, const Budget &b = {}) {
  if (G.dim() == 0) return Mat{};
  return node_atoms(G.order, b);
}

inline Mat atoms_or_throw(const PoGroup &G, const Budget &b = {}) {
  auto a = atoms(G, b);
  if (!a) throw PoError("AtomsUnknown", "atom enumeration exceeded its budget");
  return *a;
}

// ---- homomorphisms

struct GroupHom {
  std::shared_ptr<const PoGroup> domain, codomain;
  Mat matrix;   // codomain.dim rows, domain.dim columns
  Mat section;  // domain.dim rows, codomain.dim columns (may be empty)
  std::optional<Module> kernel;
  bool windowed = false;  // lazy window shift: the new coordinate has no preimage in the window
  Vec operator()(const Vec &x) const { return mat_apply(matrix, x); }
  Vec lift(const Vec &y) const { return mat_apply(section, y); }
};

inline GroupHom make_hom(const PoGroup &dom, const PoGroup &cod, Mat m) {
  GroupHom f;
  f.domain = std::make_shared<PoGroup>(dom);
  f.codomain = std::make_shared<PoGroup>(cod);
  f.matrix = std::move(m);
  return f;
}

inline GroupHom identity_hom(const PoGroup &G) {
  auto f = make_hom(G, G, identity(G.dim()));
  f.section = identity(G.dim());
  f.kernel = Module(G.dim());
  return f;
}

// ---- quotients by o-ideals

struct NodeQuotient {
  OrderNode node;
  Mat P, S;
  bool windowed = false;
};

namespace detail {

inline Mat zero_mat(size_t r, size_t c) { return Mat(r, zero_vec(c)); }

inline OrderNode collapse(OrderNode n) {
  if ((n.kind == OrderKind::Product || n.kind == OrderKind::Lex)) {
    std::vector<OrderNode> keep;
    for (auto &k : n.kids)
      if (k.dim() > 0) keep.push_back(k);
    n.kids = keep;
    if (n.kids.size() == 1) return n.kids[0];
  }
  return n;
}

inline bool aligned(const OrderNode &n, const Module &H) {
  size_t off = 0, d = n.dim();
  Module sum(d);
  for (auto &k : n.kids) {
    sum = sum + embed_module(restrict_module(H, off, k.dim()), off, d);
    off += k.dim();
  }
  return sum == H;
}

inline NodeQuotient identity_quotient(const OrderNode &n) { return {n, identity(n.dim()), identity(n.dim())}; }

inline NodeQuotient trivial_quotient(const OrderNode &n) {
  return {product_of({}), Mat{}, zero_mat(n.dim(), 0)};
}

inline NodeQuotient quotient_node(const OrderNode &n, const Module &H);

// assemble block-diagonal maps from per-block quotients
inline NodeQuotient assemble(OrderKind kind, const std::vector<NodeQuotient> &parts, const std::vector<size_t> &dims) {
  size_t din = 0, dout = 0;
  for (size_t i = 0; i < parts.size(); ++i) din += dims[i], dout += parts[i].node.dim();
  NodeQuotient q;
  q.P = zero_mat(dout, din);
  q.S = zero_mat(din, dout);
  std::vector<OrderNode> kids;
  size_t oi = 0, oo = 0;
  for (size_t i = 0; i < parts.size(); ++i) {
    auto &p = parts[i];
    size_t m = p.node.dim();
    for (size_t r = 0; r < m; ++r)
      for (size_t c = 0; c < dims[i]; ++c) q.P[oo + r][oi + c] = p.P[r][c];
    for (size_t r = 0; r < dims[i]; ++r)
      for (size_t c = 0; c < m; ++c) q.S[oi + r][oo + c] = p.S[r][c];
    if (m > 0) kids.push_back(p.node);
    q.windowed = q.windowed || p.windowed;
    oi += dims[i];
    oo += m;
  }
  OrderNode n;
  n.kind = kind;
  n.kids = kids;
  q.node = collapse(n);
  return q;
}

inline NodeQuotient quotient_node(const OrderNode &n, const Module &H) {
  size_t d = n.dim();
  if (H.is_zero()) return identity_quotient(n);
  Module car = carrier_of(n);
  if (!car.contains(H)) throw PoError("NotOIdeal", "subgroup is not inside the carrier");
  switch (n.kind) {
  case OrderKind::Product: {
    if (!aligned(n, H)) throw PoError("Unsupported", "quotient by a subgroup not aligned with product blocks");
    std::vector<NodeQuotient> parts;
    std::vector<size_t> dims;
    size_t off = 0;
    for (auto &k : n.kids) {
      parts.push_back(quotient_node(k, restrict_module(H, off, k.dim())));
      dims.push_back(k.dim());
      off += k.dim();
    }
    return assemble(OrderKind::Product, parts, dims);
  }
  case OrderKind::Lex: {
    std::vector<size_t> offs;
    size_t off = 0;
    for (auto &k : n.kids) offs.push_back(off), off += k.dim();
    size_t j = n.kids.size();
    for (size_t i = n.kids.size(); i-- > 0;)
      if (!restrict_module(H, offs[i], n.kids[i].dim()).is_zero()) {
        j = i;
        break;
      }
    for (size_t i = 0; i < j; ++i)
      if (!H.contains(embed_module(carrier_of(n.kids[i]), offs[i], d)))
        throw PoError("NotOIdeal", "lexicographic block below the top of H is not contained in H");
    std::vector<NodeQuotient> parts;
    std::vector<size_t> dims;
    for (size_t i = 0; i < n.kids.size(); ++i) {
      size_t kd = n.kids[i].dim();
      if (i < j)
        parts.push_back(trivial_quotient(n.kids[i]));
      else if (i == j)
        parts.push_back(quotient_node(n.kids[i], restrict_module(H, offs[i], kd)));
      else
        parts.push_back(identity_quotient(n.kids[i]));
      dims.push_back(kd);
    }
    return assemble(OrderKind::Lex, parts, dims);
  }
  case OrderKind::LazyLex: {
    if (!(H == Module::lattice(d, {unit_vec(d, 0)})))
      throw PoError("Unsupported", "lazy lexicographic windows only quotient by their first coordinate");
    NodeQuotient q;
    q.node = lazy_lex(n.window, n.offset + 1);
    q.P = zero_mat(d, d);
    q.S = zero_mat(d, d);
    for (size_t i = 1; i < d; ++i) q.P[i - 1][i] = 1, q.S[i][i - 1] = 1;
    q.windowed = true;
    return q;
  }
  case OrderKind::Cone: {
    if (H == car) return trivial_quotient(n);
    for (auto &r : n.rings)
      if (r.kind() != BaseRing::Kind::Integers)
        throw PoError("Unsupported", "cone quotients need an integer carrier");
    const Mat &hb = H.lattice_basis();
    if (!(Module::lattice(d, saturate(hb, d)) == H))
      throw PoError("NotOIdeal", "quotient would have torsion");
    Mat P = integer_kernel(hb, d);
    size_t m = P.size();
    Mat cols = transpose(P, d);
    Mat S = zero_mat(d, m);
    for (size_t j = 0; j < m; ++j) {
      auto s = solve_membership(unit_vec(m, j), cols);
      if (!s) throw AlgebraError("projection is not surjective");
      for (size_t r = 0; r < d; ++r) S[r][j] = (*s)[r];
    }
    Mat g;
    for (auto &v : n.gens) {
      Vec w = mat_apply(P, v);
      if (!is_zero(w) && std::find(g.begin(), g.end(), w) == g.end()) g.push_back(w);
    }
    OrderNode c = cone_of(g, m);
    bool dir = true;
    prepare_node(c, dir);
    return {c, P, S};
  }
  case OrderKind::Coordinate:
  case OrderKind::Geometric:
  case OrderKind::Predicate:
    if (H == car) return trivial_quotient(n);
    throw PoError("NotOIdeal", "only 0 and the whole carrier are supported as o-ideals of this block");
  }
  throw PoError("Unsupported", "unknown order kind");
}

}  // namespace detail

struct QuotientResult {
  PoGroup group;
  GroupHom projection;
};

inline QuotientResult quotient_unchecked(const PoGroup &G, const Module &H) {
  auto nq = G.dim() == 0 ? detail::identity_quotient(G.order) : detail::quotient_node(G.order, H);
  PoGroup Q = make_group(nq.node, G.provenance.empty() ? "" : G.provenance + " / subgroup");
  GroupHom f = make_hom(G, Q, nq.P);
  f.section = nq.S;
  f.kernel = H;
  f.windowed = nq.windowed;
  return {Q, f};
}

}  // namespace pogroup
