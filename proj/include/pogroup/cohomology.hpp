#pragma once

#include "pogroup/sequence.hpp"

namespace pogroup {

enum class ComplexKind { A, AA, Q, Ahat, AAhat, Qhat, AhatModQ, AAhatModQ, QhatModQ };

inline const std::vector<ComplexKind> &all_complex_kinds() {
  static const std::vector<ComplexKind> k = {ComplexKind::A,        ComplexKind::AA,        ComplexKind::Q,
                                             ComplexKind::Ahat,     ComplexKind::AAhat,     ComplexKind::Qhat,
                                             ComplexKind::AhatModQ, ComplexKind::AAhatModQ, ComplexKind::QhatModQ};
  return k;
}

inline std::string complex_name(ComplexKind k) {
  switch (k) {
  case ComplexKind::A: return "A";
  case ComplexKind::AA: return "AA";
  case ComplexKind::Q: return "Q";
  case ComplexKind::Ahat: return "Ahat";
  case ComplexKind::AAhat: return "AAhat";
  case ComplexKind::Qhat: return "Qhat";
  case ComplexKind::AhatModQ: return "AhatModQ";
  case ComplexKind::AAhatModQ: return "AAhatModQ";
  default: return "QhatModQ";
  }
}

inline std::optional<ComplexKind> parse_complex_kind(const std::string &s) {
  for (auto k : all_complex_kinds())
    if (complex_name(k) == s) return k;
  return std::nullopt;
}

// the materialized stages G_0, G_1, ... with projections and the distinguished subgroups
struct Resolution {
  std::vector<PoGroup> groups;
  std::vector<Mat> P, S;  // P[n]: G_n -> G_{n+1}, S[n] a section
  std::vector<Module> A, AA, Q, Ahat, AAhat, Qhat;
  size_t depth = 0;  // stages 0..depth are available
};

namespace detail {

inline Module preimage(const Resolution &r, size_t n, const Module &D) {
  return image(r.S[n], D, r.groups[n].dim()) + r.Q[n];
}

}  // namespace detail

// stages 0..depth, padding terminated sequences with 0 and stabilized ones with identities
inline Resolution resolve(const PoGroup &G, size_t depth, const Budget &b = {}) {
  auto seq = qa_sequence(G, depth + 1, b, false);
  Resolution r;
  r.depth = depth;
  if (seq.haltReason == HaltReason::DepthExhausted && seq.groups.size() < depth + 2)
    throw PoError("SequenceUndetermined", "quotient sequence undetermined at depth " + std::to_string(seq.depthReached));
  r.groups = seq.groups;
  for (auto &p : seq.projections) {
    r.P.push_back(p.matrix);
    r.S.push_back(p.section);
  }
  while (r.groups.size() < depth + 2) {
    PoGroup last = r.groups.back();
    size_t d = last.dim();
    r.P.push_back(identity(d));
    r.S.push_back(identity(d));
    r.groups.push_back(last);
  }
  // a projection into a trivial stage has zero rows
  for (size_t n = 0; n + 1 < r.groups.size(); ++n) {
    size_t d = r.groups[n].dim(), e = r.groups[n + 1].dim();
    if (r.P[n].empty()) r.P[n] = Mat{};
    if (r.S[n].size() != d) r.S[n] = Mat(d, zero_vec(e));
  }
  for (auto &g : r.groups) {
    r.A.push_back(atomic_subgroup(g, b));
    r.AA.push_back(almost_atomic_subgroup(g, b));
    r.Q.push_back(quasi_atomic_subgroup(g, b));
  }
  for (size_t n = 0; n + 1 < r.groups.size(); ++n) {
    r.Ahat.push_back(detail::preimage(r, n, r.A[n + 1]));
    r.AAhat.push_back(detail::preimage(r, n, r.AA[n + 1]));
    r.Qhat.push_back(detail::preimage(r, n, r.Q[n + 1]));
  }
  return r;
}

struct Complex {
  ComplexKind kind = ComplexKind::A;
  std::shared_ptr<const Resolution> res;
  std::vector<Module> num, den;  // term n = num[n] / den[n], in G_n coordinates
  size_t terms() const { return num.size(); }
};

inline Complex build_complex(std::shared_ptr<const Resolution> r, ComplexKind kind) {
  Complex c;
  c.kind = kind;
  c.res = r;
  size_t T = r->Ahat.size();
  for (size_t n = 0; n < T; ++n) {
    size_t d = r->groups[n].dim();
    Module zero(d);
    switch (kind) {
    case ComplexKind::A: c.num.push_back(r->A[n]), c.den.push_back(zero); break;
    case ComplexKind::AA: c.num.push_back(r->AA[n]), c.den.push_back(zero); break;
    case ComplexKind::Q: c.num.push_back(r->Q[n]), c.den.push_back(zero); break;
    case ComplexKind::Ahat: c.num.push_back(r->Ahat[n]), c.den.push_back(zero); break;
    case ComplexKind::AAhat: c.num.push_back(r->AAhat[n]), c.den.push_back(zero); break;
    case ComplexKind::Qhat: c.num.push_back(r->Qhat[n]), c.den.push_back(zero); break;
    case ComplexKind::AhatModQ: c.num.push_back(r->Ahat[n]), c.den.push_back(r->Q[n]); break;
    case ComplexKind::AAhatModQ: c.num.push_back(r->AAhat[n]), c.den.push_back(r->Q[n]); break;
    case ComplexKind::QhatModQ: c.num.push_back(r->Qhat[n]), c.den.push_back(r->Q[n]); break;
    }
  }
  return c;
}

inline Complex build_complex(const PoGroup &G, ComplexKind kind, size_t maxDepth, const Budget &b = {}) {
  return build_complex(std::make_shared<Resolution>(resolve(G, maxDepth + 1, b)), kind);
}

// delta_n sends every term into the next one; delta_{n+1} delta_n lands in the denominator
inline bool verify_complex(const Complex &c) {
  const Resolution &r = *c.res;
  for (size_t n = 0; n + 1 < c.terms(); ++n) {
    size_t e = r.groups[n + 1].dim();
    if (!(c.num[n + 1] + c.den[n + 1]).contains(image(r.P[n], c.num[n], e))) return false;
    if (!c.den[n + 1].contains(image(r.P[n], c.den[n], e))) return false;
    if (n + 2 < c.terms()) {
      Module twice = image(r.P[n + 1], image(r.P[n], c.num[n], e), r.groups[n + 2].dim());
      if (!c.den[n + 2].contains(twice)) return false;
    }
  }
  return true;
}

// differential is zero on every term (image inside the next denominator)
inline bool differentials_trivial(const Complex &c) {
  const Resolution &r = *c.res;
  for (size_t n = 0; n + 1 < c.terms(); ++n)
    if (!c.den[n + 1].contains(image(r.P[n], c.num[n], r.groups[n + 1].dim()))) return false;
  return true;
}

struct CohomologyGroup {
  enum class Form { FinitelyGenerated, PrueferPower, FormalQuotient };
  Form form = Form::FinitelyGenerated;
  QuotientType type;
  Module numerator, denominator;  // in stage coordinates
  int degree = 0;
  bool trivial() const { return type.trivial(); }
  std::string form_name() const {
    switch (form) {
    case Form::FinitelyGenerated: return "FinitelyGenerated";
    case Form::PrueferPower: return "PrueferPower";
    default: return "FormalQuotient";
    }
  }
  std::string str() const {
    if (form == Form::PrueferPower) {
      auto &[p, k] = *type.prufer.begin();
      return "PrueferPower(" + p.get_str() + "," + std::to_string(k) + ")";
    }
    if (form == Form::FinitelyGenerated) return "FinitelyGenerated(" + type.str() + ")";
    return "FormalQuotient(" + type.str() + ")";
  }
};

inline CohomologyGroup make_cohomology(const Module &num, const Module &den, int degree) {
  CohomologyGroup h;
  h.numerator = num;
  h.denominator = den;
  h.degree = degree;
  h.type = quotient_type(num, den);
  if (h.type.finitely_generated())
    h.form = CohomologyGroup::Form::FinitelyGenerated;
  else if (h.type.rank == 0 && h.type.torsion.empty() && h.type.qmodz == 0 && h.type.prufer.size() == 1)
    h.form = CohomologyGroup::Form::PrueferPower;
  else
    h.form = CohomologyGroup::Form::FormalQuotient;
  return h;
}

inline CohomologyGroup trivial_cohomology(int degree) { return make_cohomology(Module(0), Module(0), degree); }

// cycles of degree n: x in num_n with delta_n(x) in den_{n+1}
inline Module cycles(const Complex &c, size_t n) {
  const Resolution &r = *c.res;
  if (n + 1 >= c.terms()) throw PoError("DepthExhausted", "degree beyond the materialized terms");
  Module pre = detail::preimage(r, n, c.den[n + 1]);
  return intersect(c.num[n], pre);
}

inline Module boundaries(const Complex &c, size_t n) {
  const Resolution &r = *c.res;
  if (n == 0) return c.den[0];
  return image(r.P[n - 1], c.num[n - 1], r.groups[n].dim()) + c.den[n];
}

// ker(delta_n) / Im(delta_{n-1}), with trivial terms in negative degrees
inline CohomologyGroup cohomology(const Complex &c, int n) {
  if (n < 0) return trivial_cohomology(n);
  return make_cohomology(cycles(c, n), boundaries(c, n), n);
}

// the closed-form tables for H^0 and H^n, n >= 1
inline QuotientType closed_form_cohomology(const Resolution &r, ComplexKind k, int n) {
  if (n < 0) return {};
  size_t m = n;
  auto plain = [&](const Module &M) { return quotient_type(M, Module(M.dim())); };
  switch (k) {
  case ComplexKind::A: return plain(r.A[m]);
  case ComplexKind::AA: return plain(r.AA[m]);
  case ComplexKind::Q: return plain(r.Q[m]);
  case ComplexKind::Ahat: return n == 0 ? plain(r.Q[0]) : quotient_type(r.Q[m], r.A[m]);
  case ComplexKind::AAhat: return n == 0 ? plain(r.Q[0]) : quotient_type(r.Q[m], r.AA[m]);
  case ComplexKind::Qhat: return n == 0 ? plain(r.Q[0]) : QuotientType{};
  case ComplexKind::AhatModQ: return plain(r.A[m + 1]);
  case ComplexKind::AAhatModQ: return plain(r.AA[m + 1]);
  case ComplexKind::QhatModQ: return plain(r.Q[m + 1]);
  }
  return {};
}

inline long cohomology_element_order(const Vec &x, const CohomologyGroup &H) {
  if (x.size() != H.numerator.dim() || !H.numerator.contains(x))
    throw PoError("NotInNumerator", to_string(x) + " is not a cycle");
  return element_order(x, H.denominator);
}

// ---- short exact sequences and lex-exactness

// 1 -> X -> Y -> Y/X -> 1 inside an ambient po-group G; X must be a quotient-supported subgroup of G
struct ShortExact {
  PoGroup ambient;
  Module middle, sub;
};

namespace detail {

inline Mat sample_middle(const ShortExact &s, std::mt19937 &rng, size_t count) {
  Mat out;
  Mat gens = s.middle.all_gens();
  std::uniform_int_distribution<int> c(-3, 3);
  for (size_t i = 0; i < count && !gens.empty(); ++i) {
    Vec v = zero_vec(s.ambient.dim());
    for (auto &g : gens) v = v + Rat(c(rng)) * g;
    out.push_back(v);
  }
  for (size_t i = 0; i < count && s.ambient.dim(); ++i) {
    Vec g = sample_positive(s.ambient.order, rng);
    if (s.middle.contains(g)) out.push_back(g);
  }
  return out;
}

}  // namespace detail

inline TriBool check_o_exact(const ShortExact &s, const Budget &b = {}) {
  if (!s.middle.contains(s.sub)) return TriBool::no("kernel is not inside the middle term");
  if (s.ambient.dim() == 0) return TriBool::yes("trivial sequence");
  auto q = quotient_unchecked(s.ambient, s.sub);
  std::mt19937 rng(17);
  // beta(Y+) = J+: positive images lift to positive elements of Y
  for (auto &h : detail::sample_middle(s, rng, 60)) {
    if (!is_positive(h, s.ambient, b).is_yes()) continue;
    Vec y = q.projection(h);
    if (q.group.dim() && !is_positive(y, q.group, b).is_yes())
      return TriBool::no("positive " + to_string(h) + " maps outside the quotient cone");
  }
  Mat kb = s.sub.all_gens();
  for (int it = 0; it < 60 && q.group.dim(); ++it) {
    Vec y = sample_positive(q.group.order, rng);
    Vec x = q.projection.lift(y);
    if (!s.middle.contains(x)) continue;
    bool ok = is_positive(x, s.ambient, b).is_yes();
    for (size_t i = 0; i < kb.size() && !ok; ++i)
      for (int c = -4; c <= 4 && !ok; ++c) ok = is_positive(x + Rat(c) * kb[i], s.ambient, b).is_yes();
    if (!ok) return TriBool::unknown("no positive lift found for " + to_string(y));
  }
  return TriBool::yes("cone conditions hold on samples");
}

// H+ = { h : beta(h) in J+ \ {0} } union alpha(G+)
inline TriBool check_lex_exact(const ShortExact &s, const Budget &b = {}) {
  auto o = check_o_exact(s, b);
  if (!o.is_yes()) return o;
  if (s.ambient.dim() == 0) return TriBool::yes("trivial sequence");
  auto q = quotient_unchecked(s.ambient, s.sub);
  std::mt19937 rng(19);
  for (auto &h : detail::sample_middle(s, rng, 150)) {
    bool pos = is_positive(h, s.ambient, b).is_yes();
    Vec y = q.projection(h);
    bool viaQuot = !is_zero(y) && q.group.dim() && is_positive(y, q.group, b).is_yes();
    bool viaSub = s.sub.contains(h) && pos;
    if (pos != (viaQuot || viaSub))
      return TriBool::no(to_string(h) + (pos ? " is positive but neither" : " is not positive yet its image is"));
  }
  return TriBool::yes("membership identity holds on samples");
}

// the short exact sequence of complexes 1 -> Q -> Y -> Y/Q -> 1 in degree n
inline ShortExact degree_sequence(const Resolution &r, ComplexKind middle, size_t n) {
  const Module &Y = middle == ComplexKind::Ahat ? r.Ahat[n] : middle == ComplexKind::AAhat ? r.AAhat[n] : r.Qhat[n];
  return {r.groups[n], Y, r.Q[n]};
}

// ---- long exact sequences

struct LESReport {
  std::vector<CohomologyGroup> nodes;  // H^0(X), H^0(Y), H^0(Z), H^1(X), ...
  std::vector<std::string> labels;
  std::vector<TriBool> exactAt;
  std::string pattern() const {
    std::string s;
    for (auto &n : nodes) s += (s.empty() ? "" : ",") + (n.trivial() ? std::string("0") : n.type.str());
    return s;
  }
};

namespace detail {

// kernel of the map induced by matrix M from num/den to num2/den2 (M maps into G_m coordinates)
inline Module induced_kernel(const Module &num, const Mat &M, const Module &den2, const Resolution &r, size_t from,
                             bool connecting) {
  if (!connecting) return intersect(num, den2);
  (void)M;
  return intersect(num, preimage(r, from, den2));
}

}  // namespace detail

inline LESReport long_exact_sequence(std::shared_ptr<const Resolution> r, ComplexKind middle, int maxDegree) {
  ComplexKind quot = middle == ComplexKind::Ahat    ? ComplexKind::AhatModQ
                     : middle == ComplexKind::AAhat ? ComplexKind::AAhatModQ
                                                    : ComplexKind::QhatModQ;
  Complex X = build_complex(r, ComplexKind::Q), Y = build_complex(r, middle), Z = build_complex(r, quot);
  LESReport rep;
  struct Node {
    Module num, den;
    size_t stage;
  };
  std::vector<Node> nodes;
  for (int n = 0; n <= maxDegree; ++n) {
    for (auto *C : {&X, &Y, &Z}) {
      auto h = cohomology(*C, n);
      rep.nodes.push_back(h);
      rep.labels.push_back("H" + std::to_string(n) + "(" + complex_name(C->kind) + ")");
      nodes.push_back({h.numerator, h.denominator, size_t(n)});
    }
  }
  // node i -> node i+1: inclusion, projection (identity coordinates), connecting (pi_n)
  auto image_in_next = [&](size_t i) -> Module {
    const Node &a = nodes[i], &c = nodes[i + 1];
    if (i % 3 == 2) return image(r->P[a.stage], a.num, r->groups[c.stage].dim()) + c.den;
    return a.num + c.den;
  };
  auto kernel_of_out = [&](size_t i) -> Module {
    const Node &a = nodes[i], &c = nodes[i + 1];
    return detail::induced_kernel(a.num, r->P[a.stage], c.den, *r, a.stage, i % 3 == 2);
  };
  for (size_t i = 0; i < nodes.size(); ++i) {
    if (i + 1 >= nodes.size()) {
      rep.exactAt.push_back(TriBool::unknown("last materialized node"));
      continue;
    }
    try {
      Module im = i == 0 ? nodes[0].den : image_in_next(i - 1);
      Module ker = kernel_of_out(i);
      rep.exactAt.push_back(TriBool::of(im == ker + nodes[i].den, im == ker + nodes[i].den ? "" : "image differs from kernel"));
    } catch (const AlgebraError &e) {
      rep.exactAt.push_back(TriBool::unknown(e.what()));
    }
  }
  return rep;
}

inline LESReport long_exact_sequence(const PoGroup &G, ComplexKind middle, int maxDegree, const Budget &b = {}) {
  return long_exact_sequence(std::make_shared<Resolution>(resolve(G, maxDegree + 2, b)), middle, maxDegree);
}

// ---- provisional o-cohomology

enum class OVariant { Inflate, Collapse };

struct OCohomology {
  CohomologyGroup group;
  bool coincide = false;  // the other variant gives the same signature
  std::string note;
};

namespace detail {

// x and -x both in (num cap G+) + den
inline bool quasi_equivalent_to_zero(const Vec &x, const Module &num, const Module &den, const PoGroup &G,
                                     const Budget &b) {
  Mat db = den.all_gens();
  if (db.size() > 3) db.resize(3);
  auto reach = [&](const Vec &v) {
    bool ok = false;
    std::function<void(size_t, Vec)> go = [&](size_t i, Vec acc) {
      if (ok) return;
      if (i == db.size()) {
        if (num.contains(acc) && is_positive(acc, G, b).is_yes()) ok = true;
        return;
      }
      for (int c = -6; c <= 6 && !ok; ++c) go(i + 1, acc + Rat(c) * db[i]);
    };
    go(0, v);
    return ok;
  };
  return reach(x) && reach(-x);
}

inline Module collapse_denominator(const Module &num, const Module &den, const PoGroup &G, const Budget &b) {
  Mat z = den.zgens(), q = den.qgens();
  std::map<Int, Mat> p = den.pgens();
  for (auto &v : num.zgens())
    if (quasi_equivalent_to_zero(v, num, den, G, b)) z.push_back(v);
  for (auto &[pr, gs] : num.pgens())
    for (auto &v : gs) {
      bool all = true;
      Rat scale = 1;
      for (int k = 0; k <= 3 && all; ++k, scale /= Rat(pr)) all = quasi_equivalent_to_zero(scale * v, num, den, G, b);
      if (all) p[pr].push_back(v), z.push_back(v);
    }
  for (auto &v : num.qgens()) {
    bool all = true;
    for (int k : {1, 2, 3, 5}) all = all && quasi_equivalent_to_zero(Rat(1) / Rat(k) * v, num, den, G, b);
    if (all) q.push_back(v);
  }
  return Module(num.dim(), z, p, q);
}

}  // namespace detail

inline CohomologyGroup o_cohomology_variant(const Complex &c, int n, OVariant v, const Budget &b = {}) {
  if (n < 0) return trivial_cohomology(n);
  Module num = cycles(c, n), den = boundaries(c, n);
  const PoGroup &G = c.res->groups[n];
  if (v == OVariant::Inflate) {
    Module sat = G.dim() ? node_semisat(G.order, den, b) + den : den;
    return make_cohomology(num, intersect(num, sat), n);
  }
  return make_cohomology(num, detail::collapse_denominator(num, den, G, b), n);
}

inline OCohomology o_cohomology(const Complex &c, int n, OVariant v, const Budget &b = {}) {
  OCohomology o;
  o.group = o_cohomology_variant(c, n, v, b);
  auto other = o_cohomology_variant(c, n, v == OVariant::Inflate ? OVariant::Collapse : OVariant::Inflate, b);
  o.coincide = o.group.type == other.type;
  o.note = o.coincide ? "variants coincide on this instance" : "variants differ on this instance";
  return o;
}

}  // namespace pogroup
