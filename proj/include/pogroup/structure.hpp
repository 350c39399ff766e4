#pragma once

#include "pogroup/sequence.hpp"

namespace pogroup {

enum class SumMode { Product, LexBlocks };

// LexBlocks: the last part is the most significant block
inline PoGroup direct_sum(const std::vector<PoGroup> &parts, SumMode mode) {
  std::vector<OrderNode> kids;
  std::string prov;
  for (auto &g : parts) {
    if (g.dim() == 0) continue;
    kids.push_back(g.order);
    prov += (prov.empty() ? "" : " + ") + (g.provenance.empty() ? presentation(g.order) : g.provenance);
  }
  if (kids.empty()) return trivial_group();
  if (kids.size() == 1)
    for (auto &g : parts)
      if (g.dim()) return g;
  bool directed = true;
  for (auto &g : parts) directed = directed && g.directed;
  OrderNode n = mode == SumMode::Product ? product_of(kids) : lex_of(kids);
  return make_group(n, prov + (mode == SumMode::Product ? " (product)" : " (lex)"), directed);
}

namespace detail {

inline Mat block_diagonal(const std::vector<Mat> &blocks, const std::vector<size_t> &rows,
                          const std::vector<size_t> &cols) {
  size_t R = 0, C = 0;
  for (size_t i = 0; i < blocks.size(); ++i) R += rows[i], C += cols[i];
  Mat out = zero_mat(R, C);
  size_t r0 = 0, c0 = 0;
  for (size_t i = 0; i < blocks.size(); ++i) {
    for (size_t r = 0; r < rows[i]; ++r)
      for (size_t c = 0; c < cols[i]; ++c) out[r0 + r][c0 + c] = blocks[i][r][c];
    r0 += rows[i];
    c0 += cols[i];
  }
  return out;
}

inline Module embedded_sum(const std::vector<Module> &ms, size_t total) {
  Module out(total);
  size_t off = 0;
  for (auto &m : ms) {
    out = out + embed_module(m, off, total);
    off += m.dim();
  }
  return out;
}

// H + K is a direct sum iff the ranks add (torsion-free groups)
inline bool independent(const Module &H, const Module &K) { return (H + K).rank() == H.rank() + K.rank(); }

inline bool same_module(const Module &a, const Module &b) { return a.contains(b) && b.contains(a); }

}  // namespace detail

inline TriBool verify_sum_quotient(const std::vector<std::pair<PoGroup, Module>> &parts, const Budget &b = {}) {
  std::vector<PoGroup> gs, qs;
  std::vector<Module> hs;
  std::vector<Mat> ps;
  std::vector<size_t> rows, cols;
  for (auto &[G, H] : parts) {
    if (G.dim() == 0) continue;
    auto oi = is_o_ideal(H, G, b);
    if (oi.is_no()) throw PoError("NotOIdeal", "summand subgroup is not an o-ideal: " + oi.witness);
    auto q = quotient_unchecked(G, H);
    gs.push_back(G);
    hs.push_back(H);
    qs.push_back(q.group);
    ps.push_back(q.projection.matrix);
    rows.push_back(q.group.dim());
    cols.push_back(G.dim());
  }
  PoGroup S = direct_sum(gs, SumMode::Product);
  auto lhs = quotient_unchecked(S, detail::embedded_sum(hs, S.dim()));
  PoGroup rhs = direct_sum(qs, SumMode::Product);
  if (lhs.group.trivial() && rhs.trivial()) return TriBool::yes("both sides trivial");
  if (lhs.group.presentation() != rhs.presentation())
    return TriBool::no(lhs.group.presentation() + " vs " + rhs.presentation());
  if (lhs.projection.matrix != detail::block_diagonal(ps, rows, cols))
    return TriBool::no("projections differ");
  return TriBool::yes(rhs.presentation());
}

inline TriBool verify_atoms_of_sum(const std::vector<PoGroup> &parts, const Budget &b = {}) {
  PoGroup S = direct_sum(parts, SumMode::Product);
  Mat emb;
  std::vector<Module> as, qs;
  size_t off = 0;
  for (auto &g : parts) {
    if (g.dim() == 0) continue;
    for (auto &a : atoms_or_throw(g, b)) emb.push_back(embed(a, off, S.dim()));
    as.push_back(atomic_subgroup(g, b));
    qs.push_back(quasi_atomic_subgroup(g, b));
    off += g.dim();
  }
  if (S.dim() == 0) return TriBool::yes("trivial sum");
  Mat sa = atoms_or_throw(S, b);
  std::sort(sa.begin(), sa.end());
  std::sort(emb.begin(), emb.end());
  if (sa != emb) return TriBool::no("atoms of the sum differ from the embedded atoms");
  if (!(atomic_subgroup(S, b) == detail::embedded_sum(as, S.dim())))
    return TriBool::no("atomic subgroups differ");
  if (!detail::same_module(quasi_atomic_subgroup(S, b), detail::embedded_sum(qs, S.dim())))
    return TriBool::no("quasi-atomic subgroups differ");
  return TriBool::yes(std::to_string(sa.size()) + " atoms, A and Q split blockwise");
}

// ---- quasi-atomic complements

struct ComplementCertificate {
  Subgroup complement;
  std::vector<std::pair<Vec, long>> perElementMultipliers;
};

inline TriBool is_quasi_atomic_complement(const Subgroup &H, const PoGroup &G, size_t sampleBudget = 32,
                                          const Budget &b = {}) {
  if (!G.carrier.contains(H)) return TriBool::no("not a subgroup of the carrier");
  Module Q = quasi_atomic_subgroup(G, b);
  if (!detail::independent(H, Q)) return TriBool::no("meets the quasi-atomic subgroup");
  Module sum = H + Q;
  if (sum.rank() == G.carrier.rank()) {
    // H + Q has full rank, so the cokernel is torsion and every element has a multiple inside
    return TriBool::yes("H + Q(G) has full rank " + std::to_string(sum.rank()));
  }
  for (auto &g : G.carrier.all_gens())
    if (!in_span(sum.span_basis(), g)) return TriBool::no("no multiple of " + to_string(g) + " lies in H + Q(G)");
  (void)sampleBudget;
  return TriBool::unknown("rank deficit without a witness");
}

inline std::optional<ComplementCertificate> find_quasi_atomic_complement(const PoGroup &G, size_t samples = 16,
                                                                         const Budget &b = {}) {
  size_t d = G.dim();
  Module Q = d ? quasi_atomic_subgroup(G, b) : Module(0);
  // extend a basis of span_Q(Q) by coordinate directions
  Mat span = Q.span_basis();
  std::vector<size_t> dirs;
  for (size_t i = 0; i < d; ++i) {
    Mat t = span;
    t.push_back(unit_vec(d, i));
    if (rank_of(t) > span.size()) {
      span = row_space_basis(t);
      dirs.push_back(i);
    }
  }
  Module coords(d);
  for (size_t i = 0; i < d; ++i) coords = coords + embed_module(restrict_module(G.carrier, i, 1), i, d);
  Module H(d);
  if (detail::same_module(coords, G.carrier)) {
    // the carrier is a sum of coordinate groups, so carrier meets span{e_i} in those coordinates
    for (auto i : dirs) H = H + embed_module(restrict_module(G.carrier, i, 1), i, d);
  } else {
    Mat gens;
    for (auto i : dirs) {
      Vec e = unit_vec(d, i);
      long k = element_order(e, G.carrier);
      if (k <= 0) return std::nullopt;
      gens.push_back(Rat(k) * e);
    }
    H = Module::lattice(d, gens);
  }
  ComplementCertificate c{H, {}};
  Module sum = H + Q;
  std::mt19937 rng(7);
  for (size_t s = 0; s < samples && d; ++s) {
    Vec g = sample_any(G.order, rng);
    if (!G.carrier.contains(g)) continue;
    long n = element_order(g, sum);
    if (n <= 0) return std::nullopt;
    c.perElementMultipliers.push_back({g, n});
  }
  return c;
}

inline TriBool is_direct_summand_split(const Subgroup &H, const PoGroup &G, const Budget &b = {}) {
  Module Q = quasi_atomic_subgroup(G, b);
  if (!detail::independent(H, Q)) return TriBool::no("H meets Q(G)");
  Module sum = H + Q;
  if (!sum.contains(G.carrier)) return TriBool::no("H + Q(G) misses part of the carrier " + G.carrier.str());
  if (!G.carrier.contains(sum)) return TriBool::no("H + Q(G) leaves the carrier");
  return TriBool::yes("G = H + Q(G)");
}

// ---- lexicographic splitting

// tau(q, y) = q + s(y) on Q(G) + G/Q(G), quotient block most significant
inline TriBool verify_lex_split_with(const PoGroup &G, const Module &Q, const GroupHom &proj, const Mat &section,
                                     const Budget &b = {}, size_t samples = 48) {
  const PoGroup &L = *proj.codomain;
  size_t d = G.dim(), e = L.dim();
  if (d == 0) return TriBool::yes("trivial group");
  Mat ps = matmul(proj.matrix, section, e);
  if (e && ps != identity(e)) throw PoError("NotASection", "projection after section is not the identity");
  Module img = e ? image(section, L.carrier, d) : Module(d);
  if (!G.carrier.contains(img)) return TriBool::no("the section leaves the carrier");
  if (!detail::independent(Q, img)) return TriBool::no("the section meets Q(G)");
  if (!(Q + img).contains(G.carrier)) return TriBool::no("Q(G) + s(G/Q(G)) misses part of the carrier");
  std::mt19937 rng(13);
  Mat qg = Q.all_gens();
  std::uniform_int_distribution<int> coef(-40, 40);
  bool unknown = false;
  for (size_t s = 0; s < samples && e; ++s) {
    Vec y = sample_positive(L.order, rng);
    if (is_zero(y)) continue;
    Vec q = zero_vec(d);
    for (auto &v : qg) q = q + Rat(coef(rng)) * v;
    Vec x = q + mat_apply(section, y);
    auto p = is_positive(x, G, b);
    if (p.is_no()) return TriBool::no(to_string(x) + " = q + s(y) with y > 0 is not positive");
    unknown = unknown || p.is_unknown();
  }
  for (size_t s = 0; s < samples; ++s) {
    Vec g = sample_positive(G.order, rng);
    Vec y = proj(g);
    if (e && !is_zero(y)) {
      auto p = is_positive(y, L, b);
      if (p.is_no()) return TriBool::no("positive " + to_string(g) + " projects outside the cone");
      unknown = unknown || p.is_unknown();
    }
  }
  if (unknown) return TriBool::unknown("a sampled positivity test was undecided");
  return TriBool::yes("bijective on carriers; lex cone preserved on samples");
}

inline TriBool verify_lex_split(const PoGroup &G, const GroupHom &section, const Budget &b = {}) {
  if (G.dim() == 0) return TriBool::yes("trivial group");
  Module Q = quasi_atomic_subgroup(G, b);
  auto q = quotient_unchecked(G, Q);
  if (section.matrix.size() != G.dim() || ncols(section.matrix, q.group.dim()) != q.group.dim())
    throw PoError("NotASection", "section has the wrong shape");
  return verify_lex_split_with(G, Q, q.projection, section.matrix, b);
}

inline GroupHom canonical_section(const PoGroup &G, const Budget &b = {}) {
  Module Q = G.dim() ? quasi_atomic_subgroup(G, b) : Module(0);
  auto q = quotient_unchecked(G, Q);
  auto s = make_hom(q.group, G, q.projection.section);
  return s;
}

inline TriBool verify_cor_useful(const PoGroup &G, size_t maxDepth, const Budget &b = {}) {
  auto r = qa_sequence(G, maxDepth, b, false);
  if (r.haltReason != HaltReason::Terminated && r.haltReason != HaltReason::Stabilized)
    throw PoError("SequenceUndetermined", "the quotient sequence neither terminated nor stabilized");
  size_t total = 0;
  for (size_t i = 0; i < r.projections.size(); ++i) {
    const PoGroup &Gi = r.groups[i];
    auto t = verify_lex_split_with(Gi, r.qsubgroups[i], r.projections[i], r.projections[i].section, b);
    if (!t.is_yes()) {
      t.witness = "stage " + std::to_string(i) + ": " + t.witness;
      return t;
    }
    total += r.qsubgroups[i].rank();
  }
  const PoGroup &tail = r.groups.back();
  total += tail.carrier.rank();
  if (total != G.carrier.rank()) return TriBool::no("ranks of the lex summands do not add up");
  std::string w = std::to_string(r.projections.size()) + " split stages";
  if (r.haltReason == HaltReason::Stabilized) w += ", antimatter tail " + tail.presentation();
  return TriBool::yes(w);
}

}  // namespace pogroup
