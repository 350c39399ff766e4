#pragma once

// Subgroups of Q^d of the form  Z<L> + sum_p Z[1/p]<P_p> + Q<D>.
// Membership is decided one prime at a time: x lies in M iff it lies in
// every localization M_(q), and M_(q) = Z_(q)<L, P> + Q<P_q, D>.

#include "pogroup/exact_algebra.hpp"

namespace pogroup {

class Module {
public:
  Module() = default;
  explicit Module(size_t dim) : dim_(dim) { canonicalize(); }
  Module(size_t dim, Mat z, std::map<Int, Mat> p = {}, Mat q = {})
      : dim_(dim), z_(std::move(z)), p_(std::move(p)), q_(std::move(q)) {
    canonicalize();
  }

  static Module lattice(size_t dim, Mat gens) { return Module(dim, std::move(gens)); }
  static Module full(size_t dim, const std::vector<BaseRing> &rings) {
    Mat z, q;
    std::map<Int, Mat> p;
    for (size_t i = 0; i < dim; ++i) {
      const BaseRing &r = rings[i];
      Vec e = unit_vec(dim, i);
      if (r.kind() == BaseRing::Kind::Rationals)
        q.push_back(e);
      else {
        z.push_back(e);
        for (auto &pr : r.primes()) p[pr].push_back(e);
      }
    }
    return Module(dim, z, p, q);
  }

  size_t dim() const { return dim_; }
  const Mat &zgens() const { return z_; }
  const std::map<Int, Mat> &pgens() const { return p_; }
  const Mat &qgens() const { return q_; }
  // Z-basis of the lattice part modulo the Q-divisible span
  const Mat &lattice_basis() const { return basis_; }
  const Mat &divisible_basis() const { return dbasis_; }
  bool pure_lattice() const { return p_.empty() && q_.empty(); }

  Mat all_gens() const {
    Mat g = z_;
    for (auto &[pr, gs] : p_) g.insert(g.end(), gs.begin(), gs.end());
    g.insert(g.end(), q_.begin(), q_.end());
    return g;
  }
  Mat span_basis() const { return dim_ ? row_space_basis(all_gens()) : Mat{}; }
  size_t rank() const { return span_basis().size(); }
  bool is_zero() const { return rank() == 0; }
  std::vector<Int> primes() const {
    std::vector<Int> out;
    for (auto &kv : p_) out.push_back(kv.first);
    return out;
  }

  Vec reduce(Vec v) const {
    for (size_t i = 0; i < dbasis_.size(); ++i)
      if (v[dpiv_[i]] != 0) v = v - v[dpiv_[i]] * dbasis_[i];
    return v;
  }

  bool contains(const Vec &x) const {
    if (x.size() != dim_) throw AlgebraError("dimension mismatch in module membership");
    Vec r = reduce(x);
    if (pogroup::is_zero(r)) return true;
    if (basis_.empty()) return false;
    auto c = solve_left_rational(basis_, r);
    if (!c) return false;
    Int den = common_denominator(*c);
    if (den == 1) return true;
    for (auto &q : prime_factors(den)) {
      auto it = ann_.find(q);
      if (it == ann_.end()) return false;
      for (auto &row : it->second)
        if (valuation(dot(row, *c), q) < 0) return false;
    }
    return true;
  }

  // Z[1/p] v inside M
  bool contains_p_divisible(const Vec &v, const Int &p) const {
    if (!contains(v)) return false;
    Mat w = q_;
    if (auto it = p_.find(p); it != p_.end()) w.insert(w.end(), it->second.begin(), it->second.end());
    return in_span(w, v);
  }

  bool contains(const Module &n) const {
    for (auto &g : n.z_)
      if (!contains(g)) return false;
    for (auto &[pr, gs] : n.p_)
      for (auto &g : gs)
        if (!contains_p_divisible(g, pr)) return false;
    for (auto &g : n.q_)
      if (!in_span(q_, g)) return false;
    return true;
  }
  bool operator==(const Module &o) const { return dim_ == o.dim_ && contains(o) && o.contains(*this); }

  // deterministic text description
  std::string str() const {
    std::string s;
    auto list = [](const Mat &m) {
      std::string t;
      for (auto &v : m) t += (t.empty() ? "" : ",") + to_string(v);
      return t;
    };
    if (!basis_.empty()) s += "Z<" + list(basis_) + ">";
    for (auto &[pr, w] : pdesc_) s += (s.empty() ? "" : " + ") + ("Z[1/" + pr.get_str() + "]<" + list(w) + ">");
    if (!dbasis_.empty()) s += (s.empty() ? "" : " + ") + ("Q<" + list(dbasis_) + ">");
    return s.empty() ? "0" : s;
  }

private:
  void canonicalize() {
    for (auto it = p_.begin(); it != p_.end();) {
      Mat keep;
      for (auto &g : it->second)
        if (!pogroup::is_zero(g)) keep.push_back(g);
      if (keep.empty())
        it = p_.erase(it);
      else
        it->second = keep, ++it;
    }
    Mat qk;
    for (auto &g : q_)
      if (!pogroup::is_zero(g)) qk.push_back(g);
    q_ = qk;
    Mat zk;
    for (auto &g : z_)
      if (!pogroup::is_zero(g)) zk.push_back(g);
    z_ = zk;

    RowOps ops(q_);
    dpiv_ = rref_inplace(ops);
    ops.H.resize(dpiv_.size());
    dbasis_ = ops.H;

    Mat lat;
    for (auto &g : z_) lat.push_back(reduce(g));
    for (auto &[pr, gs] : p_)
      for (auto &g : gs) lat.push_back(reduce(g));
    basis_.clear();
    if (!lat.empty()) {
      Int L = 1;
      for (auto &v : lat) L = lcm(L, common_denominator(v));
      Mat scaled;
      for (auto &v : lat) scaled.push_back(Rat(L) * v);
      auto h = hermite_form(scaled);
      for (size_t i = 0; i < h.rank(); ++i) basis_.push_back(Rat(1) / Rat(L) * h.H[i]);
    }
    ann_.clear();
    pdesc_.clear();
    for (auto &[pr, gs] : p_) {
      Mat coords;
      for (auto &g : gs) {
        auto c = solve_left_rational(basis_, reduce(g));
        coords.push_back(*c);
      }
      ann_[pr] = integer_kernel(coords, basis_.size());
      Mat red;
      for (auto &g : gs) red.push_back(reduce(g));
      pdesc_[pr] = row_space_basis(red);
    }
  }

  size_t dim_ = 0;
  Mat z_;
  std::map<Int, Mat> p_;
  Mat q_;
  Mat dbasis_;
  std::vector<size_t> dpiv_;
  Mat basis_;
  std::map<Int, Mat> ann_;
  std::map<Int, Mat> pdesc_;
};

using Subgroup = Module;

inline Module operator+(const Module &a, const Module &b) {
  Mat z = a.zgens(), q = a.qgens();
  z.insert(z.end(), b.zgens().begin(), b.zgens().end());
  q.insert(q.end(), b.qgens().begin(), b.qgens().end());
  auto p = a.pgens();
  for (auto &[pr, gs] : b.pgens()) p[pr].insert(p[pr].end(), gs.begin(), gs.end());
  return Module(a.dim(), z, p, q);
}

// image under the linear map x -> P x (P has rows = output coordinates)
inline Module image(const Mat &P, const Module &m, size_t outDim) {
  auto mapall = [&](const Mat &g) {
    Mat out;
    for (auto &v : g) out.push_back(mat_apply(P, v));
    return out;
  };
  std::map<Int, Mat> p;
  for (auto &[pr, gs] : m.pgens()) p[pr] = mapall(gs);
  return Module(outDim, mapall(m.zgens()), p, mapall(m.qgens()));
}

inline Module intersect(const Module &a, const Module &b) {
  if (b.contains(a)) return a;
  if (a.contains(b)) return b;
  if (!a.pure_lattice() || !b.pure_lattice())
    throw AlgebraError("intersection of non-nested mixed modules is not supported");
  const Mat &A = a.lattice_basis(), &B = b.lattice_basis();
  Mat C = A;
  for (auto &v : B) C.push_back(-v);
  Mat ker = integer_kernel(transpose(C, a.dim()), C.size());
  Mat gens;
  for (auto &y : ker) {
    Vec u(y.begin(), y.begin() + A.size());
    gens.push_back(vecmat(u, A, a.dim()));
  }
  return Module::lattice(a.dim(), gens);
}

// Isomorphism signature of M/N for N inside M
struct QuotientType {
  size_t rank = 0;                 // torsion-free rank
  size_t qdivRank = 0;             // Q-divisible part of the torsion-free quotient
  std::map<Int, size_t> pdivRank;  // p-divisible (not Q-divisible) torsion-free part
  std::vector<Int> torsion;        // finite invariant factors
  std::map<Int, size_t> prufer;    // Z(p^inf) multiplicities beyond Q/Z
  size_t qmodz = 0;                // copies of Q/Z
  bool operator==(const QuotientType &) const = default;
  bool trivial() const {
    return rank == 0 && torsion.empty() && prufer.empty() && qmodz == 0;
  }
  bool finitely_generated() const {
    return qdivRank == 0 && pdivRank.empty() && prufer.empty() && qmodz == 0;
  }
  InvariantFactorization factorization() const { return {rank, torsion}; }
  std::string str() const {
    std::vector<std::string> parts;
    size_t plain = rank - qdivRank;
    for (auto &[p, k] : pdivRank) plain -= k;
    for (size_t i = 0; i < plain; ++i) parts.push_back("Z");
    for (auto &[p, k] : pdivRank)
      for (size_t i = 0; i < k; ++i) parts.push_back("Z[1/" + p.get_str() + "]");
    for (size_t i = 0; i < qdivRank; ++i) parts.push_back("Q");
    for (auto &t : torsion) parts.push_back("Z/" + t.get_str());
    for (auto &[p, k] : prufer)
      for (size_t i = 0; i < k; ++i) parts.push_back("Z(" + p.get_str() + "^inf)");
    for (size_t i = 0; i < qmodz; ++i) parts.push_back("Q/Z");
    if (parts.empty()) return "0";
    std::string s;
    for (auto &p : parts) s += (s.empty() ? "" : " + ") + p;
    return s;
  }
};

namespace detail {

inline size_t span_dim(const Mat &a, const Mat &b = {}, const Mat &c = {}) {
  Mat all = a;
  all.insert(all.end(), b.begin(), b.end());
  all.insert(all.end(), c.begin(), c.end());
  return all.empty() ? 0 : rank_of(all);
}

inline Mat lattice_gens(const Module &m) {
  Mat g = m.zgens();
  for (auto &[pr, gs] : m.pgens()) g.insert(g.end(), gs.begin(), gs.end());
  return g;
}

struct LocalTorsion {
  size_t divisibleTorsionRank = 0;
  std::vector<Int> diag;  // nonzero Smith entries of N'' inside M''
};

// quotient modulo the divisible spans EM (of M) and EN (of N)
inline LocalTorsion local_torsion(const Module &M, const Module &N, const Mat &EM, const Mat &EN) {
  size_t d = M.dim();
  LocalTorsion out;
  Module EnMod(d, {}, {}, EN);
  Mat Mp, Np, EMp;
  for (auto &g : lattice_gens(M)) Mp.push_back(EnMod.reduce(g));
  for (auto &g : lattice_gens(N)) Np.push_back(EnMod.reduce(g));
  for (auto &g : EM) EMp.push_back(EnMod.reduce(g));
  size_t dn = span_dim(Np), de = span_dim(EMp), dne = span_dim(Np, EMp);
  out.divisibleTorsionRank = dn + de - dne;
  Mat E = EM;
  E.insert(E.end(), EN.begin(), EN.end());
  Module EMod(d, {}, {}, E);
  Mat M2, N2;
  for (auto &g : lattice_gens(M)) M2.push_back(EMod.reduce(g));
  for (auto &g : lattice_gens(N)) N2.push_back(EMod.reduce(g));
  Module lat = Module::lattice(d, M2);
  const Mat &B = lat.lattice_basis();
  if (B.empty()) return out;
  Mat coords;
  for (auto &g : N2) {
    if (pogroup::is_zero(g)) continue;
    auto c = solve_left_rational(B, g);
    if (!c) throw AlgebraError("quotient numerator does not contain denominator");
    Rat s(common_denominator(*c));
    coords.push_back(s * *c);
  }
  if (coords.empty()) return out;
  auto sm = smith_form(coords, BaseRing::integers(), B.size());
  for (auto &x : sm.diagonal())
    if (x != 0) out.diag.push_back(x.get_num());
  return out;
}

}  // namespace detail

inline QuotientType quotient_type(const Module &M, const Module &N) {
  if (!M.contains(N)) throw AlgebraError("quotient denominator is not a submodule");
  QuotientType t;
  Mat NG = N.all_gens();
  size_t dN = detail::span_dim(NG);
  t.rank = detail::span_dim(M.all_gens()) - dN;
  size_t dq = detail::span_dim(M.qgens(), NG);
  t.qdivRank = dq - dN;
  std::set<Int> S;
  for (auto &[p, g] : M.pgens()) S.insert(p);
  for (auto &[p, g] : N.pgens()) S.insert(p);
  for (auto &[p, g] : M.pgens()) {
    size_t dp = detail::span_dim(M.qgens(), g, NG) - dq;
    if (dp) t.pdivRank[p] = dp;
  }
  std::map<Int, std::vector<int>> exps;
  auto glob = detail::local_torsion(M, N, M.qgens(), N.qgens());
  t.qmodz = glob.divisibleTorsionRank;
  for (auto &dv : glob.diag)
    for (auto &q : prime_factors(dv))
      if (!S.count(q)) exps[q].push_back(valuation(dv, q));
  for (auto &q : S) {
    Mat EM = M.qgens(), EN = N.qgens();
    if (auto it = M.pgens().find(q); it != M.pgens().end()) EM.insert(EM.end(), it->second.begin(), it->second.end());
    if (auto it = N.pgens().find(q); it != N.pgens().end()) EN.insert(EN.end(), it->second.begin(), it->second.end());
    auto loc = detail::local_torsion(M, N, EM, EN);
    if (loc.divisibleTorsionRank > t.qmodz) t.prufer[q] = loc.divisibleTorsionRank - t.qmodz;
    for (auto &dv : loc.diag) {
      int v = valuation(dv, q);
      if (v > 0) exps[q].push_back(v);
    }
  }
  size_t len = 0;
  for (auto &[q, e] : exps) {
    std::sort(e.begin(), e.end(), std::greater<int>());
    len = std::max(len, e.size());
  }
  for (size_t j = 0; j < len; ++j) {
    Int f = 1;
    for (auto &[q, e] : exps)
      if (j < e.size()) {
        Int pw;
        mpz_pow_ui(pw.get_mpz_t(), q.get_mpz_t(), e[j]);
        f *= pw;
      }
    t.torsion.push_back(f);
  }
  std::reverse(t.torsion.begin(), t.torsion.end());
  return t;
}

// least n >= 1 with n x in N, 0 when no multiple lands in N (infinite order)
inline long element_order(const Vec &x, const Module &N, long limit = 100000) {
  if (!in_span(N.span_basis(), x)) return 0;
  for (long n = 1; n <= limit; ++n)
    if (N.contains(Rat(n) * x)) return n;
  return -1;
}

}  // namespace pogroup
