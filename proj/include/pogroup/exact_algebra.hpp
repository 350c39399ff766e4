#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace pogroup {

using Int = mpz_class;
using Rat = mpq_class;
using Vec = std::vector<Rat>;
using Mat = std::vector<Vec>;

struct AlgebraError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline Rat make_rat(long n, long d = 1) {
  Rat r(n, d);
  r.canonicalize();
  return r;
}

inline bool is_integral(const Rat &r) { return r.get_den() == 1; }

inline Int floor_div(const Int &a, const Int &b) {
  Int q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

inline Int mod_floor(const Int &a, const Int &b) {
  Int r;
  mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

inline Int gcd(const Int &a, const Int &b) {
  Int g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

inline Int lcm(const Int &a, const Int &b) {
  Int l;
  mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return l;
}

// p-adic valuation of a nonzero integer
inline int valuation(Int n, const Int &p) {
  if (n == 0) return 1 << 28;
  int v = 0;
  while (mpz_divisible_p(n.get_mpz_t(), p.get_mpz_t())) {
    n /= p;
    ++v;
  }
  return v;
}

inline int valuation(const Rat &r, const Int &p) {
  if (r == 0) return 1 << 28;
  return valuation(r.get_num(), p) - valuation(r.get_den(), p);
}

// trial division; inputs here are small (denominators, invariant factors)
inline std::vector<Int> prime_factors(Int n) {
  std::vector<Int> out;
  if (n < 0) n = -n;
  for (Int p = 2; p * p <= n; ++p) {
    if (mpz_divisible_p(n.get_mpz_t(), p.get_mpz_t())) {
      out.push_back(p);
      while (mpz_divisible_p(n.get_mpz_t(), p.get_mpz_t())) n /= p;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

inline bool is_prime(const Int &n) {
  return n >= 2 && mpz_probab_prime_p(n.get_mpz_t(), 30) > 0;
}

class BaseRing {
public:
  enum class Kind { Integers, Inverted, Rationals };

  BaseRing() = default;
  static BaseRing integers() { return BaseRing(); }
  static BaseRing rationals() {
    BaseRing r;
    r.kind_ = Kind::Rationals;
    return r;
  }
  static BaseRing inverted(std::vector<Int> primes) {
    std::sort(primes.begin(), primes.end());
    primes.erase(std::unique(primes.begin(), primes.end()), primes.end());
    for (auto &p : primes)
      if (!is_prime(p)) throw AlgebraError("inverted element is not prime");
    BaseRing r;
    if (primes.empty()) return r;
    r.kind_ = Kind::Inverted;
    r.primes_ = std::move(primes);
    return r;
  }

  Kind kind() const { return kind_; }
  const std::vector<Int> &primes() const { return primes_; }

  // part of n made of inverted primes (all of n over Q)
  Int unit_part(Int n) const {
    if (n < 0) n = -n;
    if (kind_ == Kind::Rationals) return n;
    Int u = 1;
    for (auto &p : primes_)
      while (n != 0 && mpz_divisible_p(n.get_mpz_t(), p.get_mpz_t())) {
        n /= p;
        u *= p;
      }
    return u;
  }
  bool is_unit(const Int &n) const { return n != 0 && unit_part(n) == abs(n); }
  bool contains(const Rat &r) const { return is_unit(r.get_den()); }

  std::string name() const {
    if (kind_ == Kind::Integers) return "Z";
    if (kind_ == Kind::Rationals) return "Q";
    std::string s = "Z[1/";
    for (size_t i = 0; i < primes_.size(); ++i) s += (i ? "," : "") + primes_[i].get_str();
    return s + "]";
  }
  bool operator==(const BaseRing &o) const = default;

private:
  Kind kind_ = Kind::Integers;
  std::vector<Int> primes_;
};

// ---- vectors

inline Vec zero_vec(size_t n) { return Vec(n, Rat(0)); }
inline Vec unit_vec(size_t n, size_t i) {
  Vec v = zero_vec(n);
  v[i] = 1;
  return v;
}
inline bool is_zero(const Vec &v) {
  return std::all_of(v.begin(), v.end(), [](const Rat &x) { return x == 0; });
}
inline Vec operator+(Vec a, const Vec &b) {
  for (size_t i = 0; i < a.size(); ++i) a[i] += b[i];
  return a;
}
inline Vec operator-(Vec a, const Vec &b) {
  for (size_t i = 0; i < a.size(); ++i) a[i] -= b[i];
  return a;
}
inline Vec operator-(Vec a) {
  for (auto &x : a) x = -x;
  return a;
}
inline Vec operator*(const Rat &c, Vec a) {
  for (auto &x : a) x *= c;
  return a;
}
inline Rat dot(const Vec &a, const Vec &b) {
  Rat s = 0;
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}
inline Vec ints(std::initializer_list<long> xs) {
  Vec v;
  for (long x : xs) v.emplace_back(x);
  return v;
}
inline Int common_denominator(const Vec &v) {
  Int l = 1;
  for (auto &x : v) l = lcm(l, x.get_den());
  return l;
}
inline std::string to_string(const Rat &r) { return r.get_str(); }
inline std::string to_string(const Vec &v) {
  std::string s = "(";
  for (size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + v[i].get_str();
  return s + ")";
}

// matrix helpers; matrices are lists of rows
inline Mat identity(size_t n) {
  Mat m(n, zero_vec(n));
  for (size_t i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}
inline size_t ncols(const Mat &m, size_t fallback = 0) { return m.empty() ? fallback : m[0].size(); }
inline Mat transpose(const Mat &m, size_t cols = 0) {
  size_t c = ncols(m, cols);
  Mat t(c, zero_vec(m.size()));
  for (size_t i = 0; i < m.size(); ++i)
    for (size_t j = 0; j < c; ++j) t[j][i] = m[i][j];
  return t;
}
inline Mat matmul(const Mat &a, const Mat &b, size_t bcols = 0) {
  size_t n = ncols(b, bcols);
  Mat r(a.size(), zero_vec(n));
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t k = 0; k < b.size(); ++k) {
      if (a[i][k] == 0) continue;
      for (size_t j = 0; j < n; ++j) r[i][j] += a[i][k] * b[k][j];
    }
  return r;
}
// row vector times matrix
inline Vec vecmat(const Vec &v, const Mat &m, size_t cols) {
  Vec r = zero_vec(cols);
  for (size_t k = 0; k < m.size(); ++k)
    if (v[k] != 0)
      for (size_t j = 0; j < cols; ++j) r[j] += v[k] * m[k][j];
  return r;
}
// matrix times column vector
inline Vec mat_apply(const Mat &m, const Vec &v) {
  Vec r = zero_vec(m.size());
  for (size_t i = 0; i < m.size(); ++i) r[i] = dot(m[i], v);
  return r;
}

// ---- row reduction with a tracked transform

struct RowOps {
  Mat H, U;
  explicit RowOps(Mat m) : H(std::move(m)), U(identity(H.size())) {}
  void swap(size_t i, size_t j) {
    std::swap(H[i], H[j]);
    std::swap(U[i], U[j]);
  }
  // row i += c * row j
  void addmul(size_t i, size_t j, const Rat &c) {
    if (c == 0) return;
    for (size_t k = 0; k < H[i].size(); ++k) H[i][k] += c * H[j][k];
    for (size_t k = 0; k < U[i].size(); ++k) U[i][k] += c * U[j][k];
  }
  void scale(size_t i, const Rat &c) {
    for (auto &x : H[i]) x *= c;
    for (auto &x : U[i]) x *= c;
  }
};

// reduced row echelon form over Q; returns pivot columns
inline std::vector<size_t> rref_inplace(RowOps &ops) {
  std::vector<size_t> piv;
  size_t r = 0, m = ops.H.size(), n = ncols(ops.H);
  for (size_t c = 0; c < n && r < m; ++c) {
    size_t p = r;
    while (p < m && ops.H[p][c] == 0) ++p;
    if (p == m) continue;
    ops.swap(r, p);
    ops.scale(r, 1 / ops.H[r][c]);
    for (size_t i = 0; i < m; ++i)
      if (i != r && ops.H[i][c] != 0) ops.addmul(i, r, -ops.H[i][c]);
    piv.push_back(c);
    ++r;
  }
  return piv;
}

// nonzero rows of the RREF: a canonical basis of the row space
inline Mat row_space_basis(const Mat &m) {
  RowOps ops(m);
  auto piv = rref_inplace(ops);
  ops.H.resize(piv.size());
  return ops.H;
}
inline size_t rank_of(const Mat &m) { return row_space_basis(m).size(); }

// y with y * rows = target, over Q
inline std::optional<Vec> solve_left_rational(const Mat &rows, const Vec &target) {
  size_t k = rows.size(), n = target.size();
  Mat aug = transpose(rows, n);  // n x k
  for (size_t i = 0; i < n; ++i) aug[i].push_back(target[i]);
  RowOps ops(aug);
  auto piv = rref_inplace(ops);
  if (!piv.empty() && piv.back() == k) return std::nullopt;
  Vec y = zero_vec(k);
  for (size_t i = 0; i < piv.size(); ++i) y[piv[i]] = ops.H[i][k];
  return y;
}

// basis of {x : m x = 0} over Q (m given by rows, n columns)
inline Mat nullspace(const Mat &m, size_t n) {
  RowOps ops(m);
  auto piv = rref_inplace(ops);
  std::vector<bool> isp(n, false);
  for (auto c : piv) isp[c] = true;
  Mat out;
  for (size_t f = 0; f < n; ++f) {
    if (isp[f]) continue;
    Vec v = zero_vec(n);
    v[f] = 1;
    for (size_t i = 0; i < piv.size(); ++i) v[piv[i]] = -ops.H[i][f];
    out.push_back(v);
  }
  return out;
}

inline bool in_span(const Mat &rows, const Vec &v) {
  if (is_zero(v)) return true;
  if (rows.empty()) return false;
  return solve_left_rational(rows, v).has_value();
}

// ---- integer Hermite form (entries must be integers)

inline std::vector<size_t> hnf_integer_inplace(RowOps &ops) {
  std::vector<size_t> piv;
  size_t r = 0, m = ops.H.size(), n = ncols(ops.H);
  for (size_t c = 0; c < n && r < m; ++c) {
    while (true) {
      size_t best = m;
      for (size_t i = r; i < m; ++i)
        if (ops.H[i][c] != 0 && (best == m || abs(ops.H[i][c]) < abs(ops.H[best][c]))) best = i;
      if (best == m) break;
      ops.swap(r, best);
      bool clean = true;
      for (size_t i = r + 1; i < m; ++i) {
        if (ops.H[i][c] == 0) continue;
        Int q = floor_div(ops.H[i][c].get_num(), ops.H[r][c].get_num());
        ops.addmul(i, r, Rat(-q));
        if (ops.H[i][c] != 0) clean = false;
      }
      if (clean) break;
    }
    if (r >= m || ops.H[r][c] == 0) continue;
    if (ops.H[r][c] < 0) ops.scale(r, -1);
    for (size_t i = 0; i < r; ++i) {
      Int q = floor_div(ops.H[i][c].get_num(), ops.H[r][c].get_num());
      ops.addmul(i, r, Rat(-q));
    }
    piv.push_back(c);
    ++r;
  }
  return piv;
}

struct HermiteResult {
  Mat H;  // same row count as the input; zero rows last
  Mat U;  // H = U * M
  std::vector<size_t> pivots;
  size_t rank() const { return pivots.size(); }
};

// canonical row-style Hermite form over the ring: pivots positive and
// reduced modulo units, entries above pivots reduced into [0, pivot)
inline HermiteResult hermite_form(const Mat &M, const BaseRing &R = BaseRing::integers()) {
  for (auto &row : M)
    for (auto &x : row)
      if (!R.contains(x)) throw AlgebraError("matrix entry outside base ring");
  if (R.kind() == BaseRing::Kind::Rationals) {
    RowOps ops(M);
    auto piv = rref_inplace(ops);
    return {ops.H, ops.U, piv};
  }
  RowOps ops(M);
  for (size_t i = 0; i < M.size(); ++i) ops.scale(i, Rat(common_denominator(M[i])));
  auto piv = hnf_integer_inplace(ops);
  if (R.kind() == BaseRing::Kind::Inverted) {
    for (size_t j = 0; j < piv.size(); ++j) {
      Int u = R.unit_part(ops.H[j][piv[j]].get_num());
      if (u != 1) ops.scale(j, Rat(1) / Rat(u));
    }
    for (size_t j = 0; j < piv.size(); ++j) {
      Int p = ops.H[j][piv[j]].get_num();
      for (size_t i = 0; i < j; ++i) {
        const Rat &e = ops.H[i][piv[j]];
        Int rr = 0;
        if (p != 1) {
          Int sinv;
          Int s = e.get_den();
          mpz_invert(sinv.get_mpz_t(), s.get_mpz_t(), p.get_mpz_t());
          rr = mod_floor(e.get_num() * sinv, p);
        }
        ops.addmul(i, j, -(e - Rat(rr)) / Rat(p));
      }
    }
  }
  return {ops.H, ops.U, piv};
}

// ---- Smith form

struct SmithResult {
  Mat U, D, V;  // D = U * M * V
  std::vector<Rat> diagonal() const {
    std::vector<Rat> d;
    for (size_t i = 0; i < std::min(D.size(), ncols(D)); ++i) d.push_back(D[i][i]);
    return d;
  }
};

inline SmithResult smith_form(const Mat &M, const BaseRing &R = BaseRing::integers(), size_t cols = 0) {
  size_t m = M.size(), n = ncols(M, cols);
  for (auto &row : M)
    for (auto &x : row)
      if (!R.contains(x)) throw AlgebraError("matrix entry outside base ring");
  Mat A = M, U = identity(m), V = identity(n);
  for (size_t i = 0; i < m; ++i) {
    Rat s(common_denominator(A[i]));
    for (auto &x : A[i]) x *= s;
    for (auto &x : U[i]) x *= s;
  }
  auto rowop = [&](size_t i, size_t j, const Rat &c) {  // row i += c row j
    for (size_t k = 0; k < n; ++k) A[i][k] += c * A[j][k];
    for (size_t k = 0; k < m; ++k) U[i][k] += c * U[j][k];
  };
  auto colop = [&](size_t i, size_t j, const Rat &c) {  // col i += c col j
    for (size_t k = 0; k < m; ++k) A[k][i] += c * A[k][j];
    for (size_t k = 0; k < n; ++k) V[k][i] += c * V[k][j];
  };
  auto rowswap = [&](size_t i, size_t j) {
    std::swap(A[i], A[j]);
    std::swap(U[i], U[j]);
  };
  auto colswap = [&](size_t i, size_t j) {
    for (auto &row : A) std::swap(row[i], row[j]);
    for (auto &row : V) std::swap(row[i], row[j]);
  };
  for (size_t t = 0; t < std::min(m, n); ++t) {
    while (true) {
      size_t bi = m, bj = n;
      for (size_t i = t; i < m; ++i)
        for (size_t j = t; j < n; ++j)
          if (A[i][j] != 0 && (bi == m || abs(A[i][j]) < abs(A[bi][bj]))) bi = i, bj = j;
      if (bi == m) goto done;
      rowswap(t, bi);
      colswap(t, bj);
      bool clean = true;
      for (size_t i = t + 1; i < m; ++i) {
        if (A[i][t] == 0) continue;
        rowop(i, t, Rat(-floor_div(A[i][t].get_num(), A[t][t].get_num())));
        if (A[i][t] != 0) clean = false;
      }
      for (size_t j = t + 1; j < n; ++j) {
        if (A[t][j] == 0) continue;
        colop(j, t, Rat(-floor_div(A[t][j].get_num(), A[t][t].get_num())));
        if (A[t][j] != 0) clean = false;
      }
      if (!clean) continue;
      // divisibility: pull in any entry the pivot does not divide
      bool fixed = true;
      for (size_t i = t + 1; i < m && fixed; ++i)
        for (size_t j = t + 1; j < n; ++j)
          if (!mpz_divisible_p(A[i][j].get_num().get_mpz_t(), A[t][t].get_num().get_mpz_t())) {
            rowop(t, i, 1);
            fixed = false;
            break;
          }
      if (fixed) break;
    }
    if (A[t][t] < 0) {
      for (auto &x : A[t]) x = -x;
      for (auto &x : U[t]) x = -x;
    }
  }
done:
  for (size_t t = 0; t < std::min(m, n); ++t) {
    if (A[t][t] == 0) continue;
    Int u = R.unit_part(A[t][t].get_num());
    if (u != 1) {
      Rat c = Rat(1) / Rat(u);
      for (auto &x : A[t]) x *= c;
      for (auto &x : U[t]) x *= c;
    }
  }
  return {U, A, V};
}

struct InvariantFactorization {
  size_t freeRank = 0;
  std::vector<Int> torsion;
  bool trivial() const { return freeRank == 0 && torsion.empty(); }
  bool operator==(const InvariantFactorization &) const = default;
  std::string str() const {
    std::string s;
    for (size_t i = 0; i < freeRank; ++i) s += (s.empty() ? "" : " + ") + std::string("Z");
    for (auto &t : torsion) s += (s.empty() ? "" : " + ") + ("Z/" + t.get_str());
    return s.empty() ? "0" : s;
  }
};

inline InvariantFactorization quotient_presentation(size_t ambientRank, const BaseRing &R, const Mat &gens) {
  InvariantFactorization f;
  if (gens.empty()) {
    f.freeRank = ambientRank;
    return f;
  }
  auto s = smith_form(gens, R, ambientRank);
  size_t nz = 0;
  for (auto &d : s.diagonal()) {
    if (d == 0) continue;
    ++nz;
    if (d != 1) f.torsion.push_back(d.get_num());
  }
  f.freeRank = ambientRank - nz;
  return f;
}

// coefficients c in R with sum c_i gens_i = target
inline std::optional<Vec> solve_membership(const Vec &target, const Mat &gens, const BaseRing &R = BaseRing::integers()) {
  if (gens.empty()) {
    if (is_zero(target)) return Vec{};
    return std::nullopt;
  }
  for (auto &x : target)
    if (!R.contains(x)) return std::nullopt;
  auto h = hermite_form(gens, R);
  Mat basis(h.H.begin(), h.H.begin() + h.rank());
  auto y = solve_left_rational(basis, target);
  if (!y) return std::nullopt;
  for (auto &x : *y)
    if (!R.contains(x)) return std::nullopt;
  Mat Ub(h.U.begin(), h.U.begin() + h.rank());
  return vecmat(*y, Ub, gens.size());
}

// Z-basis (as rows) of {x in Z^n : A x = 0}; the result is saturated
inline Mat integer_kernel(const Mat &A, size_t n) {
  if (A.empty()) return identity(n);
  Mat scaled = A;
  for (auto &row : scaled) {
    Rat s(common_denominator(row));
    for (auto &x : row) x *= s;
  }
  RowOps ops(transpose(scaled, n));
  auto piv = hnf_integer_inplace(ops);
  Mat out(ops.U.begin() + piv.size(), ops.U.end());
  auto h = hermite_form(out);
  out.assign(h.H.begin(), h.H.begin() + h.rank());
  return out;
}

// generators of {x : k x in <gens> for some k >= 1} inside R^n
inline Mat saturate(const Mat &gens, size_t n, const BaseRing &R = BaseRing::integers()) {
  if (gens.empty() || rank_of(gens) == 0) return {};
  if (R.kind() == BaseRing::Kind::Rationals) return row_space_basis(gens);
  Mat ortho = nullspace(gens, n);
  Mat sat = integer_kernel(ortho, n);
  if (R.kind() == BaseRing::Kind::Inverted) {
    auto h = hermite_form(sat, R);
    sat.assign(h.H.begin(), h.H.begin() + h.rank());
  }
  return sat;
}

}  // namespace pogroup
