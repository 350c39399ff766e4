#pragma once

#include "pogroup/exact_algebra.hpp"

namespace pogroup {

// Exact phase-one simplex with Bland's rule.
// Finds x with A x = b, x_i >= 0 where nonneg[i], x_i free otherwise.
inline std::optional<Vec> lp_feasible(const Mat &A, const Vec &b, const std::vector<bool> &nonneg) {
  size_t m = A.size(), n = nonneg.size();
  // split free variables into positive and negative parts
  std::vector<std::pair<size_t, int>> cols;  // (original var, sign)
  for (size_t j = 0; j < n; ++j) {
    cols.push_back({j, 1});
    if (!nonneg[j]) cols.push_back({j, -1});
  }
  size_t nc = cols.size();
  // tableau: m rows, nc structural + m artificial + rhs
  Mat T(m, zero_vec(nc + m + 1));
  for (size_t i = 0; i < m; ++i) {
    Rat sgn = b[i] < 0 ? -1 : 1;
    for (size_t c = 0; c < nc; ++c) T[i][c] = sgn * Rat(cols[c].second) * A[i][cols[c].first];
    T[i][nc + i] = 1;
    T[i][nc + m] = sgn * b[i];
  }
  std::vector<size_t> basis(m);
  for (size_t i = 0; i < m; ++i) basis[i] = nc + i;
  // objective: minimize sum of artificials; reduced costs row
  Vec z = zero_vec(nc + m + 1);
  for (size_t i = 0; i < m; ++i)
    for (size_t c = 0; c <= nc + m; ++c)
      if (c < nc || c == nc + m) z[c] -= T[i][c];
  while (true) {
    size_t enter = nc + m;
    for (size_t c = 0; c < nc + m; ++c)
      if (z[c] < 0) {
        enter = c;
        break;
      }
    if (enter == nc + m) break;
    size_t leave = m;
    Rat best;
    for (size_t i = 0; i < m; ++i) {
      if (T[i][enter] <= 0) continue;
      Rat ratio = T[i][nc + m] / T[i][enter];
      if (leave == m || ratio < best || (ratio == best && basis[i] < basis[leave])) {
        leave = i;
        best = ratio;
      }
    }
    if (leave == m) break;  // unbounded direction cannot occur in phase one
    Rat piv = T[leave][enter];
    for (auto &x : T[leave]) x /= piv;
    for (size_t i = 0; i < m; ++i) {
      if (i == leave || T[i][enter] == 0) continue;
      Rat f = T[i][enter];
      for (size_t c = 0; c <= nc + m; ++c) T[i][c] -= f * T[leave][c];
    }
    Rat f = z[enter];
    for (size_t c = 0; c <= nc + m; ++c) z[c] -= f * T[leave][c];
    basis[leave] = enter;
  }
  if (z[nc + m] != 0) return std::nullopt;
  Vec x = zero_vec(n);
  for (size_t i = 0; i < m; ++i)
    if (basis[i] < nc) x[cols[basis[i]].first] += Rat(cols[basis[i]].second) * T[i][nc + m];
  return x;
}

// rational c >= 0 with sum c_i gens_i - target in span(free)
inline std::optional<Vec> cone_contains_mod(const Mat &gens, const Mat &freeDirs, const Vec &target) {
  size_t d = target.size(), k = gens.size(), f = freeDirs.size();
  Mat A(d, zero_vec(k + f));
  for (size_t r = 0; r < d; ++r) {
    for (size_t i = 0; i < k; ++i) A[r][i] = gens[i][r];
    for (size_t j = 0; j < f; ++j) A[r][k + j] = freeDirs[j][r];
  }
  std::vector<bool> nn(k + f, false);
  for (size_t i = 0; i < k; ++i) nn[i] = true;
  auto x = lp_feasible(A, target, nn);
  if (!x) return std::nullopt;
  x->resize(k);
  return x;
}

// functional l with l . g >= 1 for every generator (certifies pointedness)
inline std::optional<Vec> pointed_functional(const Mat &gens, size_t dim) {
  size_t k = gens.size();
  Mat A(k, zero_vec(dim + k));
  Vec b(k, Rat(1));
  for (size_t i = 0; i < k; ++i) {
    for (size_t j = 0; j < dim; ++j) A[i][j] = gens[i][j];
    A[i][dim + i] = -1;
  }
  std::vector<bool> nn(dim + k, true);
  for (size_t j = 0; j < dim; ++j) nn[j] = false;
  auto x = lp_feasible(A, b, nn);
  if (!x) return std::nullopt;
  x->resize(dim);
  return x;
}

}  // namespace pogroup
