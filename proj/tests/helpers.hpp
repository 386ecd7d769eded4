#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <set>
#include <vector>

#include "wnr/eigen.hpp"
#include "wnr/rng.hpp"
#include "wnr/support.hpp"

namespace wnr::test {

inline constexpr double kPi = 3.1415926535897932384626433832795;

/// Random unitary: eigenvector matrix of a random Hermitian matrix.
inline ComplexMatrix random_unitary(Rng& rng, int n) {
  return eig_hermitian(HermitianMatrix(rng.hermitian(n), false)).vectors;
}

/// Random normal matrix: random eigenvalues conjugated by a random unitary.
inline ComplexMatrix random_normal(Rng& rng, int n) {
  std::vector<cplx> eigs(static_cast<std::size_t>(n));
  for (cplx& z : eigs) z = rng.complex_normal();
  const ComplexMatrix u = random_unitary(rng, n);
  return u * ComplexMatrix::diagonal(eigs) * u.adjoint();
}

inline ComplexMatrix jordan_block(int n) {
  ComplexMatrix j(n);
  for (int i = 0; i + 1 < n; ++i) j(i, i + 1) = 1.0;
  return j;
}

inline WeightVector unit_weight(int n, int k) {  // e_{k+1} in 0-based k
  std::vector<double> c(std::size_t(n), 0.0);
  c[std::size_t(k)] = 1.0;
  return WeightVector(c);
}

inline std::vector<cplx> random_unit_vector(Rng& rng, int n) {
  std::vector<cplx> x(static_cast<std::size_t>(n));
  double norm2 = 0.0;
  for (cplx& z : x) {
    z = rng.complex_normal();
    norm2 += std::norm(z);
  }
  const double inv = 1.0 / std::sqrt(norm2);
  for (cplx& z : x) z *= inv;
  return x;
}

inline cplx rayleigh(const ComplexMatrix& a, const std::vector<cplx>& x) {
  cplx q = 0.0;
  for (int i = 0; i < a.dim(); ++i) {
    cplx row = 0.0;
    for (int j = 0; j < a.dim(); ++j) row += a(i, j) * x[std::size_t(j)];
    q += std::conj(x[std::size_t(i)]) * row;
  }
  return q;
}

/// Independent oracle for deg(A;c): enumerate ordered injective assignments
/// of the nonzero weight slots to eigenvalue indices, canonicalize by sorting
/// the index set of each equal-weight group, and count distinct keys.
inline long long brute_force_degree(const WeightVector& c, int n) {
  const std::vector<int> slots = c.nonzero_slots();
  const int r = int(slots.size());
  std::set<std::vector<int>> keys;
  std::vector<int> perm;
  std::vector<bool> used(std::size_t(n), false);
  const auto rec = [&](auto&& self) -> void {
    if (int(perm.size()) == r) {
      // canonical key: per distinct weight value, the sorted index list
      std::vector<std::pair<double, int>> tagged;
      for (int t = 0; t < r; ++t) tagged.emplace_back(c[slots[std::size_t(t)]], perm[std::size_t(t)]);
      std::sort(tagged.begin(), tagged.end());
      std::vector<int> key;
      for (const auto& [w, idx] : tagged) key.push_back(idx);
      // weights with equal value are adjacent after sorting, so the key is canonical
      keys.insert(key);
      return;
    }
    for (int j = 0; j < n; ++j) {
      if (used[std::size_t(j)]) continue;
      used[std::size_t(j)] = true;
      perm.push_back(j);
      self(self);
      perm.pop_back();
      used[std::size_t(j)] = false;
    }
  };
  if (r == 0) return 1;
  rec(rec);
  return static_cast<long long>(keys.size());
}

/// Same oracle returning the multiset of c-values for a concrete spectrum.
inline std::vector<cplx> brute_force_cvalues(const std::vector<cplx>& eigs,
                                             const WeightVector& c) {
  const int n = int(eigs.size());
  const std::vector<int> slots = c.nonzero_slots();
  const int r = int(slots.size());
  std::set<std::vector<int>> keys;
  std::vector<cplx> values;
  std::vector<int> perm;
  std::vector<bool> used(std::size_t(n), false);
  const auto rec = [&](auto&& self) -> void {
    if (int(perm.size()) == r) {
      std::vector<std::pair<double, int>> tagged;
      for (int t = 0; t < r; ++t) tagged.emplace_back(c[slots[std::size_t(t)]], perm[std::size_t(t)]);
      std::sort(tagged.begin(), tagged.end());
      std::vector<int> key;
      for (const auto& [w, idx] : tagged) key.push_back(idx);
      if (keys.insert(key).second) {
        cplx v = 0.0;
        for (int t = 0; t < r; ++t) v += c[slots[std::size_t(t)]] * eigs[std::size_t(perm[std::size_t(t)])];
        values.push_back(v);
      }
      return;
    }
    for (int j = 0; j < n; ++j) {
      if (used[std::size_t(j)]) continue;
      used[std::size_t(j)] = true;
      perm.push_back(j);
      self(self);
      perm.pop_back();
      used[std::size_t(j)] = false;
    }
  };
  if (r == 0) return {cplx(0.0, 0.0)};
  rec(rec);
  return values;
}

/// Greedy multiset match within tol.
inline bool multiset_close(std::vector<cplx> xs, std::vector<cplx> ys, double tol) {
  if (xs.size() != ys.size()) return false;
  for (const cplx& x : xs) {
    double best = 1e300;
    std::size_t arg = 0;
    for (std::size_t i = 0; i < ys.size(); ++i)
      if (std::abs(ys[i] - x) < best) {
        best = std::abs(ys[i] - x);
        arg = i;
      }
    if (best > tol) return false;
    ys.erase(ys.begin() + long(arg));
  }
  return true;
}

}  // namespace wnr::test
