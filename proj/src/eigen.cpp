#include "wnr/eigen.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace wnr {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

double off_diagonal_norm(const ComplexMatrix& h) {
  const int n = h.dim();
  double s = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j) s += std::norm(h(i, j));
  return std::sqrt(s);
}

HermitianEigen jacobi(const HermitianMatrix& hm, bool want_vectors) {
  const int n = hm.dim();
  ComplexMatrix h = hm.matrix();
  ComplexMatrix v = want_vectors ? ComplexMatrix::identity(n) : ComplexMatrix(1);

  const double hnorm = h.frobenius_norm();
  const double tol = 1e-13 * std::max(hnorm, 1e-300);

  bool converged = off_diagonal_norm(h) <= tol;
  for (int sweep = 0; sweep < 64 && !converged; ++sweep) {
    for (int p = 0; p < n - 1; ++p) {
      for (int q = p + 1; q < n; ++q) {
        const cplx b = h(p, q);
        const double babs = std::abs(b);
        if (babs <= 1e-300) continue;
        const cplx u = b / babs;  // phase of the pivot

        // Rotation U: U(p,p)=cs, U(p,q)=sn*u, U(q,p)=-sn*conj(u), U(q,q)=cs,
        // with t chosen so the transformed (p,q) entry vanishes.
        const double tau = (h(p, p).real() - h(q, q).real()) / (2.0 * babs);
        const double t = (tau >= 0.0 ? -1.0 : 1.0) / (std::abs(tau) + std::hypot(1.0, tau));
        const double cs = 1.0 / std::sqrt(1.0 + t * t);
        const double sn = t * cs;
        const cplx snu = sn * u;

        for (int k = 0; k < n; ++k) {  // H <- H U (column update)
          const cplx hkp = h(k, p), hkq = h(k, q);
          h(k, p) = cs * hkp - std::conj(snu) * hkq;
          h(k, q) = snu * hkp + cs * hkq;
        }
        for (int k = 0; k < n; ++k) {  // H <- U* H (row update)
          const cplx hpk = h(p, k), hqk = h(q, k);
          h(p, k) = cs * hpk - snu * hqk;
          h(q, k) = std::conj(snu) * hpk + cs * hqk;
        }
        h(p, q) = 0.0;
        h(q, p) = 0.0;
        h(p, p) = cplx(h(p, p).real(), 0.0);
        h(q, q) = cplx(h(q, q).real(), 0.0);

        if (want_vectors) {
          for (int k = 0; k < n; ++k) {
            const cplx vkp = v(k, p), vkq = v(k, q);
            v(k, p) = cs * vkp - std::conj(snu) * vkq;
            v(k, q) = snu * vkp + cs * vkq;
          }
        }
      }
    }
    converged = off_diagonal_norm(h) <= tol;
  }
  if (!converged)
    throw NonConvergence("Jacobi sweeps exhausted; off-diagonal norm " +
                         std::to_string(off_diagonal_norm(h)));

  // Stable descending sort; exact ties keep solver output order.
  std::vector<int> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int i, int j) { return h(i, i).real() > h(j, j).real(); });

  HermitianEigen out{std::vector<double>(std::size_t(n)),
                     want_vectors ? ComplexMatrix(n) : ComplexMatrix(1)};
  for (int j = 0; j < n; ++j) {
    out.values[std::size_t(j)] = h(order[std::size_t(j)], order[std::size_t(j)]).real();
    if (want_vectors)
      for (int i = 0; i < n; ++i) out.vectors(i, j) = v(i, order[std::size_t(j)]);
  }
  return out;
}

}  // namespace

HermitianEigen eig_hermitian(const HermitianMatrix& h) { return jacobi(h, true); }

std::vector<double> eig_hermitian_values(const HermitianMatrix& h) {
  return jacobi(h, false).values;
}

std::vector<cplx> characteristic_polynomial(const ComplexMatrix& a) {
  const int n = a.dim();
  // M_1 = A, c_{n-1} = -tr M_1; M_k = A (M_{k-1} + c_{n-k+1} I), c_{n-k} = -tr(M_k)/k.
  std::vector<cplx> coeff(std::size_t(n) + 1, cplx(0.0, 0.0));
  coeff[std::size_t(n)] = 1.0;
  ComplexMatrix m = a;
  coeff[std::size_t(n) - 1] = -m.trace();
  for (int k = 2; k <= n; ++k) {
    ComplexMatrix shifted = m;
    const cplx ck = coeff[std::size_t(n - k + 1)];
    for (int i = 0; i < n; ++i) shifted(i, i) += ck;
    m = a * shifted;
    coeff[std::size_t(n - k)] = -m.trace() / double(k);
  }
  return coeff;
}

std::vector<cplx> polynomial_roots(const std::vector<cplx>& monic, double initial_radius,
                                   double tol, int max_iter) {
  const int deg = int(monic.size()) - 1;
  if (deg < 1) return {};
  if (std::abs(monic.back() - cplx(1.0, 0.0)) > 1e-12)
    throw Error("polynomial_roots expects a monic polynomial");

  std::vector<cplx> z(static_cast<std::size_t>(deg));
  for (int k = 0; k < deg; ++k)
    z[std::size_t(k)] = std::polar(initial_radius, kTwoPi * k / deg + 0.4);

  auto eval = [&](cplx x, cplx& p, cplx& dp) {
    p = monic.back();
    dp = 0.0;
    for (int k = deg - 1; k >= 0; --k) {
      dp = dp * x + p;
      p = p * x + monic[std::size_t(k)];
    }
  };

  std::vector<bool> done(std::size_t(deg), false);
  double best_residual = std::numeric_limits<double>::infinity();
  for (int it = 0; it < max_iter; ++it) {
    bool all_done = true;
    double residual = 0.0;
    for (int i = 0; i < deg; ++i) {
      if (done[std::size_t(i)]) continue;
      cplx p, dp;
      eval(z[std::size_t(i)], p, dp);
      residual = std::max(residual, std::abs(p));
      if (dp == cplx(0.0, 0.0)) {  // saddle: nudge off and retry next pass
        z[std::size_t(i)] += cplx(tol * 100.0, tol * 100.0);
        all_done = false;
        continue;
      }
      const cplx newton = p / dp;
      cplx repulsion = 0.0;
      for (int j = 0; j < deg; ++j)
        if (j != i) repulsion += 1.0 / (z[std::size_t(i)] - z[std::size_t(j)]);
      const cplx denom = 1.0 - newton * repulsion;
      const cplx w = denom == cplx(0.0, 0.0) ? newton : newton / denom;
      z[std::size_t(i)] -= w;
      if (std::abs(w) <= tol * (1.0 + std::abs(z[std::size_t(i)])))
        done[std::size_t(i)] = true;
      else
        all_done = false;
    }
    best_residual = std::min(best_residual, residual);
    if (all_done) return z;
  }
  // Accept the final iterate when residuals are already at roundoff level
  // (multiple roots make the correction criterion unreachable).
  double worst = 0.0;
  double coeff_scale = 0.0;
  for (const cplx& c : monic) coeff_scale = std::max(coeff_scale, std::abs(c));
  for (int i = 0; i < deg; ++i) {
    cplx p, dp;
    eval(z[std::size_t(i)], p, dp);
    worst = std::max(worst, std::abs(p));
  }
  if (worst <= 1e-10 * std::max(1.0, coeff_scale)) return z;
  throw NonConvergence("Aberth iteration stalled; best residual " + std::to_string(best_residual) +
                       ", final residual " + std::to_string(worst));
}

std::vector<cplx> polynomial_roots(const std::vector<cplx>& monic) {
  double cauchy = 0.0;
  for (std::size_t k = 0; k + 1 < monic.size(); ++k) cauchy = std::max(cauchy, std::abs(monic[k]));
  return polynomial_roots(monic, 1.0 + cauchy);
}

Spectrum eig_general(const ComplexMatrix& a) {
  if (a.dim() > 12)
    throw DimensionTooLarge("eig_general is limited to n <= 12, got n = " +
                            std::to_string(a.dim()));
  const std::vector<cplx> cp = characteristic_polynomial(a);
  std::vector<cplx> roots = polynomial_roots(cp, 1.0 + a.max_row_sum());
  std::sort(roots.begin(), roots.end(), [](cplx x, cplx y) {
    if (x.real() != y.real()) return x.real() < y.real();
    return x.imag() < y.imag();
  });
  return Spectrum{std::move(roots)};
}

}  // namespace wnr
