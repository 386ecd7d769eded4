#include "wnr/support.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace wnr {

namespace {

constexpr double kPi = 3.1415926535897932384626433832795;
constexpr double kTwoPi = 2.0 * kPi;

// Absolute thresholds for the equal-support scan (desk-scale inputs).
constexpr double kZeroGapTol = 1e-12;
constexpr double kTangentialTol = 1e-8;

void check_dims(const ComplexMatrix& a, const WeightVector& c) {
  if (a.dim() != c.dim())
    throw DimensionMismatch("weight vector dimension " + std::to_string(c.dim()) +
                            " does not match matrix dimension " + std::to_string(a.dim()));
}

double derivative_impl(const ComplexMatrix& a, const WeightVector& c, double theta,
                       double gap_tol_factor) {
  check_dims(a, c);
  const HermitianEigen eig = eig_hermitian(herm_part(a, theta));
  const int n = a.dim();

  double vmax = 0.0;
  for (double v : eig.values) vmax = std::max(vmax, std::abs(v));
  const double gap_tol = gap_tol_factor * (1.0 + vmax);
  for (int j = 0; j + 1 < n; ++j) {
    if (c[j] != c[j + 1] && eig.values[std::size_t(j)] - eig.values[std::size_t(j + 1)] < gap_tol)
      throw DegenerateEigenvalue("eigenvalues " + std::to_string(j) + "," + std::to_string(j + 1) +
                                 " nearly coincide but carry distinct weights");
  }

  const HermitianMatrix hp = herm_part(a, theta + kPi / 2.0);  // dH_theta/dtheta
  double d = 0.0;
  for (int j = 0; j < n; ++j) {
    if (c[j] == 0.0) continue;
    cplx q = 0.0;
    for (int i = 0; i < n; ++i) {
      cplx row = 0.0;
      for (int k = 0; k < n; ++k) row += hp(i, k) * eig.vectors(k, j);
      q += std::conj(eig.vectors(i, j)) * row;
    }
    d += c[j] * q.real();
  }
  return d;
}

double derivative_or_fd(const ComplexMatrix& a, const WeightVector& c, double theta) {
  try {
    // Loose guard: Hellmann-Feynman only needs simple eigenvalues.
    return derivative_impl(a, c, theta, 1e-12);
  } catch (const DegenerateEigenvalue&) {
    const double e = 1e-7;
    return (weighted_support(a, c, theta + e) - weighted_support(a, c, theta)) / e;
  }
}

}  // namespace

WeightVector::WeightVector(std::vector<double> c) : c_(std::move(c)) {
  if (c_.empty()) throw DimensionMismatch("weight vector must have dimension >= 1");
  for (double v : c_)
    if (!std::isfinite(v) || std::abs(v) > ComplexMatrix::kMaxEntry)
      throw Error("weight entry not finite or exceeds the scale guard");
}

int WeightVector::nonzero_count() const {
  return int(std::count_if(c_.begin(), c_.end(), [](double v) { return v != 0.0; }));
}

double WeightVector::sum() const { return std::accumulate(c_.begin(), c_.end(), 0.0); }

std::vector<int> WeightVector::nonzero_slots() const {
  std::vector<int> slots;
  for (int i = 0; i < dim(); ++i)
    if (c_[std::size_t(i)] != 0.0) slots.push_back(i);
  return slots;
}

std::vector<std::pair<double, int>> WeightVector::signature() const {
  std::vector<std::pair<double, int>> sig;
  for (double v : c_) {
    if (v == 0.0) continue;
    auto it = std::find_if(sig.begin(), sig.end(), [&](const auto& p) { return p.first == v; });
    if (it == sig.end())
      sig.emplace_back(v, 1);
    else
      ++it->second;
  }
  return sig;
}

double weighted_support(const ComplexMatrix& a, const WeightVector& c, double theta) {
  check_dims(a, c);
  const std::vector<double> values = eig_hermitian_values(herm_part(a, theta));
  double h = 0.0;
  for (int j = 0; j < a.dim(); ++j) h += c[j] * values[std::size_t(j)];
  return h;
}

std::pair<WeightVector, std::vector<int>> sort_weights_desc(const WeightVector& c) {
  std::vector<int> sigma(static_cast<std::size_t>(c.dim()));
  std::iota(sigma.begin(), sigma.end(), 0);
  std::stable_sort(sigma.begin(), sigma.end(), [&](int i, int j) { return c[i] > c[j]; });
  std::vector<double> sorted(static_cast<std::size_t>(c.dim()));
  for (int i = 0; i < c.dim(); ++i) sorted[std::size_t(i)] = c[sigma[std::size_t(i)]];
  return {WeightVector(std::move(sorted)), std::move(sigma)};
}

double support_derivative(const ComplexMatrix& a, const WeightVector& c, double theta) {
  // The 5e-3 gap guard keeps central finite differences (step 1e-5) valid
  // wherever this function succeeds; near-crossing curvature would otherwise
  // spoil the comparison long before Hellmann-Feynman itself breaks.
  return derivative_impl(a, c, theta, 5e-3);
}

double support_gap(const ComplexMatrix& a, const WeightVector& c, const ComplexMatrix& b,
                   const WeightVector& d, double theta) {
  return weighted_support(a, c, theta) - weighted_support(b, d, theta);
}

EqualSupportAngles find_equal_support_angles(const ComplexMatrix& a, const WeightVector& c,
                                             const ComplexMatrix& b, const WeightVector& d,
                                             int grid_n) {
  if (grid_n < 256) throw Error("find_equal_support_angles needs gridN >= 256");
  const int n = grid_n;
  std::vector<double> gap(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) gap[std::size_t(k)] = support_gap(a, c, b, d, kTwoPi * k / n);

  EqualSupportAngles out;
  const bool all_zero =
      std::all_of(gap.begin(), gap.end(), [](double g) { return std::abs(g) < kZeroGapTol; });
  if (all_zero) {
    out.sentinel = EqualSupportAngles::Sentinel::IdenticallyZero;
    return out;
  }

  const auto near_zero = [&](int k) { return std::abs(gap[std::size_t((k % n + n) % n)]) < kZeroGapTol; };
  const auto g_at = [&](int k) { return gap[std::size_t((k % n + n) % n)]; };
  const auto theta_at = [&](int k) { return kTwoPi * ((k % n + n) % n) / n; };

  // Maximal circular runs of vanishing gap. Runs of length >= 2 are arcs
  // (an arc wrapping the seam is encoded with lo > hi); isolated zero
  // samples count as discrete roots.
  std::vector<bool> in_arc(std::size_t(n), false);
  for (int s = 0; s < n; ++s) {
    if (!near_zero(s) || near_zero(s - 1)) continue;  // run starts here
    int len = 1;
    while (len < n && near_zero(s + len)) ++len;
    if (len >= 2) {
      for (int i = 0; i < len; ++i) in_arc[std::size_t((s + i) % n)] = true;
      out.zero_arcs.emplace_back(theta_at(s), theta_at(s + len - 1));
    } else {
      const bool crossing = g_at(s - 1) * g_at(s + 1) < 0.0;
      out.roots.push_back({theta_at(s), !crossing});
    }
  }

  // Sign changes between consecutive non-arc samples: bisect to 1e-10.
  for (int k = 0; k < n; ++k) {
    const int k1 = (k + 1) % n;
    if (in_arc[std::size_t(k)] || in_arc[std::size_t(k1)]) continue;
    if (near_zero(k) || near_zero(k1)) continue;
    if (g_at(k) * g_at(k1) >= 0.0) continue;
    double lo = kTwoPi * k / n, hi = kTwoPi * (k + 1) / n;
    double glo = g_at(k);
    while (hi - lo > 1e-10) {
      const double mid = 0.5 * (lo + hi);
      const double gm = support_gap(a, c, b, d, mid);
      if (gm == 0.0) {
        lo = hi = mid;
        break;
      }
      if (glo * gm < 0.0)
        hi = mid;
      else {
        lo = mid;
        glo = gm;
      }
    }
    double root = 0.5 * (lo + hi);
    if (root >= kTwoPi) root -= kTwoPi;
    out.roots.push_back({root, false});
  }

  // Tangential dips: |gap| local minima below 1e-8 with no sign change around.
  for (int k = 0; k < n; ++k) {
    if (in_arc[std::size_t(k)] || near_zero(k)) continue;
    const double gm1 = g_at(k - 1), g0 = g_at(k), gp1 = g_at(k + 1);
    if (std::abs(g0) >= kTangentialTol) continue;
    if (std::abs(g0) > std::abs(gm1) || std::abs(g0) > std::abs(gp1)) continue;
    if (g0 * gm1 < 0.0 || g0 * gp1 < 0.0) continue;  // a crossing owns this dip
    double lo = theta_at(k) - kTwoPi / n, hi = theta_at(k) + kTwoPi / n;
    while (hi - lo > 1e-8) {  // golden-free ternary refinement of |gap|
      const double m1 = lo + (hi - lo) / 3.0, m2 = hi - (hi - lo) / 3.0;
      if (std::abs(support_gap(a, c, b, d, m1)) < std::abs(support_gap(a, c, b, d, m2)))
        hi = m2;
      else
        lo = m1;
    }
    double root = 0.5 * (lo + hi);
    if (root < 0.0) root += kTwoPi;
    if (root >= kTwoPi) root -= kTwoPi;
    out.roots.push_back({root, true});
  }

  std::sort(out.roots.begin(), out.roots.end(),
            [](const SupportAngleRoot& x, const SupportAngleRoot& y) { return x.theta < y.theta; });
  std::vector<SupportAngleRoot> dedup;
  for (const SupportAngleRoot& r : out.roots) {
    if (!dedup.empty() && r.theta - dedup.back().theta < 1e-9) continue;
    dedup.push_back(r);
  }
  out.roots = std::move(dedup);
  if (!out.zero_arcs.empty()) out.sentinel = EqualSupportAngles::Sentinel::IdenticallyZeroOnArc;
  return out;
}

SupportProfile support_profile(const ComplexMatrix& a, const WeightVector& c, int grid_n) {
  if (grid_n < 2) throw Error("support_profile needs gridN >= 2");
  SupportProfile p;
  p.grid.resize(std::size_t(grid_n));
  p.values.resize(std::size_t(grid_n));
  p.derivatives.resize(std::size_t(grid_n));
  for (int k = 0; k < grid_n; ++k) {
    const double theta = kTwoPi * k / grid_n;
    p.grid[std::size_t(k)] = theta;
    p.values[std::size_t(k)] = weighted_support(a, c, theta);
    try {
      p.derivatives[std::size_t(k)] = support_derivative(a, c, theta);
    } catch (const DegenerateEigenvalue&) {
      const double e = 1e-6;
      p.derivatives[std::size_t(k)] = (weighted_support(a, c, theta + e) - p.values[std::size_t(k)]) / e;
    }
  }
  return p;
}

cplx support_point(const ComplexMatrix& a, const WeightVector& c, double theta) {
  const double h = weighted_support(a, c, theta);
  const double dh = derivative_or_fd(a, c, theta);
  return std::polar(1.0, -theta) * cplx(h, -dh);
}

}  // namespace wnr
