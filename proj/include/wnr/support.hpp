#pragma once

#include <utility>
#include <vector>

#include "wnr/eigen.hpp"

namespace wnr {

/// Real weight vector c. Weights apply to descending-sorted eigenvalues of
/// H_theta(A) exactly as written; callers wanting W_c must sort c first.
class WeightVector {
 public:
  WeightVector() = default;
  WeightVector(std::vector<double> c);
  WeightVector(std::initializer_list<double> c) : WeightVector(std::vector<double>(c)) {}

  int dim() const { return int(c_.size()); }
  double operator[](int i) const { return c_[std::size_t(i)]; }
  const std::vector<double>& raw() const { return c_; }

  int nonzero_count() const;  // r
  double sum() const;

  /// Positions of the nonzero entries, ascending.
  std::vector<int> nonzero_slots() const;

  /// Distinct nonzero values with multiplicities, in order of first appearance.
  std::vector<std::pair<double, int>> signature() const;

 private:
  std::vector<double> c_;
};

/// h_{A,c}(theta) = sum_j c_j lambda_j(H_theta(A)), lambdas descending.
double weighted_support(const ComplexMatrix& a, const WeightVector& c, double theta);

/// Descending rearrangement plus a witnessing permutation sigma with
/// sorted[i] == c[sigma[i]] (stable on ties).
std::pair<WeightVector, std::vector<int>> sort_weights_desc(const WeightVector& c);

/// d/dtheta of the weighted support via Hellmann-Feynman,
/// H'_theta(A) = H_{theta+pi/2}(A). Requires eigenvalues carrying distinct
/// weights to be separated; throws DegenerateEigenvalue otherwise (callers
/// fall back to one-sided finite differences).
double support_derivative(const ComplexMatrix& a, const WeightVector& c, double theta);

double support_gap(const ComplexMatrix& a, const WeightVector& c, const ComplexMatrix& b,
                   const WeightVector& d, double theta);

struct SupportAngleRoot {
  double theta = 0.0;
  bool tangential = false;  // |gap| local minimum below 1e-8 without sign change
};

struct EqualSupportAngles {
  enum class Sentinel { None, IdenticallyZero, IdenticallyZeroOnArc };
  Sentinel sentinel = Sentinel::None;
  std::vector<SupportAngleRoot> roots;               // ascending theta
  std::vector<std::pair<double, double>> zero_arcs;  // arcs where the gap vanishes
};

/// All theta in [0, 2pi) with equal weighted supports: uniform scan plus
/// bisection on sign changes (refined to 1e-10), tangential dips flagged.
EqualSupportAngles find_equal_support_angles(const ComplexMatrix& a, const WeightVector& c,
                                             const ComplexMatrix& b, const WeightVector& d,
                                             int grid_n);

struct SupportProfile {
  std::vector<double> grid;  // uniform in [0, 2pi)
  std::vector<double> values;
  std::vector<double> derivatives;
};

SupportProfile support_profile(const ComplexMatrix& a, const WeightVector& c, int grid_n);

/// Contact point of the supporting line at angle theta:
/// e^{-i theta} (h - i h'). Uses a finite-difference derivative when the
/// Hellmann-Feynman route hits a degeneracy.
cplx support_point(const ComplexMatrix& a, const WeightVector& c, double theta);

}  // namespace wnr
