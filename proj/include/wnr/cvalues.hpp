#pragma once

#include <vector>

#include "wnr/support.hpp"

namespace wnr {

struct DegreeInfo {
  int r = 0;                              // nonzero weight count
  std::vector<int> group_multiplicities;  // per distinct nonzero value
  long long degree = 0;                   // n! / ((n-r)! * prod m_g!)
};

DegreeInfo degree(const WeightVector& c, int n);

/// Enumerated c-values. witnesses[i] lists the eigenvalue indices assigned
/// to the nonzero weight slots (ascending slot order); assignments that only
/// permute equal weights are identified, so values.size() == degree.
struct CValueSet {
  std::vector<cplx> values;
  std::vector<std::vector<int>> witnesses;
};

CValueSet enumerate_cvalues(const Spectrum& spectrum, const WeightVector& c);

/// Monic polynomial with the enumerated c-values as roots; coefficients
/// ascending (coefficients.back() == 1).
struct CPolynomial {
  std::vector<cplx> coefficients;
};

CPolynomial cpolynomial(const ComplexMatrix& a, const WeightVector& c);

/// r(A;c)(x,y,t) = p(xA + yA*; c)(t).
cplx eval_r(const ComplexMatrix& a, const WeightVector& c, cplx x, cplx y, cplx t);

struct CValueMatch {
  cplx value;
  std::vector<int> witness_a;
  std::vector<int> witness_b;
};

/// All pairs of a c-value of A and a d-value of B within tol of each other.
/// Pass tol <= 0 for the default 1e-7 * scale.
std::vector<CValueMatch> common_cvalue(const ComplexMatrix& a, const WeightVector& c,
                                       const ComplexMatrix& b, const WeightVector& d,
                                       double tol = -1.0);

bool all_cvalues_subset(const ComplexMatrix& a, const WeightVector& c, const ComplexMatrix& b,
                        const WeightVector& d, double tol = -1.0);

/// Multiplicity convention for numerically coincident c-values: the number
/// of enumerated values within 1e-7 * scale of `v`.
int cvalue_multiplicity(const CValueSet& set, cplx v, double tol);

}  // namespace wnr
