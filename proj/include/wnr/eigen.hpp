#pragma once

#include <vector>

#include "wnr/matrix.hpp"

namespace wnr {

/// Eigen-decomposition of a Hermitian matrix. `values` sorted descending;
/// column j of `vectors` is an eigenvector for values[j], columns orthonormal.
struct HermitianEigen {
  std::vector<double> values;
  ComplexMatrix vectors;
};

/// Cyclic Jacobi with complex 2x2 rotations. Off-diagonal Frobenius
/// tolerance 1e-13 * ||H||_F, at most 64 sweeps.
HermitianEigen eig_hermitian(const HermitianMatrix& h);

/// Same solver without eigenvector accumulation.
std::vector<double> eig_hermitian_values(const HermitianMatrix& h);

struct Spectrum {
  std::vector<cplx> eigenvalues;  // with algebraic multiplicity, sorted by (re, im)
};

/// Eigenvalues of a general matrix (n <= 12): characteristic polynomial by
/// the Faddeev-LeVerrier recurrence, roots by Aberth-Ehrlich iteration.
Spectrum eig_general(const ComplexMatrix& a);

/// Monic characteristic polynomial det(tI - A), coefficients ascending
/// (result[k] multiplies t^k, result[n] == 1).
std::vector<cplx> characteristic_polynomial(const ComplexMatrix& a);

/// Aberth-Ehrlich simultaneous iteration on a monic polynomial given in
/// ascending coefficient order. Initial guesses sit on the given circle.
std::vector<cplx> polynomial_roots(const std::vector<cplx>& monic, double initial_radius,
                                   double tol = 1e-12, int max_iter = 200);

/// Convenience overload using the Cauchy root bound for the initial circle.
std::vector<cplx> polynomial_roots(const std::vector<cplx>& monic);

}  // namespace wnr
