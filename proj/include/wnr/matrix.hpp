#pragma once

#include <complex>
#include <vector>

#include "wnr/errors.hpp"

namespace wnr {

using cplx = std::complex<double>;

/// Dense square complex matrix, row-major storage.
class ComplexMatrix {
 public:
  // Entries larger than this in modulus (or non-finite) are rejected so the
  // absolute tolerances used throughout the library stay meaningful.
  static constexpr double kMaxEntry = 1e12;

  explicit ComplexMatrix(int n);
  ComplexMatrix(int n, std::vector<cplx> entries);

  static ComplexMatrix identity(int n);
  static ComplexMatrix diagonal(const std::vector<cplx>& diag);

  int dim() const { return n_; }

  const cplx& operator()(int i, int j) const { return a_[std::size_t(i) * n_ + j]; }
  cplx& operator()(int i, int j) { return a_[std::size_t(i) * n_ + j]; }

  const std::vector<cplx>& entries() const { return a_; }

  ComplexMatrix adjoint() const;
  cplx trace() const;
  double max_abs() const;
  double frobenius_norm() const;
  double max_row_sum() const;  // induced infinity norm

  bool is_hermitian() const;  // entrywise within 1e-14 * max_abs()
  bool is_normal() const;     // ||AA* - A*A||_F <= 1e-10 * ||A||_F^2

  friend ComplexMatrix operator+(const ComplexMatrix& x, const ComplexMatrix& y);
  friend ComplexMatrix operator-(const ComplexMatrix& x, const ComplexMatrix& y);
  friend ComplexMatrix operator*(const ComplexMatrix& x, const ComplexMatrix& y);
  friend ComplexMatrix operator*(cplx s, const ComplexMatrix& x);

 private:
  int n_ = 0;
  std::vector<cplx> a_;
};

/// Hermitian matrix. Construction symmetrizes ((M + M*)/2, real diagonal);
/// when `validate` is set the input must already be Hermitian to within
/// 1e-14 * max|entry|, otherwise NotHermitian is thrown.
class HermitianMatrix {
 public:
  explicit HermitianMatrix(const ComplexMatrix& m, bool validate = true);

  int dim() const { return m_.dim(); }
  const ComplexMatrix& matrix() const { return m_; }
  const cplx& operator()(int i, int j) const { return m_(i, j); }

 private:
  ComplexMatrix m_;
};

/// H_theta(A) = (e^{i theta} A + e^{-i theta} A*) / 2.
HermitianMatrix herm_part(const ComplexMatrix& a, double theta);

}  // namespace wnr
