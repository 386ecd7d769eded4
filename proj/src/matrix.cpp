#include "wnr/matrix.hpp"

#include <cmath>
#include <string>
#include <utility>

namespace wnr {

namespace {

void check_entries(int n, const std::vector<cplx>& a) {
  if (n < 1) throw DimensionMismatch("matrix dimension must be >= 1");
  if (a.size() != std::size_t(n) * n)
    throw DimensionMismatch("entry count does not match dimension " + std::to_string(n));
  for (const cplx& z : a) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
      throw Error("matrix entry is not finite");
    if (std::abs(z) > ComplexMatrix::kMaxEntry)
      throw Error("matrix entry exceeds the 1e12 scale guard");
  }
}

}  // namespace

ComplexMatrix::ComplexMatrix(int n) : n_(n), a_(std::size_t(n) * n, cplx(0.0, 0.0)) {
  if (n < 1) throw DimensionMismatch("matrix dimension must be >= 1");
}

ComplexMatrix::ComplexMatrix(int n, std::vector<cplx> entries) : n_(n), a_(std::move(entries)) {
  check_entries(n, a_);
}

ComplexMatrix ComplexMatrix::identity(int n) {
  ComplexMatrix m(n);
  for (int i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::diagonal(const std::vector<cplx>& diag) {
  ComplexMatrix m(int(diag.size()));
  for (int i = 0; i < m.dim(); ++i) m(i, i) = diag[std::size_t(i)];
  check_entries(m.dim(), m.a_);
  return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix m(n_);
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) m(j, i) = std::conj((*this)(i, j));
  return m;
}

cplx ComplexMatrix::trace() const {
  cplx t = 0.0;
  for (int i = 0; i < n_; ++i) t += (*this)(i, i);
  return t;
}

double ComplexMatrix::max_abs() const {
  double m = 0.0;
  for (const cplx& z : a_) m = std::max(m, std::abs(z));
  return m;
}

double ComplexMatrix::frobenius_norm() const {
  double s = 0.0;
  for (const cplx& z : a_) s += std::norm(z);
  return std::sqrt(s);
}

double ComplexMatrix::max_row_sum() const {
  double m = 0.0;
  for (int i = 0; i < n_; ++i) {
    double s = 0.0;
    for (int j = 0; j < n_; ++j) s += std::abs((*this)(i, j));
    m = std::max(m, s);
  }
  return m;
}

bool ComplexMatrix::is_hermitian() const {
  const double tol = 1e-14 * std::max(1e-300, max_abs());
  for (int i = 0; i < n_; ++i)
    for (int j = i; j < n_; ++j)
      if (std::abs((*this)(i, j) - std::conj((*this)(j, i))) > tol) return false;
  return true;
}

bool ComplexMatrix::is_normal() const {
  const ComplexMatrix ad = adjoint();
  const ComplexMatrix comm = (*this) * ad - ad * (*this);
  const double nf = frobenius_norm();
  return comm.frobenius_norm() <= 1e-10 * std::max(1e-300, nf * nf);
}

ComplexMatrix operator+(const ComplexMatrix& x, const ComplexMatrix& y) {
  if (x.dim() != y.dim()) throw DimensionMismatch("matrix sum dimension mismatch");
  ComplexMatrix m(x.n_);
  for (std::size_t k = 0; k < x.a_.size(); ++k) m.a_[k] = x.a_[k] + y.a_[k];
  return m;
}

ComplexMatrix operator-(const ComplexMatrix& x, const ComplexMatrix& y) {
  if (x.dim() != y.dim()) throw DimensionMismatch("matrix difference dimension mismatch");
  ComplexMatrix m(x.n_);
  for (std::size_t k = 0; k < x.a_.size(); ++k) m.a_[k] = x.a_[k] - y.a_[k];
  return m;
}

ComplexMatrix operator*(const ComplexMatrix& x, const ComplexMatrix& y) {
  if (x.dim() != y.dim()) throw DimensionMismatch("matrix product dimension mismatch");
  const int n = x.n_;
  ComplexMatrix m(n);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) {
      const cplx xik = x(i, k);
      if (xik == cplx(0.0, 0.0)) continue;
      for (int j = 0; j < n; ++j) m(i, j) += xik * y(k, j);
    }
  return m;
}

ComplexMatrix operator*(cplx s, const ComplexMatrix& x) {
  ComplexMatrix m(x.n_);
  for (std::size_t k = 0; k < x.a_.size(); ++k) m.a_[k] = s * x.a_[k];
  return m;
}

HermitianMatrix::HermitianMatrix(const ComplexMatrix& m, bool validate) : m_(m.dim()) {
  const int n = m.dim();
  if (validate && !m.is_hermitian())
    throw NotHermitian("matrix is not Hermitian within 1e-14 * max|entry|");
  for (int i = 0; i < n; ++i) {
    m_(i, i) = cplx(m(i, i).real(), 0.0);
    for (int j = i + 1; j < n; ++j) {
      const cplx v = 0.5 * (m(i, j) + std::conj(m(j, i)));
      m_(i, j) = v;
      m_(j, i) = std::conj(v);
    }
  }
}

HermitianMatrix herm_part(const ComplexMatrix& a, double theta) {
  const cplx phase = std::polar(1.0, theta);
  const int n = a.dim();
  ComplexMatrix h(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      h(i, j) = 0.5 * (phase * a(i, j) + std::conj(phase * a(j, i)));
  return HermitianMatrix(h, /*validate=*/false);
}

}  // namespace wnr
