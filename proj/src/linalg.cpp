// SPDX-License-Identifier: Apache-2.0
// Copyright (C) 2026 the crsim authors

#include "crsim/linalg.hpp"

#include <cmath>

namespace crsim {

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
  ComplexMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix out(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) out(c, r) = std::conj((*this)(r, c));
  return out;
}

ComplexMatrix ComplexMatrix::operator*(const ComplexMatrix& rhs) const {
  if (cols_ != rhs.rows_) throw std::invalid_argument("ComplexMatrix: size mismatch in product");
  ComplexMatrix out(rows_, rhs.cols_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t k = 0; k < cols_; ++k) {
      const cdouble a = (*this)(r, k);
      if (a == cdouble{}) continue;
      for (std::size_t c = 0; c < rhs.cols_; ++c) out(r, c) += a * rhs(k, c);
    }
  }
  return out;
}

ComplexMatrix ComplexMatrix::operator+(const ComplexMatrix& rhs) const {
  if (rows_ != rhs.rows_ || cols_ != rhs.cols_)
    throw std::invalid_argument("ComplexMatrix: size mismatch in sum");
  ComplexMatrix out = *this;
  for (std::size_t i = 0; i < out.data_.size(); ++i) out.data_[i] += rhs.data_[i];
  return out;
}

ComplexMatrix ComplexMatrix::operator-(const ComplexMatrix& rhs) const {
  if (rows_ != rhs.rows_ || cols_ != rhs.cols_)
    throw std::invalid_argument("ComplexMatrix: size mismatch in difference");
  ComplexMatrix out = *this;
  for (std::size_t i = 0; i < out.data_.size(); ++i) out.data_[i] -= rhs.data_[i];
  return out;
}

ComplexMatrix& ComplexMatrix::add_scaled_identity(double s) {
  for (std::size_t i = 0; i < rows_ && i < cols_; ++i) (*this)(i, i) += s;
  return *this;
}

std::vector<cdouble> ComplexMatrix::apply(std::span<const cdouble> x) const {
  if (x.size() != cols_) throw std::invalid_argument("ComplexMatrix: size mismatch in apply");
  std::vector<cdouble> out(rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    cdouble acc{};
    const cdouble* row = data_.data() + r * cols_;
    for (std::size_t c = 0; c < cols_; ++c) acc += row[c] * x[c];
    out[r] = acc;
  }
  return out;
}

std::vector<double> ComplexMatrix::real_diagonal() const {
  const std::size_t n = rows_ < cols_ ? rows_ : cols_;
  std::vector<double> d(n);
  for (std::size_t i = 0; i < n; ++i) d[i] = (*this)(i, i).real();
  return d;
}

double ComplexMatrix::trace_real() const {
  double t = 0.0;
  for (std::size_t i = 0; i < rows_ && i < cols_; ++i) t += (*this)(i, i).real();
  return t;
}

CholeskyHpd CholeskyHpd::factor(const ComplexMatrix& a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("CholeskyHpd: matrix not square");
  const std::size_t n = a.rows();
  CholeskyHpd out;
  out.l_ = ComplexMatrix(n, n);
  ComplexMatrix& l = out.l_;
  for (std::size_t j = 0; j < n; ++j) {
    double diag = a(j, j).real();
    for (std::size_t k = 0; k < j; ++k) diag -= std::norm(l(j, k));
    if (!(diag > 0.0)) throw SingularSystemError("CholeskyHpd: matrix not positive definite");
    const double ljj = std::sqrt(diag);
    l(j, j) = ljj;
    for (std::size_t i = j + 1; i < n; ++i) {
      cdouble acc = a(i, j);
      for (std::size_t k = 0; k < j; ++k) acc -= l(i, k) * std::conj(l(j, k));
      l(i, j) = acc / ljj;
    }
  }
  return out;
}

void CholeskyHpd::forward_solve_in_place(std::span<cdouble> b) const {
  const std::size_t n = size();
  if (b.size() != n) throw std::invalid_argument("CholeskyHpd: rhs size mismatch");
  for (std::size_t i = 0; i < n; ++i) {
    cdouble acc = b[i];
    for (std::size_t k = 0; k < i; ++k) acc -= l_(i, k) * b[k];
    b[i] = acc / l_(i, i);
  }
}

void CholeskyHpd::solve_in_place(std::span<cdouble> b) const {
  const std::size_t n = size();
  forward_solve_in_place(b);
  for (std::size_t ii = n; ii-- > 0;) {
    cdouble acc = b[ii];
    for (std::size_t k = ii + 1; k < n; ++k) acc -= std::conj(l_(k, ii)) * b[k];
    b[ii] = acc / l_(ii, ii);
  }
}

ComplexMatrix CholeskyHpd::solve(const ComplexMatrix& b) const {
  const std::size_t n = size();
  if (b.rows() != n) throw std::invalid_argument("CholeskyHpd: rhs rows mismatch");
  ComplexMatrix x = b;
  std::vector<cdouble> col(n);
  for (std::size_t c = 0; c < b.cols(); ++c) {
    for (std::size_t r = 0; r < n; ++r) col[r] = x(r, c);
    solve_in_place(col);
    for (std::size_t r = 0; r < n; ++r) x(r, c) = col[r];
  }
  return x;
}

double CholeskyHpd::log_det() const {
  double acc = 0.0;
  for (std::size_t i = 0; i < size(); ++i) acc += std::log(l_(i, i).real());
  return 2.0 * acc;
}

}  // namespace crsim
