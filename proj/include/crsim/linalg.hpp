// SPDX-License-Identifier: Apache-2.0
// Copyright (C) 2026 the crsim authors

#ifndef CRSIM_LINALG_HPP
#define CRSIM_LINALG_HPP

#include <complex>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

// Small dense complex matrices for the estimator construction. Blocks here
// are at most (K + M - 1) square, i.e. a few dozen rows, so a plain
// row-major layout with unblocked Cholesky is entirely adequate.

namespace crsim {

using cdouble = std::complex<double>;

struct SingularSystemError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  ComplexMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols) {}

  static ComplexMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  cdouble& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const cdouble& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  cdouble* data() { return data_.data(); }
  const cdouble* data() const { return data_.data(); }

  ComplexMatrix adjoint() const;
  ComplexMatrix operator*(const ComplexMatrix& rhs) const;
  ComplexMatrix operator+(const ComplexMatrix& rhs) const;
  ComplexMatrix operator-(const ComplexMatrix& rhs) const;
  ComplexMatrix& add_scaled_identity(double s);  // A += s*I

  std::vector<cdouble> apply(std::span<const cdouble> x) const;          // A x
  std::vector<double> real_diagonal() const;
  double trace_real() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<cdouble> data_;
};

// Cholesky factorization A = L L^H of a Hermitian positive definite matrix.
class CholeskyHpd {
 public:
  // Throws SingularSystemError if a pivot is not strictly positive.
  static CholeskyHpd factor(const ComplexMatrix& a);

  std::size_t size() const { return l_.rows(); }

  // Solve A x = b in place.
  void solve_in_place(std::span<cdouble> b) const;
  // Solve A X = B column-block-wise; B is n x k row-major.
  ComplexMatrix solve(const ComplexMatrix& b) const;
  // Forward substitution only: y = L^{-1} b (for whitened quadratic forms).
  void forward_solve_in_place(std::span<cdouble> b) const;

  double log_det() const;  // log det A

 private:
  ComplexMatrix l_;
};

}  // namespace crsim

#endif  // CRSIM_LINALG_HPP
