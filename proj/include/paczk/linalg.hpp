#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "paczk/circuit.hpp"

namespace paczk {

// Row-major dense matrix.
struct Matrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> a;

  Matrix() = default;
  Matrix(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c, 0.0) {}

  static Matrix identity(std::size_t n);

  double& at(std::size_t i, std::size_t j) { return a[i * cols + j]; }
  double at(std::size_t i, std::size_t j) const { return a[i * cols + j]; }
  bool empty() const { return rows == 0 || cols == 0; }
};

// Lower-triangular square matrix with positive diagonal; entries strictly
// above the diagonal are exactly zero.
struct LowerTriangular {
  std::size_t dim = 0;
  std::vector<double> a;  // dense row-major, dim x dim

  explicit LowerTriangular(std::size_t n = 0) : dim(n), a(n * n, 0.0) {}
  static LowerTriangular diagonal(std::span<const double> d);

  double& at(std::size_t i, std::size_t j) { return a[i * dim + j]; }
  double at(std::size_t i, std::size_t j) const { return a[i * dim + j]; }
};

// Cholesky factorization of a symmetric positive-definite matrix: returns the
// unique lower-triangular A with positive diagonal such that A A^T = sigma.
// Symmetry is checked to 1e-12 relative before any traced work; a nonpositive
// pivot raises NotPositiveDefinite. Traced.
LowerTriangular cholesky(const Matrix& sigma, Circuit& c);

// A z + mu. Traced.
std::vector<double> correlate_noise(const LowerTriangular& a, std::span<const double> z,
                                    std::span<const double> mu, Circuit& c);

// Unbiased sample variance, divisor m-1. Traced. Throws TooFewSamples for m < 2.
double variance(std::span<const double> samples, Circuit& c);

namespace detail {
// Same op sequence as variance() but with divisor max(m-1, 1), defined for
// m >= 1. The divisor choice depends only on the public sample count, so the
// trace stays affine in m down to m = 1.
double variance_any_m(std::span<const double> samples, Circuit& c);
}  // namespace detail

// Dense matrix-vector product. Traced.
std::vector<double> matvec(const Matrix& m, std::span<const double> v, Circuit& c);

// Transposed product m^T v. Traced.
std::vector<double> matvec_transposed(const Matrix& m, std::span<const double> v, Circuit& c);

// Untraced helpers for verifier-side checks.
double frobenius_norm(const Matrix& m);
Matrix reconstruct_from_cholesky(const LowerTriangular& a);

}  // namespace paczk
