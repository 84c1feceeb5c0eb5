#include "paczk/linalg.hpp"

#include <algorithm>
#include <cmath>

#include "paczk/errors.hpp"

namespace paczk {

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1.0;
  return m;
}

LowerTriangular LowerTriangular::diagonal(std::span<const double> d) {
  LowerTriangular l(d.size());
  for (std::size_t i = 0; i < d.size(); ++i) l.at(i, i) = d[i];
  return l;
}

LowerTriangular cholesky(const Matrix& sigma, Circuit& c) {
  if (sigma.rows != sigma.cols) throw DimensionMismatch("cholesky expects a square matrix");
  const std::size_t n = sigma.rows;
  require_finite(sigma.a, "cholesky input");

  double scale = 0.0;
  for (double v : sigma.a) scale = std::max(scale, std::fabs(v));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (std::fabs(sigma.at(i, j) - sigma.at(j, i)) > 1e-12 * std::max(scale, 1.0))
        throw NotSymmetric();

  LowerTriangular l(n);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = j; i < n; ++i) {
      double s = sigma.at(i, j);
      for (std::size_t k = 0; k < j; ++k) s = c.sub(s, c.mul(l.at(i, k), l.at(j, k)));
      if (i == j) {
        if (s <= 0.0) throw NotPositiveDefinite();
        l.at(j, j) = c.sqrt(s);
      } else {
        l.at(i, j) = c.div(s, l.at(j, j));
      }
    }
  }
  return l;
}

std::vector<double> correlate_noise(const LowerTriangular& a, std::span<const double> z,
                                    std::span<const double> mu, Circuit& c) {
  if (z.size() != a.dim || mu.size() != a.dim)
    throw DimensionMismatch("correlate_noise operands disagree");
  require_finite(z, "correlate_noise seed");
  require_finite(mu, "correlate_noise mean");

  std::vector<double> out(a.dim);
  for (std::size_t i = 0; i < a.dim; ++i) {
    double acc = mu[i];
    for (std::size_t j = 0; j <= i; ++j) acc = c.add(acc, c.mul(a.at(i, j), z[j]));
    out[i] = acc;
  }
  return out;
}

namespace detail {
double variance_any_m(std::span<const double> samples, Circuit& c) {
  const std::size_t m = samples.size();
  double sum = 0.0;
  for (double x : samples) sum = c.add(sum, x);
  const double mean = c.div(sum, static_cast<double>(m));
  double ss = 0.0;
  for (double x : samples) {
    const double dev = c.sub(x, mean);
    ss = c.add(ss, c.mul(dev, dev));
  }
  const double divisor = static_cast<double>(m > 1 ? m - 1 : 1);
  return c.div(ss, divisor);
}
}  // namespace detail

double variance(std::span<const double> samples, Circuit& c) {
  if (samples.size() < 2) throw TooFewSamples(samples.size());
  require_finite(samples, "variance input");
  return detail::variance_any_m(samples, c);
}

std::vector<double> matvec(const Matrix& m, std::span<const double> v, Circuit& c) {
  if (v.size() != m.cols) throw DimensionMismatch("matvec operand dims disagree");
  std::vector<double> out(m.rows, 0.0);
  for (std::size_t i = 0; i < m.rows; ++i) {
    double acc = 0.0;
    for (std::size_t j = 0; j < m.cols; ++j) acc = c.add(acc, c.mul(m.at(i, j), v[j]));
    out[i] = acc;
  }
  return out;
}

std::vector<double> matvec_transposed(const Matrix& m, std::span<const double> v, Circuit& c) {
  if (v.size() != m.rows) throw DimensionMismatch("matvec_transposed operand dims disagree");
  std::vector<double> out(m.cols, 0.0);
  for (std::size_t j = 0; j < m.cols; ++j) {
    double acc = 0.0;
    for (std::size_t i = 0; i < m.rows; ++i) acc = c.add(acc, c.mul(m.at(i, j), v[i]));
    out[j] = acc;
  }
  return out;
}

double frobenius_norm(const Matrix& m) {
  double s = 0.0;
  for (double v : m.a) s += v * v;
  return std::sqrt(s);
}

Matrix reconstruct_from_cholesky(const LowerTriangular& a) {
  const std::size_t n = a.dim;
  Matrix out(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      double s = 0.0;
      for (std::size_t k = 0; k < n; ++k) s += a.at(i, k) * a.at(j, k);
      out.at(i, j) = s;
    }
  return out;
}

}  // namespace paczk
