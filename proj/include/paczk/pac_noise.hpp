#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "paczk/circuit.hpp"
#include "paczk/linalg.hpp"
#include "paczk/sha256.hpp"

namespace paczk {

struct NoiseParams {
  double beta = 1.0;  // mutual-information budget
  std::size_t m = 2;  // mechanism samples for the determination step
  Matrix projection;  // orthonormal rows; empty means identity

  void validate() const;
};

// Per-coordinate Gaussian noise variances plus the basis they live in.
struct CovarianceMatrix {
  std::vector<double> diag;
  Matrix basis;  // empty means identity

  std::size_t dim() const { return diag.size(); }
  bool operator==(const CovarianceMatrix&) const = default;
};

struct Commitment {
  Digest256 digest{};

  std::string hex() const { return hex_encode(digest); }
  static Commitment from_hex(std::string_view h);
  bool operator==(const Commitment&) const = default;
};

// Anisotropic noise determination: project each sample, take the unbiased
// per-coordinate variance sigma_i, and set
//   Sigma[i] = sqrt(sigma_i) * sum_k sqrt(sigma_k) / (2 beta).
// Fully traced.
CovarianceMatrix noise_determination(std::span<const std::vector<double>> samples,
                                     const NoiseParams& params, Circuit& c);

namespace detail {
// Identical trace shape but tolerates m = 1 (variance divisor max(m-1, 1));
// used by the benchmark sweeps, which include single-sample points.
CovarianceMatrix noise_determination_any_m(std::span<const std::vector<double>> samples,
                                           const NoiseParams& params, Circuit& c);
}  // namespace detail

// Canonical byte serialization used both for hashing and for the private
// Sigma file: "PACS", version 0x01, u32-LE d, d f64-LE diagonal entries, then
// basis entries row-major f64-LE (absent for the identity basis).
std::vector<std::uint8_t> serialize_sigma(const CovarianceMatrix& sigma);
CovarianceMatrix parse_sigma(std::span<const std::uint8_t> bytes);

// SHA-256 over the canonical serialization; the in-circuit cost is one hash
// permutation per 64-byte block.
Commitment commit_sigma(const CovarianceMatrix& sigma, Circuit& c);

// B = basis^T diag(sqrt(Sigma[i])) z: correlate a standard-normal seed into
// noise with covariance Sigma. Traced.
std::vector<double> draw_noise(const CovarianceMatrix& sigma, std::span<const double> z,
                               Circuit& c);

void save_sigma(const std::filesystem::path& file, const CovarianceMatrix& sigma);
CovarianceMatrix load_sigma(const std::filesystem::path& file);

}  // namespace paczk
