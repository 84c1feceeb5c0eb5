#include "paczk/pac_noise.hpp"

#include <cmath>
#include <cstring>
#include <fstream>

#include "paczk/errors.hpp"

namespace paczk {

void NoiseParams::validate() const {
  if (!(beta > 0.0) || !std::isfinite(beta)) throw ConfigError("NoiseParams: beta must be positive");
  if (m < 2) throw TooFewSamples(m);
  if (!projection.empty()) {
    // rows must be orthonormal: P P^T = I within 1e-9
    for (std::size_t i = 0; i < projection.rows; ++i)
      for (std::size_t j = 0; j < projection.rows; ++j) {
        double dot = 0.0;
        for (std::size_t t = 0; t < projection.cols; ++t)
          dot += projection.at(i, t) * projection.at(j, t);
        const double expect = i == j ? 1.0 : 0.0;
        if (std::fabs(dot - expect) > 1e-9)
          throw ConfigError("NoiseParams: projection rows are not orthonormal");
      }
  }
}

Commitment Commitment::from_hex(std::string_view h) {
  const auto bytes = hex_decode(h);
  if (bytes.size() != 32) throw DataError("Commitment: expected 64 hex chars");
  Commitment c;
  std::memcpy(c.digest.data(), bytes.data(), 32);
  return c;
}

namespace detail {
CovarianceMatrix noise_determination_any_m(std::span<const std::vector<double>> samples,
                                           const NoiseParams& params, Circuit& c) {
  if (samples.empty()) throw TooFewSamples(0);
  const std::size_t in_dim = samples.front().size();
  for (const auto& s : samples) {
    if (s.size() != in_dim) throw DimensionMismatch("noise_determination sample dims disagree");
    require_finite(s, "noise_determination sample");
  }
  const bool project = !params.projection.empty();
  if (project && params.projection.cols != in_dim)
    throw DimensionMismatch("projection columns disagree with sample dim");
  const std::size_t d = project ? params.projection.rows : in_dim;

  // coordinate set S_i across the (projected) samples
  std::vector<std::vector<double>> coords(d, std::vector<double>(samples.size()));
  for (std::size_t k = 0; k < samples.size(); ++k) {
    if (project) {
      const auto p = matvec(params.projection, samples[k], c);
      for (std::size_t i = 0; i < d; ++i) coords[i][k] = p[i];
    } else {
      for (std::size_t i = 0; i < d; ++i) coords[i][k] = samples[k][i];
    }
  }

  std::vector<double> sigma_sqrt(d);
  double sum = 0.0;
  for (std::size_t i = 0; i < d; ++i) {
    const double var = variance_any_m(coords[i], c);
    sigma_sqrt[i] = c.sqrt(var);
    sum = c.add(sum, sigma_sqrt[i]);
  }

  CovarianceMatrix out;
  out.diag.resize(d);
  const double two_beta = 2.0 * params.beta;
  for (std::size_t i = 0; i < d; ++i)
    out.diag[i] = c.div(c.mul(sigma_sqrt[i], sum), two_beta);
  out.basis = params.projection;
  return out;
}
}  // namespace detail

CovarianceMatrix noise_determination(std::span<const std::vector<double>> samples,
                                     const NoiseParams& params, Circuit& c) {
  params.validate();
  if (samples.size() < 2) throw TooFewSamples(samples.size());
  if (samples.size() != params.m)
    throw DimensionMismatch("sample count disagrees with NoiseParams.m");
  return detail::noise_determination_any_m(samples, params, c);
}

namespace {
void put_u32_le(std::vector<std::uint8_t>& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

void put_f64_le(std::vector<std::uint8_t>& out, double v) {
  std::uint64_t bits;
  std::memcpy(&bits, &v, 8);
  for (int i = 0; i < 8; ++i) out.push_back(static_cast<std::uint8_t>(bits >> (8 * i)));
}

double get_f64_le(std::span<const std::uint8_t> in, std::size_t off) {
  std::uint64_t bits = 0;
  for (int i = 7; i >= 0; --i) bits = (bits << 8) | in[off + i];
  double v;
  std::memcpy(&v, &bits, 8);
  return v;
}
}  // namespace

std::vector<std::uint8_t> serialize_sigma(const CovarianceMatrix& sigma) {
  std::vector<std::uint8_t> out;
  out.reserve(9 + 8 * (sigma.diag.size() + sigma.basis.a.size()));
  out.insert(out.end(), {'P', 'A', 'C', 'S', 0x01});
  put_u32_le(out, static_cast<std::uint32_t>(sigma.diag.size()));
  for (double v : sigma.diag) put_f64_le(out, v);
  for (double v : sigma.basis.a) put_f64_le(out, v);
  return out;
}

CovarianceMatrix parse_sigma(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < 9 || bytes[0] != 'P' || bytes[1] != 'A' || bytes[2] != 'C' ||
      bytes[3] != 'S' || bytes[4] != 0x01)
    throw DataError("parse_sigma: bad magic or version");
  std::uint32_t d = 0;
  for (int i = 3; i >= 0; --i) d = (d << 8) | bytes[5 + i];
  const std::size_t body = bytes.size() - 9;
  if (body < 8ull * d || (body - 8ull * d) % 8 != 0)
    throw DataError("parse_sigma: truncated payload");

  CovarianceMatrix out;
  out.diag.resize(d);
  std::size_t off = 9;
  for (std::uint32_t i = 0; i < d; ++i, off += 8) out.diag[i] = get_f64_le(bytes, off);

  const std::size_t basis_vals = (bytes.size() - off) / 8;
  if (basis_vals > 0) {
    if (d == 0 || basis_vals % d != 0) throw DataError("parse_sigma: ragged basis block");
    out.basis = Matrix(d, basis_vals / d);
    for (auto& v : out.basis.a) {
      v = get_f64_le(bytes, off);
      off += 8;
    }
  }
  return out;
}

Commitment commit_sigma(const CovarianceMatrix& sigma, Circuit& c) {
  const auto bytes = serialize_sigma(sigma);
  c.hash_blocks(sha256_block_count(bytes.size()));
  return Commitment{sha256(bytes)};
}

std::vector<double> draw_noise(const CovarianceMatrix& sigma, std::span<const double> z,
                               Circuit& c) {
  if (z.size() != sigma.dim()) throw DimensionMismatch("draw_noise seed dim");
  require_finite(z, "draw_noise seed");
  for (double v : sigma.diag)
    if (v < 0.0) throw NegativeVariance();

  std::vector<double> scaled(sigma.dim());
  for (std::size_t i = 0; i < sigma.dim(); ++i)
    scaled[i] = c.mul(c.sqrt(sigma.diag[i]), z[i]);
  if (sigma.basis.empty()) return scaled;
  return matvec_transposed(sigma.basis, scaled, c);
}

void save_sigma(const std::filesystem::path& file, const CovarianceMatrix& sigma) {
  const auto bytes = serialize_sigma(sigma);
  std::ofstream out(file, std::ios::binary | std::ios::trunc);
  if (!out) throw DataError("cannot write " + file.string());
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
}

CovarianceMatrix load_sigma(const std::filesystem::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw MissingSigma();
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                  std::istreambuf_iterator<char>());
  return parse_sigma(bytes);
}

}  // namespace paczk
