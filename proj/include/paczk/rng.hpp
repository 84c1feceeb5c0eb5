#pragma once

#include <array>
#include <cstdint>
#include <string_view>
#include <vector>

namespace paczk {

// Counter-mode deterministic PRNG: block i is SHA-256(seed || LE64(i)).
// Verifier-side randomness source; identical seed gives an identical stream
// on every platform. Single-owner, not for concurrent use.
class SeededRng {
 public:
  using Seed = std::array<std::uint8_t, 32>;

  explicit SeededRng(const Seed& seed) : seed_(seed) {}
  static SeededRng from_phrase(std::string_view phrase);
  static SeededRng from_u64(std::uint64_t value);

  std::uint64_t next_u64();
  // Uniform on [0, 1), 53-bit resolution.
  double uniform();
  // Uniform on the inclusive integer range [lo, hi]; unbiased via rejection.
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi);
  // Standard normal via Box-Muller; transcendental, so verifier-side only.
  double normal();

  std::uint64_t counter() const { return counter_; }

 private:
  void refill();

  Seed seed_{};
  std::uint64_t counter_ = 0;
  std::array<std::uint64_t, 4> block_{};
  std::size_t block_pos_ = 4;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

// d independent standard-normal variates.
std::vector<double> sample_standard_normal(SeededRng& rng, std::size_t d);

}  // namespace paczk
