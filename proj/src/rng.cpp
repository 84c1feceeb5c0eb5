#include "paczk/rng.hpp"

#include <cmath>
#include <cstring>
#include <numbers>

#include "paczk/sha256.hpp"

namespace paczk {

SeededRng SeededRng::from_phrase(std::string_view phrase) {
  const auto* p = reinterpret_cast<const std::uint8_t*>(phrase.data());
  return SeededRng(sha256({p, phrase.size()}));
}

SeededRng SeededRng::from_u64(std::uint64_t value) {
  std::array<std::uint8_t, 8> le{};
  for (int i = 0; i < 8; ++i) le[i] = static_cast<std::uint8_t>(value >> (8 * i));
  return SeededRng(sha256(le));
}

void SeededRng::refill() {
  std::array<std::uint8_t, 40> msg{};
  std::memcpy(msg.data(), seed_.data(), 32);
  for (int i = 0; i < 8; ++i) msg[32 + i] = static_cast<std::uint8_t>(counter_ >> (8 * i));
  const Digest256 h = sha256(msg);
  for (int w = 0; w < 4; ++w) {
    std::uint64_t v = 0;
    for (int i = 7; i >= 0; --i) v = (v << 8) | h[w * 8 + i];
    block_[w] = v;
  }
  block_pos_ = 0;
  ++counter_;
}

std::uint64_t SeededRng::next_u64() {
  if (block_pos_ >= block_.size()) refill();
  return block_[block_pos_++];
}

double SeededRng::uniform() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

std::int64_t SeededRng::uniform_int(std::int64_t lo, std::int64_t hi) {
  const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
  if (span == 0) return static_cast<std::int64_t>(next_u64());  // full 64-bit range
  const std::uint64_t limit = std::uint64_t(-1) - std::uint64_t(-1) % span;
  std::uint64_t v;
  do {
    v = next_u64();
  } while (v >= limit);
  return lo + static_cast<std::int64_t>(v % span);
}

double SeededRng::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  double u1;
  do {
    u1 = uniform();
  } while (u1 <= 0.0);
  const double u2 = uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double theta = 2.0 * std::numbers::pi * u2;
  spare_ = r * std::sin(theta);
  has_spare_ = true;
  return r * std::cos(theta);
}

std::vector<double> sample_standard_normal(SeededRng& rng, std::size_t d) {
  std::vector<double> out(d);
  for (auto& x : out) x = rng.normal();
  return out;
}

}  // namespace paczk
