#pragma once

#include <array>
#include <cstdint>
#include <cstddef>

namespace paczk {

// Primitive opcodes of the circuit-side execution model. Everything a traced
// computation does with data-derived values is one of these.
enum class Op : std::uint8_t {
  kAdd = 0,
  kSub,
  kMul,
  kDiv,
  kSqrt,
  kCmp,       // order indicator, result in {0.0, 1.0}
  kHashPerm,  // one 64-byte compression-function block
};

inline constexpr std::size_t kOpCount = 7;

// Per-opcode cycle weights. Arbitrary but fixed; only the shape of cost
// curves is meaningful, not the absolute numbers.
struct CostTable {
  std::array<std::uint64_t, kOpCount> weight{1, 1, 1, 4, 8, 1, 24};

  std::uint64_t of(Op op) const { return weight[static_cast<std::size_t>(op)]; }
};

// Append-only log of (opcode, operand-shape) events. The digest and cycle
// count are functions of that sequence alone; operand values never enter.
// Equal digests across value-distinct inputs witness a fixed execution trace.
class TraceRecorder {
 public:
  static constexpr std::uint64_t kInitialDigest = 0x70616373'76310000ULL;

  TraceRecorder() = default;
  explicit TraceRecorder(CostTable costs) : costs_(costs) {}

  void record(Op op) { record_shaped(op, 1, 1); }

  void record_shaped(Op op, std::uint32_t rows, std::uint32_t cols) {
    const std::uint64_t key = (static_cast<std::uint64_t>(op) << 56) ^
                              (static_cast<std::uint64_t>(rows) << 28) ^
                              static_cast<std::uint64_t>(cols);
    digest_ = mix(digest_ ^ key);
    cycles_ += costs_.of(op) * rows * cols;
    ++ops_;
  }

  std::uint64_t digest() const { return digest_; }
  std::uint64_t cycles() const { return cycles_; }
  std::uint64_t op_count() const { return ops_; }
  const CostTable& costs() const { return costs_; }

 private:
  // splitmix64 finalizer; chains the running digest with each event key.
  static std::uint64_t mix(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  CostTable costs_{};
  std::uint64_t digest_ = kInitialDigest;
  std::uint64_t cycles_ = 0;
  std::uint64_t ops_ = 0;
};

}  // namespace paczk
