#pragma once

#include <cmath>
#include <span>

#include "paczk/errors.hpp"
#include "paczk/trace.hpp"

namespace paczk {

// Traced arithmetic facade. Circuit-side code performs every data-dependent
// float operation through one of these methods so that the recorder sees the
// full (opcode, shape) sequence. Control flow in circuit-side code may depend
// on public shapes and configuration, never on data values; data-dependent
// choices go through ind_* and select.
class Circuit {
 public:
  Circuit() = default;
  explicit Circuit(CostTable costs) : rec_(costs) {}

  double add(double a, double b) {
    rec_.record(Op::kAdd);
    return a + b;
  }
  double sub(double a, double b) {
    rec_.record(Op::kSub);
    return a - b;
  }
  double mul(double a, double b) {
    rec_.record(Op::kMul);
    return a * b;
  }
  double div(double a, double b) {
    rec_.record(Op::kDiv);
    return a / b;
  }
  double sqrt(double a) {
    rec_.record(Op::kSqrt);
    return std::sqrt(a);
  }

  // 1.0 if a >= b, else 0.0.
  double ind_ge(double a, double b) {
    rec_.record(Op::kCmp);
    return a >= b ? 1.0 : 0.0;
  }
  // 1.0 if a < b, else 0.0.
  double ind_lt(double a, double b) {
    rec_.record(Op::kCmp);
    return a < b ? 1.0 : 0.0;
  }
  // 1.0 if a > b, else 0.0.
  double ind_gt(double a, double b) {
    rec_.record(Op::kCmp);
    return a > b ? 1.0 : 0.0;
  }
  double ind_eq(double a, double b) { return mul(ind_ge(a, b), ind_ge(b, a)); }

  // c in {0,1}: returns a when c == 1, b when c == 0. Exact for finite
  // operands because 1*x = x and x + 0 = x.
  double select(double c, double a, double b) {
    return add(mul(c, a), mul(sub(1.0, c), b));
  }

  double max2(double a, double b) { return select(ind_ge(a, b), a, b); }
  double min2(double a, double b) { return select(ind_ge(a, b), b, a); }

  // n compression-function blocks of the in-circuit hash.
  void hash_blocks(std::uint64_t n) {
    if (n > 0) rec_.record_shaped(Op::kHashPerm, static_cast<std::uint32_t>(n), 1);
  }

  std::uint64_t digest() const { return rec_.digest(); }
  std::uint64_t cycles() const { return rec_.cycles(); }
  TraceRecorder& recorder() { return rec_; }
  const TraceRecorder& recorder() const { return rec_; }

 private:
  TraceRecorder rec_{};
};

// Boundary validation: traced computations reject NaN/infinity before any
// value enters the circuit.
inline void require_finite(double x, const char* where) {
  if (!std::isfinite(x)) throw InvalidValue(where);
}

inline void require_finite(std::span<const double> xs, const char* where) {
  for (double x : xs) require_finite(x, where);
}

}  // namespace paczk
