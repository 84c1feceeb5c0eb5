#pragma once

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "paczk/circuit.hpp"
#include "paczk/rng.hpp"

namespace paczk {

enum class AttrKind { kInteger, kReal };

struct AttributeSchema {
  struct Attribute {
    std::string name;
    AttrKind kind = AttrKind::kInteger;
    double span_min = 0.0;
    double span_max = 0.0;  // inclusive
  };

  std::vector<Attribute> attrs;

  std::size_t size() const { return attrs.size(); }
  std::optional<std::size_t> index_of(std::string_view name) const;
  void validate() const;  // unique names, min <= max
};

// Filter AST per the recursive grammar:
//   phi ::= true | Attr > x | Attr = x | NOT phi | phi AND phi
// AND is left-associative; NOT binds tighter than AND.
struct Filter {
  enum class Kind { kEmpty, kGt, kEq, kNot, kAnd };

  Kind kind = Kind::kEmpty;
  std::size_t attr = 0;
  double value = 0.0;
  std::unique_ptr<Filter> lhs;
  std::unique_ptr<Filter> rhs;

  static Filter empty() { return {}; }
  static Filter gt(std::size_t attr, double v);
  static Filter eq(std::size_t attr, double v);
  static Filter negate(Filter f);
  static Filter conj(Filter a, Filter b);

  Filter clone() const;
  bool operator==(const Filter& other) const;
};

enum class StatFn { kAverage, kMedian };

std::string_view stat_fn_name(StatFn fn);
std::optional<StatFn> stat_fn_from_name(std::string_view name);

struct Query {
  StatFn function = StatFn::kAverage;
  std::size_t attribute = 0;
  Filter filter;

  bool operator==(const Query&) const = default;
};

// Fixed-size interval-box filter: two bounds per attribute, row accepted when
// bounds[2k] <= value < bounds[2k+1] for every attribute k.
struct Formula {
  std::vector<double> bounds;

  std::size_t attr_count() const { return bounds.size() / 2; }
  double lo(std::size_t k) const { return bounds[2 * k]; }
  double hi(std::size_t k) const { return bounds[2 * k + 1]; }
  void validate() const;  // even length, lo <= hi per attribute
  bool operator==(const Formula&) const = default;
};

// "function of Attribute with phi"; whitespace-insensitive; the empty filter
// is spelled "true".
Query parse_query(std::string_view text, const AttributeSchema& schema);

std::string print_filter(const Filter& f, const AttributeSchema& schema);
std::string print_query(const Query& q, const AttributeSchema& schema);

// Reduce a box-reducible filter to its Formula. NOT is accepted only directly
// above > (upper bound) -- NOT over =, AND, NOT or true has no box encoding.
// = over a real-kind attribute is likewise rejected. Unconstrained attributes
// span (span_min, span_max + 1).
Formula compile_to_formula(const Filter& f, const AttributeSchema& schema);

// Branch-free indicator, traced: product over attributes of the two interval
// comparisons. Returns 1.0 or 0.0.
double eval_formula(const Formula& f, std::span<const double> row, Circuit& c);

// Plain recursive AST evaluation; verifier-side oracle for compile soundness.
bool eval_filter(const Filter& f, std::span<const double> row);

// Two uniform integer draws per attribute on its span, sorted so lo <= hi.
Formula random_formula(const AttributeSchema& schema, SeededRng& rng);

}  // namespace paczk
