#include "paczk/query.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <limits>
#include <set>

#include "paczk/errors.hpp"

namespace paczk {

std::optional<std::size_t> AttributeSchema::index_of(std::string_view name) const {
  for (std::size_t i = 0; i < attrs.size(); ++i)
    if (attrs[i].name == name) return i;
  return std::nullopt;
}

void AttributeSchema::validate() const {
  std::set<std::string> seen;
  for (const auto& a : attrs) {
    if (!seen.insert(a.name).second) throw SchemaMismatch("duplicate attribute " + a.name);
    if (a.span_min > a.span_max) throw SchemaMismatch("span inverted for " + a.name);
  }
}

Filter Filter::gt(std::size_t attr, double v) {
  Filter f;
  f.kind = Kind::kGt;
  f.attr = attr;
  f.value = v;
  return f;
}

Filter Filter::eq(std::size_t attr, double v) {
  Filter f;
  f.kind = Kind::kEq;
  f.attr = attr;
  f.value = v;
  return f;
}

Filter Filter::negate(Filter inner) {
  Filter f;
  f.kind = Kind::kNot;
  f.lhs = std::make_unique<Filter>(std::move(inner));
  return f;
}

Filter Filter::conj(Filter a, Filter b) {
  Filter f;
  f.kind = Kind::kAnd;
  f.lhs = std::make_unique<Filter>(std::move(a));
  f.rhs = std::make_unique<Filter>(std::move(b));
  return f;
}

Filter Filter::clone() const {
  Filter f;
  f.kind = kind;
  f.attr = attr;
  f.value = value;
  if (lhs) f.lhs = std::make_unique<Filter>(lhs->clone());
  if (rhs) f.rhs = std::make_unique<Filter>(rhs->clone());
  return f;
}

bool Filter::operator==(const Filter& o) const {
  if (kind != o.kind || attr != o.attr || value != o.value) return false;
  if (static_cast<bool>(lhs) != static_cast<bool>(o.lhs)) return false;
  if (static_cast<bool>(rhs) != static_cast<bool>(o.rhs)) return false;
  if (lhs && !(*lhs == *o.lhs)) return false;
  if (rhs && !(*rhs == *o.rhs)) return false;
  return true;
}

std::string_view stat_fn_name(StatFn fn) {
  switch (fn) {
    case StatFn::kAverage:
      return "average";
    case StatFn::kMedian:
      return "median";
  }
  return "?";
}

std::optional<StatFn> stat_fn_from_name(std::string_view name) {
  if (name == "average") return StatFn::kAverage;
  if (name == "median") return StatFn::kMedian;
  return std::nullopt;
}

void Formula::validate() const {
  if (bounds.size() % 2 != 0) throw DataError("Formula: odd bounds length");
  for (std::size_t k = 0; k < attr_count(); ++k)
    if (lo(k) > hi(k)) throw DataError("Formula: inverted bounds at attribute " + std::to_string(k));
}

// ---------------------------------------------------------------------------
// Parser
// ---------------------------------------------------------------------------

namespace {

struct Token {
  enum class Kind { kIdent, kNumber, kGt, kEq, kEnd };
  Kind kind = Kind::kEnd;
  std::string text;
  double number = 0.0;
  std::size_t pos = 0;
};

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) { advance(); }

  const Token& peek() const { return tok_; }

  Token take() {
    Token t = std::move(tok_);
    advance();
    return t;
  }

 private:
  void advance() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    tok_ = Token{};
    tok_.pos = pos_;
    if (pos_ >= text_.size()) {
      tok_.kind = Token::Kind::kEnd;
      return;
    }
    const char c = text_[pos_];
    if (c == '>') {
      tok_.kind = Token::Kind::kGt;
      ++pos_;
      return;
    }
    if (c == '=') {
      tok_.kind = Token::Kind::kEq;
      ++pos_;
      return;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t end = pos_;
      while (end < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[end])) || text_[end] == '_'))
        ++end;
      tok_.kind = Token::Kind::kIdent;
      tok_.text = std::string(text_.substr(pos_, end - pos_));
      pos_ = end;
      return;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '-' || c == '.' || c == '+') {
      double value = 0.0;
      const char* begin = text_.data() + pos_;
      const char* end = text_.data() + text_.size();
      auto [ptr, ec] = std::from_chars(begin, end, value);
      if (ec != std::errc{} || ptr == begin) throw SyntaxError(pos_, "malformed number");
      tok_.kind = Token::Kind::kNumber;
      tok_.number = value;
      tok_.text = std::string(begin, ptr);
      pos_ = static_cast<std::size_t>(ptr - text_.data());
      return;
    }
    throw SyntaxError(pos_, std::string("unexpected character '") + c + "'");
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  Token tok_;
};

class Parser {
 public:
  Parser(std::string_view text, const AttributeSchema& schema) : lex_(text), schema_(schema) {}

  Query parse() {
    Query q;
    const Token fn = expect_ident("function name");
    const auto f = stat_fn_from_name(fn.text);
    if (!f) throw UnknownFunction(fn.text);
    q.function = *f;
    expect_keyword("of");
    q.attribute = expect_attribute();
    expect_keyword("with");
    q.filter = parse_conjunction();
    const Token end = lex_.take();
    if (end.kind != Token::Kind::kEnd)
      throw SyntaxError(end.pos, "trailing input after filter");
    return q;
  }

 private:
  Filter parse_conjunction() {
    Filter acc = parse_unary();
    while (lex_.peek().kind == Token::Kind::kIdent && lex_.peek().text == "AND") {
      lex_.take();
      acc = Filter::conj(std::move(acc), parse_unary());
    }
    return acc;
  }

  Filter parse_unary() {
    if (lex_.peek().kind == Token::Kind::kIdent && lex_.peek().text == "NOT") {
      lex_.take();
      return Filter::negate(parse_unary());
    }
    return parse_atom();
  }

  Filter parse_atom() {
    const Token t = lex_.take();
    if (t.kind != Token::Kind::kIdent)
      throw SyntaxError(t.pos, "expected attribute, 'true' or NOT");
    if (t.text == "true") return Filter::empty();
    const auto idx = schema_.index_of(t.text);
    if (!idx) throw UnknownAttribute(t.text);
    const Token op = lex_.take();
    const bool is_gt = op.kind == Token::Kind::kGt;
    if (!is_gt && op.kind != Token::Kind::kEq)
      throw SyntaxError(op.pos, "expected '>' or '=' after attribute");
    const Token num = lex_.take();
    if (num.kind != Token::Kind::kNumber) throw SyntaxError(num.pos, "expected numeric constant");
    if (!std::isfinite(num.number)) throw SyntaxError(num.pos, "constant out of range");
    return is_gt ? Filter::gt(*idx, num.number) : Filter::eq(*idx, num.number);
  }

  Token expect_ident(const char* what) {
    const Token t = lex_.take();
    if (t.kind != Token::Kind::kIdent)
      throw SyntaxError(t.pos, std::string("expected ") + what);
    return t;
  }

  void expect_keyword(const char* kw) {
    const Token t = lex_.take();
    if (t.kind != Token::Kind::kIdent || t.text != kw)
      throw SyntaxError(t.pos, std::string("expected '") + kw + "'");
  }

  std::size_t expect_attribute() {
    const Token t = expect_ident("attribute name");
    const auto idx = schema_.index_of(t.text);
    if (!idx) throw UnknownAttribute(t.text);
    return *idx;
  }

  Lexer lex_;
  const AttributeSchema& schema_;
};

std::string number_to_string(double v) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

}  // namespace

Query parse_query(std::string_view text, const AttributeSchema& schema) {
  if (text.empty()) throw SyntaxError(0, "empty query");
  return Parser(text, schema).parse();
}

std::string print_filter(const Filter& f, const AttributeSchema& schema) {
  switch (f.kind) {
    case Filter::Kind::kEmpty:
      return "true";
    case Filter::Kind::kGt:
      return schema.attrs[f.attr].name + ">" + number_to_string(f.value);
    case Filter::Kind::kEq:
      return schema.attrs[f.attr].name + "=" + number_to_string(f.value);
    case Filter::Kind::kNot:
      return "NOT " + print_filter(*f.lhs, schema);
    case Filter::Kind::kAnd:
      return print_filter(*f.lhs, schema) + " AND " + print_filter(*f.rhs, schema);
  }
  return {};
}

std::string print_query(const Query& q, const AttributeSchema& schema) {
  return std::string(stat_fn_name(q.function)) + " of " + schema.attrs[q.attribute].name +
         " with " + print_filter(q.filter, schema);
}

// ---------------------------------------------------------------------------
// Compilation to the interval box
// ---------------------------------------------------------------------------

namespace {

// One conjunct: tighten [lo, hi) for the filter's attribute.
void apply_constraint(const Filter& f, bool negated, const AttributeSchema& schema,
                      std::vector<double>& lo, std::vector<double>& hi) {
  const auto& attr = schema.attrs[f.attr];
  const bool integer = attr.kind == AttrKind::kInteger;
  if (f.kind == Filter::Kind::kGt) {
    // v > x  <=>  v >= successor(x);  NOT (v > x)  <=>  v < successor(x).
    const double succ = integer ? std::floor(f.value) + 1.0
                                : std::nextafter(f.value, std::numeric_limits<double>::infinity());
    if (!negated)
      lo[f.attr] = std::max(lo[f.attr], succ);
    else
      hi[f.attr] = std::min(hi[f.attr], succ);
    return;
  }
  if (f.kind == Filter::Kind::kEq) {
    if (negated) throw NotBoxReducible("NOT over '=' yields a union, not a box");
    if (!integer) throw NotBoxReducible("'=' over a real attribute has no interval encoding");
    if (f.value == std::floor(f.value)) {
      lo[f.attr] = std::max(lo[f.attr], f.value);
      hi[f.attr] = std::min(hi[f.attr], f.value + 1.0);
    } else {
      hi[f.attr] = lo[f.attr];  // integer attribute can never equal a fraction
    }
    return;
  }
  throw NotBoxReducible("NOT is only allowed directly above an atomic comparison");
}

void collect(const Filter& f, const AttributeSchema& schema, std::vector<double>& lo,
             std::vector<double>& hi) {
  switch (f.kind) {
    case Filter::Kind::kEmpty:
      return;
    case Filter::Kind::kGt:
    case Filter::Kind::kEq:
      apply_constraint(f, false, schema, lo, hi);
      return;
    case Filter::Kind::kNot:
      apply_constraint(*f.lhs, true, schema, lo, hi);
      return;
    case Filter::Kind::kAnd:
      collect(*f.lhs, schema, lo, hi);
      collect(*f.rhs, schema, lo, hi);
      return;
  }
}

}  // namespace

Formula compile_to_formula(const Filter& f, const AttributeSchema& schema) {
  const std::size_t k = schema.size();
  std::vector<double> lo(k), hi(k);
  for (std::size_t i = 0; i < k; ++i) {
    lo[i] = schema.attrs[i].span_min;
    hi[i] = schema.attrs[i].span_max + 1.0;
  }
  collect(f, schema, lo, hi);
  Formula out;
  out.bounds.resize(2 * k);
  for (std::size_t i = 0; i < k; ++i) {
    if (lo[i] > hi[i]) hi[i] = lo[i];  // empty intersection: keep lo <= hi
    out.bounds[2 * i] = lo[i];
    out.bounds[2 * i + 1] = hi[i];
  }
  return out;
}

double eval_formula(const Formula& f, std::span<const double> row, Circuit& c) {
  if (row.size() != f.attr_count()) throw DimensionMismatch("eval_formula row width");
  double acc = 1.0;
  for (std::size_t k = 0; k < f.attr_count(); ++k) {
    const double ge = c.ind_ge(row[k], f.lo(k));
    const double lt = c.ind_lt(row[k], f.hi(k));
    acc = c.mul(acc, c.mul(ge, lt));
  }
  return acc;
}

bool eval_filter(const Filter& f, std::span<const double> row) {
  switch (f.kind) {
    case Filter::Kind::kEmpty:
      return true;
    case Filter::Kind::kGt:
      return row[f.attr] > f.value;
    case Filter::Kind::kEq:
      return row[f.attr] == f.value;
    case Filter::Kind::kNot:
      return !eval_filter(*f.lhs, row);
    case Filter::Kind::kAnd:
      return eval_filter(*f.lhs, row) && eval_filter(*f.rhs, row);
  }
  return false;
}

Formula random_formula(const AttributeSchema& schema, SeededRng& rng) {
  Formula out;
  out.bounds.resize(2 * schema.size());
  for (std::size_t k = 0; k < schema.size(); ++k) {
    const auto& a = schema.attrs[k];
    if (!std::isfinite(a.span_min) || !std::isfinite(a.span_max))
      throw ConfigError("random_formula requires finite spans");
    const auto lo_span = static_cast<std::int64_t>(std::ceil(a.span_min));
    const auto hi_span = static_cast<std::int64_t>(std::floor(a.span_max));
    double a0 = static_cast<double>(rng.uniform_int(lo_span, hi_span));
    double a1 = static_cast<double>(rng.uniform_int(lo_span, hi_span));
    if (a0 > a1) std::swap(a0, a1);
    out.bounds[2 * k] = a0;
    out.bounds[2 * k + 1] = a1;
  }
  return out;
}

}  // namespace paczk
