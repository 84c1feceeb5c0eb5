#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace paczk {

// Error categories map 1:1 onto CLI exit codes:
//   ConfigError -> 2, DataError -> 3, ProtocolError -> 4, CommitmentMismatch -> 5.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

class DataError : public Error {
 public:
  using Error::Error;
};

class ProtocolError : public Error {
 public:
  using Error::Error;
};

// --- numeric core ---

class NotSymmetric : public ConfigError {
 public:
  NotSymmetric() : ConfigError("NotSymmetric: matrix is not symmetric within 1e-12 relative") {}
};

class NotPositiveDefinite : public ConfigError {
 public:
  NotPositiveDefinite() : ConfigError("NotPositiveDefinite: nonpositive pivot during factorization") {}
};

class DimensionMismatch : public ConfigError {
 public:
  explicit DimensionMismatch(const std::string& what)
      : ConfigError("DimensionMismatch: " + what) {}
};

class TooFewSamples : public ConfigError {
 public:
  explicit TooFewSamples(std::size_t m)
      : ConfigError("TooFewSamples: need at least 2 samples, got " + std::to_string(m)) {}
};

// NaN or infinity presented at a circuit boundary.
class InvalidValue : public DataError {
 public:
  explicit InvalidValue(const std::string& where)
      : DataError("InvalidValue: non-finite value in " + where) {}
};

// --- query language ---

class SyntaxError : public ConfigError {
 public:
  SyntaxError(std::size_t position, const std::string& what)
      : ConfigError("SyntaxError at position " + std::to_string(position) + ": " + what),
        position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

class UnknownAttribute : public ConfigError {
 public:
  explicit UnknownAttribute(const std::string& name)
      : ConfigError("UnknownAttribute: " + name) {}
};

class UnknownFunction : public ConfigError {
 public:
  explicit UnknownFunction(const std::string& name)
      : ConfigError("UnknownFunction: " + name) {}
};

class NotBoxReducible : public ConfigError {
 public:
  explicit NotBoxReducible(const std::string& why)
      : ConfigError("NotBoxReducible: " + why) {}
};

// --- mechanisms ---

class TooFewPoints : public ConfigError {
 public:
  TooFewPoints(std::size_t n, std::size_t k)
      : ConfigError("TooFewPoints: dataset has " + std::to_string(n) + " points, need at least " +
                    std::to_string(k)) {}
};

class DegenerateLabels : public ConfigError {
 public:
  DegenerateLabels() : ConfigError("DegenerateLabels: all points carry the same class") {}
};

class ZeroVector : public ConfigError {
 public:
  ZeroVector() : ConfigError("ZeroVector: cannot canonicalize a zero hyperplane normal") {}
};

class SchemaMismatch : public DataError {
 public:
  explicit SchemaMismatch(const std::string& what) : DataError("SchemaMismatch: " + what) {}
};

class EmptyResult : public ConfigError {
 public:
  EmptyResult() : ConfigError("EmptyResult: subsample ratio selects zero points") {}
};

// --- noise / protocol ---

class NegativeVariance : public ConfigError {
 public:
  NegativeVariance() : ConfigError("NegativeVariance: covariance diagonal entry below zero") {}
};

class MissingSigma : public DataError {
 public:
  MissingSigma() : DataError("MissingSigma: noise generation (phase 1) has not run") {}
};

class CommitmentMismatch : public ProtocolError {
 public:
  CommitmentMismatch()
      : ProtocolError("CommitmentMismatch: claimed commitment does not match stored covariance") {}
};

}  // namespace paczk
