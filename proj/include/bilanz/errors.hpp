#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace bilanz {

/// Base class for all errors raised by this library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input (CSV, JSON, XML). Carries a 1-based line number when known.
class ParseError : public Error {
 public:
  explicit ParseError(const std::string& msg, std::size_t line = 0)
      : Error(line ? msg + " (line " + std::to_string(line) + ")" : msg), line_(line) {}

  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// Invalid configuration: bad thresholds, k > n, empty corpus, unusable paths.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Ontology construction or lookup failure (duplicate id, dangling reference,
/// facet violation, unknown class).
class OntologyError : public Error {
 public:
  using Error::Error;
};

/// Ratio computation failure. `field` names the ratio or missing input.
class RatioError : public Error {
 public:
  enum class Reason { DivisionDomain, MissingInput };

  RatioError(Reason reason, std::string field, const std::string& msg)
      : Error(msg), reason_(reason), field_(std::move(field)) {}

  Reason reason() const { return reason_; }
  const std::string& field() const { return field_; }

 private:
  Reason reason_;
  std::string field_;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace bilanz
