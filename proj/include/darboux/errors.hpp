#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace darboux {

enum class ErrorKind {
  lexical,
  syntax,
  domain,
  degenerate_parametrization,
  validation,
  zero_speed,
  undefined_frame,
  curvature_vanishes,
  hypothesis_violation,
  vanishing_field,
  non_finite,
  case_ambiguity,
  divisor_too_small,
  regularity_violation,
  missing_constant,
  config,
};

const char* to_string(ErrorKind kind) noexcept;

// Single exception type for the kernel; `kind` drives CLI exit codes.
class Error : public std::runtime_error {
public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

private:
  ErrorKind kind_;
};

// Lexical and syntax errors carry the offending character offset.
class ParseError : public Error {
public:
  ParseError(ErrorKind kind, std::size_t position, const std::string& what)
      : Error(kind, what + " at position " + std::to_string(position)), position_(position) {}

  std::size_t position() const noexcept { return position_; }

private:
  std::size_t position_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

}  // namespace darboux
