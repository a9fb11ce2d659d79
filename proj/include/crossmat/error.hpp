#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace crossmat {

enum class ErrorKind {
  DimensionMismatch,
  CenterConflict,
  NotSquare,
  NotCross,
  IndexOutOfRange,
  MalformedForm,
  Singular,
  ZeroPivot,
  NotHermitian,
  NotPositiveDefinite,
  NotDiagonalizable,
  ComplexEigenvalues,
  DomainError,
  DerivativeRequired,
  ParseError,
  ConvergenceFailure,
};

constexpr std::string_view to_string(ErrorKind k) {
  switch (k) {
    case ErrorKind::DimensionMismatch: return "dimension mismatch";
    case ErrorKind::CenterConflict: return "center conflict";
    case ErrorKind::NotSquare: return "not square";
    case ErrorKind::NotCross: return "not cross";
    case ErrorKind::IndexOutOfRange: return "index out of range";
    case ErrorKind::MalformedForm: return "malformed form";
    case ErrorKind::Singular: return "singular";
    case ErrorKind::ZeroPivot: return "zero pivot";
    case ErrorKind::NotHermitian: return "not hermitian";
    case ErrorKind::NotPositiveDefinite: return "not positive definite";
    case ErrorKind::NotDiagonalizable: return "not diagonalizable";
    case ErrorKind::ComplexEigenvalues: return "complex eigenvalues";
    case ErrorKind::DomainError: return "domain error";
    case ErrorKind::DerivativeRequired: return "derivative required";
    case ErrorKind::ParseError: return "parse error";
    case ErrorKind::ConvergenceFailure: return "convergence failure";
  }
  return "unknown";
}

/// Library error. `pair()` carries the 1-based pair index i of the pair
/// (i, n+1-i) responsible for the failure, when one exists. For an odd
/// order n = 2k+1 the center is reported as pair k+1, i.e. (k+1, k+1).
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what,
        std::optional<std::size_t> pair = std::nullopt)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what),
        kind_(kind),
        pair_(pair) {}

  ErrorKind kind() const noexcept { return kind_; }
  std::optional<std::size_t> pair() const noexcept { return pair_; }

 private:
  ErrorKind kind_;
  std::optional<std::size_t> pair_;
};

/// Parse failure with a 1-based source position.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& what)
      : Error(ErrorKind::ParseError,
              "line " + std::to_string(line) + ", column " +
                  std::to_string(column) + ": " + what),
        line_(line),
        column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

}  // namespace crossmat
