#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace polydots {

enum class ErrorCode {
  usage,
  no_real_shape,
  degenerate_coupling,
  degenerate_well,
  no_minimum,
  split_bracket,
  budget_exceeded,
};

std::string_view to_string(ErrorCode code);

/// Base of every error raised by the library. The code lets callers
/// (scan workers, the CLI) record a failure without catching by type.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

class UsageError : public Error {
 public:
  explicit UsageError(const std::string& what) : Error(ErrorCode::usage, what) {}
};

/// Raised when a² < c on an axis: the on-axis stationary points are complex.
class NoRealShape : public Error {
 public:
  NoRealShape(int axis, const std::string& what)
      : Error(ErrorCode::no_real_shape, what), axis_(axis) {}
  int axis() const noexcept { return axis_; }

 private:
  int axis_;
};

/// A linear solve in the off-axis enumeration is singular (e.g. u = 2a).
class DegenerateCoupling : public Error {
 public:
  DegenerateCoupling(std::string minor, const std::string& what)
      : Error(ErrorCode::degenerate_coupling, what), minor_(std::move(minor)) {}
  const std::string& minor() const noexcept { return minor_; }

 private:
  std::string minor_;
};

class DegenerateWell : public Error {
 public:
  explicit DegenerateWell(const std::string& what)
      : Error(ErrorCode::degenerate_well, what) {}
};

class NoMinimum : public Error {
 public:
  explicit NoMinimum(const std::string& what) : Error(ErrorCode::no_minimum, what) {}
};

class SplitBracket : public Error {
 public:
  explicit SplitBracket(const std::string& what)
      : Error(ErrorCode::split_bracket, what) {}
};

class BudgetExceeded : public Error {
 public:
  BudgetExceeded(std::size_t required, std::size_t budget, const std::string& what)
      : Error(ErrorCode::budget_exceeded, what), required_(required), budget_(budget) {}
  std::size_t required() const noexcept { return required_; }
  std::size_t budget() const noexcept { return budget_; }

 private:
  std::size_t required_;
  std::size_t budget_;
};

}  // namespace polydots
