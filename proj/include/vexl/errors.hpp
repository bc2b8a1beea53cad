#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace vexl {

/// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Two objects that must live on the same grid do not.
class GridMismatchError : public Error {
 public:
  explicit GridMismatchError(const std::string& what) : Error(what) {}
};

/// Invalid construction argument or violated precondition on plain inputs.
class ValidationError : public Error {
 public:
  explicit ValidationError(const std::string& what) : Error(what) {}
};

/// A cell power overflowed to a non-finite value. Carries the offending cell.
class OverflowError : public Error {
 public:
  OverflowError(const std::string& what, std::size_t cell)
      : Error(what), cell_(cell) {}
  std::size_t cell() const { return cell_; }

 private:
  std::size_t cell_;
};

/// Root bracketing or bisection exhausted its iteration caps.
class NonConvergenceError : public Error {
 public:
  explicit NonConvergenceError(const std::string& what) : Error(what) {}
};

/// A probe was invoked on inputs that violate its stated premise.
/// Carries the measured modular so callers can report how far off it was.
class PremiseError : public Error {
 public:
  PremiseError(const std::string& what, double measured)
      : Error(what), measured_(measured) {}
  double measured() const { return measured_; }

 private:
  double measured_;
};

/// Instance file could not be parsed.
class ParseError : public Error {
 public:
  explicit ParseError(const std::string& what) : Error(what) {}
};

}  // namespace vexl
