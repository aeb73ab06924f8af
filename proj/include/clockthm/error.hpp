#ifndef CLOCKTHM_ERROR_HPP
#define CLOCKTHM_ERROR_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace clockthm {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed KDF text; line and column are 1-based.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& what)
      : Error("line " + std::to_string(line) + ", col " + std::to_string(column) + ": " + what),
        line_(line),
        column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

enum class ValidationKind {
  arc_multiplicity,
  arc_numbering,
  orientation,
  non_spherical,
  disconnected,
  unresolvable_star,
};

inline const char* to_string(ValidationKind kind) {
  switch (kind) {
    case ValidationKind::arc_multiplicity: return "arc-multiplicity";
    case ValidationKind::arc_numbering: return "arc-numbering";
    case ValidationKind::orientation: return "orientation";
    case ValidationKind::non_spherical: return "non-spherical";
    case ValidationKind::disconnected: return "disconnected";
    case ValidationKind::unresolvable_star: return "unresolvable-star";
  }
  return "unknown";
}

/// Structurally well-formed input that is not a valid starred 1-linkoid diagram.
class ValidationError : public Error {
 public:
  ValidationError(ValidationKind kind, const std::string& what)
      : Error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ValidationKind kind() const noexcept { return kind_; }

 private:
  ValidationKind kind_;
};

/// A computed object contradicts a property the theory guarantees (e.g. a
/// clock state whose smoothing is not a trail). Never expected on valid input.
class TheoryDiscrepancy : public Error {
 public:
  using Error::Error;
};

class CapExceeded : public Error {
 public:
  CapExceeded(std::size_t cap, const std::string& what)
      : Error(what + " (cap " + std::to_string(cap) + ")"), cap_(cap) {}

  std::size_t cap() const noexcept { return cap_; }

 private:
  std::size_t cap_;
};

/// Caller supplied an argument outside the operation's domain.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

}  // namespace clockthm

#endif  // CLOCKTHM_ERROR_HPP
