#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <string_view>

namespace lentropy {

/// Exact rational number. Always kept in canonical (reduced) form.
using Rational = mpq_class;

/// Raised when an input violates a documented precondition or schema.
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when an exact computation would exceed its configured budget.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when an argument is outside the mathematical domain of an operation.
class DomainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Parses "p/q" or "p" into a canonical rational. Throws ValidationError.
Rational parse_rational(std::string_view text);

/// Canonical "p/q" rendering; the denominator is always written, even when 1.
std::string format_rational(const Rational& value);

Rational make_rational(long num, long den);

inline Rational abs_diff(const Rational& a, const Rational& b) {
  Rational d = a - b;
  return d < 0 ? Rational(-d) : d;
}

inline double to_double(const Rational& value) { return value.get_d(); }

}  // namespace lentropy
