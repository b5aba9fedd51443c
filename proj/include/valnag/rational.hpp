#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace valnag {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Raised for malformed user data: bad proximity declarations, dimension
/// mismatches, classes that are not pseudoeffective over the catalog.
class InvalidInput : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when a computed result violates an invariant the library promises.
/// This is a bug, not a user error.
class InternalInconsistency : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

inline Integer numer(const Rational& q) { return boost::multiprecision::numerator(q); }
inline Integer denom(const Rational& q) { return boost::multiprecision::denominator(q); }

inline int sign(const Rational& q) { return q < 0 ? -1 : (q > 0 ? 1 : 0); }
inline int sign(const Integer& q) { return q < 0 ? -1 : (q > 0 ? 1 : 0); }

/// Canonical text form: "p" for integers, "p/q" otherwise (q > 0).
inline std::string to_string(const Rational& q) {
  if (denom(q) == 1) return numer(q).str();
  return numer(q).str() + "/" + denom(q).str();
}

inline std::string to_string(const Integer& z) { return z.str(); }

inline Integer floor(const Rational& q) {
  Integer n = numer(q), d = denom(q);
  Integer f = n / d;  // truncates toward zero
  if (n < 0 && f * d != n) f -= 1;
  return f;
}

inline Integer ceil(const Rational& q) { return -floor(-q); }

/// Parses "[-]digits[/digits]". Returns nullopt on anything else, including a
/// zero denominator.
inline std::optional<Rational> parse_rational(std::string_view text) {
  if (text.empty()) return std::nullopt;
  bool negative = false;
  std::size_t pos = 0;
  if (text[0] == '-' || text[0] == '+') {
    negative = text[0] == '-';
    pos = 1;
  }
  auto digits = [&](std::size_t from, std::size_t to) {
    if (from >= to) return false;
    for (std::size_t k = from; k < to; ++k)
      if (text[k] < '0' || text[k] > '9') return false;
    return true;
  };
  std::size_t slash = text.find('/', pos);
  std::size_t num_end = slash == std::string_view::npos ? text.size() : slash;
  if (!digits(pos, num_end)) return std::nullopt;
  Integer n(std::string(text.substr(pos, num_end - pos)));
  Integer d = 1;
  if (slash != std::string_view::npos) {
    if (!digits(slash + 1, text.size())) return std::nullopt;
    d = Integer(std::string(text.substr(slash + 1)));
    if (d == 0) return std::nullopt;
  }
  Rational q(n, d);
  return negative ? Rational(-q) : q;
}

/// Integer square root, floor(sqrt(n)) for n >= 0.
inline Integer isqrt(const Integer& n) {
  if (n < 0) throw InvalidInput("square root of a negative integer");
  return boost::multiprecision::sqrt(n);
}

inline bool is_perfect_square(const Integer& n) {
  if (n < 0) return false;
  Integer s = isqrt(n);
  return s * s == n;
}

/// Writes m = s^2 * n with n square-free (m > 0). Trial division handles every
/// prime up to 10^6; a cofactor above that is only tested for being a perfect
/// square, so for astronomically large inputs n may keep a square factor. All
/// arithmetic stays exact either way because one ring Q(sqrt n) is used per
/// computation.
inline std::pair<Integer, Integer> square_free_decompose(Integer m) {
  if (m <= 0) throw InvalidInput("square_free_decompose expects a positive integer");
  Integer square = 1, free_part = 1;
  for (std::uint64_t p = 2; p <= 1000000; p += (p == 2 ? 1 : 2)) {
    Integer pp = Integer(p) * p;
    if (pp > m) break;
    while (m % pp == 0) {
      m /= pp;
      square *= p;
    }
    if (m % p == 0) {
      m /= p;
      free_part *= p;
    }
  }
  if (m > 1) {
    if (is_perfect_square(m)) {
      square *= isqrt(m);
    } else {
      free_part *= m;
    }
  }
  return {square, free_part};
}

inline Integer gcd(const Integer& a, const Integer& b) {
  return boost::multiprecision::gcd(a, b);
}

}  // namespace valnag
