#pragma once

#include "valnag/rational.hpp"

#include <cmath>
#include <compare>
#include <ostream>
#include <string>

namespace valnag {

/// Exact value a + b*sqrt(n) with rational a, b and square-free n.
///
/// Rationals are surds with b = 0 and n = 0. Arithmetic is closed inside a
/// single ring Q(sqrt n); combining two genuinely irrational values with
/// different radicands throws InvalidInput.
class Surd {
 public:
  Surd() = default;
  Surd(const Rational& a) : a_(a) {}  // NOLINT(google-explicit-constructor)
  Surd(const Integer& a) : a_(a) {}   // NOLINT(google-explicit-constructor)
  Surd(int a) : a_(a) {}              // NOLINT(google-explicit-constructor)
  Surd(Rational a, Rational b, Integer n) : a_(std::move(a)), b_(std::move(b)), n_(std::move(n)) {
    if (n_ < 0) throw InvalidInput("surd radicand must be non-negative");
    if (n_ > 1 && b_ != 0) {
      auto [s, free_part] = square_free_decompose(n_);
      b_ *= s;
      n_ = free_part;
    }
    canonicalize();
  }

  /// sqrt(q) for q >= 0, written as (s/d)*sqrt(n) with n square-free.
  static Surd sqrt_of(const Rational& q) {
    if (q < 0) throw InvalidInput("square root of a negative rational");
    if (q == 0) return Surd();
    auto [s, n] = square_free_decompose(numer(q) * denom(q));
    return raw(Rational(0), Rational(s, denom(q)), n);
  }

  const Rational& a() const { return a_; }
  const Rational& b() const { return b_; }
  const Integer& n() const { return n_; }
  bool is_rational() const { return b_ == 0; }

  /// Precondition: is_rational().
  const Rational& rational() const {
    if (!is_rational()) throw InvalidInput("irrational value where a rational was required");
    return a_;
  }

  int sign() const {
    int sa = valnag::sign(a_), sb = valnag::sign(b_);
    if (sb == 0) return sa;
    if (sa == 0 || sa == sb) return sb;
    Rational lhs = a_ * a_, rhs = b_ * b_ * Rational(n_);
    if (lhs > rhs) return sa;
    if (lhs < rhs) return sb;
    return 0;
  }

  Surd operator-() const { return raw(-a_, -b_, n_); }

  friend Surd operator+(const Surd& x, const Surd& y) {
    Integer n = common_radicand(x, y);
    return raw(x.a_ + y.a_, x.b_ + y.b_, n);
  }
  friend Surd operator-(const Surd& x, const Surd& y) { return x + (-y); }
  friend Surd operator*(const Surd& x, const Surd& y) {
    Integer n = common_radicand(x, y);
    Rational rn(n);
    return raw(x.a_ * y.a_ + x.b_ * y.b_ * rn, x.a_ * y.b_ + x.b_ * y.a_, n);
  }
  friend Surd operator/(const Surd& x, const Surd& y) {
    if (y.sign() == 0) throw InvalidInput("division by zero");
    Integer n = common_radicand(x, y);
    // multiply by the conjugate of y
    Rational norm = y.a_ * y.a_ - y.b_ * y.b_ * Rational(n);
    Surd num = x * raw(y.a_, -y.b_, n);
    return raw(num.a_ / norm, num.b_ / norm, num.n_);
  }
  Surd& operator+=(const Surd& y) { return *this = *this + y; }
  Surd& operator-=(const Surd& y) { return *this = *this - y; }
  Surd& operator*=(const Surd& y) { return *this = *this * y; }
  Surd& operator/=(const Surd& y) { return *this = *this / y; }

  friend bool operator==(const Surd& x, const Surd& y) {
    return x.a_ == y.a_ && x.b_ == y.b_ && x.n_ == y.n_;
  }
  friend std::strong_ordering operator<=>(const Surd& x, const Surd& y) {
    int s = (x - y).sign();
    return s < 0 ? std::strong_ordering::less
                 : (s > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  /// Floating approximation. Only for rendering; never used in a decision.
  double approx() const {
    return a_.convert_to<double>() + b_.convert_to<double>() * std::sqrt(n_.convert_to<double>());
  }

  /// A rational strictly between `lower` and this value. Precondition lower < *this.
  Rational rational_below(const Rational& lower) const {
    if (!(Surd(lower) < *this)) throw InvalidInput("rational_below: empty interval");
    if (is_rational()) return (lower + a_) / 2;
    // enclose sqrt(n) in [s/2^k, (s+1)/2^k] until the lower end of the value clears `lower`
    for (unsigned k = 4;; k += 4) {
      Integer scale = Integer(1) << k;
      Integer s = isqrt(n_ * scale * scale);
      Rational root_lo(s, scale), root_hi(s + 1, scale);
      Rational value_lo = a_ + b_ * (b_ > 0 ? root_lo : root_hi);
      if (value_lo > lower) return value_lo;
    }
  }

  std::string str() const {
    if (is_rational()) return to_string(a_);
    std::string out;
    if (a_ != 0) out = to_string(a_) + (b_ > 0 ? " + " : " - ");
    else if (b_ < 0) out = "-";
    Rational mag = b_ < 0 ? Rational(-b_) : b_;
    if (mag != 1) out += to_string(mag) + "*";
    return out + "sqrt(" + n_.str() + ")";
  }

 private:
  static Surd raw(Rational a, Rational b, Integer n) {
    Surd out;
    out.a_ = std::move(a);
    out.b_ = std::move(b);
    out.n_ = std::move(n);
    out.canonicalize();
    return out;
  }

  static Integer common_radicand(const Surd& x, const Surd& y) {
    if (x.n_ == 0) return y.n_;
    if (y.n_ == 0 || x.n_ == y.n_) return x.n_;
    throw InvalidInput("mixed radicals sqrt(" + x.n_.str() + ") and sqrt(" + y.n_.str() +
                       ") in one computation");
  }

  void canonicalize() {
    if (n_ == 1) {
      a_ += b_;
      b_ = 0;
    }
    if (b_ == 0 || n_ == 0) {
      b_ = 0;
      n_ = 0;
    }
  }

  Rational a_{0};
  Rational b_{0};
  Integer n_{0};
};

inline std::ostream& operator<<(std::ostream& os, const Surd& s) { return os << s.str(); }

inline Surd min(const Surd& x, const Surd& y) { return y < x ? y : x; }
inline Surd max(const Surd& x, const Surd& y) { return x < y ? y : x; }

}  // namespace valnag
