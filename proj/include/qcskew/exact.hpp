#pragma once

#include <boost/multiprecision/cpp_int.hpp>

namespace qcskew {

using Rational = boost::multiprecision::cpp_rational;

/// Directed rational enclosure lo < sqrt(3) < hi.
Rational sqrt3_lower();
Rational sqrt3_upper();

/// Exact element a + b sqrt(3) of Q(sqrt(3)).
class Sqrt3Number {
 public:
  Sqrt3Number() = default;
  Sqrt3Number(Rational a, Rational b = 0) : a_(std::move(a)), b_(std::move(b)) {}
  static Sqrt3Number sqrt3() { return {0, 1}; }

  [[nodiscard]] const Rational& rational_part() const { return a_; }
  [[nodiscard]] const Rational& sqrt3_part() const { return b_; }

  /// Bounds from the rational enclosure of sqrt(3).
  [[nodiscard]] Rational lower() const;
  [[nodiscard]] Rational upper() const;
  /// Sign decided exactly (sqrt(3) is irrational, so a + b sqrt(3) = 0 iff a = b = 0).
  [[nodiscard]] int sign() const;
  [[nodiscard]] double approx() const;

  friend Sqrt3Number operator+(const Sqrt3Number& x, const Sqrt3Number& y) { return {x.a_ + y.a_, x.b_ + y.b_}; }
  friend Sqrt3Number operator-(const Sqrt3Number& x, const Sqrt3Number& y) { return {x.a_ - y.a_, x.b_ - y.b_}; }
  friend Sqrt3Number operator*(const Sqrt3Number& x, const Sqrt3Number& y) {
    return {x.a_ * y.a_ + 3 * x.b_ * y.b_, x.a_ * y.b_ + x.b_ * y.a_};
  }
  friend Sqrt3Number operator/(const Sqrt3Number& x, const Rational& d) { return {x.a_ / d, x.b_ / d}; }
  friend bool operator==(const Sqrt3Number& x, const Sqrt3Number& y) { return x.a_ == y.a_ && x.b_ == y.b_; }

 private:
  Rational a_ = 0;
  Rational b_ = 0;
};

double to_double(const Rational& q);

}  // namespace qcskew
