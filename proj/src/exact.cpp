#include "qcskew/exact.hpp"

namespace qcskew {

Rational sqrt3_lower() { return Rational(17320508, 10000000); }
Rational sqrt3_upper() { return Rational(17320509, 10000000); }

Rational Sqrt3Number::lower() const { return a_ + b_ * (b_ >= 0 ? sqrt3_lower() : sqrt3_upper()); }

Rational Sqrt3Number::upper() const { return a_ + b_ * (b_ >= 0 ? sqrt3_upper() : sqrt3_lower()); }

int Sqrt3Number::sign() const {
  const int sa = a_.sign();
  const int sb = b_.sign();
  if (sb == 0) return sa;
  if (sa == 0 || sa == sb) return sb;
  // Opposite signs: compare a^2 with 3 b^2.
  const Rational lhs = a_ * a_;
  const Rational rhs = 3 * b_ * b_;
  if (lhs == rhs) return 0;
  return lhs > rhs ? sa : sb;
}

double Sqrt3Number::approx() const { return to_double(a_) + to_double(b_) * 1.7320508075688772; }

double to_double(const Rational& q) { return q.convert_to<double>(); }

}  // namespace qcskew
