#include "qcskew/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "qcskew/errors.hpp"

namespace qcskew {

bool is_finite(Point2 z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

std::array<double, 3> Triangle2::side_lengths() const {
  return {std::abs(a - b), std::abs(b - c), std::abs(c - a)};
}

double Triangle2::longest_side() const {
  const auto s = side_lengths();
  return *std::max_element(s.begin(), s.end());
}

double Triangle2::shortest_side() const {
  const auto s = side_lengths();
  return *std::min_element(s.begin(), s.end());
}

bool Triangle2::is_equilateral(double rel_tol) const {
  const double lo = shortest_side();
  return lo > 0.0 && longest_side() - lo <= rel_tol * lo;
}

double skew(const Triangle2& t) {
  if (!is_finite(t.a) || !is_finite(t.b) || !is_finite(t.c)) {
    throw DomainViolation("skew: triangle has a non-finite vertex");
  }
  const auto s = t.side_lengths();
  const auto [lo, hi] = std::minmax_element(s.begin(), s.end());
  if (*lo == 0.0) {
    throw DegenerateInput("skew: degenerate triangle (two vertices coincide)");
  }
  return *hi / *lo;
}

Triangle2 equilateral_from(Point2 center, double circumradius, double orientation) {
  if (!(circumradius > 0.0) || !std::isfinite(circumradius)) {
    throw DomainViolation("equilateral_from: circumradius must be positive and finite");
  }
  constexpr double kThird = 2.0 * std::numbers::pi / 3.0;
  return {center + std::polar(circumradius, orientation),
          center + std::polar(circumradius, orientation + kThird),
          center + std::polar(circumradius, orientation + 2.0 * kThird)};
}

Point2 rotate_about(Point2 x, Point2 z, int sign) {
  const Point2 unit = sign >= 0 ? kOmega : std::conj(kOmega);
  return x + (z - x) * unit;
}

double geo_lemma_angle(Point2 z, double theta_plus, double theta_minus) {
  constexpr double kEighth = 0.125;
  constexpr double kThird = std::numbers::pi / 3.0;
  if (!is_finite(z) || std::abs(z) > kEighth || !(std::abs(theta_plus - kThird) <= kEighth) ||
      !(std::abs(theta_minus + kThird) <= kEighth)) {
    std::ostringstream msg;
    msg << "geo_lemma_angle: inputs outside the admissible set (|z| = " << std::abs(z)
        << ", theta+ = " << theta_plus << ", theta- = " << theta_minus << ")";
    throw DomainViolation(msg.str());
  }
  const double arg_plus = std::arg(std::polar(1.0, theta_plus) - z);
  const double arg_minus = std::arg(std::polar(1.0, theta_minus) - z);
  // Admissible inputs put the two directions on opposite sides of the real
  // axis, both with positive real part.
  if (!(arg_plus > 0.0) || !(arg_minus < 0.0)) {
    throw DomainViolation("geo_lemma_angle: directions do not straddle the positive real axis");
  }
  return arg_plus - arg_minus;
}

}  // namespace qcskew
