#pragma once

#include <array>
#include <complex>
#include <numbers>

namespace qcskew {

/// Points of the plane are complex numbers.
using Point2 = std::complex<double>;

/// Primitive sixth root of unity, 1/2 + (sqrt(3)/2) i. Generates the
/// triangular lattice together with 1.
inline const Point2 kOmega{0.5, std::numbers::sqrt3 / 2.0};

/// Absolute tolerance used for exact geometric identities evaluated in
/// floating point.
inline constexpr double kGeometryTol = 1e-12;

/// Closed triangle with ordered vertices. Degenerate triangles (repeated
/// vertices) are representable; they have shortest_side() == 0.
struct Triangle2 {
  Point2 a;
  Point2 b;
  Point2 c;

  [[nodiscard]] std::array<Point2, 3> vertices() const { return {a, b, c}; }
  [[nodiscard]] std::array<double, 3> side_lengths() const;

  /// L(T): largest pairwise vertex distance.
  [[nodiscard]] double longest_side() const;
  /// l(T): smallest pairwise vertex distance.
  [[nodiscard]] double shortest_side() const;
  [[nodiscard]] bool is_degenerate() const { return shortest_side() == 0.0; }
  [[nodiscard]] bool is_equilateral(double rel_tol = 1e-12) const;
};

/// Closed disk D(center, radius).
struct Disk {
  Point2 center;
  double radius = 0.0;

  [[nodiscard]] bool contains(Point2 z) const { return std::abs(z - center) <= radius; }
};

/// Longest side over shortest side. Throws DegenerateInput when two vertices
/// coincide.
double skew(const Triangle2& t);

/// Equilateral triangle with vertices center + circumradius * e^{i(orientation + 2 pi j / 3)}.
Triangle2 equilateral_from(Point2 center, double circumradius, double orientation);

/// Rotation of z about x by +pi/3 (sign > 0) or -pi/3 (sign < 0).
Point2 rotate_about(Point2 x, Point2 z, int sign);

/// The angle at z between e^{i theta_plus} - z and e^{i theta_minus} - z,
/// measured across the positive real axis.
///
/// Admissible inputs: |z| <= 1/8, |theta_plus - pi/3| <= 1/8 and
/// |theta_minus + pi/3| <= 1/8. On that set the result lies in (pi/3, pi).
/// Throws DomainViolation outside it.
double geo_lemma_angle(Point2 z, double theta_plus, double theta_minus);

bool is_finite(Point2 z);

}  // namespace qcskew
