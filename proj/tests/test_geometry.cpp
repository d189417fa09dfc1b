#include <doctest.h>

#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "qcskew/errors.hpp"
#include "qcskew/geometry.hpp"

using namespace qcskew;

TEST_CASE("omega is the primitive sixth root of unity") {
  CHECK(kOmega.real() == 0.5);
  CHECK(std::abs(kOmega * kOmega * kOmega + 1.0) < 1e-15);
}

TEST_CASE("skew of basic triangles") {
  CHECK(skew({{0, 0}, {1, 0}, kOmega}) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(skew({{0, 0}, {1, 0}, {0, 1}}) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
  CHECK(skew({{0, 0}, {3, 0}, {0, 4}}) == doctest::Approx(5.0 / 3.0).epsilon(1e-15));
}

TEST_CASE("skew is invariant under similarities") {
  const Triangle2 t{{0.1, 0.2}, {1.3, -0.4}, {0.7, 0.9}};
  const Point2 s = std::polar(2.5, 0.7);
  const Point2 shift{-3.0, 4.0};
  const Triangle2 u{s * t.a + shift, s * t.b + shift, s * t.c + shift};
  CHECK(skew(u) == doctest::Approx(skew(t)).epsilon(1e-13));
}

TEST_CASE("skew rejects degenerate and non-finite input") {
  CHECK_THROWS_AS(skew({{1, 1}, {1, 1}, {0, 0}}), DegenerateInput);
  const double nan = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(skew({{nan, 0}, {1, 0}, {0, 1}}), DomainViolation);
  const double inf = std::numeric_limits<double>::infinity();
  CHECK_THROWS_AS(skew({{inf, 0}, {1, 0}, {0, 1}}), DomainViolation);
}

TEST_CASE("equilateral_from builds equilateral triangles") {
  const Triangle2 t = equilateral_from({0.3, -0.2}, 0.25, 1.1);
  CHECK(t.is_equilateral());
  CHECK(skew(t) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(std::abs(t.a - Point2{0.3, -0.2}) == doctest::Approx(0.25));
  CHECK(t.longest_side() == doctest::Approx(0.25 * std::sqrt(3.0)));
  CHECK_THROWS_AS(equilateral_from({0, 0}, 0.0, 0.0), DomainViolation);
  CHECK_THROWS_AS(equilateral_from({0, 0}, -1.0, 0.0), DomainViolation);
}

TEST_CASE("rotate_about turns by plus or minus pi/3") {
  const Point2 x{0.5, 0.5};
  const Point2 z{1.0, 0.5};
  const Point2 up = rotate_about(x, z, +1);
  const Point2 down = rotate_about(x, z, -1);
  CHECK(std::abs(up - (x + 0.5 * kOmega)) < 1e-15);
  CHECK(std::abs(down - (x + 0.5 * std::conj(kOmega))) < 1e-15);
  CHECK(skew({x, z, up}) == doctest::Approx(1.0));
}

TEST_CASE("disk containment") {
  const Disk d{{1, 1}, 0.5};
  CHECK(d.contains({1.5, 1.0}));
  CHECK_FALSE(d.contains({1.6, 1.0}));
}

TEST_CASE("geo lemma angle stays in (pi/3, pi) on the admissible set") {
  constexpr double pi = std::numbers::pi;
  CHECK(geo_lemma_angle({0, 0}, pi / 3, -pi / 3) == doctest::Approx(2 * pi / 3));
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int i = 0; i < 20000; ++i) {
    Point2 z{u(rng), u(rng)};
    if (std::abs(z) > 0.125) z *= 0.1249 / std::abs(z);
    const double a = geo_lemma_angle(z, pi / 3 + 0.125 * u(rng), -pi / 3 + 0.125 * u(rng));
    REQUIRE(a > pi / 3);
    REQUIRE(a < pi);
  }
  // Corner of the admissible set.
  const double corner = geo_lemma_angle({-0.125, 0}, pi / 3 - 0.125, -pi / 3 + 0.125);
  CHECK(corner > pi / 3);
}

TEST_CASE("geo lemma rejects inputs outside its hypotheses") {
  constexpr double pi = std::numbers::pi;
  CHECK_THROWS_AS(geo_lemma_angle({0.2, 0}, pi / 3, -pi / 3), DomainViolation);
  CHECK_THROWS_AS(geo_lemma_angle({0, 0}, pi / 3 + 0.2, -pi / 3), DomainViolation);
  CHECK_THROWS_AS(geo_lemma_angle({0, 0}, pi / 3, -pi / 3 - 0.2), DomainViolation);
}
