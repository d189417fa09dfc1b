#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "qcskew/errors.hpp"
#include "qcskew/highdim.hpp"

using namespace qcskew;

namespace {

PointN v3(double x, double y, double z) { return Eigen::Vector3d(x, y, z); }

SamplingPlan small_plan() {
  SamplingPlan p;
  p.triangle_count = 2000;
  p.orientation_count = 16;
  p.circle_samples = 2048;
  return p;
}

}  // namespace

TEST_CASE("space map basics") {
  const SpaceMap id = make_identity_n(3);
  CHECK(id.eval(v3(1, 2, 3)) == v3(1, 2, 3));
  CHECK_THROWS_AS(static_cast<void>(id.eval(PointN::Zero(4))), DomainViolation);
  const SpaceMap d = make_diagonal({1, 1, 0.5});
  CHECK(d.eval(v3(2, 2, 2)) == v3(2, 2, 1));
  CHECK(*d.metadata().dilatation == 2.0);
  CHECK_THROWS_AS(make_diagonal({1, 0}), DomainViolation);
  CHECK_THROWS_AS(make_diagonal({1, 1, 0}), DomainViolation);
  CHECK_THROWS_AS(make_identity_n(2), DomainViolation);
  const SpaceMap ball(3, [](const PointN& x) { return x; }, Ball{v3(0, 0, 0), 1.0}, {"ball", 1.0});
  CHECK_THROWS_AS(static_cast<void>(ball.eval(v3(2, 0, 0))), OutOfDomain);
  CHECK(ball.clearance(v3(0.25, 0, 0)) == doctest::Approx(0.75));
  CHECK(make_radial3(2.0).eval(v3(0.5, 0, 0)) == v3(0.25, 0, 0));
}

TEST_CASE("normalize_frame examples") {
  const Frame f = normalize_frame(v3(0, 0, 0), v3(1, 0, 0), v3(0, 1, 0));
  CHECK(f.Q.isApprox(Eigen::Matrix3d::Identity()));
  CHECK(f.a1 == doctest::Approx(0.0));
  CHECK(f.a2 == doctest::Approx(1.0));
  CHECK(f.r == 1.0);
  CHECK_FALSE(f.reflected);

  const Frame g = normalize_frame(v3(0, 0, 0), v3(1, 0, 0), v3(0, -1, 0));
  CHECK(g.reflected);
  CHECK(g.a2 == doctest::Approx(1.0));

  const Frame h = normalize_frame(v3(1, 1, 1), v3(3, 1, 1), v3(-1, 1, 1));
  CHECK(h.a1 == doctest::Approx(-2.0));
  CHECK(h.a2 == 0.0);
  CHECK(h.r == 2.0);
}

TEST_CASE("normalize_frame errors") {
  CHECK_THROWS_AS(normalize_frame(v3(0, 0, 0), v3(0, 0, 0), v3(0, 0, 0)), DomainViolation);
  CHECK_THROWS_AS(normalize_frame(v3(0, 0, 0), v3(1, 0, 0), v3(0, 2, 0)), DomainViolation);
  CHECK_THROWS_AS(normalize_frame(v3(0, 0, 0), v3(1, 0, 0), PointN::Zero(4)), DomainViolation);
}

TEST_CASE("normalize_frame preserves distances") {
  std::mt19937_64 rng(11);
  std::normal_distribution<double> g;
  for (int i = 0; i < 500; ++i) {
    const std::size_t n = 3 + static_cast<std::size_t>(i % 3);
    PointN p(n), u(n), w(n);
    for (std::size_t k = 0; k < n; ++k) {
      p[k] = g(rng);
      u[k] = g(rng);
      w[k] = g(rng);
    }
    const double r = 0.5 + std::abs(g(rng));
    const PointN m = p + r * u.normalized();
    const PointN a = p + r * w.normalized();
    const Frame f = normalize_frame(p, m, a);
    REQUIRE((f.Q * f.Q.transpose()).isApprox(Eigen::MatrixXd::Identity(n, n), 1e-12));
    const PointN pm = f.apply(m);
    const PointN pa = f.apply(a);
    REQUIRE(f.apply(p).norm() < 1e-12);
    REQUIRE((pm - r * PointN::Unit(n, 0)).norm() < 1e-12);
    REQUIRE(std::abs(pa[0] - f.a1) < 1e-12);
    REQUIRE(std::abs(pa[1] - f.a2) < 1e-12);
    REQUIRE(pa.tail(n - 2).norm() < 1e-12);
    REQUIRE(std::abs((pm - pa).norm() - (m - a).norm()) < 1e-12);
    REQUIRE((f.invert(pa) - a).norm() < 1e-12);
  }
}

TEST_CASE("construct_b") {
  const Eigen::Vector3d b = construct_b(0.0, 1.0);
  CHECK(b.x() == 0.5);
  CHECK(b.y() == doctest::Approx(0.5));
  CHECK(b.z() == doctest::Approx(1.0 / std::sqrt(2.0)));

  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> angle(1e-6, 2.0 * std::numbers::pi / 3.0);
  for (int i = 0; i < 10000; ++i) {
    const double t = angle(rng);
    const Eigen::Vector3d a(std::cos(t), std::sin(t), 0.0);
    const Eigen::Vector3d c = construct_b(a.x(), a.y());
    REQUIRE(std::abs(c.norm() - 1.0) < 1e-12);
    REQUIRE(std::abs((c - Eigen::Vector3d::UnitX()).norm() - 1.0) < 1e-12);
    REQUIRE(std::abs((c - a).norm() - 1.0) < 1e-12);
  }
}

TEST_CASE("construct_b on the boundary angle 2 pi / 3") {
  const double t = 2.0 * std::numbers::pi / 3.0;
  const Eigen::Vector3d b = construct_b(std::cos(t), std::sin(t));
  CHECK(std::abs(b.z()) < 1e-7);
  CHECK(std::abs((b - Eigen::Vector3d(std::cos(t), std::sin(t), 0)).norm() - 1.0) < 1e-12);
}

TEST_CASE("construct_b with a general radius") {
  const double r = 2.5;
  const double t = 1.1;
  const Eigen::Vector3d a(r * std::cos(t), r * std::sin(t), 0);
  const Eigen::Vector3d b = construct_b_scaled(a.x(), a.y(), r);
  CHECK(b.norm() == doctest::Approx(r));
  CHECK((b - r * Eigen::Vector3d::UnitX()).norm() == doctest::Approx(r));
  CHECK((b - a).norm() == doctest::Approx(r));
}

TEST_CASE("construct_b preconditions") {
  CHECK_THROWS_AS(construct_b(1.0, 0.0), DomainViolation);
  CHECK_THROWS_AS(construct_b(0.0, 2.0), DomainViolation);
  const double t = 2.0 * std::numbers::pi / 3.0 + 0.1;
  CHECK_THROWS_AS(construct_b(std::cos(t), std::sin(t)), DomainViolation);
}

TEST_CASE("case 2 rotation") {
  const PointN b = case2_reflect_to_case1(v3(-1, 0, 0));
  CHECK(std::atan2(b[1], b[0]) == doctest::Approx(2.0 * std::numbers::pi / 3.0));
  const double t = 5.0 * std::numbers::pi / 6.0;
  const PointN a = v3(2 * std::cos(t), 2 * std::sin(t), 0);
  const PointN c = case2_reflect_to_case1(a);
  CHECK(std::atan2(c[1], c[0]) == doctest::Approx(std::numbers::pi / 2.0));
  CHECK((c - a).norm() == doctest::Approx(a.norm()));
  CHECK(c.norm() == doctest::Approx(a.norm()));
  CHECK_THROWS_AS(case2_reflect_to_case1(v3(0, 1, 0)), DomainViolation);
  CHECK_THROWS_AS(case2_reflect_to_case1(v3(-1, 0, 0.5)), DomainViolation);
  CHECK_THROWS_AS(case2_reflect_to_case1(v3(0, 0, 0)), DomainViolation);
}

TEST_CASE("appendix chains bound the ratio by the product of skews") {
  const SpaceMap f = make_diagonal({1.0, 0.7, 0.4});
  std::mt19937_64 rng(9);
  std::normal_distribution<double> g;
  int cases[3] = {0, 0, 0};
  for (int i = 0; i < 400; ++i) {
    const PointN p = v3(g(rng), g(rng), g(rng));
    const PointN m = p + v3(g(rng), g(rng), g(rng)).normalized();
    const PointN a = p + v3(g(rng), g(rng), g(rng)).normalized();
    const AppendixChain c = appendix_chain(f, p, m, a);
    ++cases[c.case_number];
    REQUIRE(c.triangles.size() == static_cast<std::size_t>(c.case_number == 0 ? 0 : c.case_number + 1));
    for (const auto& t : c.triangles) {
      REQUIRE(std::abs((t[0] - t[1]).norm() - (t[1] - t[2]).norm()) < 1e-9);
      REQUIRE(std::abs((t[0] - t[1]).norm() - (t[0] - t[2]).norm()) < 1e-9);
    }
    REQUIRE(c.ratio <= c.skew_product * (1 + 1e-12));
  }
  CHECK(cases[1] > 0);
  CHECK(cases[2] > 0);
  const AppendixChain same = appendix_chain(f, v3(0, 0, 0), v3(1, 0, 0), v3(1, 0, 0));
  CHECK(same.case_number == 0);
  CHECK(same.ratio == 1.0);
}

TEST_CASE("sigma and H estimates") {
  const auto id = estimate_sigma_and_H_3d(make_identity_n(3), v3(0, 0, 0), small_plan());
  CHECK(id.sigma_hat == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(id.H_hat == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(id.report.passed());

  const auto d = estimate_sigma_and_H_3d(make_diagonal({1, 1, 0.5}), v3(0, 0, 0), small_plan());
  CHECK(d.H_hat == doctest::Approx(2.0).epsilon(0.01));
  CHECK(d.sigma_hat * d.sigma_hat * d.sigma_hat >= 2.0);
  CHECK(d.report.passed());

  const auto s = estimate_sigma_and_H_3d(make_scaling_n(3, 5.0), v3(0, 0, 0), small_plan());
  CHECK(s.sigma_hat == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(s.H_hat == doctest::Approx(1.0).epsilon(1e-12));

  const auto r = estimate_sigma_and_H_3d(make_radial3(2.0), v3(0.5, 0, 0), small_plan());
  CHECK(r.report.passed());

  const auto four = estimate_sigma_and_H_3d(make_diagonal({1, 1, 1, 0.5}), PointN::Zero(4), small_plan());
  CHECK(four.H_hat == doctest::Approx(2.0).epsilon(0.05));
  CHECK(four.report.passed());
}

TEST_CASE("3D estimates are reproducible across worker counts") {
  SamplingPlan p = small_plan();
  p.threads = 1;
  const auto a = estimate_sigma_and_H_3d(make_diagonal({1, 0.8, 0.5}), v3(0.1, 0, 0), p);
  p.threads = 3;
  const auto b = estimate_sigma_and_H_3d(make_diagonal({1, 0.8, 0.5}), v3(0.1, 0, 0), p);
  CHECK(a.sigma_hat == b.sigma_hat);
  CHECK(a.H_hat == b.H_hat);
}
