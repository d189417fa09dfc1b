#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "qcskew/bound_report.hpp"
#include "qcskew/sampling.hpp"

namespace qcskew {

/// Point of R^n, n >= 3.
using PointN = Eigen::VectorXd;

/// Closed ball; an infinite radius means all of R^n.
struct Ball {
  PointN center;
  double radius = std::numeric_limits<double>::infinity();
};

struct SpaceMapMetadata {
  std::string name;
  std::optional<double> dilatation;
};

/// A deterministic map of (part of) R^n into R^n. The evaluator must be pure
/// and reentrant.
class SpaceMap {
 public:
  using Evaluator = std::function<PointN(const PointN&)>;

  /// Throws DomainViolation for n < 3 or a domain of another dimension.
  SpaceMap(std::size_t dimension, Evaluator evaluator, Ball domain, SpaceMapMetadata metadata);

  [[nodiscard]] std::size_t dimension() const { return dimension_; }
  /// Throws DomainViolation on a wrong dimension and OutOfDomain outside the ball.
  [[nodiscard]] PointN eval(const PointN& x) const;
  /// Distance from x to the complement of the domain (negative outside).
  [[nodiscard]] double clearance(const PointN& x) const;
  [[nodiscard]] const Ball& domain() const { return domain_; }
  [[nodiscard]] const SpaceMapMetadata& metadata() const { return metadata_; }

 private:
  std::size_t dimension_;
  Evaluator evaluator_;
  Ball domain_;
  SpaceMapMetadata metadata_;
};

SpaceMap make_identity_n(std::size_t n = 3);
/// x -> s x.
SpaceMap make_scaling_n(std::size_t n, double s);
/// x -> diag(d) x; every d_i must be positive.
SpaceMap make_diagonal(const std::vector<double>& d);
/// x -> x |x|^(K - 1) in R^3.
SpaceMap make_radial3(double K);

/// Similarity x -> Q (x - origin) with Q orthogonal, normalizing a triple
/// (p, m, a) with |m - p| = |a - p| = r to p -> 0, m -> r e1,
/// a -> a1 e1 + a2 e2 with a2 >= 0.
struct Frame {
  PointN origin;
  Eigen::MatrixXd Q;
  double a1 = 0.0;
  double a2 = 0.0;
  double r = 0.0;
  /// det Q < 0.
  bool reflected = false;

  [[nodiscard]] PointN apply(const PointN& x) const { return Q * (x - origin); }
  [[nodiscard]] PointN invert(const PointN& y) const { return Q.transpose() * y + origin; }
};

/// Rows of Q are e1 = (m - p)/r, e2 from the component of a - p orthogonal
/// to e1 (the first usable standard basis vector when a - p is parallel to
/// e1), then Gram-Schmidt on the standard basis. Throws DomainViolation for
/// r = 0, unequal distances or mismatched dimensions.
Frame normalize_frame(const PointN& p, const PointN& m, const PointN& a);

/// The point b = (1/2, t, sqrt(3/4 - t^2)), t = (1 - a1) / (2 a2), completing
/// unit equilateral triangles (0, e1, b) and (0, b, a') for a' = a1 e1 + a2 e2
/// on the unit circle with angle(a', e1) <= 2 pi / 3. Throws DomainViolation
/// for a2 <= 0, a point off the unit circle or a negative radicand.
Eigen::Vector3d construct_b(double a1, double a2);

/// construct_b in a frame of radius r: r construct_b(a1 / r, a2 / r).
Eigen::Vector3d construct_b_scaled(double a1, double a2, double r);

/// b' = a' rotated clockwise by pi/3 in the e1-e2 plane, for a' in that
/// plane with a2 >= 0 and angle(a', e1) > 2 pi / 3. Then angle(b', e1) <=
/// 2 pi / 3 and (0, a', b') is equilateral. Throws DomainViolation otherwise.
PointN case2_reflect_to_case1(const PointN& a);

/// Chain of equilateral triangles joining [p, m] to [p, a]:
/// none when a = m, two (through b) when angle(a - p, m - p) <= 2 pi / 3,
/// and three (through b' and then b) otherwise. Along the chain
/// |f(a) - f(p)| <= skew_product |f(m) - f(p)|.
struct AppendixChain {
  int case_number = 0;
  std::vector<std::array<PointN, 3>> triangles;
  double ratio = 1.0;
  double skew_product = 1.0;
};

AppendixChain appendix_chain(const SpaceMap& map, const PointN& p, const PointN& m, const PointN& a);

/// Sampled sigma (sup image skew of equilateral triangles near `center`) and
/// H (max over min of |f(center) - f(w)| on spheres), with the check
/// H <= sigma^3 (1 + tolerance).
struct HighDimEstimate {
  BoundReport report;
  double sigma_hat = 1.0;
  double H_hat = 1.0;
  std::vector<double> scales;
  std::vector<double> H_per_scale;
  std::size_t triangles = 0;
};

HighDimEstimate estimate_sigma_and_H_3d(const SpaceMap& map, const PointN& center, const SamplingPlan& plan,
                                        double tolerance = 0.02);

}  // namespace qcskew
