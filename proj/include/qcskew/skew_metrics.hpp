#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "qcskew/geometry.hpp"
#include "qcskew/planar_map.hpp"
#include "qcskew/sampling.hpp"

namespace qcskew {

/// One rung of a scale ladder.
struct ScaleValue {
  double scale = 0.0;
  double value = 0.0;
  std::size_t samples = 0;
  bool reliable = true;
};

/// Result of a sampled estimator. `estimate` is the extremum the estimator
/// reports; `per_scale` holds the value at every rung that was kept.
struct DistortionReport {
  std::string quantity;
  double estimate = 0.0;
  std::optional<Triangle2> witness_triangle;
  std::optional<Point2> witness_point;
  std::optional<double> witness_scale;
  std::vector<ScaleValue> per_scale;
  std::vector<double> dropped_scales;
  std::size_t evaluated = 0;
  bool reliable = true;
};

/// skew(f(T)) for the image vertex triple. Throws DegenerateInput when two
/// image vertices coincide (non-injective at this resolution).
double image_skew(const PlanarMap& map, const Triangle2& t);

/// Sampled Skew(f) over equilateral triangles inside `region`.
///
/// Sample i uses circumradius scale_ladder[i mod L] (rungs that do not fit in
/// the clipped region are dropped), a low-discrepancy center and
/// orientation_count nested orientations. The maximum over a larger
/// triangle_count or orientation_count never decreases.
DistortionReport estimate_skew_sup(const PlanarMap& map, const Disk& region, const SamplingPlan& plan);

/// skew(f, z, r) for every r of the ladder with D(z, r) inside the domain,
/// and their minimum as the liminf proxy. Every rung reuses the same
/// normalized triangle configurations, so linear maps give equal rungs.
DistortionReport estimate_skew_at(const PlanarMap& map, Point2 z, const SamplingPlan& plan);

/// Max over min of |f(z) - f(w)| for n equally spaced w on C(z, r).
struct CircleStretch {
  double max_dist = 0.0;
  double min_dist = 0.0;
  Point2 argmax;
  [[nodiscard]] double ratio() const { return max_dist / min_dist; }
};

CircleStretch circle_stretch(const PlanarMap& map, Point2 z, double r, std::size_t n);

/// M(z, r) / m(z, r) sampled with n circle points.
double dilatation_ratio(const PlanarMap& map, Point2 z, double r, std::size_t n);

/// Sampled H(z): dilatation_ratio over the ladder, with the maximum over the
/// smallest half of the rungs as the limsup proxy.
DistortionReport estimate_H(const PlanarMap& map, Point2 z, const SamplingPlan& plan);

/// diam(P)^2 / area(P) of a closed polygon; `simple` reports whether the
/// polygon was verified to have no self-intersections.
struct PolygonShape {
  double diameter = 0.0;
  double area = 0.0;
  bool simple = true;
};

PolygonShape polygon_shape(const std::vector<Point2>& polygon);

/// Sampled planar k_f: diam(f(D(z, r)))^2 / |f(D(z, r))| per rung, with the
/// minimum over the ladder as the liminf proxy. Rungs whose image polygon
/// self-intersects are kept but flagged unreliable.
DistortionReport estimate_kf(const PlanarMap& map, Point2 z, const SamplingPlan& plan);

}  // namespace qcskew
