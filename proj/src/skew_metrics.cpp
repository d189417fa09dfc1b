#include "qcskew/skew_metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "qcskew/errors.hpp"

namespace qcskew {

namespace {

constexpr double kThirdTurn = 2.0 * std::numbers::pi / 3.0;

// Random streams, one per estimator family.
enum Stream : std::uint64_t { kSupCenters = 1, kSupOrientations = 2, kAtSamples = 3 };

struct Best {
  double value = -std::numeric_limits<double>::infinity();
  Triangle2 witness{};
  std::size_t samples = 0;

  void offer(double v, const Triangle2& t) {
    ++samples;
    if (v > value) {
      value = v;
      witness = t;
    }
  }
  void merge(const Best& later) {
    samples += later.samples;
    if (later.value > value) {
      value = later.value;
      witness = later.witness;
    }
  }
};

// Tolerance for keeping triangle vertices strictly inside a disk.
constexpr double kInsetFactor = 1.0 - 1e-9;

std::vector<std::size_t> smallest_half(std::size_t count) {
  std::vector<std::size_t> idx;
  for (std::size_t i = count / 2; i < count; ++i) idx.push_back(i);
  return idx;
}

}  // namespace

double image_skew(const PlanarMap& map, const Triangle2& t) {
  const Triangle2 image{map.eval(t.a), map.eval(t.b), map.eval(t.c)};
  try {
    return skew(image);
  } catch (const DegenerateInput&) {
    throw DegenerateInput("image_skew: image triangle is degenerate (map not injective at this resolution)");
  }
}

DistortionReport estimate_skew_sup(const PlanarMap& map, const Disk& region, const SamplingPlan& plan) {
  plan.validate();
  if (!(region.radius > 0.0)) throw DomainViolation("estimate_skew_sup: region radius must be positive");
  const double clearance = map.clearance(region.center);
  if (!(clearance > 0.0)) throw DomainViolation("estimate_skew_sup: region center is outside the map domain");
  const double radius = std::min(region.radius, clearance * kInsetFactor);

  DistortionReport report;
  report.quantity = "Skew";
  std::vector<double> scales;
  for (double s : plan.scale_ladder) {
    (s < radius ? scales : report.dropped_scales).push_back(s);
  }
  if (scales.empty()) {
    throw DomainViolation("estimate_skew_sup: no triangle scale fits inside the clipped region");
  }

  const auto offset = seeded_offset(plan.seed, kSupCenters);
  struct ChunkResult {
    Best overall;
    std::vector<Best> per_scale;
  };
  const auto chunks = run_chunks<ChunkResult>(
      plan.triangle_count, plan.threads, [&](std::size_t chunk, std::size_t begin, std::size_t end) {
        ChunkResult out;
        out.per_scale.resize(scales.size());
        auto rng = chunk_rng(plan.seed, kSupOrientations, chunk);
        std::uniform_real_distribution<double> base_angle(0.0, kThirdTurn);
        for (std::size_t i = begin; i < end; ++i) {
          const std::size_t rung = i % scales.size();
          const double s = scales[rung];
          const Point2 center = square_to_disk(r2_point(i, offset), region.center, (radius - s) * kInsetFactor);
          const double phi = base_angle(rng);
          for (std::size_t j = 0; j < plan.orientation_count; ++j) {
            const Triangle2 t = equilateral_from(center, s, phi + kThirdTurn * van_der_corput(j));
            const double v = image_skew(map, t);
            out.overall.offer(v, t);
            out.per_scale[rung].offer(v, t);
          }
        }
        return out;
      });

  Best overall;
  std::vector<Best> per_scale(scales.size());
  for (const auto& c : chunks) {
    overall.merge(c.overall);
    for (std::size_t k = 0; k < scales.size(); ++k) per_scale[k].merge(c.per_scale[k]);
  }
  report.estimate = overall.value;
  report.witness_triangle = overall.witness;
  report.witness_scale = std::abs(overall.witness.a - (overall.witness.a + overall.witness.b + overall.witness.c) / 3.0);
  report.evaluated = overall.samples;
  for (std::size_t k = 0; k < scales.size(); ++k) {
    if (per_scale[k].samples > 0) report.per_scale.push_back({scales[k], per_scale[k].value, per_scale[k].samples});
  }
  return report;
}

DistortionReport estimate_skew_at(const PlanarMap& map, Point2 z, const SamplingPlan& plan) {
  plan.validate();
  const double clearance = map.clearance(z);
  if (!(clearance > 0.0)) throw DomainViolation("estimate_skew_at: point is not interior to the map domain");

  DistortionReport report;
  report.quantity = "skew_at";
  std::vector<Triangle2> best_witness;
  for (double r : plan.scale_ladder) {
    if (!(r < clearance)) {
      report.dropped_scales.push_back(r);
      continue;
    }
    // The same stream for every rung: sample i is the same configuration
    // relative to D(z, r).
    const auto chunks = run_chunks<Best>(
        plan.triangle_count, plan.threads, [&](std::size_t chunk, std::size_t begin, std::size_t end) {
          Best out;
          auto rng = chunk_rng(plan.seed, kAtSamples, chunk);
          std::uniform_real_distribution<double> unit(0.0, 1.0);
          for (std::size_t i = begin; i < end; ++i) {
            const double rho = r * (0.05 + 0.95 * unit(rng));
            const double u = unit(rng);
            const double v = unit(rng);
            const double phi = kThirdTurn * unit(rng);
            const Point2 center = square_to_disk({u, v}, z, (r - rho) * kInsetFactor);
            for (std::size_t j = 0; j < plan.orientation_count; ++j) {
              const Triangle2 t = equilateral_from(center, rho * kInsetFactor, phi + kThirdTurn * van_der_corput(j));
              out.offer(image_skew(map, t), t);
            }
          }
          return out;
        });
    Best rung;
    for (const auto& c : chunks) rung.merge(c);
    report.per_scale.push_back({r, rung.value, rung.samples});
    report.evaluated += rung.samples;
    best_witness.push_back(rung.witness);
  }
  if (report.per_scale.empty()) {
    throw DomainViolation("estimate_skew_at: every scale leaves the map domain");
  }
  std::size_t arg = 0;
  for (std::size_t k = 1; k < report.per_scale.size(); ++k) {
    if (report.per_scale[k].value < report.per_scale[arg].value) arg = k;
  }
  report.estimate = report.per_scale[arg].value;
  report.witness_triangle = best_witness[arg];
  report.witness_scale = report.per_scale[arg].scale;
  return report;
}

CircleStretch circle_stretch(const PlanarMap& map, Point2 z, double r, std::size_t n) {
  if (n < 3) throw DomainViolation("circle_stretch: need at least 3 circle samples");
  if (!(r > 0.0)) throw DomainViolation("circle_stretch: radius must be positive");
  if (!(map.clearance(z) >= r)) throw OutOfDomain("circle_stretch: D(z, r) is not inside the map domain");
  const Point2 fz = map.eval(z);
  CircleStretch out{0.0, std::numeric_limits<double>::infinity(), z};
  for (std::size_t j = 0; j < n; ++j) {
    const Point2 w = z + std::polar(r, 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(n));
    const double d = std::abs(map.eval(w) - fz);
    if (d > out.max_dist) {
      out.max_dist = d;
      out.argmax = w;
    }
    out.min_dist = std::min(out.min_dist, d);
  }
  if (!(out.min_dist > 0.0)) {
    throw DegenerateInput("circle_stretch: a circle point maps onto f(z) (map not injective at this resolution)");
  }
  return out;
}

double dilatation_ratio(const PlanarMap& map, Point2 z, double r, std::size_t n) {
  return circle_stretch(map, z, r, n).ratio();
}

DistortionReport estimate_H(const PlanarMap& map, Point2 z, const SamplingPlan& plan) {
  plan.validate();
  DistortionReport report;
  report.quantity = "H";
  std::vector<Point2> argmax;
  for (double r : plan.scale_ladder) {
    if (!(map.clearance(z) >= r)) {
      report.dropped_scales.push_back(r);
      continue;
    }
    const auto c = circle_stretch(map, z, r, plan.circle_samples);
    report.per_scale.push_back({r, c.ratio(), plan.circle_samples});
    report.evaluated += plan.circle_samples;
    argmax.push_back(c.argmax);
  }
  if (report.per_scale.empty()) throw DomainViolation("estimate_H: every scale leaves the map domain");
  const auto half = smallest_half(report.per_scale.size());
  std::size_t arg = half.front();
  for (std::size_t k : half) {
    if (report.per_scale[k].value > report.per_scale[arg].value) arg = k;
  }
  report.estimate = report.per_scale[arg].value;
  report.witness_point = argmax[arg];
  report.witness_scale = report.per_scale[arg].scale;
  return report;
}

namespace {

double cross(Point2 a, Point2 b) { return a.real() * b.imag() - a.imag() * b.real(); }

bool segments_intersect(Point2 p1, Point2 p2, Point2 q1, Point2 q2) {
  const double d1 = cross(q2 - q1, p1 - q1);
  const double d2 = cross(q2 - q1, p2 - q1);
  const double d3 = cross(p2 - p1, q1 - p1);
  const double d4 = cross(p2 - p1, q2 - p1);
  return ((d1 > 0) != (d2 > 0)) && ((d3 > 0) != (d4 > 0)) && d1 != 0 && d2 != 0 && d3 != 0 && d4 != 0;
}

// True when the polygon winds exactly once around `pole` with every edge
// turning the same way, which makes it simple.
bool star_shaped_about(const std::vector<Point2>& poly, Point2 pole) {
  const std::size_t n = poly.size();
  double total = 0.0;
  int sign = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const Point2 a = poly[i] - pole;
    const Point2 b = poly[(i + 1) % n] - pole;
    const double step = std::arg(b / a);
    const int s = step > 0 ? 1 : (step < 0 ? -1 : 0);
    if (s == 0 || (sign != 0 && s != sign)) return false;
    sign = s;
    total += step;
  }
  return std::abs(std::abs(total) - 2.0 * std::numbers::pi) < 1e-6;
}

}  // namespace

PolygonShape polygon_shape(const std::vector<Point2>& polygon) {
  const std::size_t n = polygon.size();
  if (n < 3) throw DegenerateInput("polygon_shape: need at least 3 vertices");
  PolygonShape shape;
  double diam2 = 0.0;
  double twice_area = 0.0;
  Point2 centroid{};
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) diam2 = std::max(diam2, std::norm(polygon[i] - polygon[j]));
    twice_area += cross(polygon[i], polygon[(i + 1) % n]);
    centroid += polygon[i];
  }
  shape.diameter = std::sqrt(diam2);
  shape.area = std::abs(twice_area) / 2.0;
  if (!(shape.area > 0.0)) throw DegenerateInput("polygon_shape: polygon encloses no area");

  centroid /= static_cast<double>(n);
  if (!star_shaped_about(polygon, centroid)) {
    for (std::size_t i = 0; i < n && shape.simple; ++i) {
      for (std::size_t j = i + 2; j < n; ++j) {
        if (i == 0 && j + 1 == n) continue;
        if (segments_intersect(polygon[i], polygon[i + 1], polygon[j], polygon[(j + 1) % n])) {
          shape.simple = false;
          break;
        }
      }
    }
  }
  return shape;
}

DistortionReport estimate_kf(const PlanarMap& map, Point2 z, const SamplingPlan& plan) {
  plan.validate();
  if (plan.circle_samples < 3) throw DomainViolation("estimate_kf: need at least 3 circle samples");
  DistortionReport report;
  report.quantity = "k_f";
  std::vector<Point2> image(plan.circle_samples);
  for (double r : plan.scale_ladder) {
    if (!(map.clearance(z) >= r)) {
      report.dropped_scales.push_back(r);
      continue;
    }
    for (std::size_t j = 0; j < image.size(); ++j) {
      const double angle = 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(image.size());
      image[j] = map.eval(z + std::polar(r, angle));
    }
    const auto shape = polygon_shape(image);
    report.per_scale.push_back({r, shape.diameter * shape.diameter / shape.area, image.size(), shape.simple});
    report.evaluated += image.size();
    report.reliable = report.reliable && shape.simple;
  }
  if (report.per_scale.empty()) throw DomainViolation("estimate_kf: every scale leaves the map domain");
  std::size_t arg = 0;
  for (std::size_t k = 1; k < report.per_scale.size(); ++k) {
    if (report.per_scale[k].value < report.per_scale[arg].value) arg = k;
  }
  report.estimate = report.per_scale[arg].value;
  report.witness_scale = report.per_scale[arg].scale;
  return report;
}

}  // namespace qcskew
