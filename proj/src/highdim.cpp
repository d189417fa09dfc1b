#include "qcskew/highdim.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "qcskew/errors.hpp"

namespace qcskew {

namespace {

constexpr double kThirdTurn = 2.0 * std::numbers::pi / 3.0;
constexpr double kInsetFactor = 1.0 - 1e-9;
// Relative tolerance for the equal-distance and unit-circle preconditions.
constexpr double kFrameTol = 1e-9;

enum Stream : std::uint64_t { kTriangles = 11, kSphere = 12 };

void require_dimension(const PointN& x, std::size_t n, const char* who) {
  if (static_cast<std::size_t>(x.size()) != n) {
    std::ostringstream msg;
    msg << who << ": expected a point of dimension " << n << ", got " << x.size();
    throw DomainViolation(msg.str());
  }
}

double triple_skew(const PointN& a, const PointN& b, const PointN& c) {
  const double s[3] = {(a - b).norm(), (b - c).norm(), (c - a).norm()};
  const auto [lo, hi] = std::minmax_element(s, s + 3);
  if (!(*lo > 0.0)) throw DegenerateInput("image triangle is degenerate (map not injective at this resolution)");
  return *hi / *lo;
}

PointN gaussian_vector(std::size_t n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  PointN v(static_cast<Eigen::Index>(n));
  for (Eigen::Index i = 0; i < v.size(); ++i) v[i] = g(rng);
  return v;
}

// Unit vector, redrawn in the (measure-zero) event of a tiny draw.
PointN random_direction(std::size_t n, std::mt19937_64& rng) {
  for (;;) {
    PointN v = gaussian_vector(n, rng);
    const double len = v.norm();
    if (len > 1e-8) return v / len;
  }
}

// Orthonormal pair from two Gaussian vectors.
std::pair<PointN, PointN> random_two_frame(std::size_t n, std::mt19937_64& rng) {
  const PointN u = random_direction(n, rng);
  for (;;) {
    PointN v = gaussian_vector(n, rng);
    v -= v.dot(u) * u;
    const double len = v.norm();
    if (len > 1e-8) return {u, v / len};
  }
}

std::vector<PointN> sphere_points(std::size_t n, std::size_t count, std::uint64_t seed) {
  std::vector<PointN> out;
  out.reserve(count);
  if (n == 3) {
    // Fibonacci lattice.
    const double golden_angle = std::numbers::pi * (3.0 - std::sqrt(5.0));
    for (std::size_t k = 0; k < count; ++k) {
      const double z = 1.0 - (2.0 * static_cast<double>(k) + 1.0) / static_cast<double>(count);
      const double rho = std::sqrt(std::max(0.0, 1.0 - z * z));
      const double phi = golden_angle * static_cast<double>(k);
      out.emplace_back(Eigen::Vector3d(rho * std::cos(phi), rho * std::sin(phi), z));
    }
    return out;
  }
  auto rng = chunk_rng(seed, kSphere, 0);
  for (std::size_t k = 0; k < count; ++k) out.push_back(random_direction(n, rng));
  return out;
}

}  // namespace

SpaceMap::SpaceMap(std::size_t dimension, Evaluator evaluator, Ball domain, SpaceMapMetadata metadata)
    : dimension_(dimension), evaluator_(std::move(evaluator)), domain_(std::move(domain)), metadata_(std::move(metadata)) {
  if (dimension_ < 3) throw DomainViolation("SpaceMap: dimension must be at least 3");
  if (domain_.center.size() == 0) domain_.center = PointN::Zero(static_cast<Eigen::Index>(dimension_));
  require_dimension(domain_.center, dimension_, "SpaceMap domain");
  if (!(domain_.radius > 0.0)) throw DomainViolation("SpaceMap: domain radius must be positive");
}

PointN SpaceMap::eval(const PointN& x) const {
  require_dimension(x, dimension_, "SpaceMap::eval");
  if (!x.allFinite()) throw DomainViolation("SpaceMap::eval: non-finite point");
  if (clearance(x) < 0.0) throw OutOfDomain("SpaceMap::eval: point outside the map domain");
  return evaluator_(x);
}

double SpaceMap::clearance(const PointN& x) const {
  if (std::isinf(domain_.radius)) return domain_.radius;
  return domain_.radius - (x - domain_.center).norm();
}

SpaceMap make_identity_n(std::size_t n) {
  return SpaceMap(n, [](const PointN& x) { return x; }, Ball{}, {"id" + std::to_string(n), 1.0});
}

SpaceMap make_scaling_n(std::size_t n, double s) {
  if (!(s > 0.0) || !std::isfinite(s)) throw DomainViolation("make_scaling_n: factor must be positive");
  std::ostringstream name;
  name << "scale" << n << ":" << s;
  return SpaceMap(n, [s](const PointN& x) { return PointN(s * x); }, Ball{}, {name.str(), 1.0});
}

SpaceMap make_diagonal(const std::vector<double>& d) {
  if (d.size() < 3) throw DomainViolation("make_diagonal: need at least 3 entries");
  std::ostringstream name;
  name << "diag:";
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (!(d[i] > 0.0) || !std::isfinite(d[i])) throw DomainViolation("make_diagonal: entries must be positive");
    name << (i ? "," : "") << d[i];
  }
  const Eigen::VectorXd diag = Eigen::Map<const Eigen::VectorXd>(d.data(), static_cast<Eigen::Index>(d.size()));
  const double K = diag.maxCoeff() / diag.minCoeff();
  return SpaceMap(d.size(), [diag](const PointN& x) { return PointN(diag.cwiseProduct(x)); }, Ball{},
                  {name.str(), K});
}

SpaceMap make_radial3(double K) {
  if (!(K > 0.0) || !std::isfinite(K)) throw DomainViolation("make_radial3: K must be positive");
  std::ostringstream name;
  name << "radial3:" << K;
  return SpaceMap(
      3,
      [K](const PointN& x) {
        const double len = x.norm();
        return len == 0.0 ? x : PointN(x * std::pow(len, K - 1.0));
      },
      Ball{}, {name.str(), std::nullopt});
}

Frame normalize_frame(const PointN& p, const PointN& m, const PointN& a) {
  const auto n = static_cast<std::size_t>(p.size());
  if (n < 3) throw DomainViolation("normalize_frame: dimension must be at least 3");
  require_dimension(m, n, "normalize_frame");
  require_dimension(a, n, "normalize_frame");
  const PointN dm = m - p;
  const PointN da = a - p;
  const double r = dm.norm();
  if (!(r > 0.0)) throw DomainViolation("normalize_frame: m = p gives a zero radius");
  if (std::abs(da.norm() - r) > kFrameTol * r) throw DomainViolation("normalize_frame: |a - p| must equal |m - p|");

  const auto dim = static_cast<Eigen::Index>(n);
  std::vector<PointN> rows{dm / r};
  PointN v = da - da.dot(rows[0]) * rows[0];
  if (v.norm() > kFrameTol * r) rows.push_back(v / v.norm());
  // Complete with Gram-Schmidt on the standard basis.
  for (Eigen::Index i = 0; i < dim && rows.size() < n; ++i) {
    PointN w = PointN::Unit(dim, i);
    for (const auto& e : rows) w -= w.dot(e) * e;
    for (const auto& e : rows) w -= w.dot(e) * e;
    if (w.norm() > 1e-6) rows.push_back(w / w.norm());
  }

  Frame f;
  f.origin = p;
  f.Q.resize(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i) f.Q.row(i) = rows[static_cast<std::size_t>(i)].transpose();
  f.r = r;
  f.a1 = da.dot(rows[0]);
  f.a2 = std::max(0.0, da.dot(rows[1]));
  f.reflected = f.Q.determinant() < 0.0;
  return f;
}

Eigen::Vector3d construct_b(double a1, double a2) {
  if (!(a2 > 0.0)) throw DomainViolation("construct_b: a2 must be positive (a2 = 0 takes the degenerate path)");
  if (std::abs(a1 * a1 + a2 * a2 - 1.0) > kFrameTol) throw DomainViolation("construct_b: a' must lie on the unit circle");
  if (a1 < -0.5 - kFrameTol) throw DomainViolation("construct_b: angle(a', e1) exceeds 2 pi / 3");
  const double t = (1.0 - a1) / (2.0 * a2);
  double radicand = 0.75 - t * t;
  if (radicand < -1e-12) throw DomainViolation("construct_b: negative radicand");
  radicand = std::max(0.0, radicand);
  return {0.5, t, std::sqrt(radicand)};
}

Eigen::Vector3d construct_b_scaled(double a1, double a2, double r) {
  if (!(r > 0.0)) throw DomainViolation("construct_b_scaled: r must be positive");
  return r * construct_b(a1 / r, a2 / r);
}

PointN case2_reflect_to_case1(const PointN& a) {
  if (a.size() < 3) throw DomainViolation("case2_reflect_to_case1: dimension must be at least 3");
  const double len = a.norm();
  if (!(len > 0.0)) throw DomainViolation("case2_reflect_to_case1: a' must be nonzero");
  if (a.tail(a.size() - 2).norm() > kFrameTol * len) {
    throw DomainViolation("case2_reflect_to_case1: a' must lie in the e1-e2 plane");
  }
  if (a[1] < -kFrameTol * len) throw DomainViolation("case2_reflect_to_case1: a2 must be >= 0");
  if (!(a[0] / len < -0.5)) throw DomainViolation("case2_reflect_to_case1: angle(a', e1) must exceed 2 pi / 3");
  const double c = 0.5;
  const double s = std::sqrt(3.0) / 2.0;
  const double a2 = std::max(0.0, a[1]);
  PointN b = PointN::Zero(a.size());
  b[0] = c * a[0] + s * a2;
  b[1] = -s * a[0] + c * a2;
  return b;
}

AppendixChain appendix_chain(const SpaceMap& map, const PointN& p, const PointN& m, const PointN& a) {
  const Frame f = normalize_frame(p, m, a);
  const auto dim = static_cast<Eigen::Index>(map.dimension());
  const PointN fp = map.eval(p);
  AppendixChain out;
  out.ratio = (map.eval(a) - fp).norm() / (map.eval(m) - fp).norm();

  const auto lift = [&](const Eigen::Vector3d& v) {
    PointN y = PointN::Zero(dim);
    y.head<3>() = v;
    return f.invert(y);
  };
  const double r = f.r;
  const double a1 = f.a1 / r;
  const double a2 = f.a2 / r;
  if (std::abs(a1 - 1.0) <= kFrameTol && a2 <= kFrameTol) {
    out.case_number = 0;
    return out;
  }
  const auto add_b_triangles = [&](double b1, double b2, const PointN& end) {
    const PointN b = lift(construct_b_scaled(b1, b2, r));
    out.triangles.push_back({p, m, b});
    out.triangles.push_back({p, b, end});
  };
  if (a1 >= -0.5) {
    out.case_number = 1;
    add_b_triangles(f.a1, f.a2, a);
  } else {
    out.case_number = 2;
    PointN local = PointN::Zero(dim);
    local[0] = f.a1;
    local[1] = f.a2;
    const PointN bp_local = case2_reflect_to_case1(local);
    const PointN bp = f.invert(bp_local);
    add_b_triangles(bp_local[0], bp_local[1], bp);
    out.triangles.push_back({p, bp, a});
  }
  for (const auto& t : out.triangles) {
    out.skew_product *= triple_skew(map.eval(t[0]), map.eval(t[1]), map.eval(t[2]));
  }
  return out;
}

HighDimEstimate estimate_sigma_and_H_3d(const SpaceMap& map, const PointN& center, const SamplingPlan& plan,
                                        double tolerance) {
  plan.validate();
  if (!(tolerance >= 0.0)) throw DomainViolation("estimate_sigma_and_H_3d: tolerance must be >= 0");
  const std::size_t n = map.dimension();
  require_dimension(center, n, "estimate_sigma_and_H_3d");
  const double clearance = map.clearance(center);
  if (!(clearance > 0.0)) throw DomainViolation("estimate_sigma_and_H_3d: center outside the map domain");
  const double radius = std::min(clearance * kInsetFactor, 2.0 * plan.scale_ladder.front());

  HighDimEstimate out;
  for (double s : plan.scale_ladder) {
    if (s < radius) out.scales.push_back(s);
  }
  if (out.scales.empty()) throw DomainViolation("estimate_sigma_and_H_3d: no scale fits inside the domain");
  const std::size_t L = out.scales.size();

  const auto chunks = run_chunks<double>(plan.triangle_count, plan.threads, [&](std::size_t c, std::size_t begin,
                                                                                 std::size_t end) {
    auto rng = chunk_rng(plan.seed, kTriangles, c);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    double best = 1.0;
    for (std::size_t i = begin; i < end; ++i) {
      const double s = out.scales[i % L];
      const PointN dir = random_direction(n, rng);
      const double rho = (radius - s) * kInsetFactor * std::pow(unit(rng), 1.0 / static_cast<double>(n));
      const PointN c0 = center + rho * dir;
      const auto [u, v] = random_two_frame(n, rng);
      const double phi = kThirdTurn * unit(rng);
      for (std::size_t j = 0; j < plan.orientation_count; ++j) {
        const double theta = phi + kThirdTurn * van_der_corput(j);
        std::array<PointN, 3> img;
        for (int k = 0; k < 3; ++k) {
          const double t = theta + kThirdTurn * k;
          img[static_cast<std::size_t>(k)] = map.eval(c0 + s * (std::cos(t) * u + std::sin(t) * v));
        }
        best = std::max(best, triple_skew(img[0], img[1], img[2]));
      }
    }
    return best;
  });
  out.sigma_hat = *std::max_element(chunks.begin(), chunks.end());
  out.triangles = plan.triangle_count * plan.orientation_count;

  const auto dirs = sphere_points(n, plan.circle_samples, plan.seed);
  const PointN fc = map.eval(center);
  for (double r : out.scales) {
    double hi = 0.0;
    double lo = std::numeric_limits<double>::infinity();
    for (const auto& d : dirs) {
      const double dist = (map.eval(center + r * d) - fc).norm();
      hi = std::max(hi, dist);
      lo = std::min(lo, dist);
    }
    if (!(lo > 0.0)) throw DegenerateInput("estimate_sigma_and_H_3d: a sphere point maps onto f(center)");
    out.H_per_scale.push_back(hi / lo);
  }
  out.H_hat = *std::max_element(out.H_per_scale.begin() + static_cast<std::ptrdiff_t>(L / 2), out.H_per_scale.end());

  out.report.name = "highdim";
  std::ostringstream note;
  note << map.metadata().name << ", " << out.triangles << " triangles, " << plan.circle_samples << " sphere points";
  out.report.check("H_hat <= sigma_hat^3 (1 + tol)", out.H_hat,
                   out.sigma_hat * out.sigma_hat * out.sigma_hat * (1.0 + tolerance), false, note.str());
  return out;
}

}  // namespace qcskew
