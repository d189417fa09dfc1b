#include "qcskew/sampling.hpp"

#include <cmath>
#include <numbers>

#include "qcskew/errors.hpp"

namespace qcskew {

void SamplingPlan::validate() const {
  if (triangle_count == 0 || orientation_count == 0 || circle_samples == 0) {
    throw DomainViolation("sampling plan: counts must be at least 1");
  }
  if (scale_ladder.empty()) throw DomainViolation("sampling plan: scale ladder is empty");
  for (std::size_t i = 0; i < scale_ladder.size(); ++i) {
    const double s = scale_ladder[i];
    if (!(s > 0.0) || !std::isfinite(s)) {
      throw DomainViolation("sampling plan: scales must be positive and finite");
    }
    if (i > 0 && !(s < scale_ladder[i - 1])) {
      throw DomainViolation("sampling plan: scale ladder must be strictly decreasing");
    }
  }
}

std::size_t resolve_threads(std::size_t requested) {
  if (requested > 0) return requested;
  return std::max<std::size_t>(1, std::thread::hardware_concurrency());
}

std::mt19937_64 chunk_rng(std::uint64_t seed, std::uint64_t stream, std::uint64_t chunk) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(chunk),
                    static_cast<std::uint32_t>(chunk >> 32)};
  return std::mt19937_64(seq);
}

double van_der_corput(std::uint64_t i) {
  double result = 0.0;
  double weight = 0.5;
  for (; i != 0; i >>= 1, weight *= 0.5) {
    if (i & 1U) result += weight;
  }
  return result;
}

std::pair<double, double> r2_point(std::uint64_t i, std::pair<double, double> offset) {
  // Plastic number: the real root of x^3 = x + 1.
  constexpr double kPlastic = 1.32471795724474602596;
  constexpr double a1 = 1.0 / kPlastic;
  constexpr double a2 = 1.0 / (kPlastic * kPlastic);
  const double n = static_cast<double>(i);
  const double u = offset.first + n * a1;
  const double v = offset.second + n * a2;
  return {u - std::floor(u), v - std::floor(v)};
}

Point2 square_to_disk(std::pair<double, double> uv, Point2 center, double radius) {
  return center + std::polar(radius * std::sqrt(uv.first), 2.0 * std::numbers::pi * uv.second);
}

std::pair<double, double> seeded_offset(std::uint64_t seed, std::uint64_t stream) {
  auto rng = chunk_rng(seed, stream, ~std::uint64_t{0});
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double u = unit(rng);
  const double v = unit(rng);
  return {u, v};
}

}  // namespace qcskew
