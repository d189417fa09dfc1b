#include "qcskew/linear_extremal.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "qcskew/errors.hpp"
#include "qcskew/sampling.hpp"

namespace qcskew {

namespace {

constexpr double kSqrt3 = std::numbers::sqrt3;
const Point2 kAlpha = std::polar(1.0, std::numbers::pi / 3.0);
const Point2 kBeta = std::polar(1.0, std::numbers::pi / 6.0);

void require_open_mu(double mu, const char* who) {
  if (!(mu > 0.0 && mu < 1.0)) throw DomainViolation(std::string(who) + ": mu must lie in (0, 1)");
}

}  // namespace

BeltramiParams::BeltramiParams(double m) : mu(m) {
  if (!(mu >= 0.0 && mu < 1.0)) throw DomainViolation("BeltramiParams: mu must lie in [0, 1)");
}

double BeltramiParams::nu() const {
  require_open_mu(mu, "BeltramiParams::nu");
  return mu + 1.0 / mu;
}

double linear_skew(double mu) {
  if (!(mu >= 0.0 && mu < 1.0)) throw DomainViolation("linear_skew: mu must lie in [0, 1)");
  if (mu == 0.0) return 1.0;
  // nu^2 - 1 = mu^2 + 1 + mu^-2
  const double s = std::sqrt((mu * mu + 1.0 + 1.0 / (mu * mu)) / 3.0);
  return std::sqrt((s + 1.0) / (s - 1.0));
}

double mu_from_skew(double tau) {
  if (!(tau >= 1.0) || !std::isfinite(tau)) throw DomainViolation("mu_from_skew: tau must be finite and >= 1");
  if (tau == 1.0) return 0.0;
  // (sqrt(t^4 + t^2 + 1) - sqrt(3) t) / (t^2 - 1), rationalized to avoid the
  // cancellation near tau = 1.
  const double t2 = tau * tau;
  return (t2 - 1.0) / (std::sqrt(t2 * t2 + t2 + 1.0) + kSqrt3 * tau);
}

double K_of_sigma(double sigma) {
  if (!(sigma >= 1.0) || !std::isfinite(sigma)) throw DomainViolation("K_of_sigma: sigma must be finite and >= 1");
  const double s2 = sigma * sigma;
  return (s2 - 1.0 + std::sqrt(s2 * s2 + s2 + 1.0)) / (kSqrt3 * sigma);
}

std::complex<double> kappa(double mu, Point2 z) {
  const double nu = BeltramiParams(mu).nu();
  return (nu + kAlpha * z + std::conj(kAlpha) * std::conj(z)) / (nu + std::conj(kAlpha) * z + kAlpha * std::conj(z));
}

ExtremalDirections extremal_directions(double mu) {
  require_open_mu(mu, "extremal_directions");
  const double nu = BeltramiParams(mu).nu();
  const double root = std::sqrt(nu * nu - 1.0);
  ExtremalDirections out;
  out.cos_x = -1.0 / nu;
  out.maximizer = Point2{-1.0, -root} / nu;
  out.minimizer = Point2{-1.0, root} / nu;
  out.kappa_max = kappa(mu, out.maximizer).real();
  out.kappa_min = kappa(mu, out.minimizer).real();
  return out;
}

Triangle2 extremal_triangle(double mu) {
  const Point2 w = std::sqrt(extremal_directions(mu).maximizer);
  return {Point2{}, std::conj(kBeta) * w, kBeta * w};
}

double side_ratio(double mu, Point2 z) {
  const auto f = [mu](Point2 u) { return u + mu * std::conj(u); };
  return std::abs(f(z)) / std::abs(f(z * kAlpha));
}

double oracle_max_ratio(double mu, std::size_t grid, std::size_t threads) {
  if (!(mu >= 0.0 && mu < 1.0)) throw DomainViolation("oracle_max_ratio: mu must lie in [0, 1)");
  if (grid < 3) throw DomainViolation("oracle_max_ratio: grid must have at least 3 points");
  const double step = 2.0 * std::numbers::pi / static_cast<double>(grid);
  const auto ratio_at = [mu](double theta) { return side_ratio(mu, std::polar(1.0, theta)); };

  struct Best {
    double value = -std::numeric_limits<double>::infinity();
    std::size_t index = 0;
  };
  const auto chunks = run_chunks<Best>(grid, threads, [&](std::size_t, std::size_t begin, std::size_t end) {
    Best b;
    for (std::size_t k = begin; k < end; ++k) {
      const double v = ratio_at(step * static_cast<double>(k));
      if (v > b.value) b = {v, k};
    }
    return b;
  });
  Best best;
  for (const auto& c : chunks) {
    if (c.value > best.value) best = c;
  }
  const double center = step * static_cast<double>(best.index);
  const double refined = golden_section_maximize(ratio_at, center - step, center + step);
  return std::max(best.value, ratio_at(refined));
}

}  // namespace qcskew
