#pragma once

#include <cmath>
#include <complex>
#include <cstddef>

#include "qcskew/geometry.hpp"

namespace qcskew {

/// Closed forms for the normalized real-linear map z -> z + mu * conj(z),
/// 0 <= mu < 1, and its skew tau = sup skew(f(T)) over equilateral T.
///
/// With nu = mu + 1/mu the maximal image skew satisfies
///   tau^2 = (nu^2 - 1 + sqrt(3 (nu^2 - 1))) / (nu^2 - 1 - sqrt(3 (nu^2 - 1))),
/// and inverting gives mu(tau) and the dilatation K = (1 + mu) / (1 - mu) as a
/// function of the skew bound.
struct BeltramiParams {
  double mu = 0.0;

  /// Throws DomainViolation unless 0 <= mu < 1.
  explicit BeltramiParams(double mu);

  /// mu + 1/mu; requires mu > 0.
  [[nodiscard]] double nu() const;
  [[nodiscard]] double dilatation() const { return (1.0 + mu) / (1.0 - mu); }
};

/// tau(mu). Exactly 1 at mu = 0.
double linear_skew(double mu);

/// Inverse of linear_skew. Exactly 0 at tau = 1.
double mu_from_skew(double tau);

/// K(sigma) = (sigma^2 - 1 + sqrt(sigma^4 + sigma^2 + 1)) / (sqrt(3) sigma).
double K_of_sigma(double sigma);

/// kappa(z) = |f(beta w)|^2 / |f(conj(beta) w)|^2 with z = w^2, beta = e^{i pi/6},
/// written as (nu + alpha z + conj(alpha z)) / (nu + conj(alpha) z + alpha conj(z))
/// for unit z and alpha = e^{i pi/3}. Returned as a complex number so that
/// its vanishing imaginary part can be checked.
std::complex<double> kappa(double mu, Point2 z);

/// The two unit critical points of kappa, cos x = -1/nu,
/// z = (-1 + i eps sqrt(nu^2 - 1)) / nu. `maximizer` is eps = -1.
struct ExtremalDirections {
  Point2 maximizer;
  Point2 minimizer;
  double cos_x = 0.0;
  double kappa_max = 0.0;
  double kappa_min = 0.0;
};

ExtremalDirections extremal_directions(double mu);

/// Unit equilateral triangle (0, conj(beta) w, beta w) realizing the maximal
/// image skew, where w^2 is the maximizing direction.
Triangle2 extremal_triangle(double mu);

/// |f(z)| / |f(z e^{i pi/3})| for unit z.
double side_ratio(double mu, Point2 z);

/// Brute-force maximum of side_ratio over `grid` equally spaced unit z,
/// refined by golden-section search around the best grid point. Independent
/// of the closed forms above.
double oracle_max_ratio(double mu, std::size_t grid, std::size_t threads = 0);

/// Golden-section maximization of a unimodal function on [lo, hi].
template <class F>
double golden_section_maximize(F&& f, double lo, double hi, double tol = 1e-15, int max_iter = 200) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = hi - inv_phi * (hi - lo);
  double d = lo + inv_phi * (hi - lo);
  double fc = f(c);
  double fd = f(d);
  for (int it = 0; it < max_iter && std::abs(hi - lo) > tol; ++it) {
    if (fc > fd) {
      hi = d;
      d = c;
      fd = fc;
      c = hi - inv_phi * (hi - lo);
      fc = f(c);
    } else {
      lo = c;
      c = d;
      fc = fd;
      d = lo + inv_phi * (hi - lo);
      fd = f(d);
    }
  }
  return (lo + hi) / 2.0;
}

}  // namespace qcskew
