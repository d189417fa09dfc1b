#include "qcskew/proof_constants.hpp"

#include <cmath>
#include <iomanip>
#include <numbers>
#include <sstream>

#include "qcskew/errors.hpp"
#include "qcskew/exact.hpp"
#include "qcskew/lattice.hpp"

namespace qcskew {

namespace {

constexpr int kDigits = 12;

// log(1 + 2 s^3) without overflowing s^3.
double log_one_plus_two_cubed(double sigma) {
  const double ls = std::log(sigma);
  if (3.0 * ls < 600.0) return std::log1p(2.0 * sigma * sigma * sigma);
  return std::log(2.0) + 3.0 * ls + std::log1p(0.5 * std::exp(-3.0 * ls));
}

// log(sigma + 2 sigma^4), evaluated directly when it fits.
double log_sigma_plus_two_fourth(double sigma) {
  const double s4 = sigma * sigma * sigma * sigma;
  if (std::isfinite(s4)) return std::log(sigma + 2.0 * s4);
  const double ls = std::log(sigma);
  return std::log(2.0) + 4.0 * ls + std::log1p(0.5 * std::exp(-3.0 * ls));
}

}  // namespace

std::string decimal_from_log(double log_x) {
  std::ostringstream out;
  out << std::setprecision(kDigits);
  if (std::abs(log_x) < 700.0) {
    out << std::exp(log_x);
    return out.str();
  }
  const double l10 = log_x / std::numbers::ln10;
  double e = std::floor(l10);
  const double unit = std::pow(10.0, kDigits - 1);
  double m = std::round(std::pow(10.0, l10 - e) * unit) / unit;
  if (m >= 10.0) {
    m /= 10.0;
    e += 1.0;
  }
  out << std::fixed << std::setprecision(kDigits - 1) << m << "e" << (e >= 0 ? "+" : "-")
      << static_cast<long long>(std::abs(e));
  return out.str();
}

std::string ConstantChain::C_decimal() const { return decimal_from_log(log_C); }
std::string ConstantChain::inv_alpha_decimal() const { return decimal_from_log(-log_alpha); }
std::string ConstantChain::H_decimal() const { return decimal_from_log(log_H); }

ConstantChain constant_chain(double sigma, std::uint64_t N) {
  if (!(sigma >= 1.0) || !std::isfinite(sigma)) throw DomainViolation("constant_chain: sigma must be finite and >= 1");
  if (N == 0) throw DomainViolation("constant_chain: N must be >= 1");
  ConstantChain out;
  out.sigma = sigma;
  out.N = N;
  const double ls = std::log(sigma);
  const double lN = std::log(static_cast<double>(N));
  const double nd = static_cast<double>(N);
  out.log_C = ls + log_one_plus_two_cubed(sigma);
  out.log_c = -(lN + nd * ls);
  out.log_alpha = out.log_c - std::log(2.0 * sigma + 1.0) - out.log_C;
  out.log_H = -2.0 * out.log_alpha;
  out.log_H_alt = 2.0 * std::log(2.0 * sigma + 1.0) + 2.0 * log_sigma_plus_two_fourth(sigma) + 2.0 * lN + 2.0 * nd * ls;
  return out;
}

namespace {

using S3 = Sqrt3Number;

S3 q(std::int64_t num, std::int64_t den = 1) { return S3(Rational(num, den)); }
S3 r3(std::int64_t num, std::int64_t den = 1) { return S3(0, Rational(num, den)); }

// lhs < rhs (strict) or lhs <= rhs, certified by the sqrt(3) enclosure; an
// exact tie is accepted for the non-strict form.
void certify(BoundReport& report, std::string name, const S3& lhs, const S3& rhs, bool strict,
             std::string note = {}) {
  const S3 gap = rhs - lhs;
  const bool holds = gap.lower() > 0 || (!strict && gap.sign() == 0);
  report.check(std::move(name), lhs.approx(), rhs.approx(), strict, std::move(note)).passed = holds;
}

void exact_identity(BoundReport& report, std::string name, const S3& lhs, const S3& rhs, std::string note = {}) {
  report.identity(std::move(name), lhs.approx(), rhs.approx(), lhs == rhs, std::move(note));
}

}  // namespace

BoundReport verify_static_geometry() {
  BoundReport report;
  report.name = "static_geometry";

  {
    const Rational lo = sqrt3_lower();
    const Rational hi = sqrt3_upper();
    report.check("1.7320508^2 < 3", to_double(lo * lo), 3.0, true).passed = lo * lo < 3;
    report.check("3 < 1.7320509^2", 3.0, to_double(hi * hi), true).passed = 3 < hi * hi;
  }
  certify(report, "8/5 < sqrt(3)", q(8, 5), S3::sqrt3(), true);

  // p = (171 + 170 omega) / 512 in T = (0, 1, omega). Distances to the sides
  // [0, 1], [0, omega], [1, omega] are (sqrt(3)/2) * n, m, 512 - m - n over 512.
  const auto pq = locate_pq();
  const std::int64_t m = pq.p.m;
  const std::int64_t n = pq.p.n;
  const S3 d_bottom = r3(n, 1024);
  const S3 d_left = r3(m, 1024);
  const S3 d_right = r3(512 - m - n, 1024);
  const S3 dist_p = (d_bottom.sqrt3_part() <= d_left.sqrt3_part() && d_bottom.sqrt3_part() <= d_right.sqrt3_part())
                        ? d_bottom
                        : (d_left.sqrt3_part() <= d_right.sqrt3_part() ? d_left : d_right);
  exact_identity(report, "dist(p, boundary T) = 85 sqrt(3) 2^-9", dist_p, r3(85, 512));
  certify(report, "1/4 + 2^-6 < dist(p, boundary T)", q(1, 4) + q(1, 64), dist_p, true,
          "D(p, 1/4 + 2^-6) lies in the interior of T");
  exact_identity(report, "85 (8/5) 2^-9 = 1/4 + 2^-6", q(85 * 8, 5 * 512), q(1, 4) + q(1, 64),
                 "sqrt(3) >= 8/5 alone only gives >=; strictness comes from sqrt(3) > 8/5");
  certify(report, "85 (8/5) 2^-9 < 85 sqrt(3) 2^-9", q(85 * 8, 5 * 512), r3(85, 512), true);

  {
    // 1536 (xi - p) = (512 - 3m) + (512 - 3n) omega.
    const std::int64_t a = 512 - 3 * m;
    const std::int64_t b = 512 - 3 * n;
    const Rational norm2(a * a + a * b + b * b, 1536 * 1536);
    const S3 claimed = r3(1, 1536);
    exact_identity(report, "|xi - p| = sqrt(3) / 1536", S3(norm2), claimed * claimed, "compared as squares");
  }

  const S3 p_minus_q = q(1, 512);
  {
    const auto d = pq.q - pq.p;
    exact_identity(report, "|p - q| = 2^-9", S3(Rational(d.norm_numerator(), std::int64_t{1} << (2 * d.k))),
                   p_minus_q * p_minus_q, "compared as squares");
  }
  certify(report, "|p - q| = 2^-9 < sqrt(3) 2^-8", p_minus_q, r3(1, 256), true);
  certify(report, "radius(D_q) + |p - q| = 1/4 + 2^-8 < 1/4 + sqrt(3) 2^-7", q(1, 4) + p_minus_q + p_minus_q,
          q(1, 4) + r3(1, 128), true, "D_q lies in D(p, 1/4 + sqrt(3) 2^-7)");
  certify(report, "1/4 + sqrt(3) 2^-7 < 1/4 + 2^-6", q(1, 4) + r3(1, 128), q(1, 4) + q(1, 64), true,
          "D(p, 1/4 + sqrt(3) 2^-7) lies in T");

  exact_identity(report, "cos(pi/6) 2^-6 = sqrt(3) 2^-7", r3(1, 2) * q(1, 64), r3(1, 128),
                 "clearance of the middle sector S_a from D(p, 1/4)");
  certify(report, "0 < sqrt(3) 2^-7", q(0), r3(1, 128), true);

  // Angle lemma with |z| <= 1/8 and |theta_pm -+ pi/3| <= 1/8.
  exact_identity(report, "max |z| + 1/8 = 1/4", q(1, 8) + q(1, 8), q(1, 4));
  certify(report, "1/2 - 1/4 < cos(pi/3) - 1/8", q(1, 2) - q(1, 4), q(1, 2) - q(1, 8), true,
          "cos is 1-Lipschitz");
  certify(report, "1/8 < 1/2 - 1/4", q(1, 8), q(1, 2) - q(1, 4), true, "cos theta_pm > |z|, so the angle is < pi");
  const S3 tan_lower = (r3(1, 2) - q(1, 4)) / Rational(3, 4);
  exact_identity(report, "(sqrt(3)/2 - 1/4) / (1/2 + 1/4) = (2 sqrt(3) - 1) / 3", tan_lower,
                 (r3(2) - q(1)) / Rational(3));
  certify(report, "2/3 < (2 sqrt(3) - 1) / 3", q(2, 3), tan_lower, true);
  {
    // tan(pi/6) = 1/sqrt(3) < 2/3 iff 1/3 < 4/9.
    const Rational lhs(1, 3);
    const Rational rhs(4, 9);
    report.check("tan(pi/6)^2 = 1/3 < (2/3)^2", to_double(lhs), to_double(rhs), true).passed = lhs < rhs;
  }

  // Angle perturbation: |a - A| <= 2^-6 with |a - p| = 1/4.
  exact_identity(report, "2 2^-6 / (1/4) = 1/8", q(2, 64) / Rational(1, 4), q(1, 8),
                 "the printed bound is met with equality");
  {
    // |theta_A - theta_a| <= arcsin(1/16) <= (1/16) / sqrt(1 - 1/256) = 1/sqrt(255) < 1/15.
    const Rational inv255(1, 255);
    const Rational inv225(1, 225);
    report.check("arcsin(2^-6 / (1/4))^2 <= 1/255 < 1/15^2", to_double(inv255), to_double(inv225), true,
                 "sharp angle bound")
        .passed = inv255 < inv225;
  }
  certify(report, "1/15 < 1/8", q(1, 15), q(1, 8), true, "|theta_A - theta_a| < 1/8");
  certify(report, "|p - q| / (1/4) = 2^-7 < 1/8", p_minus_q / Rational(1, 4), q(1, 8), true);
  return report;
}

}  // namespace qcskew
