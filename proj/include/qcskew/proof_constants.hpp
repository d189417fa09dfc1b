#pragma once

#include <cstdint>
#include <string>

#include "qcskew/bound_report.hpp"

namespace qcskew {

/// Constants of the equilateral-skew to metric-dilatation argument, in
/// natural-log space:
///   C = sigma (1 + 2 sigma^3), c = 1 / (N sigma^N),
///   alpha = c / ((2 sigma + 1) C), H = alpha^-2.
struct ConstantChain {
  double sigma = 1.0;
  std::uint64_t N = std::uint64_t{1} << 18;
  double log_c = 0.0;
  double log_C = 0.0;
  double log_alpha = 0.0;
  double log_H = 0.0;
  /// log H from the expanded sum 2 log(2 sigma + 1) + 2 log(sigma + 2 sigma^4)
  /// + 2 log N + 2 N log sigma.
  double log_H_alt = 0.0;

  /// Decimal renderings, "m.mmmmmmmmmmmmmmme+E" when outside the double range.
  [[nodiscard]] std::string C_decimal() const;
  [[nodiscard]] std::string inv_alpha_decimal() const;
  [[nodiscard]] std::string H_decimal() const;
};

/// Throws DomainViolation unless sigma >= 1 is finite and N >= 1.
ConstantChain constant_chain(double sigma, std::uint64_t N = std::uint64_t{1} << 18);

/// exp(log_x) as a decimal string with 16 significant digits; falls back to
/// mantissa and exponent when exp(log_x) does not fit in a double.
std::string decimal_from_log(double log_x);

/// Every numeric inequality used by the lattice-chain and curve arguments,
/// decided with exact rationals and the enclosure 1.7320508 < sqrt(3) <
/// 1.7320509. Identities are exact equalities.
BoundReport verify_static_geometry();

}  // namespace qcskew
