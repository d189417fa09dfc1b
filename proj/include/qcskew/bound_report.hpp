#pragma once

#include <optional>
#include <string>
#include <vector>

namespace qcskew {

enum class BoundKind {
  /// lhs <= rhs, passes with margin >= 0.
  AtMost,
  /// lhs < rhs, passes with margin > 0.
  Below,
  /// lhs == rhs, decided exactly by the producer.
  Identity,
};

/// One named inequality or identity. For inequalities margin = rhs - lhs in
/// the units of the entry (plain or natural-log).
struct BoundEntry {
  std::string name;
  BoundKind kind = BoundKind::AtMost;
  double lhs = 0.0;
  double rhs = 0.0;
  double margin = 0.0;
  bool passed = false;
  std::string note;
};

struct BoundReport {
  std::string name;
  std::vector<BoundEntry> entries;

  /// Adds lhs <= rhs (or lhs < rhs when strict) and evaluates it. A
  /// non-strict entry also passes when the margin is above -abs_tol.
  BoundEntry& check(std::string entry_name, double lhs, double rhs, bool strict = false, std::string note = {},
                    double abs_tol = 0.0);
  /// Adds an identity whose truth the caller established.
  BoundEntry& identity(std::string entry_name, double lhs, double rhs, bool holds, std::string note = {});

  [[nodiscard]] bool passed() const;
  /// Entry with the smallest margin among inequalities, if any.
  [[nodiscard]] std::optional<BoundEntry> worst() const;
  [[nodiscard]] std::vector<std::string> failures() const;
};

}  // namespace qcskew
