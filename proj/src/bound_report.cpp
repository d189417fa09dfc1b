#include "qcskew/bound_report.hpp"

#include <algorithm>
#include <cmath>

namespace qcskew {

BoundEntry& BoundReport::check(std::string entry_name, double lhs, double rhs, bool strict, std::string note,
                               double abs_tol) {
  BoundEntry e;
  e.name = std::move(entry_name);
  e.kind = strict ? BoundKind::Below : BoundKind::AtMost;
  e.lhs = lhs;
  e.rhs = rhs;
  e.margin = rhs - lhs;
  e.passed = std::isfinite(e.margin) ? (strict ? e.margin > 0.0 : e.margin >= -abs_tol) : (strict ? lhs < rhs : lhs <= rhs);
  e.note = std::move(note);
  entries.push_back(std::move(e));
  return entries.back();
}

BoundEntry& BoundReport::identity(std::string entry_name, double lhs, double rhs, bool holds, std::string note) {
  entries.push_back({std::move(entry_name), BoundKind::Identity, lhs, rhs, rhs - lhs, holds, std::move(note)});
  return entries.back();
}

bool BoundReport::passed() const {
  return std::all_of(entries.begin(), entries.end(), [](const BoundEntry& e) { return e.passed; });
}

std::optional<BoundEntry> BoundReport::worst() const {
  std::optional<BoundEntry> out;
  for (const auto& e : entries) {
    if (e.kind == BoundKind::Identity) continue;
    if (!out || e.margin < out->margin) out = e;
  }
  return out;
}

std::vector<std::string> BoundReport::failures() const {
  std::vector<std::string> out;
  for (const auto& e : entries) {
    if (!e.passed) out.push_back(name + ": " + e.name);
  }
  return out;
}

}  // namespace qcskew
