#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "qcskew/bound_report.hpp"
#include "qcskew/highdim.hpp"
#include "qcskew/proof_constants.hpp"
#include "qcskew/skew_metrics.hpp"

namespace qcskew::cli {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

/// Flat table for the CSV projection.
struct CsvTable {
  std::string name;
  std::vector<std::string> header;
  std::vector<std::vector<Json>> rows;
};

/// Everything a command emits. `timings` is kept apart from the numeric
/// payload so that reruns can be compared after dropping it.
struct Report {
  std::string command;
  Json config = Json::object();
  Json results = Json::object();
  Json timings = Json::object();
  std::vector<BoundReport> bounds;
  std::vector<CsvTable> tables;

  [[nodiscard]] bool passed() const;
  [[nodiscard]] std::vector<std::string> failures() const;
};

Json to_json(Point2 z);
Json to_json(const Triangle2& t);
Json to_json(const PointN& x);
Json to_json(const DistortionReport& r);
Json to_json(const BoundReport& r);
Json to_json(const ConstantChain& c);

/// Per-scale rows of a distortion report.
CsvTable per_scale_table(const std::string& name, const DistortionReport& r);

/// JSON document: schema_version, tool, version, command, config, results,
/// bounds, passed, failures, timings.
std::string render_json(const Report& report);

/// Each table as "# <name>" followed by a header line and rows; bound entries
/// are appended as one more table.
std::string render_csv(const Report& report);

}  // namespace qcskew::cli
