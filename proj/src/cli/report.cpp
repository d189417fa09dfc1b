#include "qcskew/cli/report.hpp"

#include <sstream>

namespace qcskew::cli {

namespace {

const char* kind_name(BoundKind k) {
  switch (k) {
    case BoundKind::AtMost:
      return "at_most";
    case BoundKind::Below:
      return "below";
    case BoundKind::Identity:
      return "identity";
  }
  return "unknown";
}

std::string csv_cell(const Json& v) {
  if (v.is_string()) {
    const auto s = v.get<std::string>();
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string quoted = "\"";
    for (char c : s) {
      if (c == '"') quoted += '"';
      quoted += c;
    }
    return quoted + "\"";
  }
  return v.dump();
}

}  // namespace

bool Report::passed() const {
  for (const auto& b : bounds) {
    if (!b.passed()) return false;
  }
  return true;
}

std::vector<std::string> Report::failures() const {
  std::vector<std::string> out;
  for (const auto& b : bounds) {
    for (auto& f : b.failures()) out.push_back(std::move(f));
  }
  return out;
}

Json to_json(Point2 z) { return Json::array({z.real(), z.imag()}); }

Json to_json(const Triangle2& t) { return Json::array({to_json(t.a), to_json(t.b), to_json(t.c)}); }

Json to_json(const PointN& x) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < x.size(); ++i) out.push_back(x[i]);
  return out;
}

Json to_json(const DistortionReport& r) {
  Json out;
  out["quantity"] = r.quantity;
  out["estimate"] = r.estimate;
  out["reliable"] = r.reliable;
  out["evaluated"] = r.evaluated;
  if (r.witness_triangle) out["witness_triangle"] = to_json(*r.witness_triangle);
  if (r.witness_point) out["witness_point"] = to_json(*r.witness_point);
  if (r.witness_scale) out["witness_scale"] = *r.witness_scale;
  Json rungs = Json::array();
  for (const auto& s : r.per_scale) {
    rungs.push_back({{"scale", s.scale}, {"value", s.value}, {"samples", s.samples}, {"reliable", s.reliable}});
  }
  out["per_scale"] = rungs;
  out["dropped_scales"] = r.dropped_scales;
  return out;
}

Json to_json(const BoundReport& r) {
  Json entries = Json::array();
  for (const auto& e : r.entries) {
    Json j{{"name", e.name}, {"kind", kind_name(e.kind)}, {"lhs", e.lhs}, {"rhs", e.rhs}};
    if (e.kind != BoundKind::Identity) j["margin"] = e.margin;
    j["passed"] = e.passed;
    if (!e.note.empty()) j["note"] = e.note;
    entries.push_back(std::move(j));
  }
  return {{"name", r.name}, {"passed", r.passed()}, {"entries", entries}};
}

Json to_json(const ConstantChain& c) {
  return {{"sigma", c.sigma},
          {"N", c.N},
          {"log_c", c.log_c},
          {"log_C", c.log_C},
          {"log_alpha", c.log_alpha},
          {"log_H", c.log_H},
          {"log_H_alt", c.log_H_alt},
          {"C", c.C_decimal()},
          {"inv_alpha", c.inv_alpha_decimal()},
          {"H", c.H_decimal()}};
}

CsvTable per_scale_table(const std::string& name, const DistortionReport& r) {
  CsvTable t{name, {"scale", "value", "samples", "reliable"}, {}};
  for (const auto& s : r.per_scale) t.rows.push_back({s.scale, s.value, s.samples, s.reliable});
  return t;
}

std::string render_json(const Report& report) {
  Json doc;
  doc["schema_version"] = kSchemaVersion;
  doc["tool"] = "qcskew";
  doc["version"] = QCSKEW_VERSION;
  doc["command"] = report.command;
  doc["config"] = report.config;
  doc["results"] = report.results;
  Json bounds = Json::array();
  for (const auto& b : report.bounds) bounds.push_back(to_json(b));
  doc["bounds"] = bounds;
  doc["passed"] = report.passed();
  doc["failures"] = report.failures();
  doc["timings"] = report.timings;
  return doc.dump(2) + "\n";
}

std::string render_csv(const Report& report) {
  std::ostringstream out;
  const auto emit = [&out](const CsvTable& t) {
    out << "# " << t.name << "\n";
    for (std::size_t i = 0; i < t.header.size(); ++i) out << (i ? "," : "") << t.header[i];
    out << "\n";
    for (const auto& row : t.rows) {
      for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << csv_cell(row[i]);
      out << "\n";
    }
  };
  for (const auto& t : report.tables) emit(t);
  CsvTable bounds{"bounds", {"report", "entry", "kind", "lhs", "rhs", "passed"}, {}};
  for (const auto& b : report.bounds) {
    for (const auto& e : b.entries) bounds.rows.push_back({b.name, e.name, kind_name(e.kind), e.lhs, e.rhs, e.passed});
  }
  emit(bounds);
  return out.str();
}

}  // namespace qcskew::cli
