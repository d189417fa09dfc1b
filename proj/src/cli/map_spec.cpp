#include "qcskew/cli/map_spec.hpp"

#include <charconv>
#include <cmath>

#include "qcskew/errors.hpp"
#include "qcskew/linear_extremal.hpp"

namespace qcskew::cli {

namespace {

double parse_real(std::string_view text, const std::string& context) {
  double value = 0.0;
  const char* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc{} || ptr != end || !std::isfinite(value)) {
    throw FormatError("cannot parse '" + std::string(text) + "' as a finite number in '" + context + "'");
  }
  return value;
}

std::pair<std::string, std::string> split_kind(const std::string& spec) {
  const auto colon = spec.find(':');
  if (colon == std::string::npos) return {spec, {}};
  return {spec.substr(0, colon), spec.substr(colon + 1)};
}

double single_arg(const std::string& arg, const std::string& spec) {
  if (arg.empty()) throw FormatError("map spec '" + spec + "' needs a parameter");
  return parse_real(arg, spec);
}

}  // namespace

std::vector<double> parse_reals(const std::string& text) {
  std::vector<double> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto comma = text.find(',', start);
    const auto stop = comma == std::string::npos ? text.size() : comma;
    out.push_back(parse_real(std::string_view(text).substr(start, stop - start), text));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

Point2 parse_point(const std::string& text) {
  const auto v = parse_reals(text);
  if (v.size() != 2) throw FormatError("expected a point 'x,y', got '" + text + "'");
  return {v[0], v[1]};
}

PlanarMap parse_planar_map(const std::string& spec) {
  const auto [kind, arg] = split_kind(spec);
  try {
    if (kind == "identity" && arg.empty()) return make_identity();
    if (kind == "square" && arg.empty()) return make_square();
    if (kind == "radial") return make_radial_stretch(single_arg(arg, spec));
    if (kind == "affine") {
      const double mu = single_arg(arg, spec);
      const PlanarMap base = make_affine(mu);
      MapMetadata meta = base.metadata();
      meta.skew = linear_skew(mu);
      return PlanarMap([base](Point2 z) { return base.eval(z); }, base.domain(), meta);
    }
    if (kind == "grid") {
      if (arg.empty()) throw FormatError("map spec 'grid:' needs a file path");
      return load_grid_map_file(arg);
    }
  } catch (const DomainViolation& e) {
    throw FormatError("map spec '" + spec + "': " + e.what());
  }
  throw FormatError("unknown planar map spec '" + spec + "' (expected identity, affine:<mu>, radial:<K>, square, grid:<path>)");
}

SpaceMap parse_space_map(const std::string& spec) {
  const auto [kind, arg] = split_kind(spec);
  try {
    if (kind == "id3" && arg.empty()) return make_identity_n(3);
    if (kind == "idN") {
      const double n = single_arg(arg, spec);
      if (n < 3 || n != std::floor(n) || n > 64) throw FormatError("idN:<n> needs an integer 3 <= n <= 64");
      return make_identity_n(static_cast<std::size_t>(n));
    }
    if (kind == "diag") return make_diagonal(parse_reals(arg));
    if (kind == "radial3") return make_radial3(single_arg(arg, spec));
    if (kind == "scale3") return make_scaling_n(3, single_arg(arg, spec));
  } catch (const DomainViolation& e) {
    throw FormatError("map spec '" + spec + "': " + e.what());
  }
  throw FormatError("unknown space map spec '" + spec +
                    "' (expected id3, idN:<n>, diag:<a,b,c,...>, radial3:<K>, scale3:<s>)");
}

Disk parse_region(const std::string& spec) {
  const auto [kind, arg] = split_kind(spec);
  if (kind != "disk") throw FormatError("unknown region spec '" + spec + "' (expected disk:<x>,<y>,<r>)");
  const auto v = parse_reals(arg);
  if (v.size() != 3) throw FormatError("region 'disk:' needs three numbers x,y,r");
  if (!(v[2] > 0.0)) throw FormatError("region radius must be positive");
  return {{v[0], v[1]}, v[2]};
}

}  // namespace qcskew::cli
