#include "qcskew/planar_map.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <limits>
#include <memory>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "qcskew/errors.hpp"

namespace qcskew {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

std::string compact(double x) {
  std::ostringstream out;
  out << x;
  return out.str();
}

}  // namespace

bool domain_contains(const MapDomain& domain, Point2 z) {
  if (!is_finite(z)) return false;
  return std::visit(Overloaded{
                        [](const WholePlane&) { return true; },
                        [z](const RectDomain& r) {
                          return z.real() >= r.x0 && z.real() <= r.x1 && z.imag() >= r.y0 && z.imag() <= r.y1;
                        },
                        [z](const Disk& d) { return d.contains(z); },
                    },
                    domain);
}

double domain_clearance(const MapDomain& domain, Point2 z) {
  return std::visit(Overloaded{
                        [](const WholePlane&) { return std::numeric_limits<double>::infinity(); },
                        [z](const RectDomain& r) {
                          return std::min({z.real() - r.x0, r.x1 - z.real(), z.imag() - r.y0, r.y1 - z.imag()});
                        },
                        [z](const Disk& d) { return d.radius - std::abs(z - d.center); },
                    },
                    domain);
}

PlanarMap::PlanarMap(Evaluator evaluator, MapDomain domain, MapMetadata metadata)
    : evaluator_(std::move(evaluator)), domain_(domain), metadata_(std::move(metadata)) {}

Point2 PlanarMap::eval(Point2 z) const {
  if (!in_domain(z)) {
    std::ostringstream msg;
    msg << "map '" << metadata_.name << "' evaluated outside its domain at (" << z.real() << ", " << z.imag()
        << ")";
    throw OutOfDomain(msg.str());
  }
  return evaluator_(z);
}

PlanarMap make_identity() {
  return PlanarMap([](Point2 z) { return z; }, WholePlane{}, {"identity", 1.0, 1.0, true});
}

PlanarMap make_affine(double mu) {
  if (!(mu >= 0.0 && mu < 1.0)) {
    throw DomainViolation("make_affine: mu must lie in [0, 1)");
  }
  MapMetadata meta{"affine:" + compact(mu), (1.0 + mu) / (1.0 - mu), std::nullopt, true};
  return PlanarMap([mu](Point2 z) { return z + mu * std::conj(z); }, WholePlane{}, std::move(meta));
}

PlanarMap make_radial_stretch(double K) {
  if (!(K >= 1.0) || !std::isfinite(K)) {
    throw DomainViolation("make_radial_stretch: K must be finite and >= 1");
  }
  const double exponent = K - 1.0;
  return PlanarMap(
      [exponent](Point2 z) {
        const double r = std::abs(z);
        return r == 0.0 ? Point2{} : z * std::pow(r, exponent);
      },
      WholePlane{}, {"radial:" + compact(K), K, std::nullopt, true});
}

PlanarMap make_square() {
  return PlanarMap([](Point2 z) { return z * z; }, WholePlane{}, {"square", std::nullopt, std::nullopt, true});
}

void validate(const GridMapData& grid) {
  const auto& d = grid.domain;
  if (!(std::isfinite(d.x0) && std::isfinite(d.y0) && std::isfinite(d.x1) && std::isfinite(d.y1))) {
    throw FormatError("grid map: domain bounds must be finite");
  }
  if (!(d.x1 > d.x0) || !(d.y1 > d.y0)) {
    throw FormatError("grid map: domain must satisfy x0 < x1 and y0 < y1");
  }
  if (grid.nx < 2 || grid.ny < 2) {
    throw FormatError("grid map: nx and ny must be at least 2");
  }
  if (grid.points.size() != grid.nx * grid.ny) {
    std::ostringstream msg;
    msg << "grid map: expected nx*ny = " << grid.nx * grid.ny << " points, got " << grid.points.size();
    throw FormatError(msg.str());
  }
  for (const auto& p : grid.points) {
    if (!is_finite(p)) throw FormatError("grid map: non-finite image point");
  }
}

PlanarMap make_grid_map(GridMapData grid) {
  validate(grid);
  const RectDomain rect = grid.domain;
  auto shared = std::make_shared<const GridMapData>(std::move(grid));
  auto eval = [g = shared](Point2 z) {
    const auto& r = g->domain;
    const double u = (z.real() - r.x0) / (r.x1 - r.x0) * static_cast<double>(g->nx - 1);
    const double v = (z.imag() - r.y0) / (r.y1 - r.y0) * static_cast<double>(g->ny - 1);
    const auto cell = [](double t, std::size_t n) {
      const double c = std::floor(t);
      return static_cast<std::size_t>(std::clamp(c, 0.0, static_cast<double>(n - 2)));
    };
    const std::size_t i = cell(u, g->nx);
    const std::size_t j = cell(v, g->ny);
    const double s = u - static_cast<double>(i);
    const double t = v - static_cast<double>(j);
    return (1.0 - s) * (1.0 - t) * g->node(i, j) + s * (1.0 - t) * g->node(i + 1, j) +
           (1.0 - s) * t * g->node(i, j + 1) + s * t * g->node(i + 1, j + 1);
  };
  std::ostringstream name;
  name << "grid:" << shared->nx << "x" << shared->ny;
  return PlanarMap(std::move(eval), rect, {name.str(), std::nullopt, std::nullopt, true});
}

GridMapData sample_grid(const PlanarMap& map, const RectDomain& rect, std::size_t nx, std::size_t ny) {
  if (nx < 2 || ny < 2) throw DomainViolation("sample_grid: nx and ny must be at least 2");
  GridMapData grid{rect, nx, ny, {}};
  grid.points.reserve(nx * ny);
  for (std::size_t j = 0; j < ny; ++j) {
    // Exact endpoints keep boundary nodes inside closed rectangular domains.
    const double y = j + 1 == ny ? rect.y1 : rect.y0 + (rect.y1 - rect.y0) * static_cast<double>(j) / (ny - 1);
    for (std::size_t i = 0; i < nx; ++i) {
      const double x = i + 1 == nx ? rect.x1 : rect.x0 + (rect.x1 - rect.x0) * static_cast<double>(i) / (nx - 1);
      grid.points.push_back(map.eval({x, y}));
    }
  }
  return grid;
}

GridMapData read_grid_data(std::istream& in) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("grid map: malformed document: ") + e.what());
  }
  if (!doc.is_object()) throw FormatError("grid map: top level must be an object");

  const auto number = [](const nlohmann::json& v, const char* what) {
    if (!v.is_number()) throw FormatError(std::string("grid map: ") + what + " must be a number");
    const double x = v.get<double>();
    if (!std::isfinite(x)) throw FormatError(std::string("grid map: ") + what + " must be finite");
    return x;
  };
  const auto count = [](const nlohmann::json& doc, const char* key) {
    if (!doc.contains(key) || !doc[key].is_number_integer() || doc[key].get<long long>() < 0) {
      throw FormatError(std::string("grid map: field '") + key + "' must be a nonnegative integer");
    }
    return static_cast<std::size_t>(doc[key].get<long long>());
  };

  GridMapData grid;
  if (!doc.contains("domain") || !doc["domain"].is_array() || doc["domain"].size() != 4) {
    throw FormatError("grid map: field 'domain' must be an array [x0, y0, x1, y1]");
  }
  const auto& d = doc["domain"];
  grid.domain = {number(d[0], "domain"), number(d[1], "domain"), number(d[2], "domain"), number(d[3], "domain")};
  grid.nx = count(doc, "nx");
  grid.ny = count(doc, "ny");
  if (!doc.contains("points") || !doc["points"].is_array()) {
    throw FormatError("grid map: field 'points' must be an array");
  }
  grid.points.reserve(doc["points"].size());
  for (const auto& p : doc["points"]) {
    if (!p.is_array() || p.size() != 2) throw FormatError("grid map: each point must be a pair [X, Y]");
    grid.points.emplace_back(number(p[0], "point coordinate"), number(p[1], "point coordinate"));
  }
  validate(grid);
  return grid;
}

void write_grid_data(const GridMapData& grid, std::ostream& out) {
  validate(grid);
  nlohmann::json doc;
  doc["domain"] = {grid.domain.x0, grid.domain.y0, grid.domain.x1, grid.domain.y1};
  doc["nx"] = grid.nx;
  doc["ny"] = grid.ny;
  auto points = nlohmann::json::array();
  for (const auto& p : grid.points) points.push_back({p.real(), p.imag()});
  doc["points"] = std::move(points);
  out << doc.dump() << '\n';
}

PlanarMap load_grid_map(std::istream& in) { return make_grid_map(read_grid_data(in)); }

PlanarMap load_grid_map_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("grid map: cannot open '" + path + "'");
  return load_grid_map(in);
}

OrientationCheck check_orientation(const PlanarMap& map, const RectDomain& rect, std::size_t per_axis) {
  OrientationCheck check;
  const double hx = (rect.x1 - rect.x0) / static_cast<double>(per_axis + 1);
  const double hy = (rect.y1 - rect.y0) / static_cast<double>(per_axis + 1);
  const double h = 1e-4 * std::min(hx, hy);
  for (std::size_t j = 1; j <= per_axis; ++j) {
    for (std::size_t i = 1; i <= per_axis; ++i) {
      const Point2 z{rect.x0 + hx * static_cast<double>(i), rect.y0 + hy * static_cast<double>(j)};
      const Point2 dx = (map.eval(z + Point2{h, 0.0}) - map.eval(z - Point2{h, 0.0})) / (2.0 * h);
      const Point2 dy = (map.eval(z + Point2{0.0, h}) - map.eval(z - Point2{0.0, h})) / (2.0 * h);
      const double det = dx.real() * dy.imag() - dx.imag() * dy.real();
      const double scale = std::norm(dx) + std::norm(dy);
      ++check.samples;
      if (std::abs(det) <= 1e-12 * scale) {
        ++check.near_singular;
      } else if (det < 0.0) {
        ++check.negative;
      }
    }
  }
  return check;
}

}  // namespace qcskew
