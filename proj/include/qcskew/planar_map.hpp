#pragma once

#include <cstddef>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "qcskew/geometry.hpp"

namespace qcskew {

struct WholePlane {};

/// Closed axis-aligned rectangle [x0, x1] x [y0, y1].
struct RectDomain {
  double x0 = 0.0;
  double y0 = 0.0;
  double x1 = 1.0;
  double y1 = 1.0;
};

using MapDomain = std::variant<WholePlane, RectDomain, Disk>;

bool domain_contains(const MapDomain& domain, Point2 z);

/// Distance from z to the complement of the domain; +inf for the whole plane
/// and negative when z lies outside.
double domain_clearance(const MapDomain& domain, Point2 z);

struct MapMetadata {
  std::string name;
  /// Known metric dilatation, when the map comes with one.
  std::optional<double> dilatation;
  /// Known Skew(f), when available in closed form.
  std::optional<double> skew;
  bool orientation_preserving = true;
};

/// A deterministic map of (part of) the plane into the plane.
///
/// The evaluator must be pure and reentrant: estimators call it from several
/// threads at once.
class PlanarMap {
 public:
  using Evaluator = std::function<Point2(Point2)>;

  PlanarMap(Evaluator evaluator, MapDomain domain, MapMetadata metadata);

  /// Throws OutOfDomain when z is outside the declared domain.
  [[nodiscard]] Point2 eval(Point2 z) const;
  Point2 operator()(Point2 z) const { return eval(z); }

  [[nodiscard]] bool in_domain(Point2 z) const { return domain_contains(domain_, z); }
  [[nodiscard]] double clearance(Point2 z) const { return domain_clearance(domain_, z); }
  [[nodiscard]] const MapDomain& domain() const { return domain_; }
  [[nodiscard]] const MapMetadata& metadata() const { return metadata_; }

 private:
  Evaluator evaluator_;
  MapDomain domain_;
  MapMetadata metadata_;
};

PlanarMap make_identity();

/// Normalized real-linear map z -> z + mu * conj(z), 0 <= mu < 1.
PlanarMap make_affine(double mu);

/// Radial stretch z -> z |z|^(K-1), K >= 1. Its circles about the origin map
/// to circles, and at every z != 0 the derivative stretches radially by K
/// relative to the tangential direction.
PlanarMap make_radial_stretch(double K);

/// z -> z^2. Conformal away from the origin.
PlanarMap make_square();

/// Image samples of a map on a regular nx-by-ny grid over a rectangle, in
/// row-major order with y varying slowest.
struct GridMapData {
  RectDomain domain;
  std::size_t nx = 0;
  std::size_t ny = 0;
  std::vector<Point2> points;

  [[nodiscard]] Point2 node(std::size_t i, std::size_t j) const { return points[j * nx + i]; }
};

/// Throws FormatError unless nx, ny >= 2, the point count matches, the
/// rectangle is nondegenerate and every value is finite.
void validate(const GridMapData& grid);

/// Bilinear interpolation of the grid. Not checked for injectivity.
PlanarMap make_grid_map(GridMapData grid);

GridMapData sample_grid(const PlanarMap& map, const RectDomain& rect, std::size_t nx, std::size_t ny);

/// Grid-map file: a JSON object {"domain": [x0,y0,x1,y1], "nx": .., "ny": ..,
/// "points": [[X,Y], ...]}.
GridMapData read_grid_data(std::istream& in);
void write_grid_data(const GridMapData& grid, std::ostream& out);
PlanarMap load_grid_map(std::istream& in);
PlanarMap load_grid_map_file(const std::string& path);

/// Finite-difference spot check of the Jacobian sign. Reported, never
/// enforced.
struct OrientationCheck {
  std::size_t samples = 0;
  std::size_t negative = 0;
  std::size_t near_singular = 0;

  [[nodiscard]] bool consistent() const { return negative == 0; }
};

OrientationCheck check_orientation(const PlanarMap& map, const RectDomain& rect, std::size_t per_axis = 16);

}  // namespace qcskew
