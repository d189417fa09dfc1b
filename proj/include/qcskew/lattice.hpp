#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "qcskew/bound_report.hpp"
#include "qcskew/geometry.hpp"
#include "qcskew/planar_map.hpp"

namespace qcskew {

/// Exact point (m + n omega) / 2^k of the dyadic triangular lattice
/// 2^-k (Z + omega Z).
struct LatticeCoord {
  std::int64_t m = 0;
  std::int64_t n = 0;
  unsigned k = 0;

  /// Same point with denominator 2^k_new; requires k_new >= k.
  [[nodiscard]] LatticeCoord rescaled(unsigned k_new) const;
  /// Same point with the smallest possible k.
  [[nodiscard]] LatticeCoord reduced() const;
  [[nodiscard]] Point2 to_point() const;
  /// m^2 + m n + n^2, so that |v|^2 = norm_numerator() / 4^k exactly.
  [[nodiscard]] std::int64_t norm_numerator() const { return m * m + m * n + n * n; }

  friend LatticeCoord operator+(const LatticeCoord& a, const LatticeCoord& b);
  friend LatticeCoord operator-(const LatticeCoord& a, const LatticeCoord& b);
  friend bool operator==(const LatticeCoord& a, const LatticeCoord& b);
};

struct LatticeTriangle {
  std::array<std::size_t, 3> vertices;
  std::array<std::size_t, 3> edges;
};

/// Tiling of the closed triangle with vertices 0, 1, omega by the 4^k
/// triangles of side 2^-k of the lattice 2^-k (Z + omega Z).
///
/// Vertex (i, j) is (i + j omega) / 2^k with i, j >= 0 and i + j <= 2^k.
class TilingK {
 public:
  static constexpr unsigned kDefaultCap = 10;

  /// Throws DomainViolation when k exceeds `cap`.
  static TilingK build(unsigned k, unsigned cap = kDefaultCap);

  [[nodiscard]] unsigned k() const { return k_; }
  [[nodiscard]] std::int64_t side() const { return side_; }
  [[nodiscard]] std::size_t vertex_count() const { return coords_.size(); }
  [[nodiscard]] const LatticeCoord& vertex(std::size_t v) const { return coords_[v]; }
  [[nodiscard]] Point2 point(std::size_t v) const { return coords_[v].to_point(); }
  [[nodiscard]] std::optional<std::size_t> vertex_at(std::int64_t i, std::int64_t j) const;
  [[nodiscard]] std::optional<std::size_t> find_vertex(const LatticeCoord& c) const;

  [[nodiscard]] const std::vector<LatticeTriangle>& triangles() const { return triangles_; }
  [[nodiscard]] const std::vector<std::array<std::size_t, 2>>& edges() const { return edges_; }
  /// Triangles containing edge e (one for boundary edges, two otherwise).
  [[nodiscard]] const std::vector<std::size_t>& edge_triangles(std::size_t e) const { return edge_triangles_[e]; }
  [[nodiscard]] bool is_boundary_edge(std::size_t e) const { return edge_triangles_[e].size() == 1; }
  [[nodiscard]] std::optional<std::size_t> find_edge(const LatticeCoord& a, const LatticeCoord& b) const;

  /// Edges on side s of the big triangle, in order: s = 0 is [0, 1], s = 1 is
  /// [1, omega], s = 2 is [omega, 0].
  [[nodiscard]] std::vector<std::size_t> side_edges(int s) const;

  /// Vertex is strictly inside the big triangle.
  [[nodiscard]] bool is_interior_vertex(std::size_t v) const;

 private:
  unsigned k_ = 0;
  std::int64_t side_ = 1;
  std::vector<LatticeCoord> coords_;
  std::vector<LatticeTriangle> triangles_;
  std::vector<std::array<std::size_t, 2>> edges_;
  std::vector<std::vector<std::size_t>> edge_triangles_;
  // Edge id per (direction, base vertex), -1 when absent. Directions:
  // 0: (i,j)-(i+1,j), 1: (i,j)-(i,j+1), 2: (i+1,j)-(i,j+1) based at (i,j).
  std::vector<std::int64_t> edge_lookup_;

  [[nodiscard]] std::size_t index_of(std::int64_t i, std::int64_t j) const;
  std::size_t edge_between(std::int64_t i0, std::int64_t j0, std::int64_t i1, std::int64_t j1);
};

/// Edges of a tiling, adjacent when they are sides of a common triangle.
class ChainGraph {
 public:
  explicit ChainGraph(const TilingK& tiling);

  [[nodiscard]] std::size_t size() const { return neighbors_.size(); }
  [[nodiscard]] const std::vector<std::size_t>& neighbors(std::size_t e) const { return neighbors_[e]; }
  /// Breadth-first distances from `source` to every edge.
  [[nodiscard]] std::vector<std::size_t> distances_from(std::size_t source) const;

 private:
  std::vector<std::vector<std::size_t>> neighbors_;
};

/// Length of the shortest chain of triangles joining two edges: 0 for the
/// same edge, 1 for two sides of one triangle. Throws DomainViolation for an
/// edge id outside the graph.
std::size_t chain_distance(const ChainGraph& graph, std::size_t e1, std::size_t e2);

/// The distinguished points p = (171 + 170 omega) / 512 and q = p + 1/512 of
/// the k = 9 tiling.
struct PQ {
  LatticeCoord p;
  LatticeCoord q;
};

PQ locate_pq();

/// Exact checks on p and q: their construction, membership in 2^-9 Lambda,
/// [p, q] being an interior edge of `tiling9`, |p - q| = 2^-9 and
/// |xi - p| = sqrt(3) / 1536 for the centroid xi.
BoundReport verify_pq(const TilingK& tiling9);

/// Edge playing the role of [p, q] in a tiling: [p, q] itself for k = 9, and
/// otherwise the horizontal edge whose midpoint is nearest the centroid
/// (ties to the lowest row, then lowest column).
std::size_t reference_edge(const TilingK& tiling);

/// Largest image skew over the triangles of the tiling.
double measure_tiling_skew(const PlanarMap& map, const TilingK& tiling);

/// Tolerance in natural-log units for floating-point noise in the chain
/// checks.
inline constexpr double kLogTol = 1e-12;

struct ChainCheckOptions {
  std::size_t pairs = 1000;
  double tolerance = 0.01;
  std::uint64_t seed = 1;
};

/// For sampled pairs of distinct edges checks |f(e1)| <= (sigma_hat (1 + tolerance))^n |f(e2)|
/// with n the chain distance, in log space. Requires sigma_hat to cover the
/// measured tiling skew.
BoundReport verify_chain_inequality(const PlanarMap& map, const TilingK& tiling, double sigma_hat,
                                    const ChainCheckOptions& options = {});

struct SideBoundResult {
  BoundReport report;
  double sigma = 1.0;
  std::size_t triangle_count = 0;
  /// log(N sigma^N)
  double log_constant = 0.0;
};

/// L(f(T)) <= N sigma^N |f(p) - f(q)| with N the triangle count and sigma the
/// measured tiling skew, evaluated in log space; also the sharper per-side
/// chain sum and the chain-length premise.
SideBoundResult verify_side_bound(const PlanarMap& map, const TilingK& tiling);

}  // namespace qcskew
