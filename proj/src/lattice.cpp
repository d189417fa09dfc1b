#include "qcskew/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <numeric>
#include <random>
#include <sstream>
#include <unordered_map>

#include "qcskew/errors.hpp"
#include "qcskew/exact.hpp"
#include "qcskew/skew_metrics.hpp"

namespace qcskew {

LatticeCoord LatticeCoord::rescaled(unsigned k_new) const {
  if (k_new < k) throw DomainViolation("LatticeCoord::rescaled: cannot lower the scale exponent");
  const std::int64_t f = std::int64_t{1} << (k_new - k);
  return {m * f, n * f, k_new};
}

LatticeCoord LatticeCoord::reduced() const {
  LatticeCoord c = *this;
  while (c.k > 0 && c.m % 2 == 0 && c.n % 2 == 0) {
    c.m /= 2;
    c.n /= 2;
    --c.k;
  }
  return c;
}

Point2 LatticeCoord::to_point() const {
  const double scale = std::ldexp(1.0, -static_cast<int>(k));
  return (static_cast<double>(m) + static_cast<double>(n) * kOmega) * scale;
}

LatticeCoord operator+(const LatticeCoord& a, const LatticeCoord& b) {
  const unsigned k = std::max(a.k, b.k);
  const auto x = a.rescaled(k);
  const auto y = b.rescaled(k);
  return {x.m + y.m, x.n + y.n, k};
}

LatticeCoord operator-(const LatticeCoord& a, const LatticeCoord& b) {
  const unsigned k = std::max(a.k, b.k);
  const auto x = a.rescaled(k);
  const auto y = b.rescaled(k);
  return {x.m - y.m, x.n - y.n, k};
}

bool operator==(const LatticeCoord& a, const LatticeCoord& b) {
  const unsigned k = std::max(a.k, b.k);
  const auto x = a.rescaled(k);
  const auto y = b.rescaled(k);
  return x.m == y.m && x.n == y.n;
}

// --- TilingK ---------------------------------------------------------------

std::size_t TilingK::index_of(std::int64_t i, std::int64_t j) const {
  return static_cast<std::size_t>(j * (side_ + 1) - j * (j - 1) / 2 + i);
}

std::optional<std::size_t> TilingK::vertex_at(std::int64_t i, std::int64_t j) const {
  if (i < 0 || j < 0 || i + j > side_) return std::nullopt;
  return index_of(i, j);
}

std::optional<std::size_t> TilingK::find_vertex(const LatticeCoord& c) const {
  LatticeCoord r = c.reduced();
  if (r.k > k_) return std::nullopt;
  r = r.rescaled(k_);
  return vertex_at(r.m, r.n);
}

std::size_t TilingK::edge_between(std::int64_t i0, std::int64_t j0, std::int64_t i1, std::int64_t j1) {
  const std::int64_t di = i1 - i0;
  const std::int64_t dj = j1 - j0;
  int dir = 0;
  std::int64_t bi = i0;
  std::int64_t bj = j0;
  if (di == 1 && dj == 0) {
    dir = 0;
  } else if (di == 0 && dj == 1) {
    dir = 1;
  } else if (di == -1 && dj == 1) {
    dir = 2;
    bi = i1;
  } else {
    return edge_between(i1, j1, i0, j0);
  }
  const std::size_t slot = static_cast<std::size_t>(dir) * coords_.size() + index_of(bi, bj);
  if (edge_lookup_[slot] < 0) {
    edge_lookup_[slot] = static_cast<std::int64_t>(edges_.size());
    edges_.push_back({index_of(i0, j0), index_of(i1, j1)});
    edge_triangles_.emplace_back();
  }
  return static_cast<std::size_t>(edge_lookup_[slot]);
}

TilingK TilingK::build(unsigned k, unsigned cap) {
  if (k > cap) {
    std::ostringstream msg;
    msg << "build_tiling: k = " << k << " exceeds the cap " << cap;
    throw DomainViolation(msg.str());
  }
  TilingK t;
  t.k_ = k;
  t.side_ = std::int64_t{1} << k;
  const std::int64_t n = t.side_;
  t.coords_.reserve(static_cast<std::size_t>((n + 1) * (n + 2) / 2));
  for (std::int64_t j = 0; j <= n; ++j) {
    for (std::int64_t i = 0; i + j <= n; ++i) t.coords_.push_back({i, j, k});
  }
  t.edge_lookup_.assign(3 * t.coords_.size(), -1);
  t.triangles_.reserve(static_cast<std::size_t>(n * n));

  const auto add = [&t](std::array<std::array<std::int64_t, 2>, 3> v) {
    LatticeTriangle tri{};
    for (int a = 0; a < 3; ++a) tri.vertices[a] = t.index_of(v[a][0], v[a][1]);
    for (int a = 0; a < 3; ++a) {
      const auto& p = v[a];
      const auto& q = v[(a + 1) % 3];
      tri.edges[a] = t.edge_between(p[0], p[1], q[0], q[1]);
    }
    const std::size_t id = t.triangles_.size();
    for (std::size_t e : tri.edges) t.edge_triangles_[e].push_back(id);
    t.triangles_.push_back(tri);
  };
  for (std::int64_t j = 0; j < n; ++j) {
    for (std::int64_t i = 0; i + j < n; ++i) {
      add({{{i, j}, {i + 1, j}, {i, j + 1}}});
      if (i + j <= n - 2) add({{{i + 1, j}, {i + 1, j + 1}, {i, j + 1}}});
    }
  }
  return t;
}

std::optional<std::size_t> TilingK::find_edge(const LatticeCoord& a, const LatticeCoord& b) const {
  const auto va = find_vertex(a);
  const auto vb = find_vertex(b);
  if (!va || !vb) return std::nullopt;
  const auto& ca = coords_[*va];
  const auto& cb = coords_[*vb];
  std::int64_t di = cb.m - ca.m;
  std::int64_t dj = cb.n - ca.n;
  const LatticeCoord* base = &ca;
  if (di < 0 || (di == 0 && dj < 0)) {
    di = -di;
    dj = -dj;
    base = &cb;
  }
  int dir = -1;
  const std::int64_t si = base->m;
  std::int64_t sj = base->n;
  if (di == 1 && dj == 0) {
    dir = 0;
  } else if (di == 0 && dj == 1) {
    dir = 1;
  } else if (di == 1 && dj == -1) {
    // Stored as (i+1, j)-(i, j+1) based at (i, j); here base = (i, j+1).
    dir = 2;
    sj -= 1;
  }
  if (dir < 0) return std::nullopt;
  if (si < 0 || sj < 0 || si + sj > side_) return std::nullopt;
  const std::int64_t id = edge_lookup_[static_cast<std::size_t>(dir) * coords_.size() + index_of(si, sj)];
  if (id < 0) return std::nullopt;
  return static_cast<std::size_t>(id);
}

std::vector<std::size_t> TilingK::side_edges(int s) const {
  std::vector<std::size_t> out;
  const std::int64_t n = side_;
  for (std::int64_t t = 0; t < n; ++t) {
    std::optional<std::size_t> e;
    switch (s) {
      case 0:
        e = find_edge({t, 0, k_}, {t + 1, 0, k_});
        break;
      case 1:
        e = find_edge({n - t, t, k_}, {n - t - 1, t + 1, k_});
        break;
      case 2:
        e = find_edge({0, n - t, k_}, {0, n - t - 1, k_});
        break;
      default:
        throw DomainViolation("side_edges: side must be 0, 1 or 2");
    }
    out.push_back(*e);
  }
  return out;
}

bool TilingK::is_interior_vertex(std::size_t v) const {
  const auto& c = coords_[v];
  return c.m > 0 && c.n > 0 && c.m + c.n < side_;
}

// --- ChainGraph ------------------------------------------------------------

ChainGraph::ChainGraph(const TilingK& tiling) : neighbors_(tiling.edges().size()) {
  for (const auto& tri : tiling.triangles()) {
    for (int a = 0; a < 3; ++a) {
      for (int b = 0; b < 3; ++b) {
        if (a != b) neighbors_[tri.edges[a]].push_back(tri.edges[b]);
      }
    }
  }
}

std::vector<std::size_t> ChainGraph::distances_from(std::size_t source) const {
  if (source >= neighbors_.size()) throw DomainViolation("chain graph: edge id out of range");
  constexpr auto kUnset = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> dist(neighbors_.size(), kUnset);
  std::deque<std::size_t> queue{source};
  dist[source] = 0;
  while (!queue.empty()) {
    const std::size_t e = queue.front();
    queue.pop_front();
    for (std::size_t f : neighbors_[e]) {
      if (dist[f] == kUnset) {
        dist[f] = dist[e] + 1;
        queue.push_back(f);
      }
    }
  }
  return dist;
}

std::size_t chain_distance(const ChainGraph& graph, std::size_t e1, std::size_t e2) {
  if (e1 >= graph.size() || e2 >= graph.size()) throw DomainViolation("chain_distance: edge not in the tiling");
  if (e1 == e2) return 0;
  return graph.distances_from(e1)[e2];
}

// --- p, q -----------------------------------------------------------------

PQ locate_pq() {
  // p = 1/2 - 85 * 2^-9 + 85 * 2^-8 omega, q = p + 2^-9.
  const LatticeCoord half{1, 0, 1};
  const LatticeCoord shift{85, 0, 9};
  const LatticeCoord up{0, 85, 8};
  const LatticeCoord p = (half - shift + up).rescaled(9);
  const LatticeCoord q = p + LatticeCoord{1, 0, 9};
  return {p, q};
}

BoundReport verify_pq(const TilingK& tiling9) {
  if (tiling9.k() != 9) throw DomainViolation("verify_pq: requires the k = 9 tiling");
  BoundReport report;
  report.name = "pq";
  const auto [p, q] = locate_pq();

  report.identity("p = (171 + 170 omega) / 512", 0, 0, p == LatticeCoord{171, 170, 9});
  report.identity("q = (172 + 170 omega) / 512", 0, 0, q == LatticeCoord{172, 170, 9});

  const auto vp = tiling9.find_vertex(p);
  const auto vq = tiling9.find_vertex(q);
  report.identity("p is a vertex of 2^-9 Lambda in T", 0, 0, vp.has_value());
  report.identity("q is a vertex of 2^-9 Lambda in T", 0, 0, vq.has_value());
  report.identity("p lies in the interior of T", 0, 0, vp && tiling9.is_interior_vertex(*vp));
  report.identity("q lies in the interior of T", 0, 0, vq && tiling9.is_interior_vertex(*vq));
  const auto e = tiling9.find_edge(p, q);
  report.identity("[p, q] is an edge of the k = 9 tiling", 0, 0, e.has_value());
  report.identity("[p, q] is an interior edge", 0, 0, e && !tiling9.is_boundary_edge(*e));

  // Re p = 1/2 and Im p = 85 sqrt(3) / 512 exactly.
  const Rational re_p = Rational(2 * p.m + p.n, 2 * (std::int64_t{1} << p.k));
  const Sqrt3Number im_p = Sqrt3Number(0, Rational(p.n, 2 * (std::int64_t{1} << p.k)));
  report.identity("Re p = 1/2", to_double(re_p), 0.5, re_p == Rational(1, 2));
  report.identity("Im p = 85 sqrt(3) / 512", im_p.approx(), 85.0 * 1.7320508075688772 / 512.0,
                  im_p == Sqrt3Number(0, Rational(85, 512)));

  const auto d = q - p;
  const Rational pq2 = Rational(d.norm_numerator(), std::int64_t{1} << (2 * d.k));
  report.identity("|p - q|^2 = 2^-18", to_double(pq2), std::ldexp(1.0, -18), pq2 == Rational(1, 1 << 18));

  // 1536 (xi - p) = 512 (1 + omega) - 3 (171 + 170 omega) in the basis (1, omega).
  const std::int64_t dm = 512 - 3 * p.m;
  const std::int64_t dn = 512 - 3 * p.n;
  const Rational xi_p2 = Rational(dm * dm + dm * dn + dn * dn, 1536 * 1536);
  report.identity("|xi - p|^2 = 3 / 1536^2", to_double(xi_p2), 3.0 / (1536.0 * 1536.0),
                  xi_p2 == Rational(3, 1536 * 1536));
  // Certified: (lo / 1536)^2 < |xi - p|^2 < (hi / 1536)^2 with lo < sqrt(3) < hi.
  const Rational lo = sqrt3_lower() / 1536;
  const Rational hi = sqrt3_upper() / 1536;
  report.check("(1.7320508 / 1536)^2 < |xi - p|^2", to_double(lo * lo), to_double(xi_p2), true,
               "sqrt(3) lower enclosure")
      .passed = lo * lo < xi_p2;
  report.check("|xi - p|^2 < (1.7320509 / 1536)^2", to_double(xi_p2), to_double(hi * hi), true,
               "sqrt(3) upper enclosure")
      .passed = xi_p2 < hi * hi;
  return report;
}

std::size_t reference_edge(const TilingK& tiling) {
  if (tiling.k() == 9) {
    const auto [p, q] = locate_pq();
    return *tiling.find_edge(p, q);
  }
  const std::int64_t n = tiling.side();
  std::optional<std::size_t> best;
  std::int64_t best_norm = std::numeric_limits<std::int64_t>::max();
  for (std::int64_t j = 0; j < n; ++j) {
    for (std::int64_t i = 0; i + 1 + j <= n; ++i) {
      // 6n (midpoint - centroid) in the basis (1, omega).
      const std::int64_t a = 6 * i + 3 - 2 * n;
      const std::int64_t b = 6 * j - 2 * n;
      const std::int64_t norm = a * a + a * b + b * b;
      if (norm < best_norm) {
        best_norm = norm;
        best = tiling.find_edge({i, j, tiling.k()}, {i + 1, j, tiling.k()});
      }
    }
  }
  return *best;
}

namespace {

std::vector<Point2> image_vertices(const PlanarMap& map, const TilingK& tiling) {
  std::vector<Point2> out(tiling.vertex_count());
  for (std::size_t v = 0; v < out.size(); ++v) out[v] = map.eval(tiling.point(v));
  return out;
}

double tiling_skew(const TilingK& tiling, const std::vector<Point2>& image) {
  double sigma = 1.0;
  for (const auto& tri : tiling.triangles()) {
    const Triangle2 t{image[tri.vertices[0]], image[tri.vertices[1]], image[tri.vertices[2]]};
    try {
      sigma = std::max(sigma, skew(t));
    } catch (const DegenerateInput&) {
      throw DegenerateInput("tiling skew: an image triangle is degenerate (map not injective at this resolution)");
    }
  }
  return sigma;
}

std::vector<double> log_edge_lengths(const TilingK& tiling, const std::vector<Point2>& image) {
  std::vector<double> out(tiling.edges().size());
  for (std::size_t e = 0; e < out.size(); ++e) {
    const auto [u, v] = tiling.edges()[e];
    const double len = std::abs(image[u] - image[v]);
    if (!(len > 0.0)) throw DegenerateInput("chain check: an image edge has zero length");
    out[e] = std::log(len);
  }
  return out;
}

}  // namespace

double measure_tiling_skew(const PlanarMap& map, const TilingK& tiling) {
  return tiling_skew(tiling, image_vertices(map, tiling));
}

BoundReport verify_chain_inequality(const PlanarMap& map, const TilingK& tiling, double sigma_hat,
                                    const ChainCheckOptions& options) {
  if (options.pairs == 0) throw DomainViolation("verify_chain_inequality: need at least one pair");
  if (!(options.tolerance >= 0.0)) throw DomainViolation("verify_chain_inequality: tolerance must be >= 0");
  const auto image = image_vertices(map, tiling);
  const double measured = tiling_skew(tiling, image);
  if (!(sigma_hat >= measured * (1.0 - 1e-12))) {
    std::ostringstream msg;
    msg << "verify_chain_inequality: sigma_hat " << sigma_hat << " is below the measured tiling skew " << measured;
    throw DomainViolation(msg.str());
  }
  const auto log_len = log_edge_lengths(tiling, image);
  const ChainGraph graph(tiling);
  const double log_sigma = std::log(sigma_hat * (1.0 + options.tolerance));

  std::mt19937_64 rng(options.seed);
  std::uniform_int_distribution<std::size_t> pick(0, log_len.size() - 1);
  std::unordered_map<std::size_t, std::vector<std::size_t>> bfs_cache;

  double worst_lhs = 0.0;
  double worst_rhs = 0.0;
  double worst_margin = std::numeric_limits<double>::infinity();
  std::size_t worst_n = 0;
  std::size_t failing = 0;
  std::size_t max_n = 0;
  for (std::size_t s = 0; s < options.pairs; ++s) {
    const std::size_t e1 = pick(rng);
    std::size_t e2 = pick(rng);
    while (e2 == e1) e2 = pick(rng);
    auto it = bfs_cache.find(e2);
    if (it == bfs_cache.end()) it = bfs_cache.emplace(e2, graph.distances_from(e2)).first;
    const std::size_t n = it->second[e1];
    const double lhs = log_len[e1] - log_len[e2];
    const double rhs = static_cast<double>(n) * log_sigma;
    max_n = std::max(max_n, n);
    if (rhs - lhs < -kLogTol) ++failing;
    if (rhs - lhs < worst_margin) {
      worst_margin = rhs - lhs;
      worst_lhs = lhs;
      worst_rhs = rhs;
      worst_n = n;
    }
  }

  BoundReport report;
  report.name = "chain_inequality";
  report.check("measured tiling skew <= sigma_hat", measured, sigma_hat, false, {}, 1e-12 * measured);
  std::ostringstream note;
  note << options.pairs << " pairs, " << failing << " failing, worst at chain length " << worst_n
       << ", longest chain " << max_n << ", log units";
  report.check("log|f(e1)| - log|f(e2)| <= n log(sigma_hat (1 + tol))", worst_lhs, worst_rhs, false, note.str(),
               kLogTol);
  return report;
}

SideBoundResult verify_side_bound(const PlanarMap& map, const TilingK& tiling) {
  const auto image = image_vertices(map, tiling);
  SideBoundResult out;
  out.sigma = tiling_skew(tiling, image);
  out.triangle_count = tiling.triangles().size();
  const double N = static_cast<double>(out.triangle_count);
  const double log_sigma = std::log(out.sigma);
  out.log_constant = std::log(N) + N * log_sigma;

  const auto log_len = log_edge_lengths(tiling, image);
  const std::size_t pq = reference_edge(tiling);
  const std::int64_t n = tiling.side();
  const std::size_t c0 = *tiling.vertex_at(0, 0);
  const std::size_t c1 = *tiling.vertex_at(n, 0);
  const std::size_t c2 = *tiling.vertex_at(0, n);
  const double big_l = Triangle2{image[c0], image[c1], image[c2]}.longest_side();
  const double log_l = std::log(big_l);

  auto& report = out.report;
  report.name = "side_bound";
  report.check("log L(f(T)) <= log N + N log sigma + log|f(p) - f(q)|", log_l, out.log_constant + log_len[pq], false,
               "log units", kLogTol);

  const ChainGraph graph(tiling);
  const auto dist = graph.distances_from(pq);
  double log_side_sum = -std::numeric_limits<double>::infinity();
  for (int s = 0; s < 3; ++s) {
    // log sum over the side of sigma^d(e), by log-sum-exp.
    std::vector<double> terms;
    for (std::size_t e : tiling.side_edges(s)) terms.push_back(static_cast<double>(dist[e]) * log_sigma);
    const double top = *std::max_element(terms.begin(), terms.end());
    double acc = 0.0;
    for (double t : terms) acc += std::exp(t - top);
    log_side_sum = std::max(log_side_sum, top + std::log(acc));
  }
  report.check("log L(f(T)) <= log max_side sum sigma^d(e) + log|f(p) - f(q)|", log_l, log_side_sum + log_len[pq],
               false, "per-edge chain lengths, log units", kLogTol);

  const std::size_t longest = *std::max_element(dist.begin(), dist.end());
  report.check("longest chain from [p, q] <= N", static_cast<double>(longest), N);
  report.check("edges per side of T <= N", static_cast<double>(n), N);
  return out;
}

}  // namespace qcskew
