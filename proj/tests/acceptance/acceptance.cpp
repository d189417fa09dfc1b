// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fail.

#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iomanip>
#include <iostream>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "qcskew/geometry.hpp"
#include "qcskew/highdim.hpp"
#include "qcskew/lattice.hpp"
#include "qcskew/linear_extremal.hpp"
#include "qcskew/planar_map.hpp"
#include "qcskew/proof_constants.hpp"
#include "qcskew/skew_metrics.hpp"

using namespace qcskew;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;
};

struct Criterion {
  int id;
  std::string name;
  double budget_ms;
  std::function<Outcome()> run;
};

std::string fmt(double x, int digits = 10) {
  std::ostringstream s;
  s << std::setprecision(digits) << x;
  return s.str();
}

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

std::vector<double> mu_grid() {
  std::vector<double> out;
  for (int i = 1; i <= 19; ++i) out.push_back(0.05 * i);
  return out;
}

Outcome c1_k_of_sigma() {
  const double k1 = K_of_sigma(1.0);
  bool increasing = true;
  double prev = K_of_sigma(1.0);
  for (int i = 1; i < 1000; ++i) {
    const double v = K_of_sigma(1.0 + 9.0 * i / 999.0);
    increasing = increasing && v > prev;
    prev = v;
  }
  return {std::abs(k1 - 1.0) <= 1e-12 && increasing,
          "K(1) - 1 = " + fmt(k1 - 1.0, 3) + ", strictly increasing on 1000 points: " + (increasing ? "yes" : "no")};
}

Outcome c2_oracle() {
  double worst = 0.0;
  double worst_mu = 0.0;
  for (double mu : mu_grid()) {
    const double d = rel(oracle_max_ratio(mu, 1000000), linear_skew(mu));
    if (d > worst) {
      worst = d;
      worst_mu = mu;
    }
  }
  return {worst <= 1e-6, "max relative gap " + fmt(worst, 3) + " at mu = " + fmt(worst_mu, 3)};
}

Outcome c3_roundtrip() {
  double worst_mu = 0.0;
  double worst_k = 0.0;
  for (double mu : mu_grid()) {
    const double tau = linear_skew(mu);
    worst_mu = std::max(worst_mu, std::abs(mu_from_skew(tau) - mu));
    worst_k = std::max(worst_k, std::abs(K_of_sigma(tau) - (1 + mu) / (1 - mu)));
  }
  return {worst_mu <= 1e-9 && worst_k <= 1e-9,
          "max |mu(tau(mu)) - mu| = " + fmt(worst_mu, 3) + ", max |K(tau(mu)) - K| = " + fmt(worst_k, 3)};
}

Outcome c4_estimators() {
  SamplingPlan plan;
  plan.seed = 1;
  plan.triangle_count = 10000;
  plan.orientation_count = 64;
  plan.circle_samples = 4096;
  const PlanarMap f = make_affine(0.5);
  const double H = estimate_H(f, {0, 0}, plan).estimate;
  const double S = estimate_skew_sup(f, {{0, 0}, 1.0}, plan).estimate;
  const double tau = linear_skew(0.5);
  return {rel(H, 3.0) <= 0.01 && rel(S, tau) <= 0.02,
          "H = " + fmt(H) + " (target 3), Skew = " + fmt(S) + " (target " + fmt(tau) + ")"};
}

Outcome c5_radial() {
  const PlanarMap f = make_radial_stretch(2.0);
  const SamplingPlan plan;
  const double H = estimate_H(f, {0, 0}, plan).estimate;
  const double off = dilatation_ratio(f, {0.3, 0}, 1e-4, plan.circle_samples);
  return {rel(H, 2.0) <= 0.02, "H(0) = " + fmt(H) + " (target 2); circles about 0 map to circles. Off-center ratio at z = 0.3: " +
                                   fmt(off)};
}

Outcome c6_lattice() {
  bool counts = true;
  for (unsigned k = 0; k <= 6; ++k) {
    // Independent count: lattice triangles of side 2^-k inside T, by enumeration.
    const std::int64_t n = std::int64_t{1} << k;
    std::size_t enumerated = 0;
    for (std::int64_t j = 0; j <= n; ++j) {
      for (std::int64_t i = 0; i + j <= n; ++i) {
        if (i + j + 1 <= n) ++enumerated;
        if (i + j + 2 <= n) ++enumerated;
      }
    }
    const auto built = TilingK::build(k).triangles().size();
    counts = counts && enumerated == built && built == static_cast<std::size_t>(n * n);
  }
  const BoundReport pq = verify_pq(TilingK::build(9));
  std::string detail = "counts 4^k for k <= 6: " + std::string(counts ? "yes" : "no") + ", " +
                       std::to_string(pq.entries.size()) + " exact p, q checks";
  for (const auto& f : pq.failures()) detail += "; failed " + f;
  return {counts && pq.passed(), detail};
}

Outcome c7_chain() {
  const TilingK t = TilingK::build(3);
  bool ok = true;
  std::string detail;
  const std::vector<std::pair<std::string, PlanarMap>> maps = {
      {"identity", make_identity()}, {"affine:0.25", make_affine(0.25)}, {"affine:0.5", make_affine(0.5)},
      {"square", make_square()}};
  for (const auto& [name, f] : maps) {
    const double sigma = measure_tiling_skew(f, t);
    ChainCheckOptions o;
    o.pairs = 1000;
    o.tolerance = 0.01;
    const BoundReport r = verify_chain_inequality(f, t, sigma, o);
    ok = ok && r.passed();
    detail += (detail.empty() ? "" : ", ") + name + " sigma = " + fmt(sigma, 6) + (r.passed() ? " ok" : " FAIL");
  }
  return {ok, detail};
}

Outcome c8_constants() {
  const auto big = constant_chain(1.0, std::uint64_t{1} << 18);
  const auto one = constant_chain(1.0, 1);
  const double target = std::log(81.0) + 36.0 * std::log(2.0);
  const bool ok = std::abs(big.log_H - target) <= 1e-9 && std::abs(big.log_H - big.log_H_alt) <= 1e-9 &&
                  std::abs(one.log_H - std::log(81.0)) <= 1e-12;
  return {ok, "log H = " + fmt(big.log_H, 17) + " vs ln(81 2^36) = " + fmt(target, 17) + ", orders differ by " +
                  fmt(std::abs(big.log_H - big.log_H_alt), 3) + ", H(1, 1) = " + one.H_decimal()};
}

Outcome c9_static() {
  const BoundReport r = verify_static_geometry();
  double min_margin = INFINITY;
  std::size_t inequalities = 0;
  bool ok = r.passed();
  for (const auto& e : r.entries) {
    if (e.kind == BoundKind::Identity) continue;
    ++inequalities;
    min_margin = std::min(min_margin, e.margin);
    ok = ok && e.margin > 0.0;
  }
  std::string detail = std::to_string(inequalities) + " inequalities, " +
                       std::to_string(r.entries.size() - inequalities) + " identities, smallest margin " +
                       fmt(min_margin, 3);
  for (const auto& f : r.failures()) detail += "; failed " + f;
  return {ok, detail};
}

Outcome c10_geo_lemma() {
  constexpr double pi = std::numbers::pi;
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::size_t bad = 0;
  double lo = INFINITY;
  double hi = -INFINITY;
  for (int i = 0; i < 100000; ++i) {
    const Point2 z = std::polar(0.125 * std::sqrt(u(rng)), 2 * pi * u(rng));
    const double tp = pi / 3 + 0.125 * (2 * u(rng) - 1);
    const double tm = -pi / 3 + 0.125 * (2 * u(rng) - 1);
    const double a = geo_lemma_angle(z, tp, tm);
    lo = std::min(lo, a);
    hi = std::max(hi, a);
    if (!(a > pi / 3 && a < pi)) ++bad;
  }
  return {bad == 0, "angles in [" + fmt(lo, 6) + ", " + fmt(hi, 6) + "], " + std::to_string(bad) + " outside (pi/3, pi)"};
}

Outcome c11_appendix() {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi / 3.0);
  double worst = 0.0;
  for (int i = 0; i < 10000; ++i) {
    double t = angle(rng);
    if (t == 0.0) t = 1e-9;
    const Eigen::Vector3d a(std::cos(t), std::sin(t), 0.0);
    const Eigen::Vector3d b = construct_b(a.x(), a.y());
    worst = std::max({worst, std::abs(b.norm() - 1.0), std::abs((b - Eigen::Vector3d::UnitX()).norm() - 1.0),
                      std::abs((b - a).norm() - 1.0)});
  }
  const SamplingPlan plan;
  const PointN center = PointN::Zero(3);
  const auto id = estimate_sigma_and_H_3d(make_identity_n(3), center, plan, 0.02);
  const auto dg = estimate_sigma_and_H_3d(make_diagonal({1, 1, 0.5}), center, plan, 0.02);
  const bool ok = worst <= 1e-12 && id.report.passed() && dg.report.passed();
  return {ok, "construct_b worst deviation " + fmt(worst, 3) + "; id3 H = " + fmt(id.H_hat, 6) +
                  ", sigma^3 = " + fmt(std::pow(id.sigma_hat, 3), 6) + "; diag(1,1,0.5) H = " + fmt(dg.H_hat, 6) +
                  ", sigma^3 = " + fmt(std::pow(dg.sigma_hat, 3), 6)};
}

Outcome c12_kf() {
  SamplingPlan plan;
  plan.circle_samples = 4096;
  const double disk = 4.0 / std::numbers::pi;
  double worst_id = 0.0;
  for (Point2 z : {Point2{0, 0}, Point2{0.3, -0.2}, Point2{-5, 7}}) {
    worst_id = std::max(worst_id, rel(estimate_kf(make_identity(), z, plan).estimate, disk));
  }
  const double mu = 0.5;
  const double target = 4 * (1 + mu) / (std::numbers::pi * (1 - mu));
  const double aff = estimate_kf(make_affine(mu), {0, 0}, plan).estimate;
  return {worst_id <= 0.005 && rel(aff, target) <= 0.01,
          "identity worst relative gap " + fmt(worst_id, 3) + ", affine k_f = " + fmt(aff) + " (target " + fmt(target) + ")"};
}

std::string run_cli(const std::string& args) {
  const std::string cmd = std::string(QCSKEW_CLI_PATH) + " " + args + " 2>/dev/null";
  std::string out;
  if (FILE* pipe = popen(cmd.c_str(), "r")) {
    std::array<char, 4096> buf{};
    std::size_t n = 0;
    while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), n);
    pclose(pipe);
  }
  return out;
}

std::string numeric_payload(const std::string& text) {
  auto doc = nlohmann::ordered_json::parse(text, nullptr, false);
  if (doc.is_discarded() || !doc.is_object()) return "<unparseable>";
  doc.erase("timings");
  return doc.dump();
}

Outcome c13_reproducible() {
  const std::vector<std::string> commands = {
      "skew-scan --map affine:0.5 --region disk:0,0,1 --at 0.1,0.1 --samples 2000 --seed 7",
      "skew-scan --map square --region disk:0.5,0.5,0.4 --samples 2000 --format csv",
      "dilatation --map radial:2 --at 0.3,0",
      "linear --mu 0.3",
      "lattice --k 3 --map square --pairs 500",
      "constants --sigma 2 --verify-geometry",
      "highdim --map diag:1,1,0.5 --samples 1000",
  };
  std::size_t same = 0;
  std::string detail;
  for (const auto& c : commands) {
    const std::string a = run_cli(c);
    const std::string b = run_cli(c);
    const bool csv = c.find("--format csv") != std::string::npos;
    const bool equal = !a.empty() && (csv ? a == b : numeric_payload(a) == numeric_payload(b)) &&
                       (csv || numeric_payload(a) != "<unparseable>");
    same += equal;
    if (!equal) detail += "; differs: " + c;
  }
  return {same == commands.size(), std::to_string(same) + "/" + std::to_string(commands.size()) +
                                       " commands byte-identical without timings" + detail};
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "K_of_sigma endpoint and monotonicity", 1000, c1_k_of_sigma},
      {2, "brute-force oracle matches linear_skew", 30000, c2_oracle},
      {3, "mu/tau/K roundtrips", 1000, c3_roundtrip},
      {4, "affine estimators match closed forms", 60000, c4_estimators},
      {5, "radial stretch K=2: estimate_H at 0 = 2", 10000, c5_radial},
      {6, "lattice counts and exact p, q", 30000, c6_lattice},
      {7, "chain inequality at k=3", 60000, c7_chain},
      {8, "constant chain H = 81 2^36 and H = 81", 1000, c8_constants},
      {9, "static geometry margins", 1000, c9_static},
      {10, "angle lemma on 1e5 admissible inputs", 5000, c10_geo_lemma},
      {11, "construct_b identities and H <= sigma^3 (1.02)", 60000, c11_appendix},
      {12, "k_f estimator", 10000, c12_kf},
      {13, "CLI reproducibility", 120000, c13_reproducible},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const std::chrono::duration<double, std::milli> ms = std::chrono::steady_clock::now() - start;
    const bool in_time = ms.count() <= c.budget_ms;
    const bool ok = o.ok && in_time;
    failed += !ok;
    std::cout << (ok ? "[PASS] " : "[FAIL] ") << std::setw(2) << c.id << " " << c.name << ": " << o.detail << " ("
              << std::fixed << std::setprecision(1) << ms.count() << " ms, budget " << c.budget_ms << " ms"
              << (in_time ? "" : ", OVER BUDGET") << ")" << std::defaultfloat << "\n";
  }
  std::cout << (criteria.size() - failed) << "/" << criteria.size() << " criteria passed\n";
  return failed == 0 ? 0 : 1;
}
