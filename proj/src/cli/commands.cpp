#include "qcskew/cli/commands.hpp"

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <numbers>

#include <CLI11.hpp>

#include "qcskew/cli/map_spec.hpp"
#include "qcskew/errors.hpp"
#include "qcskew/highdim.hpp"
#include "qcskew/lattice.hpp"
#include "qcskew/linear_extremal.hpp"
#include "qcskew/planar_map.hpp"
#include "qcskew/proof_constants.hpp"
#include "qcskew/skew_metrics.hpp"

namespace qcskew::cli {

namespace {

class Stopwatch {
 public:
  explicit Stopwatch(Json& sink) : sink_(sink) {}
  template <class F>
  auto time(const std::string& label, F&& f) {
    const auto start = std::chrono::steady_clock::now();
    auto result = f();
    const std::chrono::duration<double, std::milli> ms = std::chrono::steady_clock::now() - start;
    sink_[label + "_ms"] = ms.count();
    return result;
  }

 private:
  Json& sink_;
};

Json plan_json(const SamplingPlan& plan) {
  return {{"seed", plan.seed},
          {"samples", plan.triangle_count},
          {"orientations", plan.orientation_count},
          {"circle_samples", plan.circle_samples},
          {"scales", plan.scale_ladder}};
}

Report start(const RunConfig& config, const std::string& command) {
  Report r;
  r.command = command;
  r.timings["threads"] = resolve_threads(config.plan.threads);
  return r;
}

}  // namespace

Report cmd_skew_scan(const RunConfig& config) {
  Report r = start(config, "skew-scan");
  const std::string spec = config.map.empty() ? "identity" : config.map;
  const PlanarMap map = parse_planar_map(spec);
  const Disk region = parse_region(config.region);
  r.config = {{"map", spec}, {"region", config.region}, {"plan", plan_json(config.plan)}};
  Stopwatch watch(r.timings);

  const auto sup = watch.time("skew_sup", [&] { return estimate_skew_sup(map, region, config.plan); });
  r.results["skew_sup"] = to_json(sup);
  r.tables.push_back(per_scale_table("skew_sup", sup));
  if (config.at) {
    const Point2 z = parse_point(*config.at);
    r.config["at"] = *config.at;
    const auto at = watch.time("skew_at", [&] { return estimate_skew_at(map, z, config.plan); });
    r.results["skew_at"] = to_json(at);
    r.tables.push_back(per_scale_table("skew_at", at));
  }
  if (map.metadata().skew) {
    BoundReport b;
    b.name = "skew_scan";
    b.check("sampled Skew <= closed-form Skew", sup.estimate, *map.metadata().skew, false,
            "a sampled supremum never exceeds the true one", 1e-12 * *map.metadata().skew);
    r.results["closed_form_skew"] = *map.metadata().skew;
    r.results["relative_gap"] = (*map.metadata().skew - sup.estimate) / *map.metadata().skew;
    r.bounds.push_back(std::move(b));
  }
  if (const auto* rect = std::get_if<RectDomain>(&map.domain())) {
    const auto o = check_orientation(map, *rect);
    r.results["orientation_check"] = {
        {"samples", o.samples}, {"negative", o.negative}, {"near_singular", o.near_singular}, {"consistent", o.consistent()}};
  }
  return r;
}

Report cmd_dilatation(const RunConfig& config) {
  Report r = start(config, "dilatation");
  const std::string spec = config.map.empty() ? "identity" : config.map;
  const PlanarMap map = parse_planar_map(spec);
  const std::string at = config.at.value_or("0,0");
  const Point2 z = parse_point(at);
  r.config = {{"map", spec}, {"at", at}, {"plan", plan_json(config.plan)}};
  Stopwatch watch(r.timings);

  const auto H = watch.time("H", [&] { return estimate_H(map, z, config.plan); });
  const auto kf = watch.time("kf", [&] { return estimate_kf(map, z, config.plan); });
  r.results["H"] = to_json(H);
  r.results["kf"] = to_json(kf);
  r.results["disk_kf"] = 4.0 / std::numbers::pi;
  r.tables.push_back(per_scale_table("H", H));
  r.tables.push_back(per_scale_table("kf", kf));
  if (const auto K = map.metadata().dilatation) {
    BoundReport b;
    b.name = "dilatation";
    b.check("sampled H(z) <= K", H.estimate, *K, false, "circle samples under-estimate M / m", 1e-9 * *K);
    r.results["metadata_K"] = *K;
    r.bounds.push_back(std::move(b));
  }
  return r;
}

Report cmd_linear(const RunConfig& config) {
  Report r = start(config, "linear");
  const int given = config.mu.has_value() + config.sigma.has_value() + config.tau.has_value();
  if (given != 1) throw FormatError("linear: give exactly one of --mu, --sigma, --tau");
  Stopwatch watch(r.timings);
  BoundReport b;
  b.name = "linear";
  if (config.mu) {
    const double mu = *config.mu;
    r.config = {{"mu", mu}, {"oracle_grid", config.oracle_grid}};
    const double tau = linear_skew(mu);
    const double K = BeltramiParams(mu).dilatation();
    r.results["mu"] = mu;
    r.results["tau"] = tau;
    r.results["K"] = K;
    r.results["K_of_tau"] = K_of_sigma(tau);
    r.results["mu_of_tau"] = mu_from_skew(tau);
    const double oracle = watch.time("oracle", [&] { return oracle_max_ratio(mu, config.oracle_grid, config.plan.threads); });
    const double delta = std::abs(oracle - tau) / tau;
    r.results["oracle_max_ratio"] = oracle;
    r.results["oracle_relative_delta"] = delta;
    b.check("|oracle - tau| / tau <= 1e-6", delta, 1e-6);
    b.check("|K(tau) - (1 + mu)/(1 - mu)| / K <= 1e-9", std::abs(K_of_sigma(tau) - K) / K, 1e-9);
    b.check("|mu(tau) - mu| <= 1e-9", std::abs(mu_from_skew(tau) - mu), 1e-9);
    if (mu > 0.0) {
      const auto d = extremal_directions(mu);
      const PlanarMap f = make_affine(mu);
      const double realized = image_skew(f, extremal_triangle(mu));
      r.results["nu"] = BeltramiParams(mu).nu();
      r.results["extremal"] = {{"cos_x", d.cos_x},
                               {"maximizer", to_json(d.maximizer)},
                               {"minimizer", to_json(d.minimizer)},
                               {"kappa_max", d.kappa_max},
                               {"kappa_min", d.kappa_min},
                               {"triangle", to_json(extremal_triangle(mu))},
                               {"triangle_image_skew", realized}};
      b.check("|skew(f(T*)) - tau| / tau <= 1e-9", std::abs(realized - tau) / tau, 1e-9,
              false, "the extremal triangle realizes the skew");
    }
  } else if (config.sigma) {
    const double s = *config.sigma;
    r.config = {{"sigma", s}};
    const double K = K_of_sigma(s);
    const double mu = mu_from_skew(s);
    r.results["sigma"] = s;
    r.results["K"] = K;
    r.results["mu"] = mu;
    b.check("|(1 + mu)/(1 - mu) - K(sigma)| / K <= 1e-9", std::abs((1.0 + mu) / (1.0 - mu) - K) / K, 1e-9);
  } else {
    const double tau = *config.tau;
    r.config = {{"tau", tau}};
    const double mu = mu_from_skew(tau);
    r.results["tau"] = tau;
    r.results["mu"] = mu;
    r.results["K"] = K_of_sigma(tau);
    b.check("|tau(mu(tau)) - tau| / tau <= 1e-9", std::abs(linear_skew(mu) - tau) / tau, 1e-9);
  }
  r.bounds.push_back(std::move(b));
  return r;
}

Report cmd_lattice(const RunConfig& config) {
  Report r = start(config, "lattice");
  r.config = {{"k", config.k}, {"check_pq", config.check_pq}};
  Stopwatch watch(r.timings);
  const TilingK tiling = watch.time("build", [&] { return TilingK::build(config.k); });
  r.results["triangles"] = tiling.triangles().size();
  r.results["edges"] = tiling.edges().size();
  r.results["vertices"] = tiling.vertex_count();
  r.results["expected_triangles"] = std::uint64_t{1} << (2 * config.k);
  {
    BoundReport b;
    b.name = "tiling";
    const bool ok = tiling.triangles().size() == (std::size_t{1} << (2 * config.k));
    b.identity("triangle count = 4^k", static_cast<double>(tiling.triangles().size()),
               std::ldexp(1.0, 2 * static_cast<int>(config.k)), ok);
    r.bounds.push_back(std::move(b));
  }
  if (config.check_pq) {
    if (config.k != 9) throw FormatError("lattice: --check-pq needs --k 9");
    const auto pq = locate_pq();
    r.results["p"] = {{"m", pq.p.m}, {"n", pq.p.n}, {"k", pq.p.k}, {"point", to_json(pq.p.to_point())}};
    r.results["q"] = {{"m", pq.q.m}, {"n", pq.q.n}, {"k", pq.q.k}, {"point", to_json(pq.q.to_point())}};
    r.bounds.push_back(watch.time("pq", [&] { return verify_pq(tiling); }));
  }
  if (!config.map.empty()) {
    const PlanarMap map = parse_planar_map(config.map);
    r.config["map"] = config.map;
    r.config["pairs"] = config.pairs;
    r.config["slack"] = config.slack;
    r.config["seed"] = config.plan.seed;
    const double sigma = watch.time("measure", [&] { return measure_tiling_skew(map, tiling); });
    r.results["measured_sigma"] = sigma;
    ChainCheckOptions options;
    options.pairs = config.pairs;
    options.tolerance = config.slack;
    options.seed = config.plan.seed;
    r.bounds.push_back(watch.time("chain", [&] { return verify_chain_inequality(map, tiling, sigma, options); }));
    auto side = watch.time("side", [&] { return verify_side_bound(map, tiling); });
    r.results["log_N_sigma_N"] = side.log_constant;
    r.results["reference_edge"] = reference_edge(tiling);
    r.bounds.push_back(std::move(side.report));
  }
  return r;
}

Report cmd_constants(const RunConfig& config) {
  Report r = start(config, "constants");
  r.config = {{"sigma", config.chain_sigma}, {"N", config.chain_N}, {"verify_geometry", config.verify_geometry}};
  const auto c = constant_chain(config.chain_sigma, config.chain_N);
  r.results["chain"] = to_json(c);
  BoundReport b;
  b.name = "constants";
  b.check("|log H - log H (expanded)| <= 1e-9", std::abs(c.log_H - c.log_H_alt), 1e-9);
  r.bounds.push_back(std::move(b));
  if (config.verify_geometry) {
    Stopwatch watch(r.timings);
    r.bounds.push_back(watch.time("geometry", [] { return verify_static_geometry(); }));
  }
  return r;
}

Report cmd_highdim(const RunConfig& config) {
  Report r = start(config, "highdim");
  Stopwatch watch(r.timings);
  if (config.construct_b) {
    const auto a = parse_reals(config.a);
    if (a.size() != 2) throw FormatError("highdim: --a needs two numbers a1,a2");
    r.config = {{"construct_b", true}, {"a", a}};
    const Eigen::Vector3d b = construct_b(a[0], a[1]);
    const Eigen::Vector3d ap(a[0], a[1], 0.0);
    r.results["b"] = to_json(PointN(b));
    BoundReport rep;
    rep.name = "construct_b";
    rep.check("||b| - 1| <= 1e-12", std::abs(b.norm() - 1.0), 1e-12);
    rep.check("||b - e1| - 1| <= 1e-12", std::abs((b - Eigen::Vector3d::UnitX()).norm() - 1.0), 1e-12);
    rep.check("||b - a'| - 1| <= 1e-12", std::abs((b - ap).norm() - 1.0), 1e-12);
    r.bounds.push_back(std::move(rep));
    return r;
  }
  const std::string spec = config.map.empty() ? "id3" : config.map;
  const SpaceMap map = parse_space_map(spec);
  PointN center = PointN::Zero(static_cast<Eigen::Index>(map.dimension()));
  if (!config.center.empty()) {
    const auto c = parse_reals(config.center);
    if (c.size() != map.dimension()) throw FormatError("highdim: --center has the wrong dimension");
    for (std::size_t i = 0; i < c.size(); ++i) center[static_cast<Eigen::Index>(i)] = c[i];
  }
  r.config = {{"map", spec}, {"center", to_json(center)}, {"tolerance", config.highdim_tolerance},
              {"plan", plan_json(config.plan)}};
  auto est = watch.time("estimate", [&] {
    return estimate_sigma_and_H_3d(map, center, config.plan, config.highdim_tolerance);
  });
  r.results["sigma_hat"] = est.sigma_hat;
  r.results["sigma_hat_cubed"] = est.sigma_hat * est.sigma_hat * est.sigma_hat;
  r.results["H_hat"] = est.H_hat;
  r.results["triangles"] = est.triangles;
  if (map.metadata().dilatation) r.results["metadata_K"] = *map.metadata().dilatation;
  CsvTable t{"H", {"scale", "value"}, {}};
  Json rungs = Json::array();
  for (std::size_t i = 0; i < est.scales.size(); ++i) {
    rungs.push_back({{"scale", est.scales[i]}, {"value", est.H_per_scale[i]}});
    t.rows.push_back({est.scales[i], est.H_per_scale[i]});
  }
  r.results["H_per_scale"] = rungs;
  r.tables.push_back(std::move(t));
  r.bounds.push_back(std::move(est.report));
  return r;
}

Report cmd_grid_sample(const RunConfig& config) {
  Report r = start(config, "grid-sample");
  if (config.grid_out.empty()) throw FormatError("grid-sample: --grid-out is required");
  const std::string spec = config.map.empty() ? "identity" : config.map;
  const auto d = parse_reals(config.domain);
  if (d.size() != 4) throw FormatError("grid-sample: --domain needs x0,y0,x1,y1");
  const RectDomain rect{d[0], d[1], d[2], d[3]};
  const PlanarMap map = parse_planar_map(spec);
  const auto grid = sample_grid(map, rect, config.nx, config.ny);
  std::ofstream file(config.grid_out);
  if (!file) throw FormatError("grid-sample: cannot open '" + config.grid_out + "' for writing");
  write_grid_data(grid, file);
  r.config = {{"map", spec}, {"domain", d}, {"nx", config.nx}, {"ny", config.ny}};
  r.results["points"] = grid.points.size();
  r.results["path"] = config.grid_out;
  return r;
}

Report run_command(const RunConfig& config) {
  if (config.command == "skew-scan") return cmd_skew_scan(config);
  if (config.command == "dilatation") return cmd_dilatation(config);
  if (config.command == "linear") return cmd_linear(config);
  if (config.command == "lattice") return cmd_lattice(config);
  if (config.command == "constants") return cmd_constants(config);
  if (config.command == "highdim") return cmd_highdim(config);
  if (config.command == "grid-sample") return cmd_grid_sample(config);
  throw FormatError("unknown command '" + config.command + "'");
}

namespace {

void add_common(CLI::App* sub, RunConfig& c, std::string& scales, std::optional<std::size_t>& threads) {
  sub->add_option("--seed", c.plan.seed, "Random seed")->capture_default_str();
  sub->add_option("--samples", c.plan.triangle_count, "Sampled triangles")->capture_default_str();
  sub->add_option("--orientations", c.plan.orientation_count, "Orientations per triangle")->capture_default_str();
  sub->add_option("--circle-samples", c.plan.circle_samples, "Points per circle or sphere")->capture_default_str();
  sub->add_option("--scales", scales, "Scale ladder r1,r2,... (strictly decreasing)");
  sub->add_option("--threads", threads, "Worker cap (default: QCSKEW_THREADS or all cores)");
  sub->add_option("--out", c.out, "Write the report here instead of stdout");
  sub->add_option("--format", c.format, "Report format")->check(CLI::IsMember({"json", "csv"}))->capture_default_str();
}

std::size_t threads_from_env() {
  const char* env = std::getenv("QCSKEW_THREADS");
  if (!env || !*env) return 0;
  char* end = nullptr;
  const unsigned long v = std::strtoul(env, &end, 10);
  if (*end != '\0') throw FormatError("QCSKEW_THREADS must be a non-negative integer");
  return v;
}

}  // namespace

int run_cli(int argc, char** argv) {
  CLI::App app{"Triangle-skew and metric-dilatation toolkit for planar and spatial maps"};
  app.set_version_flag("--version", std::string(QCSKEW_VERSION));
  app.require_subcommand(1);
  RunConfig c;
  std::string scales;
  std::optional<std::size_t> threads;
  std::string at;

  auto* skew = app.add_subcommand("skew-scan", "Sampled Skew(f) over a disk, and skew(f, z) at a point");
  skew->add_option("--map", c.map, "Map spec")->required();
  skew->add_option("--region", c.region, "Region disk:x,y,r")->capture_default_str();
  skew->add_option("--at", at, "Also estimate skew(f, z) at z = x,y");

  auto* dil = app.add_subcommand("dilatation", "Sampled H(z) and k_f at a point");
  dil->add_option("--map", c.map, "Map spec")->required();
  dil->add_option("--at", at, "Point x,y (default 0,0)");

  auto* lin = app.add_subcommand("linear", "Closed forms for z + mu conj(z)");
  lin->add_option("--mu", c.mu, "Beltrami coefficient in [0, 1)");
  lin->add_option("--sigma", c.sigma, "Skew bound sigma >= 1");
  lin->add_option("--tau", c.tau, "Skew tau >= 1");
  lin->add_option("--oracle-grid", c.oracle_grid, "Brute-force grid size")->capture_default_str();

  auto* lat = app.add_subcommand("lattice", "Dyadic triangular tilings and chain bounds");
  lat->add_option("--k", c.k, "Tiling level (triangles of side 2^-k)")->capture_default_str();
  lat->add_flag("--check-pq", c.check_pq, "Exact checks on p and q (k = 9)");
  lat->add_option("--map", c.map, "Map spec for the chain checks");
  lat->add_option("--pairs", c.pairs, "Sampled edge pairs")->capture_default_str();
  lat->add_option("--slack", c.slack, "Relative slack on sigma")->capture_default_str();

  auto* con = app.add_subcommand("constants", "Explicit dilatation constant chain");
  con->add_option("--sigma", c.chain_sigma, "Skew bound sigma >= 1")->capture_default_str();
  con->add_option("--N", c.chain_N, "Chain length (triangle count)")->capture_default_str();
  con->add_flag("--verify-geometry", c.verify_geometry, "Check the static geometric inequalities");

  auto* hd = app.add_subcommand("highdim", "Dimension >= 3: sigma^3 check and the point b");
  hd->add_option("--map", c.map, "Space map spec (default id3)");
  hd->add_option("--center", c.center, "Center x,y,z");
  hd->add_option("--tolerance", c.highdim_tolerance, "Slack on sigma^3")->capture_default_str();
  hd->add_flag("--construct-b", c.construct_b, "Compute b for a' = (a1, a2)");
  hd->add_option("--a", c.a, "a1,a2 for --construct-b")->capture_default_str();

  auto* gs = app.add_subcommand("grid-sample", "Sample a planar map onto a grid-map file");
  gs->add_option("--map", c.map, "Map spec")->required();
  gs->add_option("--domain", c.domain, "Rectangle x0,y0,x1,y1")->capture_default_str();
  gs->add_option("--nx", c.nx, "Grid columns")->capture_default_str();
  gs->add_option("--ny", c.ny, "Grid rows")->capture_default_str();
  gs->add_option("--grid-out", c.grid_out, "Output grid file")->required();

  for (auto* sub : {skew, dil, lin, lat, con, hd, gs}) add_common(sub, c, scales, threads);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    c.command = app.get_subcommands().front()->get_name();
    if (!at.empty()) c.at = at;
    if (!scales.empty()) c.plan.scale_ladder = parse_reals(scales);
    c.plan.threads = threads ? *threads : threads_from_env();
    c.plan.validate();
    const Report report = run_command(c);
    const std::string text = c.format == "csv" ? render_csv(report) : render_json(report);
    if (c.out.empty()) {
      std::cout << text;
    } else {
      std::ofstream file(c.out);
      if (!file) throw FormatError("cannot open '" + c.out + "' for writing");
      file << text;
    }
    for (const auto& f : report.failures()) std::cerr << "FAILED: " << f << "\n";
    return report.passed() ? 0 : 1;
  } catch (const qcskew::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace qcskew::cli
