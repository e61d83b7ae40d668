#include <CLI11.hpp>
#include <cmath>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include "steinctrl/bench.hpp"
#include "steinctrl/sampling.hpp"

namespace {

using namespace steinctrl;

int run_bench(const ExperimentConfig& cfg, const std::string& out_path, bool json) {
  const std::vector<ResultRow> rows = run_experiment(cfg);
  const std::string text = json ? to_json(rows) : to_csv(rows);
  if (out_path.empty()) {
    std::cout << text;
  } else {
    std::ofstream f(out_path, std::ios::binary);
    if (!f) {
      std::cerr << "error: cannot open output file " << out_path << "\n";
      return 2;
    }
    f << text;
  }
  return 0;
}

int run_slope(const std::string& in_path, const std::string& estimator) {
  std::ifstream f(in_path, std::ios::binary);
  if (!f) {
    std::cerr << "error: cannot open input file " << in_path << "\n";
    return 2;
  }
  std::stringstream ss;
  ss << f.rdbuf();
  const std::vector<ResultRow> rows = parse_csv(ss.str());

  std::map<std::tuple<int, int, int>, std::pair<std::vector<int>, std::vector<double>>> groups;
  for (const ResultRow& r : rows) {
    if (r.estimator != estimator) continue;
    auto& g = groups[{r.d, r.b, r.omega}];
    g.first.push_back(r.n);
    g.second.push_back(r.mse);
  }
  if (groups.empty()) {
    std::cerr << "error: no rows for estimator " << estimator << "\n";
    return 1;
  }
  bool any = false;
  for (const auto& [key, g] : groups) {
    const auto& [d, b, omega] = key;
    if (g.first.size() < 3) {
      std::cerr << "skipping d=" << d << " b=" << b << " omega=" << omega
                << ": fewer than 3 sample sizes\n";
      continue;
    }
    const double slope = fit_slope(g.first, g.second);
    std::cout << "estimator=" << estimator << " d=" << d << " b=" << b << " omega=" << omega
              << " slope=" << format_g17(slope) << "\n";
    any = true;
  }
  return any ? 0 : 1;
}

int run_filldist(int n, int d, double eps, std::uint64_t seed, const std::string& sampler,
                 double resolution) {
  if (d >= 3 && resolution <= 0.0) {
    std::cerr << "error: fill-distance grid scan is disabled for d >= 3 (cost grows as"
                 " resolution^-d); pass --resolution explicitly to force it\n";
    return 1;
  }
  if (resolution <= 0.0) resolution = (d == 1) ? 1e-4 : 1e-2;

  PointList pts;
  if (sampler == "iid") {
    pts = sample_iid_uniform(n, d, seed);
  } else if (sampler == "torus") {
    ChainConfig cc;
    cc.d = d;
    cc.eps = eps;
    cc.n = n;
    cc.seed = seed;
    pts = sample_torus_walk(cc);
  } else {
    std::cerr << "error: unknown sampler " << sampler << "\n";
    return 1;
  }
  const FillDistanceReport r = fill_distance(pts, Box::unit(d), resolution);
  std::cout << "fill_distance=" << format_g17(r.value)
            << " upper_bound=" << format_g17(r.value + r.slack)
            << " resolution=" << format_g17(r.resolution) << " n=" << n << " d=" << d << "\n";
  return 0;
}

int run_selftest();

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Gradient-based control functional estimators for integrals"};
  app.require_subcommand(1);
  app.set_config("--config", "", "Flat key=value config file; command-line flags override it");

  // bench
  auto* bench = app.add_subcommand("bench", "Run the estimator benchmark grid");
  std::string design = "iid";
  ExperimentConfig cfg;
  std::string out_path;
  std::string format = "csv";
  std::vector<std::string> estimators = {"mc", "cf", "loocf"};
  std::string bandwidth = "0.5";
  std::string rho = "0.5";
  bench->add_option("--design", design, "iid | torus")->check(CLI::IsMember({"iid", "torus"}));
  bench->add_option("--d", cfg.d, "State dimension");
  bench->add_option("--omega", cfg.omega, "Integrand frequency");
  bench->add_option("--b", cfg.b_list, "Kernel smoothness values")->delimiter(',');
  bench->add_option("--n", cfg.n_list, "Sample sizes")->delimiter(',')->required();
  bench->add_option("--eps", cfg.eps_list, "Torus step sizes")->delimiter(',');
  bench->add_option("--reps", cfg.replicates, "Replicates per cell");
  bench->add_option("--rho", rho, "Split fraction in (0,1), or 'opt'");
  bench->add_option("--bandwidth", bandwidth, "Fixed bandwidth, or 'opt'");
  bench->add_option("--c", cfg.c, "Constant kernel offset");
  bench->add_option("--seed", cfg.seed, "Master seed");
  bench->add_option("--estimators", estimators, "Subset of mc,cf,loocf")->delimiter(',');
  bench->add_option("--burnin", cfg.burn_in, "Discarded torus steps");
  bench->add_flag("--timing", cfg.timing,
                  "Record real wall times (breaks byte-determinism of the output)");
  bench->add_option("--out", out_path, "Output path (stdout when omitted)");
  bench->add_option("--format", format, "csv | json")->check(CLI::IsMember({"csv", "json"}));

  // slope
  auto* slope = app.add_subcommand("slope", "Fit log-log MSE slopes from a bench CSV");
  std::string slope_in, slope_est = "CF";
  slope->add_option("--in", slope_in, "Input CSV")->required();
  slope->add_option("--estimator", slope_est, "MC | CF | LOOCF");

  // filldist
  auto* filldist = app.add_subcommand("filldist", "Fill-distance diagnostics for sampled sets");
  int fd_n = 100, fd_d = 1;
  double fd_eps = 0.5, fd_res = 0.0;
  std::uint64_t fd_seed = 0;
  std::string fd_sampler = "iid";
  filldist->add_option("--n", fd_n, "Number of points")->required();
  filldist->add_option("--d", fd_d, "Dimension");
  filldist->add_option("--sampler", fd_sampler, "iid | torus");
  filldist->add_option("--eps", fd_eps, "Torus step size");
  filldist->add_option("--seed", fd_seed, "Seed");
  filldist->add_option("--resolution", fd_res, "Grid spacing (defaults: 1e-4 for d=1, 1e-2 for d=2)");

  // selftest
  app.add_subcommand("selftest", "Run the built-in invariant suite");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (app.got_subcommand("bench")) {
      cfg.design = (design == "torus") ? Design::TorusStepSweep : Design::IIDConvergence;
      if (rho == "opt") {
        cfg.rho_optimal = true;
      } else {
        cfg.rho = std::stod(rho);
      }
      if (bandwidth == "opt") {
        cfg.bandwidth.optimize = true;
      } else {
        cfg.bandwidth.fixed = std::stod(bandwidth);
      }
      cfg.estimators.clear();
      for (const std::string& e : estimators) {
        if (e == "mc")
          cfg.estimators.push_back(EstimatorKind::MC);
        else if (e == "cf")
          cfg.estimators.push_back(EstimatorKind::CF);
        else if (e == "loocf")
          cfg.estimators.push_back(EstimatorKind::LOOCF);
        else
          throw std::invalid_argument("unknown estimator " + e);
      }
      return run_bench(cfg, out_path, format == "json");
    }
    if (app.got_subcommand("slope")) return run_slope(slope_in, slope_est);
    if (app.got_subcommand("filldist"))
      return run_filldist(fd_n, fd_d, fd_eps, fd_seed, fd_sampler, fd_res);
    if (app.got_subcommand("selftest")) return run_selftest();
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 1;
}

namespace {

// Small invariant suite: kernel derivatives against finite differences, the
// zero-mean property under uniform targets, Gram symmetry, and determinism
// of the samplers. Fast by construction; exit 2 on any failure.
int run_selftest() {
  int failures = 0;
  auto check = [&](bool ok, const std::string& name) {
    std::cout << (ok ? "[PASS] " : "[FAIL] ") << name << "\n";
    if (!ok) ++failures;
  };

  // derivative check via 4th-order central differences
  {
    bool ok = true;
    for (int b = 0; b <= 2 && ok; ++b) {
      const RadialProfile p = RadialProfile::wendland(b, 1);
      const double step = 1e-3;
      for (double z = 0.05; z < 0.95; z += 0.09) {
        const double fd = (-p.phi(z + 2 * step) + 8 * p.phi(z + step) - 8 * p.phi(z - step) +
                           p.phi(z - 2 * step)) /
                          (12 * step);
        if (std::abs(fd - p.phi_d1(z)) > 1e-6 * (1.0 + std::abs(fd))) ok = false;
      }
    }
    check(ok, "radial profile derivative vs finite differences");
  }

  // zero mean under the uniform target on [0,1]
  {
    const SteinKernel sk(
        ModifiedKernel(BaseKernel(RadialProfile::wendland(1, 1), 0.5),
                       BoundaryWeight::unit_cube_product(Box::unit(1))),
        uniform_score(1));
    Point xp(1);
    xp << 0.37;
    const SteinPointData pxp = sk.point_data(xp);
    const int nodes = 4000;  // composite Simpson
    double acc = 0.0;
    Point x(1);
    for (int i = 0; i <= nodes; ++i) {
      x[0] = static_cast<double>(i) / nodes;
      const double w = (i == 0 || i == nodes) ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0);
      acc += w * sk.k0(x, xp, sk.point_data(x), pxp);
    }
    acc /= 3.0 * nodes;
    check(std::abs(acc) < 1e-7, "zero mean of k0 under the uniform target");
  }

  // Gram symmetry and determinism
  {
    const SteinKernel sk(
        ModifiedKernel(BaseKernel(RadialProfile::wendland(1, 2), 0.7),
                       BoundaryWeight::unit_cube_product(Box::unit(2))),
        uniform_score(2));
    const PointList pts = sample_iid_uniform(16, 2, 11);
    const Eigen::MatrixXd K = gram(sk, pts, GramKind::K0);
    check(K == K.transpose(), "Gram matrix symmetry");
    const PointList pts2 = sample_iid_uniform(16, 2, 11);
    bool same = pts.size() == pts2.size();
    for (std::size_t i = 0; same && i < pts.size(); ++i) same = pts[i] == pts2[i];
    check(same, "sampler determinism for a fixed seed");
  }

  return failures == 0 ? 0 : 2;
}

}  // namespace
