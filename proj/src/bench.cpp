#include "steinctrl/bench.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "steinctrl/parallel.hpp"
#include "steinctrl/sampling.hpp"

namespace steinctrl {

namespace {

const char* estimator_name(EstimatorKind k) {
  switch (k) {
    case EstimatorKind::MC: return "MC";
    case EstimatorKind::CF: return "CF";
    default: return "LOOCF";
  }
}

double now_ms() {
  return std::chrono::duration<double, std::milli>(
             std::chrono::steady_clock::now().time_since_epoch())
      .count();
}

}  // namespace

void validate(const ExperimentConfig& cfg) {
  if (cfg.d < 1) throw std::invalid_argument("config: d must be >= 1");
  if (cfg.omega < 1) throw std::invalid_argument("config: omega must be >= 1");
  if (cfg.b_list.empty()) throw std::invalid_argument("config: b list is empty");
  for (int b : cfg.b_list)
    if (b < 0 || b > 2) throw std::invalid_argument("config: b must be 0, 1 or 2");
  if (cfg.n_list.empty()) throw std::invalid_argument("config: n list is empty");
  for (int n : cfg.n_list)
    if (n < 2) throw std::invalid_argument("config: every n must be >= 2");
  if (cfg.design == Design::TorusStepSweep) {
    if (cfg.eps_list.empty()) throw std::invalid_argument("config: eps list is empty");
    for (double e : cfg.eps_list)
      if (!(e > 0.0)) throw std::invalid_argument("config: every eps must be > 0");
  }
  if (cfg.replicates < 2) throw std::invalid_argument("config: replicates must be >= 2");
  if (!cfg.rho_optimal && !(cfg.rho > 0.0 && cfg.rho < 1.0))
    throw std::invalid_argument("config: rho must lie in (0, 1)");
  if (!cfg.bandwidth.optimize && !(cfg.bandwidth.fixed > 0.0))
    throw std::invalid_argument("config: fixed bandwidth must be > 0");
  if (!(cfg.c > 0.0)) throw std::invalid_argument("config: c must be > 0");
  if (cfg.estimators.empty()) throw std::invalid_argument("config: estimator list is empty");
  if (cfg.burn_in < 0) throw std::invalid_argument("config: burn_in must be >= 0");
  if (cfg.rng != Rng::id())
    throw std::invalid_argument(std::string("config: unsupported rng, expected ") + Rng::id());
}

double test_function(int omega, const Point& x) {
  if (x.size() < 1) throw std::invalid_argument("test_function: empty point");
  return 1.0 + std::sin(2.0 * std::numbers::pi * static_cast<double>(omega) * x[0]);
}

std::vector<ResultRow> run_experiment(const ExperimentConfig& cfg) {
  validate(cfg);

  struct Cell {
    int b;
    int n;
    std::optional<double> eps;
  };
  std::vector<Cell> cells;
  for (int b : cfg.b_list)
    for (int n : cfg.n_list) {
      if (cfg.design == Design::TorusStepSweep)
        for (double e : cfg.eps_list) cells.push_back({b, n, e});
      else
        cells.push_back({b, n, std::nullopt});
    }

  std::vector<ResultRow> rows;
  const std::size_t reps = static_cast<std::size_t>(cfg.replicates);

  for (std::size_t ci = 0; ci < cells.size(); ++ci) {
    const Cell& cell = cells[ci];
    const std::uint64_t cell_seed = mix_seed(cfg.seed, ci);

    const RadialProfile profile = RadialProfile::wendland(cell.b, cfg.d);
    const BoundaryWeight weight = BoundaryWeight::unit_cube_product(Box::unit(cfg.d));
    const SteinKernel proto(ModifiedKernel(BaseKernel(profile, 1.0), weight),
                            uniform_score(cfg.d), cfg.c);

    const double rho =
        cfg.rho_optimal ? optimal_split(static_cast<double>(cell.b), cfg.d) : cfg.rho;

    struct RepResult {
      double value = 0.0;
      bool fallback = false;
      double ms = 0.0;
    };
    std::vector<std::vector<RepResult>> results(cfg.estimators.size(),
                                                std::vector<RepResult>(reps));

    parallel_for(reps, [&](std::size_t r) {
      const std::uint64_t rep_seed = mix_seed(cell_seed, r);
      PointList states;
      if (cfg.design == Design::TorusStepSweep) {
        ChainConfig cc;
        cc.d = cfg.d;
        cc.eps = *cell.eps;
        cc.n = cell.n;
        cc.seed = rep_seed;
        cc.burn_in = cfg.burn_in;
        states = sample_torus_walk(cc);
      } else {
        states = sample_iid_uniform(cell.n, cfg.d, rep_seed);
      }
      std::vector<double> fvals(states.size());
      for (std::size_t i = 0; i < states.size(); ++i)
        fvals[i] = test_function(cfg.omega, states[i]);

      for (std::size_t ei = 0; ei < cfg.estimators.size(); ++ei) {
        RepResult& out = results[ei][r];
        const double t0 = now_ms();
        try {
          switch (cfg.estimators[ei]) {
            case EstimatorKind::MC: {
              out.value = estimate_mc(fvals).value;
              break;
            }
            case EstimatorKind::CF: {
              SplitDataset split = make_split(states, fvals, rho);
              double h = cfg.bandwidth.fixed;
              if (cfg.bandwidth.optimize) {
                const BandwidthResult br = optimize_bandwidth(proto, split.d0_states,
                                                              split.d0_fvals,
                                                              cfg.bandwidth.search);
                if (br.all_failed) {
                  out.fallback = true;
                  out.value = estimate_mc(fvals).value;
                  break;
                }
                h = br.h;
              }
              const EstimateSummary s = estimate_cf(proto.with_bandwidth(h), split);
              out.value = s.value;
              for (const std::string& f : s.flags)
                if (f == "fallback_zero") out.fallback = true;
              break;
            }
            default: {  // LOOCF
              auto [ds, df] = dedupe(states, fvals);
              const BandwidthPolicy policy =
                  cfg.bandwidth.optimize ? BandwidthPolicy::optimize(cfg.bandwidth.search)
                                         : BandwidthPolicy::fixed(cfg.bandwidth.fixed);
              const EstimateSummary s = estimate_loo(proto, ds, df, policy);
              out.value = s.value;
              for (const std::string& f : s.flags)
                if (f.rfind("fold_fallback", 0) == 0) out.fallback = true;
              break;
            }
          }
        } catch (const std::exception&) {
          out.value = estimate_mc(fvals).value;
          out.fallback = true;
        }
        out.ms = now_ms() - t0;
      }
    });

    for (std::size_t ei = 0; ei < cfg.estimators.size(); ++ei) {
      std::vector<double> values(reps);
      int fallbacks = 0;
      double total_ms = 0.0;
      double mean = 0.0;
      for (std::size_t r = 0; r < reps; ++r) {
        values[r] = results[ei][r].value;
        mean += values[r];
        if (results[ei][r].fallback) ++fallbacks;
        total_ms += results[ei][r].ms;
      }
      mean /= static_cast<double>(reps);
      const MseSummary m = mse_summary(values, test_function_truth);

      ResultRow row;
      row.estimator = estimator_name(cfg.estimators[ei]);
      row.d = cfg.d;
      row.b = cell.b;
      row.omega = cfg.omega;
      row.n = cell.n;
      row.eps = cell.eps;
      row.mse = m.mse;
      row.se = m.se;
      row.mean_estimate = mean;
      row.fallback_count = fallbacks;
      row.wall_time_ms = cfg.timing ? total_ms : 0.0;
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

double fit_slope(const std::vector<int>& ns, const std::vector<double>& mses) {
  if (ns.size() != mses.size()) throw std::invalid_argument("fit_slope: length mismatch");
  if (ns.size() < 3) throw std::invalid_argument("fit_slope: need at least 3 points");
  const double k = static_cast<double>(ns.size());
  bool distinct = false;
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < ns.size(); ++i) {
    if (ns[i] < 1 || !(mses[i] > 0.0))
      throw std::invalid_argument("fit_slope: need n >= 1 and mse > 0");
    distinct = distinct || ns[i] != ns[0];
    const double x = std::log(static_cast<double>(ns[i]));
    const double y = std::log(mses[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double denom = k * sxx - sx * sx;
  if (!distinct || denom == 0.0)
    throw std::invalid_argument("fit_slope: degenerate abscissae");
  return (k * sxy - sx * sy) / denom;
}

std::string format_g17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string to_csv(const std::vector<ResultRow>& rows) {
  std::ostringstream out;
  out << "estimator,d,b,omega,n,eps,mse,se,mean_estimate,fallback_count,wall_time_ms\n";
  for (const ResultRow& r : rows) {
    out << r.estimator << ',' << r.d << ',' << r.b << ',' << r.omega << ',' << r.n << ',';
    if (r.eps) out << format_g17(*r.eps);
    out << ',' << format_g17(r.mse) << ',' << format_g17(r.se) << ','
        << format_g17(r.mean_estimate) << ',' << r.fallback_count << ','
        << format_g17(r.wall_time_ms) << '\n';
  }
  return out.str();
}

std::string to_json(const std::vector<ResultRow>& rows) {
  std::ostringstream out;
  out << "[\n";
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const ResultRow& r = rows[i];
    out << "  {\"estimator\":\"" << r.estimator << "\",\"d\":" << r.d << ",\"b\":" << r.b
        << ",\"omega\":" << r.omega << ",\"n\":" << r.n << ",\"eps\":";
    if (r.eps)
      out << format_g17(*r.eps);
    else
      out << "null";
    out << ",\"mse\":" << format_g17(r.mse) << ",\"se\":" << format_g17(r.se)
        << ",\"mean_estimate\":" << format_g17(r.mean_estimate)
        << ",\"fallback_count\":" << r.fallback_count
        << ",\"wall_time_ms\":" << format_g17(r.wall_time_ms) << "}";
    out << (i + 1 < rows.size() ? ",\n" : "\n");
  }
  out << "]\n";
  return out.str();
}

std::vector<ResultRow> parse_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) throw std::invalid_argument("parse_csv: empty input");
  if (line != "estimator,d,b,omega,n,eps,mse,se,mean_estimate,fallback_count,wall_time_ms")
    throw std::invalid_argument("parse_csv: unexpected header");

  std::vector<ResultRow> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::string cur;
    for (char ch : line) {
      if (ch == ',') {
        fields.push_back(cur);
        cur.clear();
      } else {
        cur += ch;
      }
    }
    fields.push_back(cur);
    if (fields.size() != 11) throw std::invalid_argument("parse_csv: malformed row");

    ResultRow r;
    r.estimator = fields[0];
    r.d = std::stoi(fields[1]);
    r.b = std::stoi(fields[2]);
    r.omega = std::stoi(fields[3]);
    r.n = std::stoi(fields[4]);
    if (!fields[5].empty()) r.eps = std::stod(fields[5]);
    r.mse = std::stod(fields[6]);
    r.se = std::stod(fields[7]);
    r.mean_estimate = std::stod(fields[8]);
    r.fallback_count = std::stoi(fields[9]);
    r.wall_time_ms = std::stod(fields[10]);
    rows.push_back(std::move(r));
  }
  return rows;
}

}  // namespace steinctrl
