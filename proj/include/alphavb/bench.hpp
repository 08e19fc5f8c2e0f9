#pragma once

#include "alphavb/cavi.hpp"
#include "alphavb/metrics.hpp"
#include "alphavb/simgen.hpp"
#include "alphavb/svb.hpp"

#include <optional>
#include <string>
#include <vector>

namespace alphavb::bench {

// One benchmark run: repeats x alphas fits of one method on one design. Data for
// repeat r uses seed seed_base + r; the stochastic solver uses seed_base + 1000000 + r.
struct BenchSpec {
  std::string method = "alphavb"; // alphavb | alphasvb
  std::vector<double> alphas;
  std::string config; // named design, empty when n/p/s given explicitly
  int n = 0;
  int p = 0;
  int s = 0;
  int repeats = 1;
  std::uint64_t seed_base = 1;
  int jobs = 0; // 0: ALPHAVB_JOBS env or hardware concurrency
  double lambda = 1.0;
  double a0 = 1.0;
  double b0 = -1.0; // < 0 means p
  double gamma_threshold = 0.5;
  metrics::Estimate estimate = metrics::Estimate::gm;
  cavi::RenyiConfig cavi_cfg; // alpha field ignored, taken from alphas
  svb::SvbConfig svb_cfg;     // alpha and seed fields ignored
};

struct RepeatRow {
  int alpha_idx = 0;
  int repeat = 0;
  std::string status = "ok"; // ok | failed
  metrics::MetricBundle m;
  double wall_ms = 0.0;
};

struct BenchOutput {
  BenchSpec spec;
  std::string config_label; // named design or "custom"
  std::vector<RepeatRow> rows;
};

simgen::SimConfig resolve_design(const BenchSpec& spec);
PriorSpec resolve_prior(const BenchSpec& spec);

struct FitResult {
  VariationalParams params;
  bool converged = false;
  bool diverged = false;
  double wall_ms = 0.0;
};

// Runs one solver on prepared data. Throws on invalid configuration; a diverged
// stochastic run is reported through the flag, not an exception.
FitResult fit_dataset(const DatasetView& view, const PriorSpec& prior,
                      const std::string& method, double alpha,
                      const cavi::RenyiConfig& cavi_cfg, const svb::SvbConfig& svb_cfg,
                      std::uint64_t solver_seed);

// Executes all (alpha, repeat) tasks on a small thread pool. Rows come back in task
// order, so every result column is independent of the parallelism degree.
BenchOutput run_bench(const BenchSpec& spec);

// Long format: method,alpha,config,repeat,status,l2,fdr,tpr,mspe. Metric cells of
// failed repeats are left empty. Wall times go to a separate file with the same keys,
// keeping the results file byte-stable across runs and job counts.
std::string long_csv(const BenchOutput& out);
std::string timing_csv(const BenchOutput& out);

// Per (method, alpha): count of ok/failed repeats, mean and sample sd (0 when fewer
// than two ok repeats) of each metric over ok repeats.
std::string aggregate_csv(const BenchOutput& out);

// Gnuplot-ready table: alpha, then mean of each metric, one row per alpha.
std::string plot_data(const BenchOutput& out);

} // namespace alphavb::bench
