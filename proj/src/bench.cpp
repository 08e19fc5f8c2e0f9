#include "alphavb/bench.hpp"

#include "alphavb/io.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <thread>

namespace alphavb::bench {

namespace {

constexpr const char* kMetricNames[4] = {"l2", "fdr", "tpr", "mspe"};

double metric_value(const metrics::MetricBundle& m, int k) {
  switch (k) {
    case 0: return m.l2;
    case 1: return m.fdr;
    case 2: return m.tpr;
    default: return m.mspe;
  }
}

int effective_jobs(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("ALPHAVB_JOBS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<int>(v);
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? static_cast<int>(hw) : 1;
}

void check_spec(const BenchSpec& spec) {
  if (spec.method != "alphavb" && spec.method != "alphasvb")
    throw std::invalid_argument("domain");
  if (spec.alphas.empty() || spec.repeats < 1 || spec.jobs < 0)
    throw std::invalid_argument("domain");
  for (double a : spec.alphas) {
    if (!std::isfinite(a) || !(a > 0.0)) throw std::invalid_argument("domain");
    if (spec.method == "alphavb" && !(a > 1.0))
      throw std::invalid_argument("cavi requires alpha > 1");
    if (spec.method == "alphasvb" && a == 1.0)
      throw std::invalid_argument("domain");
  }
  if (!(spec.gamma_threshold > 0.0) || !(spec.gamma_threshold < 1.0))
    throw std::invalid_argument("domain");
}

} // namespace

simgen::SimConfig resolve_design(const BenchSpec& spec) {
  if (!spec.config.empty()) return simgen::predefined_config(spec.config);
  if (spec.n < 1 || spec.p < 1) throw std::invalid_argument("shape");
  if (spec.s < 0 || spec.s > spec.p) throw std::invalid_argument("invalid sparsity");
  simgen::SimConfig cfg;
  cfg.n = spec.n;
  cfg.p = spec.p;
  cfg.s = spec.s;
  return cfg;
}

PriorSpec resolve_prior(const BenchSpec& spec) {
  const auto design = resolve_design(spec);
  PriorSpec prior;
  prior.lambda = spec.lambda;
  prior.a0 = spec.a0;
  prior.b0 = spec.b0 < 0.0 ? static_cast<double>(design.p) : spec.b0;
  return prior;
}

FitResult fit_dataset(const DatasetView& view, const PriorSpec& prior,
                      const std::string& method, double alpha,
                      const cavi::RenyiConfig& cavi_cfg, const svb::SvbConfig& svb_cfg,
                      std::uint64_t solver_seed) {
  FitResult out;
  const auto t0 = std::chrono::steady_clock::now();
  if (method == "alphavb") {
    cavi::RenyiConfig cfg = cavi_cfg;
    cfg.alpha = alpha;
    const auto res = cavi::run_cavi(view, prior, cfg);
    out.params = res.params;
    out.converged = res.converged;
  } else if (method == "alphasvb") {
    svb::SvbConfig cfg = svb_cfg;
    cfg.alpha = alpha;
    cfg.seed = solver_seed;
    const auto res = svb::run_svb(view, prior, cfg);
    out.params = res.params;
    out.diverged = res.diverged;
    out.converged = !res.diverged;
  } else {
    throw std::invalid_argument("domain");
  }
  out.wall_ms = std::chrono::duration<double, std::milli>(
                    std::chrono::steady_clock::now() - t0)
                    .count();
  return out;
}

BenchOutput run_bench(const BenchSpec& spec) {
  check_spec(spec);
  const auto design = resolve_design(spec);
  const auto prior = resolve_prior(spec);

  BenchOutput out;
  out.spec = spec;
  out.config_label = spec.config.empty() ? "custom" : spec.config;

  const int total = static_cast<int>(spec.alphas.size()) * spec.repeats;
  out.rows.assign(static_cast<std::size_t>(total), RepeatRow{});

  std::atomic<int> next{0};
  auto worker = [&]() {
    for (int t = next.fetch_add(1); t < total; t = next.fetch_add(1)) {
      const int ai = t / spec.repeats;
      const int r = t % spec.repeats;
      RepeatRow row;
      row.alpha_idx = ai;
      row.repeat = r;
      try {
        simgen::SimConfig d = design;
        d.seed = spec.seed_base + static_cast<std::uint64_t>(r);
        const auto inst = simgen::generate(d);
        const auto view = precompute(inst.X, inst.Y);
        const auto fr =
            fit_dataset(view, prior, spec.method, spec.alphas[static_cast<std::size_t>(ai)],
                        spec.cavi_cfg, spec.svb_cfg,
                        spec.seed_base + 1000000 + static_cast<std::uint64_t>(r));
        row.wall_ms = fr.wall_ms;
        if (fr.diverged) {
          row.status = "failed";
        } else {
          row.m = metrics::evaluate(inst, fr.params, spec.gamma_threshold, spec.estimate);
        }
      } catch (const std::exception&) {
        row.status = "failed";
      }
      out.rows[static_cast<std::size_t>(t)] = row;
    }
  };

  const int jobs = std::min(effective_jobs(spec.jobs), total);
  if (jobs <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(jobs));
    for (int j = 0; j < jobs; ++j) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  return out;
}

std::string long_csv(const BenchOutput& out) {
  std::string s = "method,alpha,config,repeat,status,l2,fdr,tpr,mspe\n";
  for (const auto& r : out.rows) {
    s += out.spec.method + ',' +
         io::render_double(out.spec.alphas[static_cast<std::size_t>(r.alpha_idx)]) + ',' +
         out.config_label + ',' + std::to_string(r.repeat) + ',' + r.status;
    if (r.status == "ok") {
      for (int k = 0; k < 4; ++k) s += ',' + io::render_double(metric_value(r.m, k));
    } else {
      s += ",,,,";
    }
    s += '\n';
  }
  return s;
}

std::string timing_csv(const BenchOutput& out) {
  std::string s = "method,alpha,config,repeat,wall_ms\n";
  for (const auto& r : out.rows) {
    s += out.spec.method + ',' +
         io::render_double(out.spec.alphas[static_cast<std::size_t>(r.alpha_idx)]) + ',' +
         out.config_label + ',' + std::to_string(r.repeat) + ',' +
         io::render_double(r.wall_ms) + '\n';
  }
  return s;
}

std::string aggregate_csv(const BenchOutput& out) {
  std::string s = "method,alpha,config,metric,mean,sd,ok,failed\n";
  for (std::size_t ai = 0; ai < out.spec.alphas.size(); ++ai) {
    std::vector<const RepeatRow*> ok;
    int failed = 0;
    for (const auto& r : out.rows) {
      if (static_cast<std::size_t>(r.alpha_idx) != ai) continue;
      if (r.status == "ok") ok.push_back(&r);
      else ++failed;
    }
    for (int k = 0; k < 4; ++k) {
      s += out.spec.method + ',' + io::render_double(out.spec.alphas[ai]) + ',' +
           out.config_label + ',' + kMetricNames[k] + ',';
      if (!ok.empty()) {
        double mean = 0.0;
        for (const auto* r : ok) mean += metric_value(r->m, k);
        mean /= static_cast<double>(ok.size());
        double sd = 0.0;
        if (ok.size() > 1) {
          double ss = 0.0;
          for (const auto* r : ok) {
            const double d = metric_value(r->m, k) - mean;
            ss += d * d;
          }
          sd = std::sqrt(ss / (static_cast<double>(ok.size()) - 1.0));
        }
        s += io::render_double(mean) + ',' + io::render_double(sd);
      } else {
        s += ',';
      }
      s += ',' + std::to_string(ok.size()) + ',' + std::to_string(failed) + '\n';
    }
  }
  return s;
}

std::string plot_data(const BenchOutput& out) {
  std::string s = "# alpha l2 fdr tpr mspe\n";
  for (std::size_t ai = 0; ai < out.spec.alphas.size(); ++ai) {
    double sums[4] = {0.0, 0.0, 0.0, 0.0};
    int ok = 0;
    for (const auto& r : out.rows) {
      if (static_cast<std::size_t>(r.alpha_idx) != ai || r.status != "ok") continue;
      for (int k = 0; k < 4; ++k) sums[k] += metric_value(r.m, k);
      ++ok;
    }
    if (ok == 0) continue;
    s += io::render_double(out.spec.alphas[ai]);
    for (int k = 0; k < 4; ++k)
      s += ' ' + io::render_double(sums[k] / static_cast<double>(ok));
    s += '\n';
  }
  return s;
}

} // namespace alphavb::bench
