#include "alphavb/bench.hpp"

#include "alphavb/io.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <stdexcept>
#include <string>
#include <vector>

using namespace alphavb;
namespace fs = std::filesystem;

namespace {

struct Options {
  std::string method = "alphavb";
  double alpha = 0.0; // 0: default for the method (2.0 alphavb, 0.9 alphasvb)
  std::vector<double> alpha_grid;
  std::string config;
  int n = 0;
  int p = 0;
  int s = 0;
  int repeats = 1;
  std::uint64_t seed = 1;
  int jobs = 0;
  double lambda = 1.0;
  double a0 = 1.0;
  double b0 = -1.0;
  double gamma_threshold = 0.5;
  std::string estimate = "gm";
  cavi::RenyiConfig ccfg;
  svb::SvbConfig scfg;
  std::string data_dir;
  std::string spec_path;
  std::string out;
};

void add_design_flags(CLI::App* cmd, Options& o) {
  cmd->add_option("--config", o.config, "named design: i, ii, iii or iv");
  cmd->add_option("--n", o.n, "rows of a custom design");
  cmd->add_option("--p", o.p, "columns of a custom design");
  cmd->add_option("--s", o.s, "true support size of a custom design");
  cmd->add_option("--seed", o.seed, "data seed (benchmarks use seed + repeat)");
}

void add_solver_flags(CLI::App* cmd, Options& o) {
  cmd->add_option("--method", o.method, "alphavb or alphasvb");
  cmd->add_option("--lambda", o.lambda, "laplace slab rate");
  cmd->add_option("--a0", o.a0, "beta prior success count");
  cmd->add_option("--b0", o.b0, "beta prior failure count (default: p)");
  cmd->add_option("--k-samples", o.scfg.k_samples, "monte carlo batch size");
  cmd->add_option("--iters", o.scfg.iters, "stochastic ascent iterations");
  cmd->add_option("--lr-mu", o.scfg.lr_mu, "learning rate for mu");
  cmd->add_option("--lr-sigma", o.scfg.lr_sigma, "learning rate for log sigma");
  cmd->add_option("--lr-gamma", o.scfg.lr_gamma, "learning rate for logit gamma");
  cmd->add_option("--grad-clip", o.scfg.grad_clip, "per-component gradient clip");
  cmd->add_option("--max-sweeps", o.ccfg.max_sweeps, "coordinate ascent sweep cap");
  cmd->add_option("--entropy-tol", o.ccfg.entropy_tol,
                  "entropy change (bits) declaring convergence");
  cmd->add_option("--gamma-threshold", o.gamma_threshold, "selection threshold");
  cmd->add_option("--estimate", o.estimate, "point estimator: gm or mu-selected");
  cmd->add_option("--spec", o.spec_path, "json document with these fields; flags win");
}

bool flag_given(const CLI::App* cmd, const std::string& name) {
  const CLI::Option* opt = cmd->get_option_no_throw(name);
  return opt != nullptr && opt->count() > 0;
}

void apply_spec_file(const CLI::App* cmd, Options& o) {
  if (o.spec_path.empty()) return;
  std::ifstream in(o.spec_path, std::ios::binary);
  if (!in.good()) throw std::invalid_argument("unreadable file");
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const std::exception&) {
    throw std::invalid_argument("malformed json");
  }
  auto load = [&](const char* key, const std::string& flag, auto& field) {
    if (doc.contains(key) && !flag_given(cmd, flag))
      field = doc.at(key).get<std::decay_t<decltype(field)>>();
  };
  load("method", "--method", o.method);
  load("alpha", "--alpha", o.alpha);
  load("alpha_grid", "--alpha-grid", o.alpha_grid);
  load("config", "--config", o.config);
  load("n", "--n", o.n);
  load("p", "--p", o.p);
  load("s", "--s", o.s);
  load("repeats", "--repeats", o.repeats);
  load("seed", "--seed", o.seed);
  load("jobs", "--jobs", o.jobs);
  load("lambda", "--lambda", o.lambda);
  load("a0", "--a0", o.a0);
  load("b0", "--b0", o.b0);
  load("k_samples", "--k-samples", o.scfg.k_samples);
  load("iters", "--iters", o.scfg.iters);
  load("lr_mu", "--lr-mu", o.scfg.lr_mu);
  load("lr_sigma", "--lr-sigma", o.scfg.lr_sigma);
  load("lr_gamma", "--lr-gamma", o.scfg.lr_gamma);
  load("grad_clip", "--grad-clip", o.scfg.grad_clip);
  load("max_sweeps", "--max-sweeps", o.ccfg.max_sweeps);
  load("entropy_tol", "--entropy-tol", o.ccfg.entropy_tol);
  load("gamma_threshold", "--gamma-threshold", o.gamma_threshold);
  load("estimate", "--estimate", o.estimate);
  load("out", "--out", o.out);
}

metrics::Estimate parse_estimate(const std::string& name) {
  if (name == "gm") return metrics::Estimate::gm;
  if (name == "mu-selected") return metrics::Estimate::mu_selected;
  throw std::invalid_argument("domain");
}

bench::BenchSpec make_spec(const Options& o) {
  bench::BenchSpec spec;
  spec.method = o.method;
  if (!o.alpha_grid.empty()) spec.alphas = o.alpha_grid;
  else if (o.alpha != 0.0) spec.alphas = {o.alpha};
  spec.config = o.config;
  spec.n = o.n;
  spec.p = o.p;
  spec.s = o.s;
  spec.repeats = o.repeats;
  spec.seed_base = o.seed;
  spec.jobs = o.jobs;
  spec.lambda = o.lambda;
  spec.a0 = o.a0;
  spec.b0 = o.b0;
  spec.gamma_threshold = o.gamma_threshold;
  spec.estimate = parse_estimate(o.estimate);
  spec.cavi_cfg = o.ccfg;
  spec.svb_cfg = o.scfg;
  return spec;
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out.good()) throw std::invalid_argument("unreadable file");
  out << text;
}

int cmd_simulate(const Options& o) {
  simgen::SimConfig cfg;
  if (!o.config.empty()) {
    cfg = simgen::predefined_config(o.config);
  } else {
    cfg.n = o.n;
    cfg.p = o.p;
    cfg.s = o.s;
  }
  cfg.seed = o.seed;
  if (o.out.empty()) throw std::invalid_argument("domain");
  simgen::write_csv(simgen::generate(cfg), o.out);
  return 0;
}

int cmd_fit(const Options& o) {
  MatrixXd X;
  VectorXd Y;
  simgen::SimInstance inst;
  bool have_truth = false;

  if (!o.data_dir.empty()) {
    const fs::path dir(o.data_dir);
    X = io::read_matrix_csv((dir / "X.csv").string());
    Y = io::read_vector_csv((dir / "Y.csv").string());
    if (fs::exists(dir / "theta.csv") && fs::exists(dir / "X_test.csv") &&
        fs::exists(dir / "Y_test.csv")) {
      inst.X = X;
      inst.Y = Y;
      inst.theta = io::read_vector_csv((dir / "theta.csv").string());
      inst.X_test = io::read_matrix_csv((dir / "X_test.csv").string());
      inst.Y_test = io::read_vector_csv((dir / "Y_test.csv").string());
      for (int i = 0; i < inst.theta.size(); ++i)
        if (inst.theta(i) != 0.0) inst.support.push_back(i);
      have_truth = true;
    }
  } else {
    simgen::SimConfig cfg;
    if (!o.config.empty()) {
      cfg = simgen::predefined_config(o.config);
    } else {
      cfg.n = o.n;
      cfg.p = o.p;
      cfg.s = o.s;
    }
    cfg.seed = o.seed;
    inst = simgen::generate(cfg);
    X = inst.X;
    Y = inst.Y;
    have_truth = true;
  }

  PriorSpec prior;
  prior.lambda = o.lambda;
  prior.a0 = o.a0;
  prior.b0 = o.b0 < 0.0 ? static_cast<double>(X.cols()) : o.b0;
  const auto view = precompute(X, Y);

  const double alpha =
      o.alpha != 0.0 ? o.alpha : (o.method == "alphasvb" ? 0.9 : 2.0);
  const auto fr = bench::fit_dataset(view, prior, o.method, alpha, o.ccfg, o.scfg,
                                     o.seed + 1000000);
  if (fr.diverged) {
    std::cerr << "diverged\n";
    return 3;
  }

  nlohmann::json doc;
  doc["method"] = o.method;
  doc["alpha"] = alpha;
  doc["mu"] = nlohmann::json::array();
  doc["sigma"] = nlohmann::json::array();
  doc["gamma"] = nlohmann::json::array();
  for (int i = 0; i < view.p; ++i) {
    doc["mu"].push_back(fr.params.mu(i));
    doc["sigma"].push_back(fr.params.sigma(i));
    doc["gamma"].push_back(fr.params.gamma(i));
  }
  doc["selected"] = metrics::select(fr.params.gamma, o.gamma_threshold);
  if (have_truth) {
    const auto m =
        metrics::evaluate(inst, fr.params, o.gamma_threshold, parse_estimate(o.estimate));
    doc["metrics"] = {{"l2", m.l2}, {"fdr", m.fdr}, {"tpr", m.tpr}, {"mspe", m.mspe}};
  }
  doc["wall_time_ms"] = fr.wall_ms;
  doc["converged"] = fr.converged;

  const std::string text = doc.dump(2) + "\n";
  if (o.out.empty()) std::cout << text;
  else write_text(o.out, text);
  return 0;
}

int cmd_bench_like(const Options& o, bool sweep) {
  if (o.out.empty()) throw std::invalid_argument("domain");
  const auto spec = make_spec(o);
  const auto out = bench::run_bench(spec);

  fs::path base(o.out);
  base.replace_extension();
  write_text(o.out, bench::long_csv(out));
  write_text(base.string() + ".timing.csv", bench::timing_csv(out));
  const std::string agg = bench::aggregate_csv(out);
  write_text(base.string() + ".aggregate.csv", agg);
  if (sweep) write_text(base.string() + ".plot.dat", bench::plot_data(out));
  std::cout << agg;
  return 0;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"alpha-divergence variational solvers for sparse spike-and-slab regression"};
  app.require_subcommand(1);
  Options o;

  CLI::App* sim = app.add_subcommand("simulate", "generate a dataset as csv files");
  add_design_flags(sim, o);
  sim->add_option("--out", o.out, "output directory");

  CLI::App* fit = app.add_subcommand("fit", "fit one solver, write a json report");
  add_design_flags(fit, o);
  add_solver_flags(fit, o);
  fit->add_option("--alpha", o.alpha, "renyi order");
  fit->add_option("--data", o.data_dir, "directory with X.csv and Y.csv");
  fit->add_option("--out", o.out, "json output path (default: stdout)");

  CLI::App* ben = app.add_subcommand("bench", "repeated seeded benchmark");
  CLI::App* swp = app.add_subcommand("sweep-alpha", "benchmark across an alpha grid");
  for (CLI::App* cmd : {ben, swp}) {
    add_design_flags(cmd, o);
    add_solver_flags(cmd, o);
    cmd->add_option("--alpha", o.alpha, "single-point alpha grid");
    cmd->add_option("--alpha-grid", o.alpha_grid, "comma separated alphas")
        ->delimiter(',');
    cmd->add_option("--repeats", o.repeats, "seeded repeats per alpha");
    cmd->add_option("--jobs", o.jobs, "worker threads (0: ALPHAVB_JOBS or cores)");
    cmd->add_option("--out", o.out, "long-format csv path; siblings get "
                                    ".timing/.aggregate suffixes");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    CLI::App* cmd = app.get_subcommands().front();
    apply_spec_file(cmd, o);
    if (cmd == sim) return cmd_simulate(o);
    if (cmd == fit) return cmd_fit(o);
    return cmd_bench_like(o, cmd == swp);
  } catch (const std::invalid_argument& e) {
    std::cerr << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << e.what() << '\n';
    return 3;
  }
}
