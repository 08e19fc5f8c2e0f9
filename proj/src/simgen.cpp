#include "alphavb/simgen.hpp"

#include <algorithm>
#include <filesystem>
#include <random>
#include <stdexcept>

#include "alphavb/io.hpp"

namespace alphavb::simgen {

SimConfig predefined_config(const std::string& name) {
  SimConfig cfg;
  if (name == "i") {
    cfg.n = 100; cfg.p = 200; cfg.s = 10;
  } else if (name == "ii") {
    cfg.n = 400; cfg.p = 1000; cfg.s = 40;
  } else if (name == "iii") {
    cfg.n = 200; cfg.p = 800; cfg.s = 5;
  } else if (name == "iv") {
    cfg.n = 300; cfg.p = 450; cfg.s = 20;
  } else {
    throw std::invalid_argument("unknown config");
  }
  return cfg;
}

SimInstance generate(const SimConfig& cfg) {
  if (cfg.n < 1 || cfg.p < 1) throw std::invalid_argument("shape");
  if (cfg.s < 0 || cfg.s > cfg.p) throw std::invalid_argument("invalid sparsity");
  const int test_n = cfg.test_n < 0 ? cfg.n : cfg.test_n;
  if (test_n < 1) throw std::invalid_argument("shape");

  std::mt19937_64 rng(cfg.seed);
  std::normal_distribution<double> stdnorm(0.0, 1.0);
  std::uniform_real_distribution<double> signal(cfg.signal_min, cfg.signal_max);

  SimInstance inst;
  inst.X.resize(cfg.n, cfg.p);
  for (int i = 0; i < cfg.n; ++i)
    for (int j = 0; j < cfg.p; ++j) inst.X(i, j) = stdnorm(rng);

  // Partial Fisher-Yates for a uniform s-subset.
  std::vector<int> idx(cfg.p);
  for (int j = 0; j < cfg.p; ++j) idx[j] = j;
  for (int k = 0; k < cfg.s; ++k) {
    std::uniform_int_distribution<int> pick(k, cfg.p - 1);
    std::swap(idx[k], idx[pick(rng)]);
  }
  inst.support.assign(idx.begin(), idx.begin() + cfg.s);
  std::sort(inst.support.begin(), inst.support.end());

  inst.theta = VectorXd::Zero(cfg.p);
  for (int j : inst.support) inst.theta(j) = signal(rng);

  inst.Y = inst.X * inst.theta;
  for (int i = 0; i < cfg.n; ++i) inst.Y(i) += stdnorm(rng);

  inst.X_test.resize(test_n, cfg.p);
  for (int i = 0; i < test_n; ++i)
    for (int j = 0; j < cfg.p; ++j) inst.X_test(i, j) = stdnorm(rng);
  inst.Y_test = inst.X_test * inst.theta;
  for (int i = 0; i < test_n; ++i) inst.Y_test(i) += stdnorm(rng);

  return inst;
}

void write_csv(const SimInstance& inst, const std::string& dir) {
  std::filesystem::create_directories(dir);
  const std::filesystem::path base(dir);
  io::write_matrix_csv((base / "X.csv").string(), inst.X, "x");
  io::write_vector_csv((base / "Y.csv").string(), inst.Y, "y");
  io::write_vector_csv((base / "theta.csv").string(), inst.theta, "theta");
  io::write_matrix_csv((base / "X_test.csv").string(), inst.X_test, "x");
  io::write_vector_csv((base / "Y_test.csv").string(), inst.Y_test, "y");
}

} // namespace alphavb::simgen
