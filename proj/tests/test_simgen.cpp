#include "alphavb/simgen.hpp"

#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <set>
#include <stdexcept>

#include "alphavb/io.hpp"

using namespace alphavb;
using simgen::SimConfig;

TEST_SUITE("simgen") {

TEST_CASE("predefined configs") {
  auto ci = simgen::predefined_config("i");
  CHECK(ci.n == 100);
  CHECK(ci.p == 200);
  CHECK(ci.s == 10);
  auto cii = simgen::predefined_config("ii");
  CHECK(cii.n == 400);
  CHECK(cii.p == 1000);
  CHECK(cii.s == 40);
  auto ciii = simgen::predefined_config("iii");
  CHECK(ciii.n == 200);
  CHECK(ciii.p == 800);
  CHECK(ciii.s == 5);
  auto civ = simgen::predefined_config("iv");
  CHECK(civ.n == 300);
  CHECK(civ.s == 20);
  CHECK(civ.p == 450);
  CHECK_THROWS_WITH_AS(simgen::predefined_config("v"), "unknown config",
                       std::invalid_argument);
}

TEST_CASE("generate draws the advertised shapes and sparsity") {
  auto cfg = simgen::predefined_config("iii");
  cfg.seed = 1;
  auto inst = simgen::generate(cfg);
  CHECK(inst.X.rows() == 200);
  CHECK(inst.X.cols() == 800);
  CHECK(inst.Y.size() == 200);
  CHECK(inst.X_test.rows() == 200);
  CHECK(inst.Y_test.size() == 200);
  CHECK(static_cast<int>(inst.support.size()) == 5);

  int nonzero = 0;
  for (int j = 0; j < 800; ++j)
    if (inst.theta(j) != 0.0) ++nonzero;
  CHECK(nonzero == 5);
  std::set<int> sup(inst.support.begin(), inst.support.end());
  CHECK(sup.size() == 5);
  for (int j : inst.support) {
    CHECK(inst.theta(j) != 0.0);
    CHECK(inst.theta(j) >= -3.0);
    CHECK(inst.theta(j) <= 3.0);
  }
  // support is sorted
  for (size_t k = 1; k < inst.support.size(); ++k)
    CHECK(inst.support[k - 1] < inst.support[k]);
}

TEST_CASE("pure noise when s = 0") {
  SimConfig cfg{10000, 2, 0, 99};
  auto inst = simgen::generate(cfg);
  const double mean = inst.Y.mean();
  const double var = (inst.Y.array() - mean).square().sum() / (inst.Y.size() - 1);
  CHECK(var >= 0.94);
  CHECK(var <= 1.06);
}

TEST_CASE("same seed is bitwise identical") {
  auto cfg = simgen::predefined_config("i");
  cfg.seed = 42;
  auto a = simgen::generate(cfg);
  auto b = simgen::generate(cfg);
  CHECK(a.X == b.X);
  CHECK(a.Y == b.Y);
  CHECK(a.theta == b.theta);
  CHECK(a.support == b.support);
  CHECK(a.X_test == b.X_test);
  CHECK(a.Y_test == b.Y_test);
}

TEST_CASE("invalid sparsity") {
  SimConfig cfg{10, 5, 6, 1};
  CHECK_THROWS_WITH_AS(simgen::generate(cfg), "invalid sparsity",
                       std::invalid_argument);
}

TEST_CASE("support indices are uniform") {
  const int draws = 10000;
  std::vector<int> counts(10, 0);
  for (int r = 0; r < draws; ++r) {
    SimConfig cfg{5, 10, 2, static_cast<std::uint64_t>(1000 + r)};
    auto inst = simgen::generate(cfg);
    for (int j : inst.support) ++counts[j];
  }
  for (int j = 0; j < 10; ++j) {
    const double freq = counts[j] / static_cast<double>(draws);
    CHECK(freq >= 0.18);
    CHECK(freq <= 0.22);
  }
}

TEST_CASE("signal coefficients center at zero") {
  double sum = 0.0;
  long cnt = 0;
  for (int r = 0; r < 10000; ++r) {
    SimConfig cfg{5, 8, 3, static_cast<std::uint64_t>(50000 + r)};
    auto inst = simgen::generate(cfg);
    for (int j : inst.support) {
      sum += inst.theta(j);
      ++cnt;
    }
  }
  const double mean = sum / cnt;
  CHECK(mean >= -0.06);
  CHECK(mean <= 0.06);
}

TEST_CASE("csv round trip") {
  SimConfig cfg{7, 4, 2, 33};
  auto inst = simgen::generate(cfg);
  auto dir = std::filesystem::temp_directory_path() / "alphavb_simgen_test";
  std::filesystem::remove_all(dir);
  simgen::write_csv(inst, dir.string());

  auto X = io::read_matrix_csv((dir / "X.csv").string());
  auto Y = io::read_vector_csv((dir / "Y.csv").string());
  auto theta = io::read_vector_csv((dir / "theta.csv").string());
  auto Xt = io::read_matrix_csv((dir / "X_test.csv").string());
  auto Yt = io::read_vector_csv((dir / "Y_test.csv").string());
  CHECK(X == inst.X);
  CHECK(Y == inst.Y);
  CHECK(theta == inst.theta);
  CHECK(Xt == inst.X_test);
  CHECK(Yt == inst.Y_test);
  std::filesystem::remove_all(dir);
}

} // TEST_SUITE("simgen")
