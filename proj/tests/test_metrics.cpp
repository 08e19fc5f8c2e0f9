#include "alphavb/metrics.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

using namespace alphavb;
using metrics::Estimate;

namespace {

VariationalParams make_params(std::initializer_list<double> mu,
                              std::initializer_list<double> sigma,
                              std::initializer_list<double> gamma) {
  VariationalParams p;
  p.mu = Eigen::Map<const VectorXd>(mu.begin(), static_cast<long>(mu.size()));
  p.sigma = Eigen::Map<const VectorXd>(sigma.begin(), static_cast<long>(sigma.size()));
  p.gamma = Eigen::Map<const VectorXd>(gamma.begin(), static_cast<long>(gamma.size()));
  return p;
}

} // namespace

TEST_SUITE("metrics") {

TEST_CASE("point_estimate") {
  auto params = make_params({2.0, -1.0}, {1.0, 1.0}, {1.0 - 1e-10, 1e-10});
  auto gm = metrics::point_estimate(params, Estimate::gm, 0.5);
  CHECK(std::abs(gm(0) - 2.0) <= 1e-9);
  CHECK(std::abs(gm(1)) <= 1e-9);

  auto p2 = make_params({2.0}, {1.0}, {0.5});
  CHECK(metrics::point_estimate(p2, Estimate::gm, 0.5)(0) == doctest::Approx(1.0));

  auto p3 = make_params({2.0, 5.0}, {1.0, 1.0}, {0.9, 0.3});
  auto ms = metrics::point_estimate(p3, Estimate::mu_selected, 0.5);
  CHECK(ms(0) == 2.0);
  CHECK(ms(1) == 0.0);
}

TEST_CASE("select uses a strict threshold") {
  VectorXd g(3);
  g << 0.9, 0.4, 0.6;
  CHECK(metrics::select(g, 0.5) == std::vector<int>{0, 2});
  g << 0.5, 0.5, 0.5;
  CHECK(metrics::select(g, 0.5).empty());
  VectorXd g1(1);
  g1 << 0.95;
  CHECK(metrics::select(g1, 0.99).empty());
}

TEST_CASE("evaluate on a hand-computed miniature") {
  simgen::SimInstance inst;
  inst.X = MatrixXd::Zero(1, 6);
  inst.Y = VectorXd::Zero(1);
  inst.theta = VectorXd::Zero(6);
  inst.theta(0) = 2.0;
  inst.theta(2) = -1.5;
  inst.support = {0, 2};
  inst.X_test = MatrixXd::Zero(2, 6);
  inst.X_test.row(0) << 1, 0, 1, 0, 0, 0;
  inst.X_test.row(1) << 0, 1, 0, 1, 1, 1;
  inst.Y_test = VectorXd(2);
  inst.Y_test << 1.0, -0.5;

  auto params = make_params({2.0, 1.0, -1.5, 0.5, -1.0, 3.0},
                            {1, 1, 1, 1, 1, 1},
                            {0.9, 0.2, 0.8, 0.6, 0.4, 0.5});

  // selected = {0,2,3}: theta_hat = (1.8, .2, -1.2, .3, -.4, 1.5),
  // residuals on the test rows: 1 - 0.6 = 0.4 and -0.5 - 1.6 = -2.1.
  auto m = metrics::evaluate(inst, params, 0.5, Estimate::gm);
  CHECK(m.fdr == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
  CHECK(m.tpr == doctest::Approx(1.0));
  CHECK(m.l2 == doctest::Approx(std::sqrt(2.67)).epsilon(1e-12));
  CHECK(m.mspe == doctest::Approx(4.57 / 2.0).epsilon(1e-12));

  auto ms = metrics::evaluate(inst, params, 0.5, Estimate::mu_selected);
  CHECK(ms.l2 == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("perfect recovery hits the noise floor") {
  simgen::SimConfig cfg{100, 50, 5, 7};
  auto inst = simgen::generate(cfg);
  VariationalParams params;
  params.mu = inst.theta;
  params.sigma = VectorXd::Ones(50);
  params.gamma = VectorXd::Constant(50, 1e-10);
  for (int j : inst.support) params.gamma(j) = 1.0;

  auto m = metrics::evaluate(inst, params, 0.5, Estimate::gm);
  CHECK(m.l2 == 0.0);
  CHECK(m.fdr == 0.0);
  CHECK(m.tpr == 1.0);
  CHECK(m.mspe >= 0.7);
  CHECK(m.mspe <= 1.3);
}

TEST_CASE("empty selection conventions") {
  simgen::SimInstance inst;
  inst.X = MatrixXd::Zero(1, 3);
  inst.Y = VectorXd::Zero(1);
  inst.theta = VectorXd::Zero(3);
  inst.theta(1) = 1.0;
  inst.support = {1};
  inst.X_test = MatrixXd::Zero(1, 3);
  inst.Y_test = VectorXd::Zero(1);

  auto params = make_params({0, 0, 0}, {1, 1, 1}, {0.1, 0.2, 0.3});
  auto m = metrics::evaluate(inst, params, 0.5, Estimate::gm);
  CHECK(m.fdr == 0.0);
  CHECK(m.tpr == 0.0);
}

TEST_CASE("fdr complements precision") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> ud(0.0, 1.0);
  for (int rep = 0; rep < 200; ++rep) {
    VectorXd g(12);
    for (int i = 0; i < 12; ++i) g(i) = ud(rng);
    auto sel = metrics::select(g, 0.5);
    if (sel.empty()) continue;
    std::vector<int> support = {1, 4, 7};
    int hits = 0;
    for (int i : sel)
      if (std::find(support.begin(), support.end(), i) != support.end()) ++hits;
    const double precision = hits / static_cast<double>(sel.size());

    simgen::SimInstance inst;
    inst.X = MatrixXd::Zero(1, 12);
    inst.Y = VectorXd::Zero(1);
    inst.theta = VectorXd::Zero(12);
    for (int i : support) inst.theta(i) = 1.0;
    inst.support = support;
    inst.X_test = MatrixXd::Zero(1, 12);
    inst.Y_test = VectorXd::Zero(1);
    VariationalParams params;
    params.mu = VectorXd::Zero(12);
    params.sigma = VectorXd::Ones(12);
    params.gamma = g;
    auto m = metrics::evaluate(inst, params, 0.5, Estimate::gm);
    CHECK(m.fdr + precision == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("tpr ignores sub-threshold noise coordinates") {
  simgen::SimInstance inst;
  inst.X = MatrixXd::Zero(1, 5);
  inst.Y = VectorXd::Zero(1);
  inst.theta = VectorXd::Zero(5);
  inst.theta(0) = 1.0;
  inst.support = {0};
  inst.X_test = MatrixXd::Zero(1, 5);
  inst.Y_test = VectorXd::Zero(1);

  auto a = make_params({0, 0, 0, 0, 0}, {1, 1, 1, 1, 1}, {0.9, 0.1, 0.2, 0.3, 0.4});
  auto b = make_params({0, 0, 0, 0, 0}, {1, 1, 1, 1, 1}, {0.9, 0.4, 0.3, 0.2, 0.1});
  CHECK(metrics::evaluate(inst, a, 0.5, Estimate::gm).tpr ==
        metrics::evaluate(inst, b, 0.5, Estimate::gm).tpr);
}

TEST_CASE("shape mismatch") {
  simgen::SimConfig cfg{10, 6, 2, 3};
  auto inst = simgen::generate(cfg);
  auto params = make_params({0, 0, 0}, {1, 1, 1}, {0.5, 0.5, 0.5});
  CHECK_THROWS_WITH_AS(metrics::evaluate(inst, params, 0.5, Estimate::gm), "shape",
                       std::invalid_argument);
}

} // TEST_SUITE("metrics")
