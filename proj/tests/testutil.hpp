#pragma once

// Shared helpers for the test binaries: naive reference computations, quadrature,
// and Monte Carlo oracles kept deliberately independent of the library internals.

#include <Eigen/Dense>

#include <cmath>
#include <functional>
#include <random>
#include <vector>

namespace testutil {

using Eigen::MatrixXd;
using Eigen::VectorXd;

inline MatrixXd naive_gram(const MatrixXd& X) {
  const int p = static_cast<int>(X.cols());
  const int n = static_cast<int>(X.rows());
  MatrixXd g = MatrixXd::Zero(p, p);
  for (int i = 0; i < p; ++i)
    for (int j = 0; j < p; ++j) {
      double acc = 0.0;
      for (int r = 0; r < n; ++r) acc += X(r, i) * X(r, j);
      g(i, j) = acc;
    }
  return g;
}

inline VectorXd naive_xty(const MatrixXd& X, const VectorXd& Y) {
  const int p = static_cast<int>(X.cols());
  const int n = static_cast<int>(X.rows());
  VectorXd b = VectorXd::Zero(p);
  for (int i = 0; i < p; ++i) {
    double acc = 0.0;
    for (int r = 0; r < n; ++r) acc += X(r, i) * Y(r);
    b(i) = acc;
  }
  return b;
}

// Composite Simpson rule; intervals is rounded up to the next even number.
inline double simpson(const std::function<double(double)>& f, double a, double b,
                      int intervals) {
  if (intervals % 2) ++intervals;
  const double h = (b - a) / intervals;
  double acc = f(a) + f(b);
  for (int k = 1; k < intervals; ++k) acc += f(a + k * h) * (k % 2 ? 4.0 : 2.0);
  return acc * h / 3.0;
}

inline MatrixXd random_matrix(int n, int p, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> nd(0.0, 1.0);
  MatrixXd X(n, p);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < p; ++j) X(i, j) = nd(rng);
  return X;
}

inline VectorXd random_vector(int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> nd(0.0, 1.0);
  VectorXd v(n);
  for (int i = 0; i < n; ++i) v(i) = nd(rng);
  return v;
}

struct McEstimate {
  double mean = 0.0;
  double se = 0.0;
};

// Streaming mean / standard error of f(draw) over iid standard normal draws.
inline McEstimate mc_normal_mean(const std::function<double(double)>& f, long draws,
                                 std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> nd(0.0, 1.0);
  double sum = 0.0, sumsq = 0.0;
  for (long k = 0; k < draws; ++k) {
    const double v = f(nd(rng));
    sum += v;
    sumsq += v * v;
  }
  const double mean = sum / static_cast<double>(draws);
  const double var = std::max(0.0, sumsq / static_cast<double>(draws) - mean * mean);
  return {mean, std::sqrt(var / static_cast<double>(draws))};
}

// Exact single-coordinate posterior for Y = x * theta + noise with the
// spike-and-slab prior, computed by dense quadrature over the slab.
struct Posterior1d {
  double gamma = 0.0;    // P(z = 1 | Y)
  double slab_mean = 0.0; // E[theta | z = 1, Y]
};

inline Posterior1d posterior_1d(const VectorXd& x, const VectorXd& y, double lambda,
                                double w_bar, int grid = 200001) {
  const double g = x.squaredNorm();
  const double b = x.dot(y);
  const double yty = y.squaredNorm();
  const double n = static_cast<double>(y.size());
  const double log2pi = std::log(2.0 * M_PI);

  const double log_m0 = -0.5 * n * log2pi - 0.5 * yty + std::log1p(-w_bar);

  const double center = g > 0 ? b / g : 0.0;
  const double sd = g > 0 ? 1.0 / std::sqrt(g) : 1.0;
  const double lo = center - 12.0 * sd - 6.0 / lambda;
  const double hi = center + 12.0 * sd + 6.0 / lambda;
  const double h = (hi - lo) / (grid - 1);

  auto logf = [&](double t) {
    return -0.5 * n * log2pi - 0.5 * (yty - 2.0 * b * t + g * t * t) +
           std::log(lambda / 2.0) - lambda * std::abs(t);
  };

  // Trapezoid in log space: shift by the max to keep the exponentials sane.
  double max_lf = -std::numeric_limits<double>::infinity();
  std::vector<double> lf(grid);
  for (int k = 0; k < grid; ++k) {
    lf[k] = logf(lo + k * h);
    max_lf = std::max(max_lf, lf[k]);
  }
  double mass = 0.0, first = 0.0;
  for (int k = 0; k < grid; ++k) {
    const double wq = (k == 0 || k == grid - 1) ? 0.5 : 1.0;
    const double e = wq * std::exp(lf[k] - max_lf);
    mass += e;
    first += e * (lo + k * h);
  }
  const double log_m1 = std::log(w_bar) + max_lf + std::log(mass * h);
  const double slab_mean = first / mass;

  Posterior1d out;
  out.gamma = 1.0 / (1.0 + std::exp(log_m0 - log_m1));
  out.slab_mean = slab_mean;
  return out;
}

} // namespace testutil
