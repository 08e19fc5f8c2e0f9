#pragma once

#include <Eigen/Dense>

#include <cstdint>

namespace alphavb {

using Eigen::MatrixXd;
using Eigen::VectorXd;

// Regression data plus the cached second-moment products both solvers reuse.
struct DatasetView {
  MatrixXd X;    // n x p
  VectorXd Y;    // n
  MatrixXd gram; // X^T X
  VectorXd xty;  // X^T Y
  double yty = 0.0;
  int n = 0;
  int p = 0;
};

// Spike-and-slab prior: inclusion weight w ~ Beta(a0, b0), slab Laplace(rate lambda).
// noise_var is kept for generality; both solvers are run with unit noise.
struct PriorSpec {
  double lambda = 1.0;
  double a0 = 1.0;
  double b0 = 1.0;
  double noise_var = 1.0;
};

PriorSpec default_prior(int p); // b0 = p, everything else at defaults

// Posterior mean of the inclusion weight under the prior, a0 / (a0 + b0).
double prior_inclusion(const PriorSpec& prior);

// Mean-field state: coordinate i is N(mu_i, sigma_i^2) with probability gamma_i,
// otherwise a point mass at zero.
struct VariationalParams {
  VectorXd mu;
  VectorXd sigma;
  VectorXd gamma;
};

inline constexpr double kGammaFloor = 1e-10;

double clamp_gamma(double g);

// Validates shapes and finiteness, then caches X^T X, X^T Y and |Y|^2.
DatasetView precompute(const MatrixXd& X, const VectorXd& Y);

double gaussian_logpdf(double x, double mean, double sd);
double laplace_logpdf(double x, double rate);

// E|T| for T ~ N(mu, sigma^2).
double folded_normal_mean(double mu, double sigma);

// Entropy of Bernoulli(z) in bits; 0 log 0 = 0.
double binary_entropy(double z);

double logit(double z);
double inv_logit(double t);

// Max-shifted log(sum(exp(v))); -inf for an all -inf input.
double log_sum_exp(const VectorXd& v);

} // namespace alphavb
