#pragma once

#include "alphavb/model.hpp"

#include <random>
#include <vector>

namespace alphavb::svb {

// Knobs for the stochastic solver. Valid for any alpha > 0 except 1; near alpha = 1
// the bound estimate switches to the ELBO limit. Step sizes act on the unconstrained
// parameterization (mu, log sigma, logit gamma).
struct SvbConfig {
  double alpha = 0.9;
  int k_samples = 256;
  int iters = 1000;
  double lr_mu = 1e-2;
  double lr_sigma = 1e-2;
  double lr_gamma = 1e-2;
  double grad_clip = 10.0;
  std::uint64_t seed = 0;
  int trace_every = 10;
};

// One draw from the variational distribution: z_i ~ Bern(gamma_i), theta_i = 0 when
// z_i = 0 and N(mu_i, sigma_i^2) otherwise.
struct SvbSample {
  Eigen::VectorX<std::uint8_t> z;
  VectorXd theta;
};

struct ParamGrad {
  VectorXd mu;
  VectorXd sigma;
  VectorXd gamma;
};

// Unconstrained coordinates used for the ascent steps.
struct UnconstrainedParams {
  VectorXd mu;
  VectorXd log_sigma;
  VectorXd logit_gamma;
};

UnconstrainedParams to_unconstrained(const VariationalParams& params);
VariationalParams to_constrained(const UnconstrainedParams& u);

std::vector<SvbSample> sample_batch(const VariationalParams& params, int k,
                                    std::mt19937_64& rng);

// log p(theta, z, Y) - log q(theta, z) for one sample; the spike point masses cancel.
double log_ratio(const DatasetView& view, const PriorSpec& prior,
                 const VariationalParams& params, const SvbSample& sample);

// Self-normalized weights softmax((1 - alpha) * log_ratios), computed max-shifted.
// Throws "degenerate batch" if no weight is finite and positive.
VectorXd importance_weights(const VectorXd& log_ratios, double alpha);

// Gradient of log q(theta, z) in (mu, sigma, gamma); zero in mu and sigma for
// spiked coordinates.
ParamGrad grad_log_q(const VariationalParams& params, const SvbSample& sample);

// Gradient of the batch bound estimate at fixed samples: sum_j w_j * (-grad log q_j),
// each component clipped to [-grad_clip, grad_clip].
ParamGrad vr_gradient(const DatasetView& view, const PriorSpec& prior,
                      const VariationalParams& params,
                      const std::vector<SvbSample>& batch, double alpha,
                      double grad_clip);

// (1 / (1 - alpha)) * log mean(exp((1 - alpha) * log_ratios)) via log-sum-exp;
// mean(log_ratios) (the ELBO estimate) when |alpha - 1| < 1e-6.
double vr_bound_from_log_ratios(const VectorXd& log_ratios, double alpha);

double estimate_vr_bound(const DatasetView& view, const PriorSpec& prior,
                         const VariationalParams& params, double alpha, int k,
                         std::mt19937_64& rng);

struct SvbResult {
  VariationalParams params;
  bool diverged = false;
  int iters_run = 0;
  std::vector<double> bound_trace; // estimate every trace_every iterations
};

// Stochastic ascent of the alpha bound for a fixed number of iterations. Steps are
// taken in unconstrained coordinates via the chain rule. The frozen-batch gradient
// from vr_gradient is, in expectation, -(1 - alpha)/alpha times the bound gradient,
// so the step direction carries a sign(alpha - 1) factor; the |alpha/(alpha - 1)|
// magnitude is left to the learning rates. The bound trace is evaluated on a separate
// stream so it never perturbs the trajectory.
SvbResult run_svb(const DatasetView& view, const PriorSpec& prior, const SvbConfig& cfg);

} // namespace alphavb::svb
