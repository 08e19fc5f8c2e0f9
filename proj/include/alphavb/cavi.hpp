#pragma once

#include "alphavb/model.hpp"

#include <functional>
#include <vector>

namespace alphavb::cavi {

// Knobs for the coordinate-ascent solver. alpha must be > 1; the per-coordinate
// objectives are minimized with scalar_minimize, mu over an expanding bracket of
// initial half-width mu_halfwidth and sigma over [sigma_lo, sigma_hi] in log space.
struct RenyiConfig {
  double alpha = 2.0;
  double epsilon = 1e-8;     // smoothing of |mu| in the surrogate objective
  double entropy_tol = 1e-5; // max per-coordinate entropy change (bits) to declare convergence
  int max_sweeps = 200;
  double opt_tol = 1e-8;
  double mu_halfwidth = 5.0;
  double sigma_lo = 1e-3;
  double sigma_hi = 1e2;
};

struct CaviResult {
  VariationalParams params;
  bool converged = false;
  int sweeps = 0;
  std::vector<double> entropy_trace; // per-sweep max entropy change, bits
  std::vector<int> order;            // coordinate visit order, fixed at initialization
};

// Mean and diagonal covariance of theta under the mean-field family, conditioned
// on z_i = 1: coordinate i is the pure slab, the others keep their mixtures.
struct MeanFieldMoments {
  VectorXd mean;
  VectorXd var;
};

MeanFieldMoments mean_field_moments(const VariationalParams& params, int i);

// sqrt(x^2 + epsilon), the smooth surrogate for |x|.
double smooth_abs(double x, double epsilon);

// Second-order correction terms of the surrogate objective for coordinate i at a
// candidate (mu_i, sigma_i): a quadratic term from the local gradient, a curvature
// term, a cross-coordinate variance term, and the smooth exponent g_log they expand.
struct CorrectionTerms {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
  double g_log = 0.0;
};

CorrectionTerms correction_terms(const DatasetView& view, const VariationalParams& params,
                                 const PriorSpec& prior, const RenyiConfig& cfg, int i,
                                 double mu_i, double sigma_i);

// Surrogate objective for coordinate i as a function of a candidate mu_i (current
// sigma_i held fixed) or candidate sigma_i (current mu_i held fixed). Both ignore the
// stored value of the coordinate being optimized and read every other coordinate from
// params. Throws "numeric overflow" if the value comes out non-finite.
double log_kappa_mu(const DatasetView& view, const VariationalParams& params,
                    const PriorSpec& prior, const RenyiConfig& cfg, int i, double mu_i);
double log_kappa_sigma(const DatasetView& view, const VariationalParams& params,
                       const PriorSpec& prior, const RenyiConfig& cfg, int i,
                       double sigma_i);

// Closed-form optimal logit of gamma_i given (mu_i, sigma_i) and the other
// coordinates. Does not depend on alpha or on the stored gamma_i.
double gamma_logit(const DatasetView& view, const VariationalParams& params,
                   const PriorSpec& prior, int i);

// mu = marginal least squares (X^T Y)_i / (X^T X)_ii (0 for a zero column),
// sigma = 1, gamma = 1/2.
VariationalParams initial_params(const DatasetView& view, const PriorSpec& prior);

// Coordinates sorted by decreasing |mu|, ties by ascending index.
std::vector<int> update_order(const VariationalParams& params);

// Called after each coordinate update with (coordinate, state after the update).
using SweepObserver = std::function<void(int, const VariationalParams&)>;

CaviResult run_cavi(const DatasetView& view, const PriorSpec& prior,
                    const RenyiConfig& cfg, const SweepObserver& observer = nullptr);

} // namespace alphavb::cavi
