#include "alphavb/cavi.hpp"

#include "alphavb/num.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>

namespace alphavb::cavi {

namespace {

constexpr double kLogArgFloor = 1e-12;

void check_coordinate(const VariationalParams& params, int i) {
  const auto p = params.mu.size();
  if (params.sigma.size() != p || params.gamma.size() != p)
    throw std::invalid_argument("shape");
  if (i < 0 || i >= p) throw std::invalid_argument("shape");
}

void check_state(const DatasetView& view, const VariationalParams& params, int i) {
  if (params.mu.size() != view.p) throw std::invalid_argument("shape");
  check_coordinate(params, i);
}

double normal_cdf(double t) { return 0.5 * std::erfc(-t / std::sqrt(2.0)); }

// Scalars of coordinate i's objectives with every other coordinate frozen.
struct CoordTerms {
  double b = 0.0;     // (Y^T X)_i
  double gii = 0.0;   // (X^T X)_ii
  double cross = 0.0; // sum_{j != i} gamma_j mu_j (X^T X)_ji
  double svar = 0.0;  // sum_{k != i} (X^T X)_ki^2 Var[theta_k]
};

CoordTerms coord_terms(const DatasetView& view, const VariationalParams& params, int i) {
  CoordTerms t;
  t.b = view.xty(i);
  t.gii = view.gram(i, i);
  for (int k = 0; k < view.p; ++k) {
    if (k == i) continue;
    const double gki = view.gram(k, i);
    const double g = params.gamma(k);
    const double u = params.mu(k);
    const double s = params.sigma(k);
    t.cross += g * u * gki;
    t.svar += gki * gki * (g * (1.0 - g) * u * u + g * s * s);
  }
  return t;
}

double corr_a(const CoordTerms& t, double lambda, double eps, double mu, double sigma) {
  const double d = -t.b + mu * t.gii + t.cross + lambda * mu / std::sqrt(mu * mu + eps);
  return d * d * sigma * sigma;
}

double corr_b(const CoordTerms& t, double lambda, double eps, double mu, double sigma) {
  const double m2e = mu * mu + eps;
  const double r = std::sqrt(m2e);
  return t.gii * sigma * sigma - 1.0 +
         lambda * sigma * sigma * (1.0 / r - mu * mu / (m2e * r));
}

double corr_c(const CoordTerms& t, double mu) { return mu * mu * t.svar; }

double log_correction(const RenyiConfig& cfg, double a, double b, double c) {
  const double am1 = cfg.alpha - 1.0;
  const double arg = 1.0 + 0.5 * am1 * am1 * a + 0.5 * am1 * b + 0.5 * am1 * am1 * c;
  return std::log(std::max(arg, kLogArgFloor));
}

// -b mu + mu^2 G_ii / 2 + mu cross + lambda sqrt(mu^2 + eps)
double data_part(const CoordTerms& t, double lambda, double eps, double mu) {
  return -t.b * mu + 0.5 * mu * mu * t.gii + mu * t.cross +
         lambda * std::sqrt(mu * mu + eps);
}

double kappa_mu_core(const CoordTerms& t, const PriorSpec& prior, const RenyiConfig& cfg,
                     double sigma_i, double mu) {
  const double a = corr_a(t, prior.lambda, cfg.epsilon, mu, sigma_i);
  const double b = corr_b(t, prior.lambda, cfg.epsilon, mu, sigma_i);
  const double c = corr_c(t, mu);
  return (cfg.alpha - 1.0) * data_part(t, prior.lambda, cfg.epsilon, mu) +
         log_correction(cfg, a, b, c);
}

double kappa_sigma_core(const CoordTerms& t, const PriorSpec& prior,
                        const RenyiConfig& cfg, double mu_i, double sigma) {
  const double a = corr_a(t, prior.lambda, cfg.epsilon, mu_i, sigma);
  const double b = corr_b(t, prior.lambda, cfg.epsilon, mu_i, sigma);
  const double c = corr_c(t, mu_i);
  return -(cfg.alpha - 1.0) * std::log(sigma) + log_correction(cfg, a, b, c);
}

void check_objective_config(const RenyiConfig& cfg) {
  if (!(cfg.alpha > 1.0)) throw std::invalid_argument("cavi requires alpha > 1");
  if (!(cfg.epsilon > 0.0)) throw std::invalid_argument("domain");
}

// Repeatedly minimize over [lo, hi], doubling toward whichever side the argmin
// touches, so the returned point is an interior minimum of the coercive objective.
double minimize_interior(const std::function<double(double)>& f, double lo, double hi,
                         double tol) {
  double x = 0.5 * (lo + hi);
  for (int round = 0; round < 60; ++round) {
    const MinimizeResult r = scalar_minimize(f, lo, hi, tol);
    x = r.x;
    const double width = hi - lo;
    const double edge = width / 32.0; // one cell of the coarse probe grid
    if (x <= lo + edge) {
      lo -= width;
      continue;
    }
    if (x >= hi - edge) {
      hi += width;
      continue;
    }
    break;
  }
  return x;
}

} // namespace

MeanFieldMoments mean_field_moments(const VariationalParams& params, int i) {
  check_coordinate(params, i);
  const auto p = params.mu.size();
  MeanFieldMoments m;
  m.mean = VectorXd(p);
  m.var = VectorXd(p);
  for (int j = 0; j < p; ++j) {
    const double g = params.gamma(j);
    const double u = params.mu(j);
    const double s = params.sigma(j);
    if (j == i) {
      m.mean(j) = u;
      m.var(j) = s * s;
    } else {
      m.mean(j) = g * u;
      m.var(j) = g * (1.0 - g) * u * u + g * s * s;
    }
  }
  return m;
}

double smooth_abs(double x, double epsilon) {
  if (!(epsilon > 0.0)) throw std::invalid_argument("domain");
  return std::sqrt(x * x + epsilon);
}

CorrectionTerms correction_terms(const DatasetView& view, const VariationalParams& params,
                                 const PriorSpec& prior, const RenyiConfig& cfg, int i,
                                 double mu_i, double sigma_i) {
  check_state(view, params, i);
  check_objective_config(cfg);
  if (!(sigma_i > 0.0)) throw std::invalid_argument("domain");
  const CoordTerms t = coord_terms(view, params, i);
  CorrectionTerms out;
  out.a = corr_a(t, prior.lambda, cfg.epsilon, mu_i, sigma_i);
  out.b = corr_b(t, prior.lambda, cfg.epsilon, mu_i, sigma_i);
  out.c = corr_c(t, mu_i);
  out.g_log = (cfg.alpha - 1.0) *
              (data_part(t, prior.lambda, cfg.epsilon, mu_i) - std::log(sigma_i));
  if (!std::isfinite(out.a) || !std::isfinite(out.b) || !std::isfinite(out.c) ||
      !std::isfinite(out.g_log))
    throw std::runtime_error("numeric overflow");
  return out;
}

double log_kappa_mu(const DatasetView& view, const VariationalParams& params,
                    const PriorSpec& prior, const RenyiConfig& cfg, int i, double mu_i) {
  check_state(view, params, i);
  check_objective_config(cfg);
  const CoordTerms t = coord_terms(view, params, i);
  const double val = kappa_mu_core(t, prior, cfg, params.sigma(i), mu_i);
  if (!std::isfinite(val)) throw std::runtime_error("numeric overflow");
  return val;
}

double log_kappa_sigma(const DatasetView& view, const VariationalParams& params,
                       const PriorSpec& prior, const RenyiConfig& cfg, int i,
                       double sigma_i) {
  check_state(view, params, i);
  check_objective_config(cfg);
  if (!(sigma_i > 0.0)) throw std::invalid_argument("domain");
  const CoordTerms t = coord_terms(view, params, i);
  const double val = kappa_sigma_core(t, prior, cfg, params.mu(i), sigma_i);
  if (!std::isfinite(val)) throw std::runtime_error("numeric overflow");
  return val;
}

double gamma_logit(const DatasetView& view, const VariationalParams& params,
                   const PriorSpec& prior, int i) {
  check_state(view, params, i);
  if (!(prior.a0 > 0.0) || !(prior.b0 > 0.0) || !(prior.lambda > 0.0))
    throw std::invalid_argument("domain");
  const double mu = params.mu(i);
  const double sg = params.sigma(i);
  if (!(sg > 0.0)) throw std::invalid_argument("domain");
  const CoordTerms t = coord_terms(view, params, i);
  const double m = mu / sg;
  const double pi = std::numbers::pi;
  return std::log(prior.a0 / prior.b0) +
         std::log(std::sqrt(pi) * sg * prior.lambda / std::sqrt(2.0)) + t.b * mu -
         mu * t.cross - 0.5 * t.gii * (sg * sg + mu * mu) -
         prior.lambda * sg * std::sqrt(2.0 / pi) * std::exp(-0.5 * m * m) -
         prior.lambda * mu * (1.0 - 2.0 * normal_cdf(-m)) + 0.5;
}

VariationalParams initial_params(const DatasetView& view, const PriorSpec&) {
  VariationalParams q;
  q.mu = VectorXd::Zero(view.p);
  for (int i = 0; i < view.p; ++i) {
    const double gii = view.gram(i, i);
    q.mu(i) = gii > 0.0 ? view.xty(i) / gii : 0.0;
  }
  q.sigma = VectorXd::Ones(view.p);
  q.gamma = VectorXd::Constant(view.p, 0.5);
  return q;
}

std::vector<int> update_order(const VariationalParams& params) {
  check_coordinate(params, 0);
  std::vector<int> idx(params.mu.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [&](int a, int b) {
    const double fa = std::abs(params.mu(a));
    const double fb = std::abs(params.mu(b));
    if (fa != fb) return fa > fb;
    return a < b;
  });
  return idx;
}

CaviResult run_cavi(const DatasetView& view, const PriorSpec& prior,
                    const RenyiConfig& cfg, const SweepObserver& observer) {
  if (!(cfg.alpha > 1.0)) throw std::invalid_argument("cavi requires alpha > 1");
  if (!(cfg.epsilon > 0.0) || !(cfg.entropy_tol > 0.0) || cfg.max_sweeps < 1 ||
      !(cfg.opt_tol > 0.0) || !(cfg.mu_halfwidth > 0.0) || !(cfg.sigma_lo > 0.0) ||
      !(cfg.sigma_lo < cfg.sigma_hi))
    throw std::invalid_argument("domain");
  if (!(prior.lambda > 0.0) || !(prior.a0 > 0.0) || !(prior.b0 > 0.0))
    throw std::invalid_argument("domain");

  CaviResult out;
  out.params = initial_params(view, prior);
  out.order = update_order(out.params);

  const double log_sig_lo = std::log(cfg.sigma_lo);
  const double log_sig_hi = std::log(cfg.sigma_hi);

  for (int sweep = 0; sweep < cfg.max_sweeps; ++sweep) {
    double delta_h = 0.0;
    for (int i : out.order) {
      const CoordTerms t = coord_terms(view, out.params, i);

      const double sigma_cur = out.params.sigma(i);
      out.params.mu(i) = minimize_interior(
          [&](double m) { return kappa_mu_core(t, prior, cfg, sigma_cur, m); },
          out.params.mu(i) - cfg.mu_halfwidth, out.params.mu(i) + cfg.mu_halfwidth,
          cfg.opt_tol);

      const double mu_new = out.params.mu(i);
      const MinimizeResult rs = scalar_minimize(
          [&](double ls) { return kappa_sigma_core(t, prior, cfg, mu_new, std::exp(ls)); },
          log_sig_lo, log_sig_hi, cfg.opt_tol);
      out.params.sigma(i) = std::exp(rs.x);

      const double gamma_old = out.params.gamma(i);
      out.params.gamma(i) = clamp_gamma(inv_logit(gamma_logit(view, out.params, prior, i)));
      delta_h = std::max(delta_h, std::abs(binary_entropy(out.params.gamma(i)) -
                                           binary_entropy(gamma_old)));

      if (observer) observer(i, out.params);
    }
    out.entropy_trace.push_back(delta_h);
    ++out.sweeps;
    if (delta_h < cfg.entropy_tol) {
      out.converged = true;
      break;
    }
  }
  return out;
}

} // namespace alphavb::cavi
