#include "alphavb/svb.hpp"

#include "alphavb/cavi.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace alphavb::svb {

namespace {

void check_state(const VariationalParams& params, int p) {
  if (params.mu.size() != p || params.sigma.size() != p || params.gamma.size() != p)
    throw std::invalid_argument("shape");
}

void check_state_domain(const VariationalParams& params) {
  for (int i = 0; i < params.mu.size(); ++i) {
    if (!std::isfinite(params.mu(i)) || !(params.sigma(i) > 0.0) ||
        !std::isfinite(params.sigma(i)) || !(params.gamma(i) > 0.0) ||
        !(params.gamma(i) < 1.0))
      throw std::invalid_argument("domain");
  }
}

void check_sample(const SvbSample& sample, int p) {
  if (sample.z.size() != p || sample.theta.size() != p)
    throw std::invalid_argument("shape");
}

void check_prior(const PriorSpec& prior) {
  if (!(prior.lambda > 0.0) || !(prior.a0 > 0.0) || !(prior.b0 > 0.0) ||
      !(prior.noise_var > 0.0))
    throw std::invalid_argument("domain");
}

bool finite_state(const VariationalParams& params) {
  for (int i = 0; i < params.mu.size(); ++i) {
    if (!std::isfinite(params.mu(i))) return false;
    if (!std::isfinite(params.sigma(i)) || params.sigma(i) <= 0.0) return false;
    if (!std::isfinite(params.gamma(i))) return false;
  }
  return true;
}

} // namespace

UnconstrainedParams to_unconstrained(const VariationalParams& params) {
  check_state(params, static_cast<int>(params.mu.size()));
  check_state_domain(params);
  UnconstrainedParams u;
  const int p = static_cast<int>(params.mu.size());
  u.mu = params.mu;
  u.log_sigma = VectorXd(p);
  u.logit_gamma = VectorXd(p);
  for (int i = 0; i < p; ++i) {
    u.log_sigma(i) = std::log(params.sigma(i));
    u.logit_gamma(i) = logit(params.gamma(i));
  }
  return u;
}

VariationalParams to_constrained(const UnconstrainedParams& u) {
  const int p = static_cast<int>(u.mu.size());
  if (u.log_sigma.size() != p || u.logit_gamma.size() != p)
    throw std::invalid_argument("shape");
  VariationalParams q;
  q.mu = u.mu;
  q.sigma = VectorXd(p);
  q.gamma = VectorXd(p);
  for (int i = 0; i < p; ++i) {
    q.sigma(i) = std::exp(u.log_sigma(i));
    q.gamma(i) = clamp_gamma(inv_logit(u.logit_gamma(i)));
  }
  return q;
}

std::vector<SvbSample> sample_batch(const VariationalParams& params, int k,
                                    std::mt19937_64& rng) {
  const int p = static_cast<int>(params.mu.size());
  check_state(params, p);
  check_state_domain(params);
  if (k < 1) throw std::invalid_argument("domain");

  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<SvbSample> batch(static_cast<std::size_t>(k));
  for (auto& s : batch) {
    s.z = Eigen::VectorX<std::uint8_t>::Zero(p);
    s.theta = VectorXd::Zero(p);
    for (int i = 0; i < p; ++i) {
      if (unif(rng) < params.gamma(i)) {
        s.z(i) = 1;
        s.theta(i) = params.mu(i) + params.sigma(i) * gauss(rng);
      }
    }
  }
  return batch;
}

double log_ratio(const DatasetView& view, const PriorSpec& prior,
                 const VariationalParams& params, const SvbSample& sample) {
  check_state(params, view.p);
  check_sample(sample, view.p);
  check_prior(prior);

  const double w = prior_inclusion(prior);
  const double log_w = std::log(w);
  const double log_1mw = std::log1p(-w);

  VectorXd fit = VectorXd::Zero(view.n);
  double acc = 0.0;
  for (int i = 0; i < view.p; ++i) {
    if (sample.z(i)) {
      fit += sample.theta(i) * view.X.col(i);
      acc += laplace_logpdf(sample.theta(i), prior.lambda) + log_w;
      acc -= std::log(params.gamma(i)) +
             gaussian_logpdf(sample.theta(i), params.mu(i), params.sigma(i));
    } else {
      acc += log_1mw - std::log1p(-params.gamma(i));
    }
  }
  const double rss = (view.Y - fit).squaredNorm();
  acc += -0.5 * view.n * (std::log(2.0 * std::numbers::pi) + std::log(prior.noise_var)) -
         rss / (2.0 * prior.noise_var);
  if (!std::isfinite(acc)) throw std::runtime_error("numeric overflow");
  return acc;
}

VectorXd importance_weights(const VectorXd& log_ratios, double alpha) {
  const int k = static_cast<int>(log_ratios.size());
  if (k < 1) throw std::invalid_argument("shape");
  if (!std::isfinite(alpha) || !(alpha > 0.0)) throw std::invalid_argument("domain");

  const VectorXd s = (1.0 - alpha) * log_ratios;
  const double shift = s.maxCoeff();
  if (!std::isfinite(shift)) throw std::runtime_error("degenerate batch");
  VectorXd w(k);
  double total = 0.0;
  for (int j = 0; j < k; ++j) {
    w(j) = std::exp(s(j) - shift);
    total += w(j);
  }
  if (!std::isfinite(total) || !(total > 0.0))
    throw std::runtime_error("degenerate batch");
  return w / total;
}

ParamGrad grad_log_q(const VariationalParams& params, const SvbSample& sample) {
  const int p = static_cast<int>(params.mu.size());
  check_state(params, p);
  check_sample(sample, p);
  ParamGrad g;
  g.mu = VectorXd::Zero(p);
  g.sigma = VectorXd::Zero(p);
  g.gamma = VectorXd(p);
  for (int i = 0; i < p; ++i) {
    if (sample.z(i)) {
      const double d = sample.theta(i) - params.mu(i);
      const double s = params.sigma(i);
      g.mu(i) = d / (s * s);
      g.sigma(i) = (d * d - s * s) / (s * s * s);
      g.gamma(i) = 1.0 / params.gamma(i);
    } else {
      g.gamma(i) = -1.0 / (1.0 - params.gamma(i));
    }
  }
  return g;
}

ParamGrad vr_gradient(const DatasetView& view, const PriorSpec& prior,
                      const VariationalParams& params,
                      const std::vector<SvbSample>& batch, double alpha,
                      double grad_clip) {
  if (batch.empty()) throw std::invalid_argument("shape");
  if (!std::isfinite(grad_clip) || !(grad_clip > 0.0))
    throw std::invalid_argument("domain");
  const int k = static_cast<int>(batch.size());
  VectorXd lr(k);
  for (int j = 0; j < k; ++j)
    lr(j) = log_ratio(view, prior, params, batch[static_cast<std::size_t>(j)]);
  const VectorXd w = importance_weights(lr, alpha);

  ParamGrad g;
  g.mu = VectorXd::Zero(view.p);
  g.sigma = VectorXd::Zero(view.p);
  g.gamma = VectorXd::Zero(view.p);
  for (int j = 0; j < k; ++j) {
    const auto score = grad_log_q(params, batch[static_cast<std::size_t>(j)]);
    g.mu -= w(j) * score.mu;
    g.sigma -= w(j) * score.sigma;
    g.gamma -= w(j) * score.gamma;
  }
  for (int i = 0; i < view.p; ++i) {
    g.mu(i) = std::clamp(g.mu(i), -grad_clip, grad_clip);
    g.sigma(i) = std::clamp(g.sigma(i), -grad_clip, grad_clip);
    g.gamma(i) = std::clamp(g.gamma(i), -grad_clip, grad_clip);
  }
  return g;
}

double vr_bound_from_log_ratios(const VectorXd& log_ratios, double alpha) {
  const int k = static_cast<int>(log_ratios.size());
  if (k < 1) throw std::invalid_argument("shape");
  if (!std::isfinite(alpha) || !(alpha > 0.0)) throw std::invalid_argument("domain");
  if (std::abs(alpha - 1.0) < 1e-6) return log_ratios.mean();

  const VectorXd s = (1.0 - alpha) * log_ratios;
  const double shift = s.maxCoeff();
  if (!std::isfinite(shift)) throw std::runtime_error("degenerate batch");
  double total = 0.0;
  for (int j = 0; j < k; ++j) total += std::exp(s(j) - shift);
  return (shift + std::log(total / k)) / (1.0 - alpha);
}

double estimate_vr_bound(const DatasetView& view, const PriorSpec& prior,
                         const VariationalParams& params, double alpha, int k,
                         std::mt19937_64& rng) {
  if (k < 1) throw std::invalid_argument("domain");
  const auto batch = sample_batch(params, k, rng);
  VectorXd lr(k);
  for (int j = 0; j < k; ++j)
    lr(j) = log_ratio(view, prior, params, batch[static_cast<std::size_t>(j)]);
  return vr_bound_from_log_ratios(lr, alpha);
}

SvbResult run_svb(const DatasetView& view, const PriorSpec& prior, const SvbConfig& cfg) {
  check_prior(prior);
  if (!std::isfinite(cfg.alpha) || !(cfg.alpha > 0.0) || cfg.alpha == 1.0)
    throw std::invalid_argument("domain");
  if (cfg.k_samples < 1 || cfg.iters < 1 || cfg.trace_every < 1)
    throw std::invalid_argument("domain");
  if (!std::isfinite(cfg.lr_mu) || cfg.lr_mu < 0.0 || !std::isfinite(cfg.lr_sigma) ||
      cfg.lr_sigma < 0.0 || !std::isfinite(cfg.lr_gamma) || cfg.lr_gamma < 0.0)
    throw std::invalid_argument("domain");
  if (!std::isfinite(cfg.grad_clip) || !(cfg.grad_clip > 0.0))
    throw std::invalid_argument("domain");

  SvbResult out;
  out.params = cavi::initial_params(view, prior);
  UnconstrainedParams u = to_unconstrained(out.params);

  std::mt19937_64 rng(cfg.seed);
  std::mt19937_64 trace_rng(cfg.seed ^ 0x9e3779b97f4a7c15ULL);
  // The frozen-batch estimator points along -(1 - alpha) times the bound gradient.
  const double dir = cfg.alpha > 1.0 ? 1.0 : -1.0;

  for (int t = 0; t < cfg.iters; ++t) {
    const auto batch = sample_batch(out.params, cfg.k_samples, rng);
    const auto g = vr_gradient(view, prior, out.params, batch, cfg.alpha, cfg.grad_clip);
    for (int i = 0; i < view.p; ++i) {
      const double sg = out.params.sigma(i);
      const double ga = out.params.gamma(i);
      u.mu(i) += dir * cfg.lr_mu * g.mu(i);
      u.log_sigma(i) += dir * cfg.lr_sigma * g.sigma(i) * sg;
      u.logit_gamma(i) += dir * cfg.lr_gamma * g.gamma(i) * ga * (1.0 - ga);
    }
    out.params = to_constrained(u);
    out.iters_run = t + 1;
    if (!finite_state(out.params)) {
      out.diverged = true;
      break;
    }
    if ((t + 1) % cfg.trace_every == 0)
      out.bound_trace.push_back(
          estimate_vr_bound(view, prior, out.params, cfg.alpha, cfg.k_samples, trace_rng));
  }
  return out;
}

} // namespace alphavb::svb
