#include "savskit/horseshoe.hpp"

#include <cmath>
#include <string>

#include "savskit/errors.hpp"
#include "savskit/kernels.hpp"

namespace savskit {
namespace {

bool positive_finite(double x) { return x > 0.0 && std::isfinite(x); }

double draw_inverse_gamma(const InverseGammaParams& params, RandomStream& rng,
                          ClampCounter& clamp) {
  return clamp(rng.inverse_gamma(params.shape, params.rate));
}

void check_rate(double rate, const std::string& what) {
  if (!positive_finite(rate)) {
    throw NumericalError("non-finite or non-positive rate " + std::to_string(rate) + " for " +
                         what);
  }
}

[[noreturn]] void throw_not_spd(const Eigen::MatrixXd& lower) {
  Eigen::LDLT<Eigen::MatrixXd, Eigen::Lower> ldlt(lower);
  throw NumericalError("matrix is not numerically positive definite (minimum diagonal pivot " +
                       std::to_string(ldlt.vectorD().minCoeff()) + ")");
}

}  // namespace

void McmcConfig::validate() const {
  if (n_iter == 0) throw ConfigError("n_iter must be positive");
  if (burn_in >= n_iter) {
    throw ConfigError("burn_in (" + std::to_string(burn_in) + ") must be smaller than n_iter (" +
                      std::to_string(n_iter) + ")");
  }
  if (thin == 0) throw ConfigError("thin must be at least 1");
}

std::size_t McmcConfig::retained_count() const {
  return (n_iter - burn_in + thin - 1) / thin;
}

HorseshoeState HorseshoeState::initial(const RegressionData& data) {
  auto s = with_scales(data.p(), 1.0, 1.0, 1.0);
  if (data.n() > 1) {
    const double mean = data.y().mean();
    const double var =
        (data.y().array() - mean).square().sum() / static_cast<double>(data.n() - 1);
    if (positive_finite(var)) s.sigma_sq = var;
  }
  return s;
}

HorseshoeState HorseshoeState::with_scales(std::size_t p, double lambda_sq, double tau_sq,
                                           double sigma_sq) {
  HorseshoeState s;
  const auto len = static_cast<Eigen::Index>(p);
  s.beta = Eigen::VectorXd::Zero(len);
  s.lambda_sq = Eigen::VectorXd::Constant(len, lambda_sq);
  s.nu = Eigen::VectorXd::Ones(len);
  s.tau_sq = tau_sq;
  s.sigma_sq = sigma_sq;
  s.xi = 1.0;
  return s;
}

void HorseshoeState::validate() const {
  const auto p = beta.size();
  if (lambda_sq.size() != p || nu.size() != p)
    throw NumericalError("state vectors have inconsistent lengths");
  for (Eigen::Index j = 0; j < p; ++j) {
    if (!positive_finite(lambda_sq[j]) || !positive_finite(nu[j]))
      throw NumericalError("local scale " + std::to_string(j + 1) + " is not positive and finite");
    if (!std::isfinite(beta[j]))
      throw NumericalError("coefficient " + std::to_string(j + 1) + " is not finite");
  }
  if (!positive_finite(tau_sq) || !positive_finite(sigma_sq) || !positive_finite(xi))
    throw NumericalError("global scales must be positive and finite");
}

InverseGammaParams local_scale_conditional(const HorseshoeState& s, std::size_t j) {
  const double b = s.beta[static_cast<Eigen::Index>(j)];
  return {1.0, 1.0 / s.nu[static_cast<Eigen::Index>(j)] + b * b / (2.0 * s.tau_sq * s.sigma_sq)};
}

InverseGammaParams local_auxiliary_conditional(double lambda_sq) {
  return {1.0, 1.0 + 1.0 / lambda_sq};
}

InverseGammaParams global_scale_conditional(const HorseshoeState& s) {
  const double weighted = (s.beta.array().square() / s.lambda_sq.array()).sum();
  return {(static_cast<double>(s.p()) + 1.0) / 2.0, 1.0 / s.xi + weighted / (2.0 * s.sigma_sq)};
}

InverseGammaParams global_auxiliary_conditional(double tau_sq) {
  return {1.0, 1.0 + 1.0 / tau_sq};
}

InverseGammaParams noise_variance_conditional(std::size_t n, double residual_sq_norm,
                                              const HorseshoeState& s) {
  const double prior_term = (s.beta.array().square() / s.lambda_sq.array()).sum() / s.tau_sq;
  return {(static_cast<double>(n) + static_cast<double>(s.p())) / 2.0,
          residual_sq_norm / 2.0 + prior_term / 2.0};
}

void draw_local_scales(HorseshoeState& s, RandomStream& rng, ClampCounter& clamp) {
  for (std::size_t j = 0; j < s.p(); ++j) {
    const auto params = local_scale_conditional(s, j);
    check_rate(params.rate, "lambda^2 of variable " + std::to_string(j + 1));
    s.lambda_sq[static_cast<Eigen::Index>(j)] = draw_inverse_gamma(params, rng, clamp);
  }
}

void draw_local_auxiliaries(HorseshoeState& s, RandomStream& rng, ClampCounter& clamp) {
  for (Eigen::Index j = 0; j < s.nu.size(); ++j) {
    const auto params = local_auxiliary_conditional(s.lambda_sq[j]);
    check_rate(params.rate, "nu of variable " + std::to_string(j + 1));
    s.nu[j] = draw_inverse_gamma(params, rng, clamp);
  }
}

void draw_global_scale(HorseshoeState& s, RandomStream& rng, ClampCounter& clamp) {
  const auto params = global_scale_conditional(s);
  check_rate(params.rate, "tau^2");
  s.tau_sq = draw_inverse_gamma(params, rng, clamp);
}

void draw_global_auxiliary(HorseshoeState& s, RandomStream& rng, ClampCounter& clamp) {
  const auto params = global_auxiliary_conditional(s.tau_sq);
  check_rate(params.rate, "xi");
  s.xi = draw_inverse_gamma(params, rng, clamp);
}

void sample_local_scales(HorseshoeState& s, RandomStream& rng, ClampCounter& clamp) {
  draw_local_scales(s, rng, clamp);
  draw_local_auxiliaries(s, rng, clamp);
}

void sample_global_scale(HorseshoeState& s, RandomStream& rng, ClampCounter& clamp) {
  draw_global_scale(s, rng, clamp);
  draw_global_auxiliary(s, rng, clamp);
}

double sample_noise_variance(const RegressionData& data, HorseshoeState& s, RandomStream& rng,
                             ClampCounter& clamp) {
  const double rss = (data.y() - data.X() * s.beta).squaredNorm();
  const auto params = noise_variance_conditional(data.n(), rss, s);
  if (params.rate == 0.0) throw NumericalError("degenerate data: sigma^2 conditional has zero rate");
  check_rate(params.rate, "sigma^2");
  s.sigma_sq = draw_inverse_gamma(params, rng, clamp);
  return s.sigma_sq;
}

BetaSampler::BetaSampler(const RegressionData& data, GaussianPath path)
    : BetaSampler(data.X(), data.y(), path) {}

BetaSampler::BetaSampler(const Eigen::MatrixXd& X, const Eigen::VectorXd& y, GaussianPath path)
    : X_(X), y_(y), path_(path) {
  if (X.rows() != y.size())
    throw DataError("length mismatch: X has " + std::to_string(X.rows()) + " rows but y has " +
                    std::to_string(y.size()) + " entries");
  if (path_ == GaussianPath::automatic)
    path_ = X.cols() > X.rows() ? GaussianPath::structured : GaussianPath::direct;
  if (path_ == GaussianPath::direct) {
    gram_ = X.transpose() * X;
    xty_ = X.transpose() * y;
  }
}

Eigen::VectorXd BetaSampler::draw(const HorseshoeState& state, RandomStream& rng) {
  return path_ == GaussianPath::structured ? draw_structured(state, rng) : draw_direct(state, rng);
}

Eigen::VectorXd BetaSampler::draw_structured(const HorseshoeState& s, RandomStream& rng) {
  const auto& X = X_;
  const Eigen::Index n = X.rows();
  const Eigen::Index p = X.cols();
  const double sigma = std::sqrt(s.sigma_sq);

  const Eigen::VectorXd d = s.tau_sq * s.lambda_sq;
  kernels::parallel::shifted_weighted_gram(X, d, system_, scratch_);
  llt_.compute(system_);
  if (llt_.info() != Eigen::Success) throw_not_spd(system_);

  Eigen::VectorXd u(p);
  for (Eigen::Index k = 0; k < p; ++k) u[k] = sigma * std::sqrt(d[k]) * rng.normal();
  Eigen::VectorXd rhs(n);
  for (Eigen::Index i = 0; i < n; ++i) rhs[i] = rng.normal();
  rhs = y_ / sigma - (X * u) / sigma - rhs;

  const Eigen::VectorXd w = llt_.solve(rhs);
  Eigen::VectorXd xtw;
  kernels::parallel::correlate(X, w, xtw);
  return u + sigma * d.cwiseProduct(xtw);
}

Eigen::VectorXd BetaSampler::draw_direct(const HorseshoeState& s, RandomStream& rng) {
  const Eigen::Index p = gram_.rows();
  const double sigma = std::sqrt(s.sigma_sq);
  system_ = gram_;
  system_.diagonal().array() += 1.0 / (s.tau_sq * s.lambda_sq.array());
  llt_.compute(system_);
  if (llt_.info() != Eigen::Success) throw_not_spd(system_);

  Eigen::VectorXd z(p);
  for (Eigen::Index k = 0; k < p; ++k) z[k] = rng.normal();
  Eigen::VectorXd beta = llt_.solve(xty_);
  beta += sigma * llt_.matrixU().solve(z);
  return beta;
}

Eigen::VectorXd sample_beta_conditional(const RegressionData& data, const HorseshoeState& state,
                                        RandomStream& rng, GaussianPath path) {
  BetaSampler sampler(data, path);
  return sampler.draw(state, rng);
}

Eigen::VectorXd sample_beta_conditional(const Eigen::MatrixXd& X, const Eigen::VectorXd& y,
                                        const HorseshoeState& state, RandomStream& rng,
                                        GaussianPath path) {
  BetaSampler sampler(X, y, path);
  return sampler.draw(state, rng);
}

PosteriorSummary gibbs_fit(const RegressionData& data, const McmcConfig& config) {
  config.validate();
  PosteriorSummary out;
  out.config_echo = config;
  out.sigma_sq_trace.reserve(config.n_iter);
  out.tau_sq_trace.reserve(config.n_iter);

  const auto p = static_cast<Eigen::Index>(data.p());
  const std::size_t retained = config.retained_count();
  if (config.retain_draws) out.draws.emplace(static_cast<Eigen::Index>(retained), p);

  auto state = HorseshoeState::initial(data);
  RandomStream rng(config.seed);
  ClampCounter clamp;
  BetaSampler sampler(data);

  Eigen::VectorXd beta_sum = Eigen::VectorXd::Zero(p);
  double sigma_sum = 0.0;
  std::size_t kept = 0;

  for (std::size_t sweep = 0; sweep < config.n_iter; ++sweep) {
    try {
      state.beta = sampler.draw(state, rng);
      if (!state.beta.allFinite()) throw NumericalError("non-finite coefficient draw");
      draw_local_scales(state, rng, clamp);
      draw_global_scale(state, rng, clamp);
      sample_noise_variance(data, state, rng, clamp);
      draw_local_auxiliaries(state, rng, clamp);
      draw_global_auxiliary(state, rng, clamp);
    } catch (const NumericalError& e) {
      throw NumericalError("sweep " + std::to_string(sweep) + ": " + e.what());
    }
    out.sigma_sq_trace.push_back(state.sigma_sq);
    out.tau_sq_trace.push_back(state.tau_sq);

    if (sweep >= config.burn_in && (sweep - config.burn_in) % config.thin == 0) {
      beta_sum += state.beta;
      sigma_sum += std::sqrt(state.sigma_sq);
      if (out.draws) out.draws->row(static_cast<Eigen::Index>(kept)) = state.beta.transpose();
      ++kept;
    }
  }

  out.beta_mean = beta_sum / static_cast<double>(kept);
  out.sigma_mean = sigma_sum / static_cast<double>(kept);
  out.clamp_events = clamp.events;
  return out;
}

}  // namespace savskit
