#pragma once

// Monte-Carlo law checks for the Gibbs conditionals. Shared by the unit tests
// and the acceptance binary. Expected values are written out from the
// closed-form laws, not read back from the library's parameter functions.

#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include "check.hpp"
#include "oracles.hpp"
#include "savskit/horseshoe.hpp"

namespace law {

using suite::Check;

inline constexpr std::size_t kDraws = 100000;
inline constexpr double kSigmas = 4.0;

inline void expect_close(Check& c, const std::string& what, double observed, double expected, double se) {
  const bool ok = oracle::within(observed, expected, se, kSigmas);
  if (!ok) {
    std::ostringstream s;
    s << what << ": observed " << observed << " expected " << expected << " (se " << se << "); ";
    c.detail += s.str();
    c.pass = false;
  }
}

/// X ~ IG(shape, rate)  <=>  1/X ~ Gamma(shape, rate): mean shape/rate, variance shape/rate^2.
inline void expect_inverse_gamma(Check& c, const std::vector<double>& xs, double shape, double rate) {
  std::vector<double> inv(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) inv[i] = 1.0 / xs[i];
  const auto m = oracle::moments(inv);
  expect_close(c, "mean(1/x)", m.mean, shape / rate, m.se_mean);
  expect_close(c, "var(1/x)", m.var, shape / (rate * rate), m.se_var);
  if (shape > 4) {
    const auto d = oracle::moments(xs);
    expect_close(c, "mean(x)", d.mean, rate / (shape - 1), d.se_mean);
    expect_close(c, "var(x)", d.var, rate * rate / ((shape - 1) * (shape - 1) * (shape - 2)), d.se_var);
  }
}

/// lambda_j^2 | . ~ IG(1, 1/nu_j + beta_j^2 / (2 tau^2 sigma^2)), one draw per coordinate.
inline Check local_scale_law() {
  Check c{"local scale conditional"};
  const double beta = 0.8, nu = 0.4, tau_sq = 2.0, sigma_sq = 0.7;
  auto s = savskit::HorseshoeState::with_scales(kDraws, 1.0, tau_sq, sigma_sq);
  s.beta.setConstant(beta);
  s.nu.setConstant(nu);
  savskit::RandomStream rng(101);
  savskit::ClampCounter clamp;
  savskit::draw_local_scales(s, rng, clamp);
  expect_inverse_gamma(c, {s.lambda_sq.data(), s.lambda_sq.data() + kDraws}, 1.0,
                       1.0 / nu + beta * beta / (2 * tau_sq * sigma_sq));
  return c;
}

/// nu_j | lambda_j^2 ~ IG(1, 1 + 1/lambda_j^2)
inline Check local_auxiliary_law() {
  Check c{"local auxiliary conditional"};
  auto s = savskit::HorseshoeState::with_scales(kDraws, 0.5, 1.0, 1.0);
  savskit::RandomStream rng(102);
  savskit::ClampCounter clamp;
  savskit::draw_local_auxiliaries(s, rng, clamp);
  expect_inverse_gamma(c, {s.nu.data(), s.nu.data() + kDraws}, 1.0, 3.0);
  return c;
}

/// tau^2 | . ~ IG((p+1)/2, 1/xi + sum beta^2 / (2 lambda^2 sigma^2))
inline Check global_scale_law() {
  Check c{"global scale conditional"};
  const std::size_t p = 9;
  auto s = savskit::HorseshoeState::with_scales(p, 1.0, 1.0, 0.8);
  double sum = 0;
  for (std::size_t j = 0; j < p; ++j) {
    s.beta[j] = 0.3 * (static_cast<double>(j) - 4.0);
    s.lambda_sq[j] = 0.5 + 0.25 * static_cast<double>(j);
    sum += s.beta[j] * s.beta[j] / (2 * s.lambda_sq[j] * s.sigma_sq);
  }
  s.xi = 0.6;
  savskit::RandomStream rng(103);
  savskit::ClampCounter clamp;
  std::vector<double> xs(kDraws);
  for (auto& x : xs) {
    savskit::draw_global_scale(s, rng, clamp);
    x = s.tau_sq;
  }
  expect_inverse_gamma(c, xs, (p + 1) / 2.0, 1.0 / 0.6 + sum);
  return c;
}

/// xi | tau^2 ~ IG(1, 1 + 1/tau^2)
inline Check global_auxiliary_law() {
  Check c{"global auxiliary conditional"};
  auto s = savskit::HorseshoeState::with_scales(1, 1.0, 2.0, 1.0);
  savskit::RandomStream rng(104);
  savskit::ClampCounter clamp;
  std::vector<double> xs(kDraws);
  for (auto& x : xs) {
    savskit::draw_global_auxiliary(s, rng, clamp);
    x = s.xi;
  }
  expect_inverse_gamma(c, xs, 1.0, 1.5);
  return c;
}

/// sigma^2 | . ~ IG((n+p)/2, |y - X beta|^2 / 2 + sum beta^2 / (2 tau^2 lambda^2))
inline Check noise_variance_law() {
  Check c{"noise variance conditional"};
  Eigen::MatrixXd X(10, 3);
  Eigen::VectorXd y(10);
  for (int i = 0; i < 10; ++i) {
    y[i] = 0.5 * i - 2.0;
    for (int j = 0; j < 3; ++j) X(i, j) = std::cos(1.0 + i * (j + 1));
  }
  const savskit::RegressionData data(X, y);
  auto s = savskit::HorseshoeState::with_scales(3, 1.0, 0.5, 1.0);
  s.beta << 0.4, -1.1, 0.2;
  s.lambda_sq << 0.5, 2.0, 1.5;
  double rss = 0;
  for (int i = 0; i < 10; ++i) {
    double f = 0;
    for (int j = 0; j < 3; ++j) f += X(i, j) * s.beta[j];
    rss += (y[i] - f) * (y[i] - f);
  }
  double prior = 0;
  for (int j = 0; j < 3; ++j) prior += s.beta[j] * s.beta[j] / (2 * s.tau_sq * s.lambda_sq[j]);
  savskit::RandomStream rng(105);
  savskit::ClampCounter clamp;
  std::vector<double> xs(kDraws);
  for (auto& x : xs) x = savskit::sample_noise_variance(data, s, rng, clamp);
  expect_inverse_gamma(c, xs, 6.5, rss / 2 + prior);
  return c;
}

/// Data-free chain (X = 0): beta | scales, then lambda^2 and nu. The joint
/// stationary law is the prior, so lambda ~ C+(0, 1). With beta held at zero
/// the lambda target would be improper.
inline Check local_half_cauchy_ks() {
  Check c{"half-Cauchy marginal of lambda (KS)"};
  const Eigen::MatrixXd X = Eigen::MatrixXd::Zero(1, kDraws);
  const Eigen::VectorXd y = Eigen::VectorXd::Zero(1);
  savskit::BetaSampler sampler(X, y);
  auto s = savskit::HorseshoeState::with_scales(kDraws, 1.0, 1.0, 1.0);
  savskit::RandomStream rng(106);
  savskit::ClampCounter clamp;
  for (int sweep = 0; sweep < 300; ++sweep) {
    s.beta = sampler.draw(s, rng);
    savskit::sample_local_scales(s, rng, clamp);
  }
  std::vector<double> lambda(kDraws);
  for (std::size_t j = 0; j < kDraws; ++j) lambda[j] = std::sqrt(s.lambda_sq[j]);
  const double d = oracle::ks_statistic(lambda, oracle::half_cauchy_cdf);
  const double crit = oracle::ks_critical_99(kDraws);
  c.pass = d < crit;
  std::ostringstream out;
  out << "D=" << d << " crit99=" << crit;
  c.detail = out.str();
  return c;
}

/// Same for tau with p = 1, lambda^2 = 1: independent data-free chains, one
/// final draw each.
inline Check global_half_cauchy_ks() {
  Check c{"half-Cauchy marginal of tau (KS)"};
  const Eigen::MatrixXd X = Eigen::MatrixXd::Zero(1, 1);
  const Eigen::VectorXd y = Eigen::VectorXd::Zero(1);
  savskit::BetaSampler sampler(X, y);
  savskit::RandomStream rng(107);
  savskit::ClampCounter clamp;
  std::vector<double> tau(kDraws);
  for (auto& t : tau) {
    auto s = savskit::HorseshoeState::with_scales(1, 1.0, 1.0, 1.0);
    for (int sweep = 0; sweep < 150; ++sweep) {
      s.beta = sampler.draw(s, rng);
      savskit::sample_global_scale(s, rng, clamp);
    }
    t = std::sqrt(s.tau_sq);
  }
  const double d = oracle::ks_statistic(tau, oracle::half_cauchy_cdf);
  const double crit = oracle::ks_critical_99(kDraws);
  c.pass = d < crit;
  std::ostringstream out;
  out << "D=" << d << " crit99=" << crit;
  c.detail = out.str();
  return c;
}

/// Structured (p > n) and direct (p <= n) beta draws on one square problem:
/// per-coordinate means and variances agree with each other and with the
/// closed form mean A^-1 X'y, covariance sigma^2 A^-1, A = X'X + diag(1/(tau^2 lambda^2)).
inline Check gaussian_paths_agree() {
  Check c{"beta paths agree in law"};
  const int n = 20, p = 20;
  std::mt19937_64 gen(108);
  const Eigen::MatrixXd X = oracle::gaussian_matrix(n, p, gen) / std::sqrt(double(n));
  const Eigen::VectorXd y = oracle::gaussian_matrix(n, 1, gen).col(0);
  const savskit::RegressionData data(X, y);
  auto s = savskit::HorseshoeState::with_scales(p, 1.0, 0.5, 1.3);
  for (int j = 0; j < p; ++j) s.lambda_sq[j] = 0.2 + 0.15 * j;

  Eigen::MatrixXd A = X.transpose() * X;
  for (int j = 0; j < p; ++j) A(j, j) += 1.0 / (s.tau_sq * s.lambda_sq[j]);
  const Eigen::MatrixXd Ainv = A.inverse();
  const Eigen::VectorXd mean = Ainv * (X.transpose() * y);

  auto sample = [&](savskit::GaussianPath path, std::uint64_t seed) {
    savskit::BetaSampler sampler(data, path);
    savskit::RandomStream rng(seed);
    std::vector<std::vector<double>> cols(p, std::vector<double>(kDraws));
    for (std::size_t t = 0; t < kDraws; ++t) {
      const auto b = sampler.draw(s, rng);
      for (int j = 0; j < p; ++j) cols[j][t] = b[j];
    }
    return cols;
  };
  const auto a = sample(savskit::GaussianPath::structured, 109);
  const auto b = sample(savskit::GaussianPath::direct, 110);
  for (int j = 0; j < p; ++j) {
    const auto ma = oracle::moments(a[j]);
    const auto mb = oracle::moments(b[j]);
    const std::string tag = "beta_" + std::to_string(j + 1);
    expect_close(c, tag + " mean (paths)", ma.mean - mb.mean, 0.0, std::hypot(ma.se_mean, mb.se_mean));
    expect_close(c, tag + " var (paths)", ma.var - mb.var, 0.0, std::hypot(ma.se_var, mb.se_var));
    expect_close(c, tag + " mean (structured vs exact)", ma.mean, mean[j], ma.se_mean);
    expect_close(c, tag + " var (structured vs exact)", ma.var, s.sigma_sq * Ainv(j, j), ma.se_var);
    expect_close(c, tag + " mean (direct vs exact)", mb.mean, mean[j], mb.se_mean);
    expect_close(c, tag + " var (direct vs exact)", mb.var, s.sigma_sq * Ainv(j, j), mb.se_var);
  }
  return c;
}

inline std::vector<Check> all_checks() {
  return {local_scale_law(),      local_auxiliary_law(),   global_scale_law(),
          global_auxiliary_law(), noise_variance_law(),    local_half_cauchy_ks(),
          global_half_cauchy_ks(), gaussian_paths_agree()};
}

}  // namespace law
