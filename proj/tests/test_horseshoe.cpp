#include <doctest.h>

#include <omp.h>

#include "law_checks.hpp"
#include "oracles.hpp"
#include "savskit/errors.hpp"
#include "savskit/horseshoe.hpp"

using namespace savskit;

TEST_CASE("local scale conditional parameters") {
  auto s = HorseshoeState::with_scales(2, 1.0, 1.0, 1.0);
  s.beta << 0.0, 1.0;
  CHECK(local_scale_conditional(s, 0).shape == 1.0);
  CHECK(local_scale_conditional(s, 0).rate == 1.0);
  CHECK(local_scale_conditional(s, 1).rate == 1.5);
  CHECK(local_auxiliary_conditional(0.5).rate == 3.0);
}

TEST_CASE("global scale conditional parameters") {
  auto s = HorseshoeState::with_scales(1, 1.0, 1.0, 1.0);
  CHECK(global_scale_conditional(s).shape == 1.0);
  CHECK(global_scale_conditional(s).rate == 1.0);

  auto t = HorseshoeState::with_scales(2, 1.0, 1.0, 1.0);
  t.beta << 1.0, 1.0;
  CHECK(global_scale_conditional(t).shape == 1.5);
  CHECK(global_scale_conditional(t).rate == 2.0);
  CHECK(global_auxiliary_conditional(4.0).rate == 1.25);
}

TEST_CASE("noise variance conditional parameters") {
  auto s = HorseshoeState::with_scales(1, 1.0, 1.0, 1.0);
  s.beta << 1.0;
  const auto ig = noise_variance_conditional(2, 2.0, s);
  CHECK(ig.shape == 1.5);
  CHECK(ig.rate == 1.5);
}

TEST_CASE("noise variance with zero rate is degenerate") {
  Eigen::MatrixXd X(3, 1);
  X << 1, 2, 3;
  const RegressionData data(X, Eigen::VectorXd::Zero(3));
  auto s = HorseshoeState::with_scales(1, 1.0, 1.0, 1.0);
  RandomStream rng(1);
  ClampCounter clamp;
  try {
    sample_noise_variance(data, s, rng, clamp);
    FAIL("expected NumericalError");
  } catch (const NumericalError& e) {
    CHECK(std::string(e.what()).find("degenerate") != std::string::npos);
  }
}

TEST_CASE("conditional laws by Monte-Carlo moments and KS") {
  for (const auto& c : law::all_checks()) {
    INFO(c.name << ": " << c.detail);
    CHECK(c.pass);
  }
}

TEST_CASE("scalar beta conditional: X=[1], unit scales") {
  Eigen::MatrixXd X(1, 1);
  X << 1.0;
  const auto s = HorseshoeState::with_scales(1, 1.0, 1.0, 1.0);
  for (double y0 : {0.0, 2.0}) {
    const RegressionData data(X, Eigen::VectorXd::Constant(1, y0));
    for (auto path : {GaussianPath::structured, GaussianPath::direct}) {
      BetaSampler sampler(data, path);
      RandomStream rng(7);
      std::vector<double> xs(law::kDraws);
      for (auto& x : xs) x = sampler.draw(s, rng)[0];
      const auto m = oracle::moments(xs);
      // precision X'X + 1/(tau^2 lambda^2) = 2: mean y0/2, variance 1/2
      CHECK(oracle::within(m.mean, y0 / 2, m.se_mean, 3.0));
      CHECK(oracle::within(m.var, 0.5, m.se_var, 3.0));
    }
  }
}

TEST_CASE("zero design gives prior draws") {
  const Eigen::MatrixXd X = Eigen::MatrixXd::Zero(5, 3);
  const Eigen::VectorXd y = Eigen::VectorXd::LinSpaced(5, -1, 1);
  auto s = HorseshoeState::with_scales(3, 1.0, 0.5, 2.0);
  s.lambda_sq << 0.5, 1.0, 4.0;
  for (auto path : {GaussianPath::structured, GaussianPath::direct}) {
    BetaSampler sampler(X, y, path);
    RandomStream rng(8);
    std::vector<std::vector<double>> cols(3, std::vector<double>(law::kDraws));
    for (std::size_t t = 0; t < law::kDraws; ++t) {
      const auto b = sampler.draw(s, rng);
      for (int j = 0; j < 3; ++j) cols[j][t] = b[j];
    }
    for (int j = 0; j < 3; ++j) {
      const auto m = oracle::moments(cols[j]);
      CHECK(oracle::within(m.mean, 0.0, m.se_mean, 4.0));
      CHECK(oracle::within(m.var, s.sigma_sq * s.tau_sq * s.lambda_sq[j], m.se_var, 4.0));
    }
    double cross = 0;
    for (std::size_t t = 0; t < law::kDraws; ++t) cross += cols[0][t] * cols[2][t];
    cross /= law::kDraws;
    const double se = std::sqrt(s.sigma_sq * s.tau_sq * 0.5 * s.sigma_sq * s.tau_sq * 4.0 / law::kDraws);
    CHECK(std::abs(cross) <= 4 * se);
  }
}

TEST_CASE("McmcConfig validation") {
  McmcConfig c;
  c.burn_in = c.n_iter;
  CHECK_THROWS_AS(c.validate(), ConfigError);
  c = {};
  c.thin = 0;
  CHECK_THROWS_AS(c.validate(), ConfigError);
  c = {};
  c.n_iter = 10;
  c.burn_in = 3;
  c.thin = 3;
  CHECK(c.retained_count() == 3);
}

TEST_CASE("initial state") {
  Eigen::MatrixXd X(4, 2);
  X << 1, 0, 0, 1, 1, 1, 2, -1;
  Eigen::VectorXd y(4);
  y << 1, 2, 3, 6;
  const auto s = HorseshoeState::initial(RegressionData(X, y));
  CHECK(s.beta == Eigen::VectorXd::Zero(2));
  CHECK(s.lambda_sq == Eigen::VectorXd::Ones(2));
  CHECK(s.tau_sq == 1.0);
  CHECK(s.sigma_sq == doctest::Approx(14.0 / 3.0));
  const auto z = HorseshoeState::initial(RegressionData(X, Eigen::VectorXd::Zero(4)));
  CHECK(z.sigma_sq == 1.0);
}

TEST_CASE("clamp counter") {
  ClampCounter c;
  CHECK(c(0.0) == ClampCounter::kFloor);
  CHECK(c(1e308) == ClampCounter::kCeiling);
  CHECK(c(2.0) == 2.0);
  CHECK(c.events == 2);
}

namespace {

RegressionData small_problem(int n, int p, std::uint64_t seed, double signal) {
  std::mt19937_64 gen(seed);
  const Eigen::MatrixXd X = oracle::gaussian_matrix(n, p, gen);
  Eigen::VectorXd beta = Eigen::VectorXd::Zero(p);
  beta[0] = signal;
  beta[1] = -signal;
  const Eigen::VectorXd y = X * beta + oracle::gaussian_matrix(n, 1, gen).col(0);
  return {X, y};
}

}  // namespace

TEST_CASE("gibbs_fit is deterministic and independent of the thread count") {
  const auto data = small_problem(40, 90, 21, 2.0);
  McmcConfig c;
  c.n_iter = 300;
  c.burn_in = 100;
  c.thin = 2;
  c.seed = 99;
  c.retain_draws = true;
  const int saved = omp_get_max_threads();
  omp_set_num_threads(1);
  const auto a = gibbs_fit(data, c);
  omp_set_num_threads(4);
  const auto b = gibbs_fit(data, c);
  omp_set_num_threads(saved);
  CHECK(a.beta_mean == b.beta_mean);
  CHECK(*a.draws == *b.draws);
  CHECK(a.sigma_sq_trace == b.sigma_sq_trace);
  CHECK(a.draws->rows() == 100);
  CHECK(a.sigma_sq_trace.size() == 300);
  CHECK(a.beta_mean.isApprox(a.draws->colwise().mean().transpose(), 1e-12));

  c.seed = 100;
  CHECK(gibbs_fit(data, c).beta_mean != a.beta_mean);
}

TEST_CASE("gibbs_fit recovers a strong signal on both paths") {
  for (int p : {30, 90}) {
    const auto data = small_problem(60, p, 22, 3.0);
    McmcConfig c;
    c.n_iter = 2000;
    c.burn_in = 500;
    c.seed = 5;
    const auto fit = gibbs_fit(data, c);
    CHECK(fit.beta_mean[0] == doctest::Approx(3.0).epsilon(0.1));
    CHECK(fit.beta_mean[1] == doctest::Approx(-3.0).epsilon(0.1));
    CHECK(fit.beta_mean.tail(p - 2).cwiseAbs().maxCoeff() < 0.3);
    // p > n: the posterior noise scale sits well below the truth at this n
    if (p < 60) CHECK(fit.sigma_mean == doctest::Approx(1.0).epsilon(0.2));
    CHECK(fit.clamp_events == 0);
  }
}

TEST_CASE("zero response gives a posterior mean near zero") {
  std::mt19937_64 gen(31);
  const RegressionData data(oracle::gaussian_matrix(50, 10, gen), Eigen::VectorXd::Zero(50));
  McmcConfig c;
  c.n_iter = 5000;
  c.burn_in = 1000;
  c.seed = 3;
  const auto fit = gibbs_fit(data, c);
  INFO("max |beta_hat| = " << fit.beta_mean.cwiseAbs().maxCoeff());
  CHECK(fit.beta_mean.cwiseAbs().maxCoeff() < 0.05);
}
