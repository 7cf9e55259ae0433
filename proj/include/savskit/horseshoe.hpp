#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "savskit/random.hpp"
#include "savskit/regression_data.hpp"

namespace savskit {

/// Chain length and retention settings for the Gibbs sampler.
struct McmcConfig {
  std::size_t n_iter = 6000;
  std::size_t burn_in = 1000;
  std::size_t thin = 1;
  std::uint64_t seed = 0;
  bool retain_draws = false;

  /// Throws ConfigError unless burn_in < n_iter and thin >= 1.
  void validate() const;
  /// Number of post-burn-in sweeps that enter the posterior mean.
  std::size_t retained_count() const;
};

/// One state of the horseshoe Gibbs chain.
///
/// Each half-Cauchy scale is written as a mixture of two inverse-gammas:
/// lambda_j^2 | nu_j ~ IG(1/2, 1/nu_j), nu_j ~ IG(1/2, 1), and likewise
/// tau^2 | xi, xi. The prior on beta_j is N(0, sigma^2 lambda_j^2 tau^2).
struct HorseshoeState {
  Eigen::VectorXd beta;
  Eigen::VectorXd lambda_sq;
  Eigen::VectorXd nu;
  double tau_sq = 1.0;
  double sigma_sq = 1.0;
  double xi = 1.0;

  std::size_t p() const noexcept { return static_cast<std::size_t>(beta.size()); }

  /// beta = 0, unit scales, sigma^2 = sample variance of y (1 when that is zero).
  static HorseshoeState initial(const RegressionData& data);
  /// A state with the given scales, zero coefficients, and unit auxiliaries.
  static HorseshoeState with_scales(std::size_t p, double lambda_sq, double tau_sq, double sigma_sq);
  /// Throws NumericalError when a length differs from p or a scale is not positive and finite.
  void validate() const;
};

struct InverseGammaParams {
  double shape;
  double rate;
};

InverseGammaParams local_scale_conditional(const HorseshoeState& state, std::size_t j);
InverseGammaParams local_auxiliary_conditional(double lambda_sq);
InverseGammaParams global_scale_conditional(const HorseshoeState& state);
InverseGammaParams global_auxiliary_conditional(double tau_sq);
/// Conditional of sigma^2 under the Jeffreys prior 1/sigma^2, given the
/// residual sum of squares |y - X beta|^2.
InverseGammaParams noise_variance_conditional(std::size_t n, double residual_sq_norm,
                                              const HorseshoeState& state);

/// Keeps scale draws inside [1e-300, 1e300] and counts how often that bites.
struct ClampCounter {
  static constexpr double kFloor = 1e-300;
  static constexpr double kCeiling = 1e300;
  std::size_t events = 0;

  double operator()(double x) noexcept {
    if (x < kFloor) {
      ++events;
      return kFloor;
    }
    if (x > kCeiling) {
      ++events;
      return kCeiling;
    }
    return x;
  }
};

// Individual Gibbs steps. Each overwrites the named block of `state`.
void draw_local_scales(HorseshoeState& state, RandomStream& rng, ClampCounter& clamp);
void draw_local_auxiliaries(HorseshoeState& state, RandomStream& rng, ClampCounter& clamp);
void draw_global_scale(HorseshoeState& state, RandomStream& rng, ClampCounter& clamp);
void draw_global_auxiliary(HorseshoeState& state, RandomStream& rng, ClampCounter& clamp);

/// lambda^2 then nu, as one block update.
void sample_local_scales(HorseshoeState& state, RandomStream& rng, ClampCounter& clamp);
/// tau^2 then xi, as one block update.
void sample_global_scale(HorseshoeState& state, RandomStream& rng, ClampCounter& clamp);
/// Draws sigma^2 given everything else, stores it in `state` and returns it.
double sample_noise_variance(const RegressionData& data, HorseshoeState& state, RandomStream& rng,
                             ClampCounter& clamp);

enum class GaussianPath {
  automatic,   // structured when p > n, direct otherwise
  structured,  // n x n system: cost O(n^2 p + n^3)
  direct,      // p x p precision: cost O(p^3), X'X cached
};

/// Exact draws of beta from N(Sigma X'y / sigma^2, Sigma) with
/// Sigma = sigma^2 (X'X + diag(1 / (tau^2 lambda_j^2)))^-1.
///
/// The structured path never forms a p x p matrix: with D = sigma^2 tau^2
/// diag(lambda^2) it draws u ~ N(0, D), delta ~ N(0, I_n), solves
/// (X D X' / sigma^2 + I) w = y / sigma - (X u / sigma + delta), and returns
/// u + D X' w / sigma.
class BetaSampler {
 public:
  explicit BetaSampler(const RegressionData& data, GaussianPath path = GaussianPath::automatic);
  /// Unchecked design: zero columns are allowed here (the prior is then the conditional).
  BetaSampler(const Eigen::MatrixXd& X, const Eigen::VectorXd& y,
              GaussianPath path = GaussianPath::automatic);

  Eigen::VectorXd draw(const HorseshoeState& state, RandomStream& rng);
  GaussianPath path() const noexcept { return path_; }

 private:
  Eigen::VectorXd draw_structured(const HorseshoeState& state, RandomStream& rng);
  Eigen::VectorXd draw_direct(const HorseshoeState& state, RandomStream& rng);

  const Eigen::MatrixXd& X_;
  const Eigen::VectorXd& y_;
  GaussianPath path_;
  Eigen::MatrixXd system_;
  Eigen::MatrixXd scratch_;
  Eigen::LLT<Eigen::MatrixXd> llt_;
  Eigen::MatrixXd gram_;      // X'X, direct path only
  Eigen::VectorXd xty_;       // X'y, direct path only
};

/// One exact draw of beta given the scales in `state`.
Eigen::VectorXd sample_beta_conditional(const RegressionData& data, const HorseshoeState& state,
                                        RandomStream& rng,
                                        GaussianPath path = GaussianPath::automatic);
Eigen::VectorXd sample_beta_conditional(const Eigen::MatrixXd& X, const Eigen::VectorXd& y,
                                        const HorseshoeState& state, RandomStream& rng,
                                        GaussianPath path = GaussianPath::automatic);

struct PosteriorSummary {
  Eigen::VectorXd beta_mean;
  std::optional<Eigen::MatrixXd> draws;  // retained draws, one row each
  double sigma_mean = 0.0;               // posterior mean of sigma (not sigma^2)
  McmcConfig config_echo;
  std::size_t clamp_events = 0;
  std::vector<double> sigma_sq_trace;  // one entry per sweep, burn-in included
  std::vector<double> tau_sq_trace;
};

/// Runs config.n_iter sweeps in the fixed order beta, lambda^2, tau^2,
/// sigma^2, nu, xi and averages the retained beta draws. Deterministic in
/// (data, config).
PosteriorSummary gibbs_fit(const RegressionData& data, const McmcConfig& config);

}  // namespace savskit
