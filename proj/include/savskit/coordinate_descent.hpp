#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "savskit/regression_data.hpp"

namespace savskit {

/// Q(beta) = 1/2 |X beta_hat - X beta|^2 + sum_j mu_j |beta_j|.
/// Terms with beta_j == 0 contribute nothing even when mu_j is infinite.
/// Throws NumericalError when the result is not finite.
double objective(const Eigen::VectorXd& beta, const Eigen::VectorXd& beta_hat,
                 const Design& design, const Eigen::VectorXd& mu);

/// sign(a) (|a| - mu)_+
inline double soft_threshold(double a, double mu) noexcept {
  const double m = (a < 0.0 ? -a : a) - mu;
  if (m <= 0.0) return 0.0;
  return a < 0.0 ? -m : m;
}

/// Penalties mu_j = 1 / |beta_hat_j|^kappa (infinite where beta_hat_j == 0).
Eigen::VectorXd savs_penalties(const Eigen::VectorXd& beta_hat, double kappa = 2.0);

enum class CdMode {
  gauss_seidel,  // residual refreshed after every coordinate
  jacobi,        // every coordinate uses the start-of-pass residual
};

const char* to_string(CdMode mode) noexcept;
/// Parses "gauss_seidel" / "jacobi"; throws ConfigError otherwise.
CdMode parse_cd_mode(const std::string& name);

struct CdOptions {
  CdMode mode = CdMode::gauss_seidel;
  std::size_t max_iter = 100;
  std::size_t min_iter = 1;  // passes run before the stopping rule is consulted
  double rel_tol = 1e-8;
};

struct CdTrace {
  /// Entry t is Q after t full passes; entry 0 is Q at the starting point.
  std::vector<double> objective_per_iteration;
  Eigen::VectorXd solution;
  std::size_t iterations_run = 0;
  bool converged = false;
  CdMode mode = CdMode::gauss_seidel;
};

/// |Q_prev - Q_next| / |Q_prev|, with 0 when the two are equal.
double relative_change(double previous, double next) noexcept;

/// Minimizes Q by coordinate descent. Each coordinate update is
///   beta_j <- sign(z_j) (|z_j| - mu_j)_+ / |X_j|^2,  z_j = X_j' R_j,
/// with R_j the partial residual of X beta_hat on the other predictors.
/// Stops once the relative objective change of a pass drops below rel_tol,
/// or after max_iter passes. Coordinates with an infinite penalty are held at zero.
CdTrace coordinate_descent(const Eigen::VectorXd& beta_hat, const Design& design,
                           const Eigen::VectorXd& mu, const Eigen::VectorXd& init,
                           const CdOptions& options = {});

/// Objective trace of descent started at beta_hat, and how much the second
/// pass still changes the objective.
struct EarlyStopReport {
  CdTrace trace;
  double relative_change_after_first_pass = 0.0;  // between passes 1 and 2
  CdMode mode = CdMode::gauss_seidel;
};

/// Runs Gauss-Seidel descent from beta_hat with mu_j = 1 / |beta_hat_j|^kappa.
EarlyStopReport early_stop_report(const Eigen::VectorXd& beta_hat, const Design& design,
                                  double kappa = 2.0, CdOptions options = {});

/// Same as early_stop_report but with caller-supplied penalties.
EarlyStopReport early_stop_report_with_penalties(const Eigen::VectorXd& beta_hat,
                                                 const Design& design, const Eigen::VectorXd& mu,
                                                 CdOptions options = {});

}  // namespace savskit
