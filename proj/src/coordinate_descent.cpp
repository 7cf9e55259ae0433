#include "savskit/coordinate_descent.hpp"

#include <cmath>
#include <algorithm>
#include <limits>

#include "savskit/errors.hpp"
#include "savskit/kernels.hpp"

namespace savskit {
namespace {

// Exact minimizer of Q along coordinate j, written as a function of the
// unpenalized target c = z / s. A zero penalty returns c untouched.
double coordinate_update(double c, double sq_norm, double mu) noexcept {
  if (mu == 0.0) return c;
  const double signal = std::abs(c) * sq_norm;
  if (signal <= mu) return 0.0;
  const double shrunk = (signal - mu) / sq_norm;
  return c > 0.0 ? shrunk : -shrunk;
}

void check_inputs(const Eigen::VectorXd& beta_hat, const Design& design, const Eigen::VectorXd& mu,
                  const Eigen::VectorXd& init, const CdOptions& options) {
  const auto p = static_cast<Eigen::Index>(design.p());
  if (beta_hat.size() != p || mu.size() != p || init.size() != p) {
    throw DataError("length mismatch: design has " + std::to_string(p) + " columns, beta_hat " +
                    std::to_string(beta_hat.size()) + ", mu " + std::to_string(mu.size()) +
                    ", init " + std::to_string(init.size()));
  }
  if (!beta_hat.allFinite()) throw DataError("beta_hat has non-finite entries");
  if (!init.allFinite()) throw DataError("initial point has non-finite entries");
  for (Eigen::Index j = 0; j < p; ++j)
    if (std::isnan(mu[j]) || mu[j] < 0.0)
      throw DataError("penalty " + std::to_string(j + 1) + " must be non-negative");
  if (options.max_iter < 1) throw ConfigError("max_iter must be at least 1");
  if (!(options.rel_tol >= 0.0)) throw ConfigError("rel_tol must be non-negative");
}

}  // namespace

double objective(const Eigen::VectorXd& beta, const Eigen::VectorXd& beta_hat,
                 const Design& design, const Eigen::VectorXd& mu) {
  const auto p = static_cast<Eigen::Index>(design.p());
  if (beta.size() != p || beta_hat.size() != p || mu.size() != p)
    throw DataError("length mismatch in objective");
  const Eigen::VectorXd r = design.X() * (beta_hat - beta);
  double penalty = 0.0;
  for (Eigen::Index j = 0; j < p; ++j)
    if (beta[j] != 0.0) penalty += mu[j] * std::abs(beta[j]);
  const double q = 0.5 * r.squaredNorm() + penalty;
  if (!std::isfinite(q)) throw NumericalError("objective is not finite");
  return q;
}

Eigen::VectorXd savs_penalties(const Eigen::VectorXd& beta_hat, double kappa) {
  Eigen::VectorXd mu(beta_hat.size());
  for (Eigen::Index j = 0; j < beta_hat.size(); ++j)
    mu[j] = kernels::savs_penalty(beta_hat[j], kappa);
  return mu;
}

const char* to_string(CdMode mode) noexcept {
  return mode == CdMode::jacobi ? "jacobi" : "gauss_seidel";
}

CdMode parse_cd_mode(const std::string& name) {
  if (name == "gauss_seidel") return CdMode::gauss_seidel;
  if (name == "jacobi") return CdMode::jacobi;
  throw ConfigError("unknown coordinate-descent mode '" + name +
                    "' (expected gauss_seidel or jacobi)");
}

double relative_change(double previous, double next) noexcept {
  if (previous == next) return 0.0;
  if (previous == 0.0) return std::numeric_limits<double>::infinity();
  return std::abs(previous - next) / std::abs(previous);
}

CdTrace coordinate_descent(const Eigen::VectorXd& beta_hat, const Design& design,
                           const Eigen::VectorXd& mu, const Eigen::VectorXd& init,
                           const CdOptions& options) {
  check_inputs(beta_hat, design, mu, init, options);
  const auto& X = design.X();
  const auto& norms = design.col_sq_norms();
  const Eigen::Index p = X.cols();

  CdTrace trace;
  trace.mode = options.mode;
  Eigen::VectorXd beta = init;
  for (Eigen::Index j = 0; j < p; ++j)
    if (std::isinf(mu[j])) beta[j] = 0.0;

  double q_prev = objective(beta, beta_hat, design, mu);
  trace.objective_per_iteration.push_back(q_prev);

  Eigen::VectorXd r(X.rows());
  Eigen::VectorXd g(p);
  for (std::size_t pass = 1; pass <= options.max_iter; ++pass) {
    r.noalias() = X * (beta_hat - beta);
    if (options.mode == CdMode::gauss_seidel) {
      for (Eigen::Index j = 0; j < p; ++j) {
        if (std::isinf(mu[j])) continue;
        const double c = beta[j] + X.col(j).dot(r) / norms[j];
        const double next = coordinate_update(c, norms[j], mu[j]);
        const double delta = next - beta[j];
        if (delta != 0.0) {
          r.noalias() -= delta * X.col(j);
          beta[j] = next;
        }
      }
    } else {
      kernels::parallel::correlate(X, r, g);
      for (Eigen::Index j = 0; j < p; ++j) {
        if (std::isinf(mu[j])) continue;
        beta[j] = coordinate_update(beta[j] + g[j] / norms[j], norms[j], mu[j]);
      }
    }
    if (!beta.allFinite())
      throw NumericalError("non-finite iterate after pass " + std::to_string(pass));

    const double q = objective(beta, beta_hat, design, mu);
    trace.objective_per_iteration.push_back(q);
    trace.iterations_run = pass;
    const double change = relative_change(q_prev, q);
    q_prev = q;
    if (pass >= options.min_iter && change < options.rel_tol) {
      trace.converged = true;
      break;
    }
  }
  trace.solution = std::move(beta);
  return trace;
}

EarlyStopReport early_stop_report_with_penalties(const Eigen::VectorXd& beta_hat,
                                                 const Design& design, const Eigen::VectorXd& mu,
                                                 CdOptions options) {
  options.mode = CdMode::gauss_seidel;
  options.min_iter = std::max<std::size_t>(options.min_iter, 2);
  options.max_iter = std::max<std::size_t>(options.max_iter, 2);
  EarlyStopReport report;
  report.mode = options.mode;
  report.trace = coordinate_descent(beta_hat, design, mu, beta_hat, options);
  const auto& q = report.trace.objective_per_iteration;
  report.relative_change_after_first_pass = relative_change(q[1], q[2]);
  return report;
}

EarlyStopReport early_stop_report(const Eigen::VectorXd& beta_hat, const Design& design,
                                  double kappa, CdOptions options) {
  return early_stop_report_with_penalties(beta_hat, design, savs_penalties(beta_hat, kappa),
                                          options);
}

}  // namespace savskit
