#pragma once

// Data-parallel inner loops. Every kernel has a plain serial reference in
// `kernels::serial` and an OpenMP version in `kernels::parallel`; the library
// calls the parallel ones, tests compare the two, and bench/ times them.
//
// The parallel kernels split work into fixed-size pieces whose boundaries do
// not depend on the thread count, so their output is bitwise identical for
// any OMP_NUM_THREADS.

#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace savskit::kernels {

/// Column panel width of the blocked Gram product.
inline constexpr Eigen::Index kGramPanel = 64;

/// One coordinate of the signal-adaptive selection rule:
/// mu = |b|^-kappa, zero when |b| * norm <= mu, else sign(b) (|b| norm - mu) / norm.
/// A zero estimate has an infinite penalty and maps to zero.
struct SavsCoordinate {
  double beta_star;
  double mu;
};

/// Penalty 1 / |beta_hat|^kappa; infinite for a zero estimate.
inline double savs_penalty(double beta_hat, double kappa) noexcept {
  if (beta_hat == 0.0) return std::numeric_limits<double>::infinity();
  const double magnitude = std::abs(beta_hat);
  return kappa == 2.0 ? 1.0 / (magnitude * magnitude) : std::pow(magnitude, -kappa);
}

inline SavsCoordinate savs_coordinate(double beta_hat, double sq_norm, double kappa) noexcept {
  const double mu = savs_penalty(beta_hat, kappa);
  if (beta_hat == 0.0) return {0.0, mu};
  const double magnitude = std::abs(beta_hat);
  const double signal = magnitude * sq_norm;
  if (signal <= mu) return {0.0, mu};
  const double shrunk = (signal - mu) / sq_norm;
  return {beta_hat > 0.0 ? shrunk : -shrunk, mu};
}

namespace serial {

void column_sq_norms(const Eigen::MatrixXd& X, Eigen::VectorXd& out);

/// Lower triangle (with diagonal) of I + X diag(weights) X'. The strictly
/// upper part of `out` is unspecified.
void shifted_weighted_gram(const Eigen::MatrixXd& X, const Eigen::VectorXd& weights,
                           Eigen::MatrixXd& out);

/// out = X' r
void correlate(const Eigen::MatrixXd& X, const Eigen::VectorXd& r, Eigen::VectorXd& out);

void savs_threshold(std::span<const double> beta_hat, std::span<const double> sq_norms,
                    double kappa, std::span<double> beta_star, std::span<double> mu);

/// counts[j] = number of rows of `draws` whose selection keeps variable j.
void savs_inclusion_counts(const Eigen::MatrixXd& draws, const Eigen::VectorXd& sq_norms,
                           double kappa, std::vector<std::size_t>& counts);

}  // namespace serial

namespace parallel {

void column_sq_norms(const Eigen::MatrixXd& X, Eigen::VectorXd& out);

/// Same contract as serial::shifted_weighted_gram. `scratch` is reused
/// between calls to avoid reallocating the scaled design.
void shifted_weighted_gram(const Eigen::MatrixXd& X, const Eigen::VectorXd& weights,
                           Eigen::MatrixXd& out, Eigen::MatrixXd& scratch);

void correlate(const Eigen::MatrixXd& X, const Eigen::VectorXd& r, Eigen::VectorXd& out);

void savs_threshold(std::span<const double> beta_hat, std::span<const double> sq_norms,
                    double kappa, std::span<double> beta_star, std::span<double> mu);

void savs_inclusion_counts(const Eigen::MatrixXd& draws, const Eigen::VectorXd& sq_norms,
                           double kappa, std::vector<std::size_t>& counts);

}  // namespace parallel

}  // namespace savskit::kernels
