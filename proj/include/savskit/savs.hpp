#pragma once

#include <cstddef>
#include <vector>

#include <Eigen/Dense>

namespace savskit {

/// A sparsified point estimate and the penalties that produced it.
struct SparseEstimate {
  Eigen::VectorXd beta_star;
  std::vector<std::size_t> support;  // sorted 0-based indices with beta_star != 0
  double kappa = 2.0;
  Eigen::VectorXd mu;  // 1 / |beta_hat_j|^kappa; +inf where beta_hat_j == 0
};

/// Signal-adaptive variable selection: soft-thresholds each coordinate of a
/// shrinkage estimate with the penalty mu_j = 1 / |beta_hat_j|^kappa, scaled
/// by the column squared norm. Coordinates with |beta_hat_j| |X_j|^2 <= mu_j
/// become exactly zero; the others keep their sign and shrink by mu_j / |X_j|^2.
///
/// Throws DataError on a length mismatch, a non-positive norm, a non-finite
/// entry, or kappa <= 0.
SparseEstimate savs(const Eigen::VectorXd& beta_hat, const Eigen::VectorXd& col_sq_norms,
                    double kappa = 2.0);

/// Applies savs to every row of `draws` and returns, per variable, the
/// fraction of rows in which it is selected.
Eigen::VectorXd savs_inclusion_frequency(const Eigen::MatrixXd& draws,
                                         const Eigen::VectorXd& col_sq_norms, double kappa = 2.0);

}  // namespace savskit
