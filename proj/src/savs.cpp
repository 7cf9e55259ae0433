#include "savskit/savs.hpp"

#include <cmath>
#include <span>
#include <string>

#include "savskit/errors.hpp"
#include "savskit/kernels.hpp"

namespace savskit {
namespace {

void check_norms_and_kappa(const Eigen::VectorXd& col_sq_norms, double kappa) {
  if (!(kappa > 0.0) || !std::isfinite(kappa))
    throw ConfigError("kappa must be positive and finite, got " + std::to_string(kappa));
  for (Eigen::Index j = 0; j < col_sq_norms.size(); ++j) {
    if (!(col_sq_norms[j] > 0.0) || !std::isfinite(col_sq_norms[j]))
      throw DataError("column squared norm " + std::to_string(j + 1) +
                      " must be positive and finite");
  }
}

}  // namespace

SparseEstimate savs(const Eigen::VectorXd& beta_hat, const Eigen::VectorXd& col_sq_norms,
                    double kappa) {
  if (beta_hat.size() != col_sq_norms.size()) {
    throw DataError("length mismatch: " + std::to_string(beta_hat.size()) +
                    " coefficients but " + std::to_string(col_sq_norms.size()) + " column norms");
  }
  check_norms_and_kappa(col_sq_norms, kappa);
  for (Eigen::Index j = 0; j < beta_hat.size(); ++j)
    if (!std::isfinite(beta_hat[j]))
      throw DataError("coefficient " + std::to_string(j + 1) + " is not finite");

  SparseEstimate out;
  out.kappa = kappa;
  out.beta_star.resize(beta_hat.size());
  out.mu.resize(beta_hat.size());
  const auto p = static_cast<std::size_t>(beta_hat.size());
  kernels::parallel::savs_threshold(std::span(beta_hat.data(), p),
                                    std::span(col_sq_norms.data(), p), kappa,
                                    std::span(out.beta_star.data(), p), std::span(out.mu.data(), p));
  for (std::size_t j = 0; j < p; ++j)
    if (out.beta_star[static_cast<Eigen::Index>(j)] != 0.0) out.support.push_back(j);
  return out;
}

Eigen::VectorXd savs_inclusion_frequency(const Eigen::MatrixXd& draws,
                                         const Eigen::VectorXd& col_sq_norms, double kappa) {
  if (draws.rows() == 0) throw DataError("draw matrix is empty");
  if (draws.cols() != col_sq_norms.size()) {
    throw DataError("length mismatch: draws have " + std::to_string(draws.cols()) +
                    " columns but there are " + std::to_string(col_sq_norms.size()) +
                    " column norms");
  }
  check_norms_and_kappa(col_sq_norms, kappa);
  if (!draws.allFinite()) throw DataError("draw matrix has non-finite entries");

  std::vector<std::size_t> counts;
  kernels::parallel::savs_inclusion_counts(draws, col_sq_norms, kappa, counts);
  Eigen::VectorXd freq(draws.cols());
  for (Eigen::Index j = 0; j < freq.size(); ++j)
    freq[j] = static_cast<double>(counts[static_cast<std::size_t>(j)]) /
              static_cast<double>(draws.rows());
  return freq;
}

}  // namespace savskit
