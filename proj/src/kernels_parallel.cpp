#include "savskit/kernels.hpp"

#include <algorithm>

namespace savskit::kernels::parallel {

void column_sq_norms(const Eigen::MatrixXd& X, Eigen::VectorXd& out) {
  out.resize(X.cols());
  const Eigen::Index p = X.cols();
#pragma omp parallel for schedule(static)
  for (Eigen::Index j = 0; j < p; ++j) out[j] = X.col(j).squaredNorm();
}

void shifted_weighted_gram(const Eigen::MatrixXd& X, const Eigen::VectorXd& weights,
                           Eigen::MatrixXd& out, Eigen::MatrixXd& scratch) {
  const Eigen::Index n = X.rows();
  const Eigen::Index p = X.cols();
  scratch.resize(n, p);
  out.resize(n, n);

#pragma omp parallel for schedule(static)
  for (Eigen::Index k = 0; k < p; ++k) scratch.col(k) = X.col(k) * std::sqrt(weights[k]);

  // Panel b owns columns [c0, c0 + w) of the lower triangle.
  const Eigen::Index panels = (n + kGramPanel - 1) / kGramPanel;
#pragma omp parallel for schedule(dynamic)
  for (Eigen::Index b = 0; b < panels; ++b) {
    const Eigen::Index c0 = b * kGramPanel;
    const Eigen::Index w = std::min(kGramPanel, n - c0);
    out.block(c0, c0, n - c0, w).noalias() =
        scratch.bottomRows(n - c0) * scratch.middleRows(c0, w).transpose();
    out.block(c0, c0, w, w).diagonal().array() += 1.0;
  }
}

void correlate(const Eigen::MatrixXd& X, const Eigen::VectorXd& r, Eigen::VectorXd& out) {
  out.resize(X.cols());
  const Eigen::Index p = X.cols();
#pragma omp parallel for schedule(static)
  for (Eigen::Index j = 0; j < p; ++j) out[j] = X.col(j).dot(r);
}

void savs_threshold(std::span<const double> beta_hat, std::span<const double> sq_norms,
                    double kappa, std::span<double> beta_star, std::span<double> mu) {
  const auto p = static_cast<std::ptrdiff_t>(beta_hat.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t j = 0; j < p; ++j) {
    const auto c = savs_coordinate(beta_hat[j], sq_norms[j], kappa);
    beta_star[j] = c.beta_star;
    mu[j] = c.mu;
  }
}

void savs_inclusion_counts(const Eigen::MatrixXd& draws, const Eigen::VectorXd& sq_norms,
                           double kappa, std::vector<std::size_t>& counts) {
  const Eigen::Index p = draws.cols();
  const Eigen::Index m = draws.rows();
  counts.assign(static_cast<std::size_t>(p), 0);
  // Columns are independent, so each thread owns whole counters.
#pragma omp parallel for schedule(static)
  for (Eigen::Index j = 0; j < p; ++j) {
    std::size_t hits = 0;
    for (Eigen::Index d = 0; d < m; ++d)
      if (savs_coordinate(draws(d, j), sq_norms[j], kappa).beta_star != 0.0) ++hits;
    counts[static_cast<std::size_t>(j)] = hits;
  }
}

}  // namespace savskit::kernels::parallel
