#include "savskit/kernels.hpp"

namespace savskit::kernels::serial {

void column_sq_norms(const Eigen::MatrixXd& X, Eigen::VectorXd& out) {
  out.resize(X.cols());
  for (Eigen::Index j = 0; j < X.cols(); ++j) {
    double s = 0.0;
    for (Eigen::Index i = 0; i < X.rows(); ++i) s += X(i, j) * X(i, j);
    out[j] = s;
  }
}

void shifted_weighted_gram(const Eigen::MatrixXd& X, const Eigen::VectorXd& weights,
                           Eigen::MatrixXd& out) {
  const Eigen::Index n = X.rows();
  out.resize(n, n);
  for (Eigen::Index c = 0; c < n; ++c) {
    for (Eigen::Index r = c; r < n; ++r) {
      double s = 0.0;
      for (Eigen::Index k = 0; k < X.cols(); ++k) s += X(r, k) * weights[k] * X(c, k);
      out(r, c) = (r == c) ? 1.0 + s : s;
    }
  }
}

void correlate(const Eigen::MatrixXd& X, const Eigen::VectorXd& r, Eigen::VectorXd& out) {
  out.resize(X.cols());
  for (Eigen::Index j = 0; j < X.cols(); ++j) {
    double s = 0.0;
    for (Eigen::Index i = 0; i < X.rows(); ++i) s += X(i, j) * r[i];
    out[j] = s;
  }
}

void savs_threshold(std::span<const double> beta_hat, std::span<const double> sq_norms,
                    double kappa, std::span<double> beta_star, std::span<double> mu) {
  for (std::size_t j = 0; j < beta_hat.size(); ++j) {
    const auto c = savs_coordinate(beta_hat[j], sq_norms[j], kappa);
    beta_star[j] = c.beta_star;
    mu[j] = c.mu;
  }
}

void savs_inclusion_counts(const Eigen::MatrixXd& draws, const Eigen::VectorXd& sq_norms,
                           double kappa, std::vector<std::size_t>& counts) {
  counts.assign(static_cast<std::size_t>(draws.cols()), 0);
  for (Eigen::Index d = 0; d < draws.rows(); ++d)
    for (Eigen::Index j = 0; j < draws.cols(); ++j)
      if (savs_coordinate(draws(d, j), sq_norms[j], kappa).beta_star != 0.0)
        ++counts[static_cast<std::size_t>(j)];
}

}  // namespace savskit::kernels::serial
