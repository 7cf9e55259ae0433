#pragma once

// Optimizer oracles shared by the unit tests and the acceptance binary.

#include <random>
#include <sstream>

#include "check.hpp"
#include "oracles.hpp"
#include "savskit/coordinate_descent.hpp"
#include "savskit/savs.hpp"

namespace cdcheck {

using suite::Check;

/// savs(beta_hat) against one Jacobi pass from beta_hat with mu_j = 1/beta_hat_j^2,
/// n = 50, p = 100, random beta_hat; worst relative coordinate error.
inline Check savs_equals_jacobi_pass(int instances = 100) {
  Check c{"savs equals one Jacobi pass"};
  std::mt19937_64 gen(401);
  std::uniform_real_distribution<double> mag(-1.5, 1.5);
  double worst = 0;
  int exact = 0;
  for (int i = 0; i < instances; ++i) {
    const savskit::Design design(oracle::gaussian_matrix(50, 100, gen));
    Eigen::VectorXd bhat(100);
    for (auto& b : bhat) b = mag(gen) * (i % 2 ? 1.0 : 0.2);
    Eigen::VectorXd mu(100);
    for (int j = 0; j < 100; ++j) mu[j] = 1.0 / (bhat[j] * bhat[j]);

    const auto est = savskit::savs(bhat, design.col_sq_norms());
    savskit::CdOptions opt;
    opt.mode = savskit::CdMode::jacobi;
    opt.max_iter = 1;
    const auto trace = savskit::coordinate_descent(bhat, design, mu, bhat, opt);
    bool same = true;
    for (int j = 0; j < 100; ++j) {
      const double a = est.beta_star[j], b = trace.solution[j];
      if (a != b) same = false;
      const double rel = a == b ? 0.0 : std::abs(a - b) / std::max(std::abs(a), std::abs(b));
      worst = std::max(worst, rel);
    }
    exact += same;
  }
  c.pass = worst <= 1e-12;
  std::ostringstream s;
  s << "max relative error " << worst << ", bitwise equal in " << exact << "/" << instances;
  c.detail = s.str();
  return c;
}

/// Design with orthogonal columns of unequal norm.
inline Eigen::MatrixXd orthogonal_design(int n, int p, std::mt19937_64& gen) {
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(oracle::gaussian_matrix(n, p, gen));
  Eigen::MatrixXd Q = qr.householderQ() * Eigen::MatrixXd::Identity(n, p);
  std::uniform_real_distribution<double> scale(0.5, 6.0);
  for (int j = 0; j < p; ++j) Q.col(j) *= scale(gen);
  return Q;
}

/// Orthogonal design, constant mu: converged descent equals
/// soft(beta_hat_j |X_j|^2, mu) / |X_j|^2.
inline Check orthogonal_closed_form(int instances = 100) {
  Check c{"orthogonal design closed form"};
  std::mt19937_64 gen(402);
  std::uniform_real_distribution<double> u(-2.0, 2.0), mu_dist(0.1, 20.0);
  double worst = 0;
  for (int i = 0; i < instances; ++i) {
    const int n = 30 + i % 20, p = 5 + i % 15;
    const savskit::Design design(orthogonal_design(n, p, gen));
    Eigen::VectorXd bhat(p), init(p);
    for (int j = 0; j < p; ++j) {
      bhat[j] = u(gen);
      init[j] = u(gen);
    }
    const double mu_c = mu_dist(gen);
    savskit::CdOptions opt;
    opt.mode = i % 2 ? savskit::CdMode::jacobi : savskit::CdMode::gauss_seidel;
    const auto trace = savskit::coordinate_descent(bhat, design, Eigen::VectorXd::Constant(p, mu_c),
                                                   init, opt);
    for (int j = 0; j < p; ++j) {
      const double s = design.X().col(j).squaredNorm();
      const double expect = oracle::soft(bhat[j] * s, mu_c) / s;
      worst = std::max(worst, std::abs(trace.solution[j] - expect));
    }
  }
  c.pass = worst <= 1e-12;
  std::ostringstream s;
  s << "max abs error " << worst;
  c.detail = s.str();
  return c;
}

/// p <= 3, unit-norm columns with Gram condition number <= 4/3: converged
/// Gauss-Seidel descent lies within one grid step of the exhaustive grid argmin.
inline Check grid_search_ground_truth(int instances = 20) {
  Check c{"grid search ground truth"};
  constexpr double h = 1e-3;
  std::mt19937_64 gen(403);
  std::uniform_real_distribution<double> u(-0.12, 0.12), mu_dist(0.0, 0.06);
  double worst = 0;
  for (int i = 0; i < instances; ++i) {
    const int p = 1 + i % 3;
    Eigen::MatrixXd X;
    while (true) {
      X = oracle::gaussian_matrix(400, p, gen);
      for (int j = 0; j < p; ++j) X.col(j).normalize();
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(X.transpose() * X);
      if (eig.eigenvalues().maxCoeff() / eig.eigenvalues().minCoeff() <= 4.0 / 3.0) break;
    }
    const savskit::Design design(X);
    Eigen::VectorXd bhat(p), mu(p);
    for (int j = 0; j < p; ++j) {
      bhat[j] = u(gen);
      mu[j] = mu_dist(gen);
    }
    savskit::CdOptions opt;
    opt.rel_tol = 0;
    opt.min_iter = 200;
    opt.max_iter = 200;
    const auto trace = savskit::coordinate_descent(bhat, design, mu, Eigen::VectorXd::Zero(p), opt);
    const auto grid = oracle::grid_argmin(X, bhat, mu, h);
    const double err = (trace.solution - grid).cwiseAbs().maxCoeff();
    worst = std::max(worst, err);
    if (oracle::q(X, bhat, mu, trace.solution) > oracle::q(X, bhat, mu, grid) + 1e-12) {
      c.pass = false;
      c.detail += "instance " + std::to_string(i) + ": grid point beats the solver; ";
    }
  }
  if (worst > h * (1 + 1e-9)) c.pass = false;
  std::ostringstream s;
  s << "max coordinate gap " << worst << " (grid step " << h << ")";
  c.detail += s.str();
  return c;
}

}  // namespace cdcheck
