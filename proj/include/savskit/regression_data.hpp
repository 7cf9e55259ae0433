#pragma once

#include <cstddef>
#include <filesystem>
#include <vector>

#include <Eigen/Dense>

namespace savskit {

/// Per-column sums of squares. Throws DataError on an empty matrix.
Eigen::VectorXd column_sq_norms(const Eigen::MatrixXd& X);

/// A design matrix with its cached column squared norms. Immutable once built.
///
/// Every column must have a strictly positive squared norm: the selection
/// rule and the coordinate-descent update both divide by it.
class Design {
 public:
  explicit Design(Eigen::MatrixXd X);

  const Eigen::MatrixXd& X() const noexcept { return X_; }
  const Eigen::VectorXd& col_sq_norms() const noexcept { return col_sq_norms_; }
  std::size_t n() const noexcept { return static_cast<std::size_t>(X_.rows()); }
  std::size_t p() const noexcept { return static_cast<std::size_t>(X_.cols()); }

 private:
  Eigen::MatrixXd X_;
  Eigen::VectorXd col_sq_norms_;
};

/// What was done to the raw inputs before fitting.
struct Standardization {
  bool centered = false;
  double y_mean = 0.0;          // subtracted from y when centered
  Eigen::VectorXd column_means;  // subtracted from each X column when centered
};

/// Observed design and response. No intercept is modeled; center y (or use
/// the standardize flag) when one is needed.
class RegressionData {
 public:
  RegressionData(Eigen::MatrixXd X, Eigen::VectorXd y, Standardization standardization = {});

  const Design& design() const noexcept { return design_; }
  const Eigen::MatrixXd& X() const noexcept { return design_.X(); }
  const Eigen::VectorXd& y() const noexcept { return y_; }
  const Eigen::VectorXd& col_sq_norms() const noexcept { return design_.col_sq_norms(); }
  std::size_t n() const noexcept { return design_.n(); }
  std::size_t p() const noexcept { return design_.p(); }
  const Standardization& standardization() const noexcept { return standardization_; }

  operator const Design&() const noexcept { return design_; }  // NOLINT

 private:
  Design design_;
  Eigen::VectorXd y_;
  Standardization standardization_;
};

/// Mean-centers y and every column of X; column scale is left unchanged.
RegressionData center(const Eigen::MatrixXd& X, const Eigen::VectorXd& y);

/// Reads X (n rows, p columns) and y (n rows, one column) from CSV files.
RegressionData load_csv(const std::filesystem::path& path_X, const std::filesystem::path& path_y,
                        bool standardize);

/// Reads a design matrix alone (for post-processing commands that need no response).
Design load_design_csv(const std::filesystem::path& path_X);

/// Writes X and y with 17 significant digits; reloading reproduces them exactly.
void write_csv(const RegressionData& data, const std::filesystem::path& path_X,
               const std::filesystem::path& path_y);

/// True coefficients and their support, for simulation and scoring.
struct TruthSpec {
  Eigen::VectorXd beta0;
  std::vector<std::size_t> support;  // sorted, 0-based

  std::size_t s0() const noexcept { return support.size(); }
  static TruthSpec from_beta(Eigen::VectorXd beta0);
};

/// Sorted 0-based indices of the nonzero entries of `v`.
std::vector<std::size_t> nonzero_indices(const Eigen::VectorXd& v);

}  // namespace savskit
