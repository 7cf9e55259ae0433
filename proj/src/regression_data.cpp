#include "savskit/regression_data.hpp"

#include <cmath>
#include <string>

#include "savskit/csv.hpp"
#include "savskit/errors.hpp"

namespace savskit {
namespace {

void require_finite(const Eigen::MatrixXd& m, const char* what) {
  for (Eigen::Index c = 0; c < m.cols(); ++c)
    for (Eigen::Index r = 0; r < m.rows(); ++r)
      if (!std::isfinite(m(r, c)))
        throw DataError(std::string(what) + " has a non-finite entry at row " +
                        std::to_string(r + 1) + ", column " + std::to_string(c + 1));
}

}  // namespace

Eigen::VectorXd column_sq_norms(const Eigen::MatrixXd& X) {
  if (X.rows() == 0 || X.cols() == 0) throw DataError("design matrix is empty");
  return X.colwise().squaredNorm().transpose();
}

Design::Design(Eigen::MatrixXd X) : X_(std::move(X)) {
  col_sq_norms_ = column_sq_norms(X_);
  require_finite(X_, "design matrix");
  for (Eigen::Index j = 0; j < col_sq_norms_.size(); ++j) {
    if (!(col_sq_norms_[j] > 0.0))
      throw DataError("column " + std::to_string(j + 1) + " of the design matrix is all zero");
  }
}

RegressionData::RegressionData(Eigen::MatrixXd X, Eigen::VectorXd y,
                               Standardization standardization)
    : design_(std::move(X)), y_(std::move(y)), standardization_(std::move(standardization)) {
  if (static_cast<std::size_t>(y_.size()) != design_.n()) {
    throw DataError("dimension mismatch: X has " + std::to_string(design_.n()) +
                    " rows but y has " + std::to_string(y_.size()) + " entries");
  }
  require_finite(y_, "response");
}

RegressionData center(const Eigen::MatrixXd& X, const Eigen::VectorXd& y) {
  if (X.rows() != y.size()) {
    throw DataError("dimension mismatch: X has " + std::to_string(X.rows()) +
                    " rows but y has " + std::to_string(y.size()) + " entries");
  }
  if (X.rows() == 0) throw DataError("design matrix is empty");
  Standardization s;
  s.centered = true;
  s.y_mean = y.mean();
  s.column_means = X.colwise().mean().transpose();
  Eigen::MatrixXd Xc = X.rowwise() - s.column_means.transpose();
  Eigen::VectorXd yc = y.array() - s.y_mean;
  return RegressionData(std::move(Xc), std::move(yc), std::move(s));
}

Design load_design_csv(const std::filesystem::path& path_X) {
  const auto table = csv::read_numeric(path_X);
  if (table.rows == 0) throw DataError(path_X.string() + ": no data rows");
  return Design(table.to_matrix());
}

RegressionData load_csv(const std::filesystem::path& path_X, const std::filesystem::path& path_y,
                        bool standardize) {
  const auto xt = csv::read_numeric(path_X);
  const auto yt = csv::read_numeric(path_y);
  if (xt.rows == 0) throw DataError(path_X.string() + ": no data rows");
  if (yt.cols != 1) {
    throw DataError(path_y.string() + ": expected one column, found " + std::to_string(yt.cols));
  }
  if (xt.rows != yt.rows) {
    throw DataError("dimension mismatch: X has " + std::to_string(xt.rows) +
                    " rows but y has " + std::to_string(yt.rows) + " rows");
  }
  if (standardize) return center(xt.to_matrix(), yt.column(0));
  return RegressionData(xt.to_matrix(), yt.column(0));
}

void write_csv(const RegressionData& data, const std::filesystem::path& path_X,
               const std::filesystem::path& path_y) {
  std::vector<std::string> header;
  for (std::size_t j = 0; j < data.p(); ++j) header.push_back("x" + std::to_string(j + 1));
  csv::write_columns(path_X, header, data.X());
  csv::write_vector(path_y, "y", data.y());
}

std::vector<std::size_t> nonzero_indices(const Eigen::VectorXd& v) {
  std::vector<std::size_t> idx;
  for (Eigen::Index j = 0; j < v.size(); ++j)
    if (v[j] != 0.0) idx.push_back(static_cast<std::size_t>(j));
  return idx;
}

TruthSpec TruthSpec::from_beta(Eigen::VectorXd beta0) {
  TruthSpec t;
  t.support = nonzero_indices(beta0);
  t.beta0 = std::move(beta0);
  return t;
}

}  // namespace savskit
