#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "savskit/regression_data.hpp"
#include "savskit/savs.hpp"

namespace savskit {

/// Confusion counts of an estimated support against the true one, with the
/// derived rates. Degenerate denominators: MCC = 0 when any factor of its
/// denominator is zero; TPR = 1 when there are no true signals; TNR = 1 when
/// there are no true nulls.
struct SelectionMetrics {
  std::size_t tp = 0;
  std::size_t tn = 0;
  std::size_t fp = 0;
  std::size_t fn = 0;
  double mcc = 0.0;
  double tpr = 0.0;
  double tnr = 0.0;
  bool exact_model = false;

  std::size_t p() const noexcept { return tp + tn + fp + fn; }
  /// Fills mcc/tpr/tnr/exact_model from the four counts.
  static SelectionMetrics from_counts(std::size_t tp, std::size_t tn, std::size_t fp,
                                      std::size_t fn);
};

/// Both supports are 0-based index lists over p variables (any order,
/// duplicates rejected). Throws DataError on an index >= p.
SelectionMetrics classify(std::span<const std::size_t> estimated_support,
                          std::span<const std::size_t> true_support, std::size_t p);

SelectionMetrics classify(const SparseEstimate& estimate, const TruthSpec& truth);

/// Means and sample standard deviations (divisor count - 1; zero for a
/// single element) of MCC/TPR/TNR, and the exact-model proportion.
struct MetricsSummary {
  std::size_t count = 0;
  double prop = 0.0;
  double mcc_mean = 0.0;
  double mcc_sd = 0.0;
  double tpr_mean = 0.0;
  double tpr_sd = 0.0;
  double tnr_mean = 0.0;
  double tnr_sd = 0.0;
};

MetricsSummary aggregate(std::span<const SelectionMetrics> metrics);

}  // namespace savskit
