#include "savskit/metrics.hpp"

#include <cmath>
#include <string>

#include "savskit/errors.hpp"

namespace savskit {
namespace {

std::vector<char> membership(std::span<const std::size_t> support, std::size_t p,
                             const char* which) {
  std::vector<char> in(p, 0);
  for (auto j : support) {
    if (j >= p)
      throw DataError(std::string(which) + " support index " + std::to_string(j + 1) +
                      " exceeds p = " + std::to_string(p));
    if (in[j]) throw DataError(std::string(which) + " support repeats index " +
                               std::to_string(j + 1));
    in[j] = 1;
  }
  return in;
}

struct MeanSd {
  double mean;
  double sd;
};

template <class Get>
MeanSd mean_sd(std::span<const SelectionMetrics> xs, Get get) {
  const double n = static_cast<double>(xs.size());
  double sum = 0.0;
  for (const auto& m : xs) sum += get(m);
  const double mean = sum / n;
  if (xs.size() < 2) return {mean, 0.0};
  double ss = 0.0;
  for (const auto& m : xs) ss += (get(m) - mean) * (get(m) - mean);
  return {mean, std::sqrt(ss / (n - 1.0))};
}

}  // namespace

SelectionMetrics SelectionMetrics::from_counts(std::size_t tp, std::size_t tn, std::size_t fp,
                                               std::size_t fn) {
  SelectionMetrics m;
  m.tp = tp;
  m.tn = tn;
  m.fp = fp;
  m.fn = fn;
  const double TP = static_cast<double>(tp), TN = static_cast<double>(tn);
  const double FP = static_cast<double>(fp), FN = static_cast<double>(fn);
  const double denom = (TP + FP) * (TP + FN) * (TN + FP) * (TN + FN);
  m.mcc = denom == 0.0 ? 0.0 : (TP * TN - FP * FN) / std::sqrt(denom);
  m.tpr = tp + fn == 0 ? 1.0 : TP / (TP + FN);
  m.tnr = tn + fp == 0 ? 1.0 : TN / (TN + FP);
  m.exact_model = fp == 0 && fn == 0;
  return m;
}

SelectionMetrics classify(std::span<const std::size_t> estimated_support,
                          std::span<const std::size_t> true_support, std::size_t p) {
  const auto est = membership(estimated_support, p, "estimated");
  const auto truth = membership(true_support, p, "true");
  std::size_t tp = 0, tn = 0, fp = 0, fn = 0;
  for (std::size_t j = 0; j < p; ++j) {
    if (est[j]) {
      truth[j] ? ++tp : ++fp;
    } else {
      truth[j] ? ++fn : ++tn;
    }
  }
  return SelectionMetrics::from_counts(tp, tn, fp, fn);
}

SelectionMetrics classify(const SparseEstimate& estimate, const TruthSpec& truth) {
  if (estimate.beta_star.size() != truth.beta0.size()) {
    throw DataError("length mismatch: estimate has " + std::to_string(estimate.beta_star.size()) +
                    " coefficients, truth has " + std::to_string(truth.beta0.size()));
  }
  return classify(estimate.support, truth.support,
                  static_cast<std::size_t>(truth.beta0.size()));
}

MetricsSummary aggregate(std::span<const SelectionMetrics> metrics) {
  if (metrics.empty()) throw DataError("cannot aggregate an empty metrics list");
  MetricsSummary s;
  s.count = metrics.size();
  std::size_t exact = 0;
  for (const auto& m : metrics) exact += m.exact_model ? 1 : 0;
  s.prop = static_cast<double>(exact) / static_cast<double>(metrics.size());
  const auto mcc = mean_sd(metrics, [](const SelectionMetrics& m) { return m.mcc; });
  const auto tpr = mean_sd(metrics, [](const SelectionMetrics& m) { return m.tpr; });
  const auto tnr = mean_sd(metrics, [](const SelectionMetrics& m) { return m.tnr; });
  s.mcc_mean = mcc.mean;
  s.mcc_sd = mcc.sd;
  s.tpr_mean = tpr.mean;
  s.tpr_sd = tpr.sd;
  s.tnr_mean = tnr.mean;
  s.tnr_sd = tnr.sd;
  return s;
}

}  // namespace savskit
