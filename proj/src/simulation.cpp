#include "savskit/simulation.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "savskit/coordinate_descent.hpp"
#include "savskit/errors.hpp"
#include "savskit/savs.hpp"

namespace savskit {

const char* to_string(DesignKind kind) noexcept {
  switch (kind) {
    case DesignKind::independent:
      return "independent";
    case DesignKind::compound_symmetry:
      return "compound_symmetry";
    case DesignKind::ar1:
      return "ar1";
  }
  return "unknown";
}

DesignKind parse_design_kind(const std::string& name) {
  if (name == "independent") return DesignKind::independent;
  if (name == "compound_symmetry") return DesignKind::compound_symmetry;
  if (name == "ar1") return DesignKind::ar1;
  throw ConfigError("unknown design kind '" + name +
                    "' (expected independent, compound_symmetry or ar1)");
}

void DesignSpec::validate() const {
  if (n == 0 || p == 0) throw ConfigError("design dimensions n and p must be positive");
  if (kind == DesignKind::ar1) {
    if (!rho) throw ConfigError("ar1 design requires rho");
    if (!(*rho >= 0.0 && *rho < 1.0)) throw ConfigError("ar1 rho must lie in [0, 1)");
  } else if (rho) {
    throw ConfigError("rho is only meaningful for the ar1 design");
  }
}

std::string DesignSpec::label() const {
  if (kind != DesignKind::ar1) return to_string(kind);
  std::ostringstream os;
  os << "ar1(rho=" << rho.value_or(0.0) << ")";
  return os.str();
}

double covariance_entry(const DesignSpec& spec, std::size_t j, std::size_t k) {
  if (j == k) return 1.0;
  switch (spec.kind) {
    case DesignKind::independent:
      return 0.0;
    case DesignKind::compound_symmetry:
      return kCompoundSymmetryCorrelation;
    case DesignKind::ar1:
      return std::pow(spec.rho.value_or(0.0), static_cast<double>(j > k ? j - k : k - j));
  }
  return 0.0;
}

Eigen::MatrixXd generate_design(const DesignSpec& spec, RandomStream& rng) {
  spec.validate();
  const auto n = static_cast<Eigen::Index>(spec.n);
  const auto p = static_cast<Eigen::Index>(spec.p);
  Eigen::MatrixXd X(n, p);
  switch (spec.kind) {
    case DesignKind::independent:
      for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < p; ++j) X(i, j) = rng.normal();
      break;
    case DesignKind::compound_symmetry: {
      const double shared_sd = std::sqrt(kCompoundSymmetryCorrelation);
      const double own_sd = std::sqrt(1.0 - kCompoundSymmetryCorrelation);
      for (Eigen::Index i = 0; i < n; ++i) {
        const double shared = shared_sd * rng.normal();
        for (Eigen::Index j = 0; j < p; ++j) X(i, j) = shared + own_sd * rng.normal();
      }
      break;
    }
    case DesignKind::ar1: {
      const double rho = *spec.rho;
      const double innovation_sd = std::sqrt(1.0 - rho * rho);
      for (Eigen::Index i = 0; i < n; ++i) {
        X(i, 0) = rng.normal();
        for (Eigen::Index j = 1; j < p; ++j)
          X(i, j) = rho * X(i, j - 1) + innovation_sd * rng.normal();
      }
      break;
    }
  }
  return X;
}

const char* to_string(SignalCase c) noexcept {
  switch (c) {
    case SignalCase::case1_set1:
      return "case1_set1";
    case SignalCase::case1_set2:
      return "case1_set2";
    case SignalCase::case2:
      return "case2";
  }
  return "unknown";
}

const char* to_string(Placement p) noexcept {
  return p == Placement::leading_block ? "leading_block" : "uniform";
}

SignalCase parse_signal_case(const std::string& name) {
  if (name == "case1_set1") return SignalCase::case1_set1;
  if (name == "case1_set2") return SignalCase::case1_set2;
  if (name == "case2") return SignalCase::case2;
  throw ConfigError("unknown signal case '" + name +
                    "' (expected case1_set1, case1_set2 or case2)");
}

Placement parse_placement(const std::string& name) {
  if (name == "uniform") return Placement::uniform;
  if (name == "leading_block") return Placement::leading_block;
  throw ConfigError("unknown placement '" + name + "' (expected uniform or leading_block)");
}

std::vector<double> SignalSpec::magnitudes() const {
  switch (signal_case) {
    case SignalCase::case1_set1:
      return {1.50, 1.75, 2.00, 2.25, 2.50};
    case SignalCase::case1_set2:
      return {0.75, 1.00, 1.25, 1.50, 1.75};
    case SignalCase::case2:
      return {0.75, 1.00, 1.25, 1.50, 1.75, 2.00, 2.25, 2.50, 2.75, 3.00};
  }
  return {};
}

TruthSpec generate_truth(const SignalSpec& signal, std::size_t p, RandomStream& rng) {
  const auto magnitudes = signal.magnitudes();
  if (magnitudes.size() > p) {
    throw ConfigError(std::to_string(magnitudes.size()) + " signals do not fit in p = " +
                      std::to_string(p));
  }
  std::vector<std::size_t> positions(p);
  std::iota(positions.begin(), positions.end(), std::size_t{0});
  if (signal.placement == Placement::uniform) {
    // Partial Fisher-Yates: the first s0 slots become a uniform sample.
    for (std::size_t k = 0; k < magnitudes.size(); ++k) {
      std::uniform_int_distribution<std::size_t> pick(k, p - 1);
      std::swap(positions[k], positions[pick(rng.engine())]);
    }
  }
  Eigen::VectorXd beta0 = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(p));
  for (std::size_t k = 0; k < magnitudes.size(); ++k) {
    const double sign = rng.coin() ? 1.0 : -1.0;
    beta0[static_cast<Eigen::Index>(positions[k])] = sign * magnitudes[k];
  }
  return TruthSpec::from_beta(std::move(beta0));
}

void BenchConfig::validate() const {
  design.validate();
  mcmc.validate();
  if (!(sigma > 0.0) || !std::isfinite(sigma)) throw ConfigError("sigma must be positive");
  if (replicates < 1) throw ConfigError("replicates must be at least 1");
  if (!(kappa > 0.0)) throw ConfigError("kappa must be positive");
  if (signal.magnitudes().size() > design.p)
    throw ConfigError("signal set is larger than p");
}

std::uint64_t replicate_seed(std::uint64_t master_seed, std::size_t r) noexcept {
  return derive_seed(master_seed, r);
}

ReplicateRecord run_replicate(const BenchConfig& config, std::size_t r, bool inclusion_frequency) {
  ReplicateRecord rec;
  rec.index = r;
  rec.seed = replicate_seed(config.master_seed, r);

  RandomStream rng(rec.seed);
  Eigen::MatrixXd X = generate_design(config.design, rng);
  TruthSpec truth = generate_truth(config.signal, config.design.p, rng);
  Eigen::VectorXd y = X * truth.beta0;
  for (Eigen::Index i = 0; i < y.size(); ++i) y[i] += config.sigma * rng.normal();
  const RegressionData data(std::move(X), std::move(y));

  McmcConfig mcmc = config.mcmc;
  mcmc.seed = derive_seed(rec.seed, 1);
  mcmc.retain_draws = inclusion_frequency;
  auto fit = gibbs_fit(data, mcmc);

  const auto estimate = savs(fit.beta_mean, data.col_sq_norms(), config.kappa);
  rec.metrics = classify(estimate, truth);
  const auto stop = early_stop_report(fit.beta_mean, data.design(), config.kappa);
  rec.early_stop_change = stop.relative_change_after_first_pass;
  rec.early_stop_objective = stop.trace.objective_per_iteration;
  if (inclusion_frequency)
    rec.inclusion_frequency = savs_inclusion_frequency(*fit.draws, data.col_sq_norms(), config.kappa);

  rec.sigma_mean = fit.sigma_mean;
  rec.clamp_events = fit.clamp_events;
  rec.beta_true = truth.beta0;
  rec.beta_hat = fit.beta_mean;
  rec.beta_star = estimate.beta_star;
  rec.ok = true;
  return rec;
}

BenchReport run_replicates(const BenchConfig& config, const RunOptions& options) {
  config.validate();
  BenchReport report;
  report.config = config;
  report.records.resize(config.replicates);

  const auto count = static_cast<std::ptrdiff_t>(config.replicates);
  const int workers = static_cast<int>(std::max<std::size_t>(options.workers, 1));
#pragma omp parallel for schedule(dynamic, 1) num_threads(workers)
  for (std::ptrdiff_t r = 0; r < count; ++r) {
    const auto idx = static_cast<std::size_t>(r);
    try {
      report.records[idx] = run_replicate(config, idx, options.inclusion_frequency);
    } catch (const std::exception& e) {
      ReplicateRecord failed;
      failed.index = idx;
      failed.seed = replicate_seed(config.master_seed, idx);
      failed.error = e.what();
      report.records[idx] = std::move(failed);
    }
  }

  std::vector<SelectionMetrics> ok;
  for (const auto& rec : report.records) {
    if (rec.ok) {
      ok.push_back(rec.metrics);
      continue;
    }
    ++report.failures;
    if (!options.skip_failures) {
      throw NumericalError("replicate " + std::to_string(rec.index) + " (seed " +
                           std::to_string(rec.seed) + ") failed: " + rec.error);
    }
  }
  if (ok.empty()) throw NumericalError("every replicate failed");
  report.summary = aggregate(ok);
  return report;
}

}  // namespace savskit
