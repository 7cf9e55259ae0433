#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "savskit/horseshoe.hpp"
#include "savskit/metrics.hpp"
#include "savskit/random.hpp"
#include "savskit/regression_data.hpp"

namespace savskit {

enum class DesignKind { independent, compound_symmetry, ar1 };

/// Row covariance of a simulated design: identity, unit diagonal with 0.5
/// off-diagonal, or Toeplitz rho^|j-k|.
struct DesignSpec {
  DesignKind kind = DesignKind::independent;
  std::optional<double> rho;  // ar1 only, 0 <= rho < 1
  std::size_t n = 200;
  std::size_t p = 500;

  void validate() const;
  /// "independent", "compound_symmetry" or "ar1(rho=0.9)".
  std::string label() const;
};

inline constexpr double kCompoundSymmetryCorrelation = 0.5;

const char* to_string(DesignKind kind) noexcept;
DesignKind parse_design_kind(const std::string& name);

double covariance_entry(const DesignSpec& spec, std::size_t j, std::size_t k);

/// n i.i.d. rows from N(0, Sigma), drawn row by row. AR(1) rows use the
/// recursion x_j = rho x_{j-1} + sqrt(1 - rho^2) z_j; compound-symmetry rows
/// add a shared factor to independent noise.
Eigen::MatrixXd generate_design(const DesignSpec& spec, RandomStream& rng);

enum class SignalCase { case1_set1, case1_set2, case2 };
enum class Placement { uniform, leading_block };

const char* to_string(SignalCase c) noexcept;
const char* to_string(Placement p) noexcept;
SignalCase parse_signal_case(const std::string& name);
Placement parse_placement(const std::string& name);

struct SignalSpec {
  SignalCase signal_case = SignalCase::case2;
  Placement placement = Placement::uniform;

  /// Case-1 set-1 {1.50..2.50}, set-2 {0.75..1.75} (step 0.25, five values);
  /// Case-2 {0.75..3.00} (step 0.25, ten values).
  std::vector<double> magnitudes() const;
};

/// Places the magnitude set, each with an independent random sign, on
/// support positions (uniform without replacement, or the leading block).
TruthSpec generate_truth(const SignalSpec& signal, std::size_t p, RandomStream& rng);

struct BenchConfig {
  DesignSpec design;
  SignalSpec signal;
  double sigma = 1.5;
  std::size_t replicates = 50;
  McmcConfig mcmc;
  std::uint64_t master_seed = 0;
  double kappa = 2.0;

  void validate() const;
};

struct RunOptions {
  std::size_t workers = 1;
  bool skip_failures = false;
  /// Keep draws long enough to compute per-draw selection frequencies.
  bool inclusion_frequency = false;
};

struct ReplicateRecord {
  std::size_t index = 0;
  std::uint64_t seed = 0;
  bool ok = false;
  std::string error;
  SelectionMetrics metrics;
  double sigma_mean = 0.0;
  std::size_t clamp_events = 0;
  double early_stop_change = 0.0;  // relative objective change between descent passes 1 and 2
  std::vector<double> early_stop_objective;
  Eigen::VectorXd beta_true;
  Eigen::VectorXd beta_hat;
  Eigen::VectorXd beta_star;
  Eigen::VectorXd inclusion_frequency;  // empty unless requested
};

struct BenchReport {
  BenchConfig config;
  std::vector<ReplicateRecord> records;  // ordered by replicate index
  MetricsSummary summary;                // over successful replicates
  std::size_t failures = 0;
};

/// Seed of replicate r; depends only on (master_seed, r).
std::uint64_t replicate_seed(std::uint64_t master_seed, std::size_t r) noexcept;

/// One replicate: design, truth and noise from the replicate stream, then
/// posterior mean, selection, scoring, and the descent diagnostic.
ReplicateRecord run_replicate(const BenchConfig& config, std::size_t r,
                              bool inclusion_frequency = false);

/// Runs all replicates (concurrently when workers > 1) and aggregates.
/// Output does not depend on the worker count. A failed replicate aborts the
/// run unless skip_failures is set, in which case it is excluded.
BenchReport run_replicates(const BenchConfig& config, const RunOptions& options = {});

}  // namespace savskit
