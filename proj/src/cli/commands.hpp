#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace savskit::cli {

struct FitOptions {
  std::filesystem::path x_path, y_path, out_dir = ".";
  std::optional<std::filesystem::path> config_path;
  bool standardize = false;
  std::optional<std::size_t> n_iter, burn_in, thin;
  std::optional<std::uint64_t> seed;
  bool retain_draws = false;
};

struct SelectOptions {
  std::filesystem::path beta_path, out_dir = ".";
  std::optional<std::filesystem::path> design_path, norms_path, draws_path;
  double kappa = 2.0;
};

struct CdCommandOptions {
  std::filesystem::path beta_path, design_path, out_dir = ".";
  std::string mode = "gauss_seidel";
  std::size_t max_iter = 100;
  double rel_tol = 1e-8;
  std::string mu = "savs";        // a CSV path or "savs"
  std::string init = "beta_hat";  // a CSV path, "beta_hat" or "zero"
  double kappa = 2.0;
  bool early_stop = false;
};

struct BenchOptions {
  std::optional<std::filesystem::path> config_path;
  std::filesystem::path out_dir = ".";
  std::string profile = "desk";
  std::optional<std::size_t> workers;
  std::optional<std::uint64_t> seed;
  bool skip_failures = false;
  bool inclusion_frequency = false;
  std::optional<std::string> design, signal_case, placement;
  std::optional<double> rho, sigma, kappa;
  std::optional<std::size_t> n, p, replicates, n_iter, burn_in, thin;
};

struct MetricsOptions {
  std::filesystem::path support_path, truth_path, out_dir = ".";
};

struct ReportOptions {
  std::vector<std::filesystem::path> inputs;
  std::filesystem::path out_dir = ".";
};

void run_fit(const FitOptions& options);
void run_select(const SelectOptions& options);
void run_cd(const CdCommandOptions& options);
void run_bench(const BenchOptions& options);
void run_metrics(const MetricsOptions& options);
void run_report(const ReportOptions& options);

}  // namespace savskit::cli
