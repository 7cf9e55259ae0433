#pragma once

#include <filesystem>
#include <string>

#include "savskit/horseshoe.hpp"
#include "savskit/simulation.hpp"

namespace savskit {

/// Replicate budgets: desk (50, for CI) and full (1000, the reproduction grid).
enum class Profile { desk, full };

Profile parse_profile(const std::string& name);
std::size_t profile_replicates(Profile profile) noexcept;

/// Reads a flat key-value configuration file:
///
///   sigma = 1.5
///   replicates = 50
///   master_seed = 7
///   kappa = 2
///
///   [design]
///   kind = ar1            ; independent | compound_symmetry | ar1
///   rho = 0.9
///   n = 200
///   p = 500
///
///   [signal]
///   signal_case = case2   ; case1_set1 | case1_set2 | case2
///   placement = uniform   ; uniform | leading_block
///
///   [mcmc]
///   n_iter = 6000
///   burn_in = 1000
///   thin = 1
///
/// Keys not present keep the values already in `base`. Unknown sections or
/// keys are schema errors (ConfigError).
BenchConfig read_bench_config(const std::filesystem::path& path, BenchConfig base = {});

/// Same format; only the [mcmc] section (which may also set seed and retain_draws) is read.
McmcConfig read_mcmc_config(const std::filesystem::path& path, McmcConfig base = {});

/// Writes `config` back in the format read_bench_config accepts.
std::string format_bench_config(const BenchConfig& config);

}  // namespace savskit
