#include <CLI11.hpp>

#include "commands.hpp"
#include "savskit/cli.hpp"
#include "savskit/errors.hpp"

namespace savskit::cli {
namespace {

constexpr const char* kExitCodes =
    "Exit codes:\n"
    "  0  success\n"
    "  2  usage (unknown subcommand or flag, missing argument)\n"
    "  3  config (schema violation, invalid value)\n"
    "  4  io (missing input file, unwritable output)\n"
    "  5  data (malformed CSV, shape mismatch)\n"
    "  6  numerical (failed factorization, non-finite state)\n"
    "\n"
    "Errors are reported on stderr as a single line:\n"
    "  savskit: error kind=<kind> code=<n> message=\"...\"\n"
    "\n"
    "SAVSKIT_WORKERS sets the default for bench --workers.\n";

std::string quote(const std::string& text) {
  std::string out;
  for (char c : text) {
    if (c == '"' || c == '\\') out += '\\';
    out += (c == '\n' || c == '\r') ? ' ' : c;
  }
  return out;
}

void report_error(std::ostream& err, ErrorKind kind, const std::string& message) {
  err << "savskit: error kind=" << to_string(kind) << " code=" << static_cast<int>(kind)
      << " message=\"" << quote(message) << "\"\n";
}

}  // namespace

int dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Horseshoe posterior sampling, signal adaptive variable selection and "
               "simulation benchmarks for sparse linear regression.",
               "savskit"};
  app.footer(kExitCodes);
  app.set_version_flag("--version", std::string(kToolVersion));
  app.require_subcommand(1);

  FitOptions fit;
  auto* fit_cmd = app.add_subcommand("fit", "Run the horseshoe Gibbs sampler and write the posterior mean");
  fit_cmd->add_option("--x", fit.x_path, "Design matrix CSV (n rows, p columns)")->required();
  fit_cmd->add_option("--y", fit.y_path, "Response CSV (one column)")->required();
  fit_cmd->add_option("--config", fit.config_path, "Key-value config; only [mcmc] is read");
  fit_cmd->add_option("--out-dir", fit.out_dir, "Output directory");
  fit_cmd->add_option("--seed", fit.seed, "Sampler seed");
  fit_cmd->add_option("--n-iter", fit.n_iter, "Total sweeps including burn-in");
  fit_cmd->add_option("--burn-in", fit.burn_in, "Discarded leading sweeps");
  fit_cmd->add_option("--thin", fit.thin, "Keep every k-th post-burn-in sweep");
  fit_cmd->add_flag("--standardize", fit.standardize, "Center X columns and y before fitting");
  fit_cmd->add_flag("--retain-draws", fit.retain_draws, "Also write the retained beta draws");

  SelectOptions sel;
  auto* sel_cmd = app.add_subcommand("select", "Apply the SAVS rule to a coefficient estimate");
  sel_cmd->add_option("--beta", sel.beta_path, "Coefficient estimate CSV (one column)")->required();
  sel_cmd->add_option("--design", sel.design_path, "Design matrix CSV");
  sel_cmd->add_option("--norms", sel.norms_path, "Precomputed column squared norms CSV");
  sel_cmd->add_option("--draws", sel.draws_path, "Posterior draws CSV for inclusion frequencies");
  sel_cmd->add_option("--kappa", sel.kappa, "Penalty exponent")->capture_default_str();
  sel_cmd->add_option("--out-dir", sel.out_dir, "Output directory");

  CdCommandOptions cd;
  auto* cd_cmd = app.add_subcommand("cd", "Coordinate descent on the adaptive-lasso objective");
  cd_cmd->add_option("--beta", cd.beta_path, "Coefficient estimate CSV (one column)")->required();
  cd_cmd->add_option("--design", cd.design_path, "Design matrix CSV")->required();
  cd_cmd->add_option("--mode", cd.mode, "gauss_seidel or jacobi")->capture_default_str();
  cd_cmd->add_option("--max-iter", cd.max_iter, "Maximum passes")->capture_default_str();
  cd_cmd->add_option("--rel-tol", cd.rel_tol, "Relative objective change tolerance")
      ->capture_default_str();
  cd_cmd->add_option("--mu", cd.mu, "Penalty CSV, or 'savs' for 1/|beta_hat|^kappa")
      ->capture_default_str();
  cd_cmd->add_option("--init", cd.init, "Start: 'beta_hat', 'zero' or a CSV")->capture_default_str();
  cd_cmd->add_option("--kappa", cd.kappa, "Penalty exponent for --mu savs")->capture_default_str();
  cd_cmd->add_flag("--early-stop", cd.early_stop,
                   "Gauss-Seidel from beta_hat, reporting the change after pass 1");
  cd_cmd->add_option("--out-dir", cd.out_dir, "Output directory");

  BenchOptions bench;
  auto* bench_cmd = app.add_subcommand("bench", "Seeded simulation benchmark over replicates");
  bench_cmd->add_option("--config", bench.config_path, "Key-value config mirroring BenchConfig");
  bench_cmd->add_option("--profile", bench.profile, "desk (50 replicates) or full (1000)")
      ->capture_default_str();
  bench_cmd->add_option("--workers", bench.workers, "Concurrent replicates");
  bench_cmd->add_option("--seed", bench.seed, "Master seed");
  bench_cmd->add_option("--out-dir", bench.out_dir, "Output directory");
  bench_cmd->add_flag("--skip-failures", bench.skip_failures,
                      "Log failed replicates and aggregate the rest");
  bench_cmd->add_flag("--inclusion-frequency", bench.inclusion_frequency,
                      "Also record per-draw SAVS inclusion frequencies");
  bench_cmd->add_option("--design", bench.design, "independent, compound_symmetry or ar1");
  bench_cmd->add_option("--rho", bench.rho, "AR(1) correlation");
  bench_cmd->add_option("--n", bench.n, "Observations");
  bench_cmd->add_option("--p", bench.p, "Predictors");
  bench_cmd->add_option("--signal-case", bench.signal_case, "case1_set1, case1_set2 or case2");
  bench_cmd->add_option("--placement", bench.placement, "uniform or leading_block");
  bench_cmd->add_option("--sigma", bench.sigma, "Noise standard deviation");
  bench_cmd->add_option("--kappa", bench.kappa, "Penalty exponent");
  bench_cmd->add_option("--replicates", bench.replicates, "Replicate count (overrides profile)");
  bench_cmd->add_option("--n-iter", bench.n_iter, "MCMC sweeps including burn-in");
  bench_cmd->add_option("--burn-in", bench.burn_in, "MCMC burn-in");
  bench_cmd->add_option("--thin", bench.thin, "MCMC thinning");

  MetricsOptions met;
  auto* met_cmd = app.add_subcommand("metrics", "Score an estimated support against the truth");
  met_cmd->add_option("--support", met.support_path, "CSV whose first column holds 1-based indices")
      ->required();
  met_cmd->add_option("--truth", met.truth_path, "True coefficient CSV (one column)")->required();
  met_cmd->add_option("--out-dir", met.out_dir, "Output directory");

  ReportOptions rep;
  auto* rep_cmd = app.add_subcommand("report", "Export plot-ready CSVs from result directories");
  rep_cmd->add_option("inputs", rep.inputs, "bench or cd output directories")->required();
  rep_cmd->add_option("--out-dir", rep.out_dir, "Output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << app.help();
    report_error(err, ErrorKind::usage, e.what());
    return static_cast<int>(ErrorKind::usage);
  }

  try {
    if (*fit_cmd) run_fit(fit);
    else if (*sel_cmd) run_select(sel);
    else if (*cd_cmd) run_cd(cd);
    else if (*bench_cmd) run_bench(bench);
    else if (*met_cmd) run_metrics(met);
    else if (*rep_cmd) run_report(rep);
  } catch (const Error& e) {
    report_error(err, e.kind(), e.what());
    return e.exit_code();
  } catch (const std::filesystem::filesystem_error& e) {
    report_error(err, ErrorKind::io, e.what());
    return static_cast<int>(ErrorKind::io);
  }
  return 0;
}

}  // namespace savskit::cli
