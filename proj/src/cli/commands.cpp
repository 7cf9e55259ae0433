#include "commands.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>

#include <json.hpp>

#include "manifest.hpp"
#include "savskit/bench_config.hpp"
#include "savskit/coordinate_descent.hpp"
#include "savskit/csv.hpp"
#include "savskit/errors.hpp"
#include "savskit/horseshoe.hpp"
#include "savskit/metrics.hpp"
#include "savskit/regression_data.hpp"
#include "savskit/savs.hpp"
#include "savskit/simulation.hpp"

namespace savskit::cli {
namespace {

using nlohmann::json;

void require_file(const std::filesystem::path& path) {
  if (!std::filesystem::is_regular_file(path)) throw IoError("file not found: " + path.string());
}

Eigen::VectorXd read_single_column(const std::filesystem::path& path) {
  require_file(path);
  const auto table = csv::read_numeric(path);
  if (table.cols != 1) {
    throw DataError(path.string() + ": expected a single column, found " +
                    std::to_string(table.cols));
  }
  if (table.rows == 0) throw DataError(path.string() + ": no data rows");
  return table.column(0);
}

/// 1-based indices from the first column of `path`, returned 0-based.
std::vector<std::size_t> read_support(const std::filesystem::path& path) {
  require_file(path);
  const auto table = csv::read_numeric(path);
  std::vector<std::size_t> support;
  for (std::size_t r = 0; r < table.rows; ++r) {
    const double v = table.at(r, 0);
    if (!(v >= 1.0) || v != std::floor(v) || v > 1e15) {
      throw DataError(path.string() + ": support index '" + csv::format_double(v) +
                      "' is not a positive integer");
    }
    support.push_back(static_cast<std::size_t>(v) - 1);
  }
  return support;
}

json metrics_json(const SelectionMetrics& m) {
  return {{"tp", m.tp},   {"tn", m.tn},   {"fp", m.fp},   {"fn", m.fn},
          {"mcc", m.mcc}, {"tpr", m.tpr}, {"tnr", m.tnr}, {"exact_model", m.exact_model}};
}

json mcmc_json(const McmcConfig& c) {
  return {{"n_iter", c.n_iter}, {"burn_in", c.burn_in}, {"thin", c.thin},
          {"seed", c.seed},     {"retain_draws", c.retain_draws}};
}

json bench_config_json(const BenchConfig& c) {
  json design = {{"kind", to_string(c.design.kind)}, {"n", c.design.n}, {"p", c.design.p}};
  if (c.design.rho) design["rho"] = *c.design.rho;
  return {{"design", design},
          {"signal",
           {{"case", to_string(c.signal.signal_case)},
            {"placement", to_string(c.signal.placement)}}},
          {"sigma", c.sigma},
          {"replicates", c.replicates},
          {"master_seed", c.master_seed},
          {"kappa", c.kappa},
          {"mcmc",
           {{"n_iter", c.mcmc.n_iter}, {"burn_in", c.mcmc.burn_in}, {"thin", c.mcmc.thin}}}};
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  auto out = csv::open_for_write(path);
  out << text;
  if (!out) throw IoError("write failed: " + path.string());
}

void write_trace(const std::filesystem::path& path, const std::vector<double>& objective) {
  Eigen::MatrixXd rows(static_cast<Eigen::Index>(objective.size()), 2);
  for (std::size_t t = 0; t < objective.size(); ++t) {
    rows(static_cast<Eigen::Index>(t), 0) = static_cast<double>(t);
    rows(static_cast<Eigen::Index>(t), 1) = objective[t];
  }
  csv::write_columns(path, {"pass", "objective"}, rows);
}

}  // namespace

void run_fit(const FitOptions& o) {
  require_file(o.x_path);
  require_file(o.y_path);
  McmcConfig config;
  if (o.config_path) config = read_mcmc_config(*o.config_path, config);
  if (o.n_iter) config.n_iter = *o.n_iter;
  if (o.burn_in) config.burn_in = *o.burn_in;
  if (o.thin) config.thin = *o.thin;
  if (o.seed) config.seed = *o.seed;
  if (o.retain_draws) config.retain_draws = true;
  config.validate();

  const auto data = load_csv(o.x_path, o.y_path, o.standardize);
  RunManifest manifest("fit", o.out_dir);
  manifest.add_input(o.x_path);
  manifest.add_input(o.y_path);
  manifest.add_seed(config.seed);
  manifest.config() = {{"mcmc", mcmc_json(config)}, {"standardize", o.standardize}};

  const auto fit = gibbs_fit(data, config);

  csv::write_vector(manifest.output("beta_mean.csv"), "beta_mean", fit.beta_mean);
  if (fit.draws) {
    std::vector<std::string> header;
    for (std::size_t j = 0; j < data.p(); ++j) header.push_back("beta_" + std::to_string(j + 1));
    csv::write_columns(manifest.output("draws.csv"), header, *fit.draws);
  }
  Eigen::MatrixXd trace(static_cast<Eigen::Index>(fit.sigma_sq_trace.size()), 3);
  for (std::size_t t = 0; t < fit.sigma_sq_trace.size(); ++t) {
    const auto r = static_cast<Eigen::Index>(t);
    trace(r, 0) = static_cast<double>(t);
    trace(r, 1) = fit.sigma_sq_trace[t];
    trace(r, 2) = fit.tau_sq_trace[t];
  }
  csv::write_columns(manifest.output("trace.csv"), {"sweep", "sigma_sq", "tau_sq"}, trace);

  json summary = {{"n", data.n()},
                  {"p", data.p()},
                  {"standardize", o.standardize},
                  {"sigma_mean", fit.sigma_mean},
                  {"clamp_events", fit.clamp_events},
                  {"retained_sweeps", config.retained_count()},
                  {"mcmc", mcmc_json(config)}};
  if (o.standardize) summary["y_mean"] = data.standardization().y_mean;
  write_text(manifest.output("fit_summary.json"), summary.dump(2) + "\n");
  manifest.finish();
}

void run_select(const SelectOptions& o) {
  const auto beta_hat = read_single_column(o.beta_path);
  if (o.design_path.has_value() == o.norms_path.has_value())
    throw ConfigError("select needs exactly one of --design or --norms");

  Eigen::VectorXd norms;
  if (o.design_path) {
    require_file(*o.design_path);
    norms = load_design_csv(*o.design_path).col_sq_norms();
  } else {
    norms = read_single_column(*o.norms_path);
  }

  RunManifest manifest("select", o.out_dir);
  manifest.add_input(o.beta_path);
  manifest.add_input(o.design_path ? *o.design_path : *o.norms_path);
  manifest.config() = {{"kappa", o.kappa}};

  const auto est = savs(beta_hat, norms, o.kappa);
  csv::write_vector(manifest.output("beta_star.csv"), "beta_star", est.beta_star);

  Eigen::MatrixXd listing(static_cast<Eigen::Index>(est.support.size()), 4);
  for (std::size_t k = 0; k < est.support.size(); ++k) {
    const auto r = static_cast<Eigen::Index>(k);
    const auto j = static_cast<Eigen::Index>(est.support[k]);
    listing(r, 0) = static_cast<double>(j + 1);
    listing(r, 1) = beta_hat[j];
    listing(r, 2) = est.mu[j];
    listing(r, 3) = est.beta_star[j];
  }
  csv::write_columns(manifest.output("support.csv"), {"index", "beta_hat", "mu", "beta_star"},
                     listing);

  if (o.draws_path) {
    require_file(*o.draws_path);
    manifest.add_input(*o.draws_path);
    const auto draws = csv::read_numeric(*o.draws_path).to_matrix();
    const auto freq = savs_inclusion_frequency(draws, norms, o.kappa);
    Eigen::MatrixXd rows(freq.size(), 2);
    for (Eigen::Index j = 0; j < freq.size(); ++j) {
      rows(j, 0) = static_cast<double>(j + 1);
      rows(j, 1) = freq[j];
    }
    csv::write_columns(manifest.output("inclusion_frequency.csv"), {"index", "frequency"}, rows);
  }
  manifest.finish();
}

void run_cd(const CdCommandOptions& o) {
  const auto beta_hat = read_single_column(o.beta_path);
  require_file(o.design_path);
  const auto design = load_design_csv(o.design_path);
  if (static_cast<std::size_t>(beta_hat.size()) != design.p()) {
    throw DataError("length mismatch: " + std::to_string(beta_hat.size()) +
                    " coefficients but the design has " + std::to_string(design.p()) + " columns");
  }

  CdOptions options;
  options.mode = parse_cd_mode(o.mode);
  options.max_iter = o.max_iter;
  options.rel_tol = o.rel_tol;

  const Eigen::VectorXd mu = o.mu == "savs" ? savs_penalties(beta_hat, o.kappa)
                                            : read_single_column(o.mu);
  Eigen::VectorXd init;
  if (o.init == "beta_hat") {
    init = beta_hat;
  } else if (o.init == "zero") {
    init = Eigen::VectorXd::Zero(beta_hat.size());
  } else {
    init = read_single_column(o.init);
  }

  RunManifest manifest("cd", o.out_dir);
  manifest.add_input(o.beta_path);
  manifest.add_input(o.design_path);
  manifest.config() = {{"mode", to_string(options.mode)},
                       {"max_iter", options.max_iter},
                       {"rel_tol", options.rel_tol},
                       {"mu", o.mu},
                       {"kappa", o.kappa},
                       {"init", o.init},
                       {"early_stop", o.early_stop}};

  CdTrace trace;
  json summary;
  if (o.early_stop) {
    if (o.init != "beta_hat") throw ConfigError("--early-stop always starts at beta_hat");
    auto report = early_stop_report_with_penalties(beta_hat, design, mu, options);
    summary["relative_change_pass1_to_pass2"] = report.relative_change_after_first_pass;
    trace = std::move(report.trace);
  } else {
    trace = coordinate_descent(beta_hat, design, mu, init, options);
    if (trace.objective_per_iteration.size() > 2) {
      summary["relative_change_pass1_to_pass2"] =
          relative_change(trace.objective_per_iteration[1], trace.objective_per_iteration[2]);
    }
  }
  summary["mode"] = to_string(trace.mode);
  summary["iterations_run"] = trace.iterations_run;
  summary["converged"] = trace.converged;
  summary["final_objective"] = trace.objective_per_iteration.back();

  csv::write_vector(manifest.output("solution.csv"), "beta", trace.solution);
  write_trace(manifest.output("trace.csv"), trace.objective_per_iteration);
  write_text(manifest.output("cd_summary.json"), summary.dump(2) + "\n");
  manifest.finish();
}

BenchConfig resolve_bench_config(const BenchOptions& o) {
  BenchConfig config;
  config.replicates = profile_replicates(parse_profile(o.profile));
  if (o.config_path) config = read_bench_config(*o.config_path, config);
  if (o.design) {
    config.design.kind = parse_design_kind(*o.design);
    if (config.design.kind != DesignKind::ar1) config.design.rho.reset();
  }
  if (o.rho) config.design.rho = *o.rho;
  if (o.n) config.design.n = *o.n;
  if (o.p) config.design.p = *o.p;
  if (o.signal_case) config.signal.signal_case = parse_signal_case(*o.signal_case);
  if (o.placement) config.signal.placement = parse_placement(*o.placement);
  if (o.sigma) config.sigma = *o.sigma;
  if (o.kappa) config.kappa = *o.kappa;
  if (o.replicates) config.replicates = *o.replicates;
  if (o.n_iter) config.mcmc.n_iter = *o.n_iter;
  if (o.burn_in) config.mcmc.burn_in = *o.burn_in;
  if (o.thin) config.mcmc.thin = *o.thin;
  if (o.seed) config.master_seed = *o.seed;
  config.validate();
  return config;
}

std::size_t resolve_workers(const std::optional<std::size_t>& flag) {
  if (flag) return std::max<std::size_t>(*flag, 1);
  if (const char* env = std::getenv("SAVSKIT_WORKERS")) {
    try {
      const auto v = std::stoul(env);
      return std::max<std::size_t>(v, 1);
    } catch (const std::exception&) {
      throw ConfigError(std::string("SAVSKIT_WORKERS is not a number: '") + env + "'");
    }
  }
  return 1;
}

void run_bench(const BenchOptions& o) {
  const auto config = resolve_bench_config(o);
  RunOptions run;
  run.workers = resolve_workers(o.workers);
  run.skip_failures = o.skip_failures;
  run.inclusion_frequency = o.inclusion_frequency;

  RunManifest manifest("bench", o.out_dir);
  if (o.config_path) manifest.add_input(*o.config_path);
  manifest.config() = bench_config_json(config);
  manifest.config()["profile"] = o.profile;
  manifest.config()["skip_failures"] = o.skip_failures;
  manifest.add_seed(config.master_seed);

  const auto report = run_replicates(config, run);
  for (const auto& rec : report.records) manifest.add_seed(rec.seed);

  const std::string design = config.design.label();
  const std::string signal = to_string(config.signal.signal_case);
  {
    auto out = csv::open_for_write(manifest.output("bench_summary.csv"));
    out << "method,design,n,p,case,Prop,MCC_mean,MCC_sd,TPR_mean,TPR_sd,TNR_mean,TNR_sd\n";
    const auto& s = report.summary;
    out << "SAVS," << design << ',' << config.design.n << ',' << config.design.p << ',' << signal;
    for (double v : {s.prop, s.mcc_mean, s.mcc_sd, s.tpr_mean, s.tpr_sd, s.tnr_mean, s.tnr_sd})
      out << ',' << csv::format_double(v);
    out << '\n';
  }
  {
    auto out = csv::open_for_write(manifest.output("replicates.jsonl"));
    for (const auto& rec : report.records) {
      json line = {{"replicate", rec.index}, {"seed", rec.seed},   {"ok", rec.ok},
                   {"design", design},       {"n", config.design.n}, {"p", config.design.p},
                   {"case", signal}};
      if (rec.ok) {
        line.update(metrics_json(rec.metrics));
        line["sigma_mean"] = rec.sigma_mean;
        line["clamp_events"] = rec.clamp_events;
        line["early_stop_change"] = rec.early_stop_change;
        line["selected"] = nonzero_indices(rec.beta_star).size();
      } else {
        line["error"] = rec.error;
      }
      out << line.dump() << '\n';
    }
  }
  const ReplicateRecord* first = nullptr;
  for (const auto& rec : report.records)
    if (rec.ok) {
      first = &rec;
      break;
    }
  if (first) {
    const auto p = first->beta_true.size();
    Eigen::MatrixXd rows(p, 4);
    for (Eigen::Index j = 0; j < p; ++j) {
      rows(j, 0) = static_cast<double>(j + 1);
      rows(j, 1) = first->beta_true[j];
      rows(j, 2) = first->beta_hat[j];
      rows(j, 3) = first->beta_star[j];
    }
    csv::write_columns(manifest.output("replicate0_coefficients.csv"),
                       {"index", "beta_true", "beta_hat", "beta_star"}, rows);
    write_trace(manifest.output("early_stop_trace.csv"), first->early_stop_objective);
  }
  if (o.inclusion_frequency) {
    Eigen::MatrixXd rows(static_cast<Eigen::Index>(config.design.p),
                         static_cast<Eigen::Index>(report.records.size()) + 1);
    std::vector<std::string> header = {"index"};
    for (Eigen::Index j = 0; j < rows.rows(); ++j) rows(j, 0) = static_cast<double>(j + 1);
    for (std::size_t r = 0; r < report.records.size(); ++r) {
      header.push_back("replicate_" + std::to_string(r));
      const auto& f = report.records[r].inclusion_frequency;
      for (Eigen::Index j = 0; j < rows.rows(); ++j)
        rows(j, static_cast<Eigen::Index>(r) + 1) = f.size() ? f[j] : std::nan("");
    }
    csv::write_columns(manifest.output("inclusion_frequency.csv"), header, rows);
  }
  write_text(manifest.output("bench_config.ini"), format_bench_config(config));
  manifest.finish();
}

void run_metrics(const MetricsOptions& o) {
  const auto support = read_support(o.support_path);
  const auto beta0 = read_single_column(o.truth_path);
  const auto truth = TruthSpec::from_beta(beta0);
  const auto m = classify(support, truth.support, static_cast<std::size_t>(beta0.size()));

  RunManifest manifest("metrics", o.out_dir);
  manifest.add_input(o.support_path);
  manifest.add_input(o.truth_path);
  write_text(manifest.output("metrics.json"), metrics_json(m).dump(2) + "\n");
  auto out = csv::open_for_write(manifest.output("metrics.csv"));
  out << "tp,tn,fp,fn,mcc,tpr,tnr,exact_model\n"
      << m.tp << ',' << m.tn << ',' << m.fp << ',' << m.fn << ',' << csv::format_double(m.mcc)
      << ',' << csv::format_double(m.tpr) << ',' << csv::format_double(m.tnr) << ','
      << (m.exact_model ? 1 : 0) << '\n';
  out.close();
  manifest.finish();
}

}  // namespace savskit::cli
