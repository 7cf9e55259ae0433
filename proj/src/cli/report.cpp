#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <tuple>

#include <json.hpp>

#include "commands.hpp"
#include "manifest.hpp"
#include "savskit/csv.hpp"
#include "savskit/errors.hpp"

namespace savskit::cli {
namespace {

using nlohmann::json;
namespace fs = std::filesystem;

struct TraceRow {
  std::string source;
  std::size_t pass;
  double objective;
};

csv::NumericTable read_with_header(const fs::path& path, const std::vector<std::string>& header) {
  auto table = csv::read_numeric(path);
  if (table.header != header) {
    throw DataError(path.string() + ": schema mismatch, expected header '" +
                    csv::join(header) + "' but found '" + csv::join(table.header) + "'");
  }
  return table;
}

std::vector<TraceRow> read_trace(const fs::path& path, const std::string& source,
                                 bool check_monotone) {
  const auto table = read_with_header(path, {"pass", "objective"});
  std::vector<TraceRow> rows;
  for (std::size_t r = 0; r < table.rows; ++r) {
    const double obj = table.at(r, 1);
    if (check_monotone && !rows.empty()) {
      const double prev = rows.back().objective;
      if (obj > prev + 1e-12 * std::max(1.0, std::abs(prev))) {
        throw NumericalError(path.string() + ": objective increases at pass " +
                             std::to_string(r) + " (" + csv::format_double(prev) + " -> " +
                             csv::format_double(obj) + ")");
      }
    }
    rows.push_back({source, static_cast<std::size_t>(table.at(r, 0)), obj});
  }
  return rows;
}

json read_json(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw DataError(path.string() + ": " + e.what());
  }
}

std::string cell_label(const json& line) {
  std::ostringstream s;
  s << line.at("design").get<std::string>() << " n=" << line.at("n").get<std::size_t>()
    << " p=" << line.at("p").get<std::size_t>() << ' ' << line.at("case").get<std::string>();
  return s.str();
}

}  // namespace

void run_report(const ReportOptions& o) {
  if (o.inputs.empty()) throw IoError("report needs at least one results directory");

  std::vector<std::tuple<std::string, std::size_t, double>> boxplot;
  std::vector<TraceRow> traces;
  std::vector<std::tuple<std::string, std::size_t, double>> nulls;

  RunManifest manifest("report", o.out_dir);
  for (const auto& dir : o.inputs) {
    if (!fs::is_directory(dir)) throw IoError("results directory not found: " + dir.string());
    const std::string source = fs::absolute(dir).lexically_normal().filename().string();
    manifest.add_input(dir);
    bool used = false;

    if (const auto path = dir / "replicates.jsonl"; fs::is_regular_file(path)) {
      used = true;
      std::ifstream in(path);
      std::string text;
      std::size_t line_no = 0;
      while (std::getline(in, text)) {
        ++line_no;
        if (text.empty()) continue;
        try {
          const auto line = json::parse(text);
          if (!line.at("ok").get<bool>()) continue;
          boxplot.emplace_back(cell_label(line), line.at("replicate").get<std::size_t>(),
                               line.at("mcc").get<double>());
        } catch (const json::exception& e) {
          throw DataError(path.string() + ":" + std::to_string(line_no) +
                          ": schema mismatch: " + e.what());
        }
      }
    }
    if (const auto path = dir / "early_stop_trace.csv"; fs::is_regular_file(path)) {
      used = true;
      auto rows = read_trace(path, source + "/early_stop", true);
      traces.insert(traces.end(), rows.begin(), rows.end());
    }
    if (const auto path = dir / "cd_summary.json"; fs::is_regular_file(path)) {
      used = true;
      const auto summary = read_json(path);
      const bool gs = summary.value("mode", "") == "gauss_seidel";
      const auto trace_path = dir / "trace.csv";
      if (!fs::is_regular_file(trace_path)) throw IoError("missing input: " + trace_path.string());
      auto rows = read_trace(trace_path, source + "/cd", gs);
      traces.insert(traces.end(), rows.begin(), rows.end());
    }
    if (const auto path = dir / "replicate0_coefficients.csv"; fs::is_regular_file(path)) {
      used = true;
      const auto table = read_with_header(path, {"index", "beta_true", "beta_hat", "beta_star"});
      for (std::size_t r = 0; r < table.rows; ++r) {
        if (table.at(r, 1) != 0.0) continue;
        nulls.emplace_back(source, static_cast<std::size_t>(table.at(r, 0)), table.at(r, 2));
      }
    }
    if (!used) {
      throw IoError("missing input: " + dir.string() +
                    " holds no bench or cd results (replicates.jsonl, early_stop_trace.csv, "
                    "cd_summary.json, replicate0_coefficients.csv)");
    }
  }

  {
    auto out = csv::open_for_write(manifest.output("fig_boxplot_mcc.csv"));
    out << "design_cell,replicate,mcc\n";
    for (const auto& [cell, r, mcc] : boxplot)
      out << cell << ',' << r << ',' << csv::format_double(mcc) << '\n';
  }
  {
    auto out = csv::open_for_write(manifest.output("fig2_objective_trace.csv"));
    out << "source,pass,objective\n";
    for (const auto& t : traces)
      out << t.source << ',' << t.pass << ',' << csv::format_double(t.objective) << '\n';
  }
  {
    auto out = csv::open_for_write(manifest.output("fig1_null_coefficients.csv"));
    out << "source,index,beta_hat\n";
    for (const auto& [src, j, b] : nulls) out << src << ',' << j << ',' << csv::format_double(b) << '\n';
  }
  manifest.finish();
}

}  // namespace savskit::cli
