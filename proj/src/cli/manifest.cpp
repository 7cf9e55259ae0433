#include "manifest.hpp"

#include <chrono>
#include <ctime>

#include "savskit/cli.hpp"
#include "savskit/csv.hpp"
#include "savskit/errors.hpp"

namespace savskit::cli {

std::string utc_timestamp() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

RunManifest::RunManifest(std::string subcommand, std::filesystem::path out_dir)
    : subcommand_(std::move(subcommand)), out_dir_(std::move(out_dir)), started_at_(utc_timestamp()) {
  std::error_code ec;
  std::filesystem::create_directories(out_dir_, ec);
  if (ec) throw IoError("cannot create output directory " + out_dir_.string());
}

std::filesystem::path RunManifest::output(const std::string& name) {
  outputs_.push_back(name);
  return out_dir_ / name;
}

void RunManifest::finish() const {
  nlohmann::json j;
  j["subcommand"] = subcommand_;
  j["tool_version"] = kToolVersion;
  j["config"] = config_;
  j["seeds"] = seeds_;
  j["inputs"] = inputs_;
  j["outputs"] = outputs_;
  j["started_at"] = started_at_;
  j["finished_at"] = utc_timestamp();
  auto out = csv::open_for_write(out_dir_ / "manifest.json");
  out << j.dump(2) << '\n';
}

}  // namespace savskit::cli
