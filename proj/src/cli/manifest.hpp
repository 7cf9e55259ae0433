#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

namespace savskit::cli {

/// Provenance record written next to every subcommand's outputs.
class RunManifest {
 public:
  RunManifest(std::string subcommand, std::filesystem::path out_dir);

  nlohmann::json& config() noexcept { return config_; }
  void add_seed(std::uint64_t seed) { seeds_.push_back(seed); }
  void add_input(const std::filesystem::path& path) { inputs_.push_back(path.string()); }
  /// Registers an output file (relative to the output directory) and returns its full path.
  std::filesystem::path output(const std::string& name);

  const std::filesystem::path& out_dir() const noexcept { return out_dir_; }

  /// Writes manifest.json with the end timestamp.
  void finish() const;

 private:
  std::string subcommand_;
  std::filesystem::path out_dir_;
  std::string started_at_;
  nlohmann::json config_ = nlohmann::json::object();
  std::vector<std::uint64_t> seeds_;
  std::vector<std::string> inputs_;
  std::vector<std::string> outputs_;
};

std::string utc_timestamp();

}  // namespace savskit::cli
