#pragma once

#include <cstdint>
#include <random>

namespace savskit {

/// Mixes a parent seed and a stream index into an independent child seed
/// (splitmix64 finalizer). A pure function, so replicate r's stream does not
/// depend on which other replicates run.
std::uint64_t derive_seed(std::uint64_t parent, std::uint64_t index) noexcept;

/// A seeded random stream. Not thread-safe; give each worker its own.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed) : engine_(seed) {}

  double normal() { return normal_(engine_); }
  double uniform() { return std::uniform_real_distribution<double>(0.0, 1.0)(engine_); }
  /// Gamma(shape, rate = 1).
  double gamma(double shape) { return std::gamma_distribution<double>(shape, 1.0)(engine_); }
  /// Draw from the inverse-gamma law with density proportional to x^(-shape-1) exp(-rate/x).
  double inverse_gamma(double shape, double rate) { return rate / gamma(shape); }
  bool coin() { return (engine_() >> 63) != 0; }
  std::uint64_t bits() { return engine_(); }

  std::mt19937_64& engine() noexcept { return engine_; }

 private:
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_;
};

}  // namespace savskit
