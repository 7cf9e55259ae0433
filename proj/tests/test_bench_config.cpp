#include <doctest.h>

#include <fstream>

#include "oracles.hpp"
#include "savskit/bench_config.hpp"
#include "savskit/errors.hpp"

using namespace savskit;

namespace {

std::filesystem::path write(const oracle::TempDir& dir, const std::string& text) {
  const auto path = dir / "bench.ini";
  std::ofstream(path) << text;
  return path;
}

}  // namespace

TEST_CASE("reads every documented key") {
  oracle::TempDir dir("config");
  const auto path = write(dir,
                          "sigma = 1.0\nreplicates = 20\nmaster_seed = 18446744073709551615\nkappa = 3\n"
                          "[design]\nkind = ar1\nrho = 0.5\nn = 100\np = 300\n"
                          "[signal]\nsignal_case = case1_set1\nplacement = leading_block\n"
                          "[mcmc]\nn_iter = 400\nburn_in = 100\nthin = 2\n");
  const auto c = read_bench_config(path);
  CHECK(c.sigma == 1.0);
  CHECK(c.replicates == 20);
  CHECK(c.master_seed == 18446744073709551615ull);
  CHECK(c.kappa == 3.0);
  CHECK(c.design.kind == DesignKind::ar1);
  CHECK(*c.design.rho == 0.5);
  CHECK(c.design.n == 100);
  CHECK(c.design.p == 300);
  CHECK(c.signal.signal_case == SignalCase::case1_set1);
  CHECK(c.signal.placement == Placement::leading_block);
  CHECK(c.mcmc.n_iter == 400);
  CHECK(c.mcmc.burn_in == 100);
  CHECK(c.mcmc.thin == 2);
}

TEST_CASE("missing keys keep the base values") {
  oracle::TempDir dir("config");
  BenchConfig base;
  base.replicates = 9;
  const auto c = read_bench_config(write(dir, "[design]\nn = 50\n"), base);
  CHECK(c.replicates == 9);
  CHECK(c.design.n == 50);
  CHECK(c.design.p == 500);
}

TEST_CASE("format round trip") {
  oracle::TempDir dir("config");
  BenchConfig c;
  c.design.kind = DesignKind::ar1;
  c.design.rho = 0.9;
  c.sigma = 1.25;
  c.master_seed = 7;
  c.mcmc.thin = 3;
  const auto back = read_bench_config(write(dir, format_bench_config(c)));
  CHECK(format_bench_config(back) == format_bench_config(c));
}

TEST_CASE("schema violations") {
  oracle::TempDir dir("config");
  CHECK_THROWS_AS(read_bench_config(write(dir, "sigmaa = 1\n")), ConfigError);
  CHECK_THROWS_AS(read_bench_config(write(dir, "[design]\nrows = 3\n")), ConfigError);
  CHECK_THROWS_AS(read_bench_config(write(dir, "[plot]\nx = 1\n")), ConfigError);
  CHECK_THROWS_AS(read_bench_config(write(dir, "sigma = fast\n")), ConfigError);
  CHECK_THROWS_AS(read_bench_config(write(dir, "replicates = 2.5\n")), ConfigError);
  CHECK_THROWS_AS(read_bench_config(write(dir, "[design]\nkind = banded\n")), ConfigError);
  CHECK_THROWS_AS(read_bench_config(write(dir, "[mcmc]\nseed = 3\n")), ConfigError);
  CHECK_THROWS_AS(read_bench_config(dir / "absent.ini"), IoError);
}

TEST_CASE("mcmc section for fit") {
  oracle::TempDir dir("config");
  const auto m = read_mcmc_config(write(dir, "[mcmc]\nn_iter = 50\nburn_in = 10\nseed = 4\nretain_draws = true\n"));
  CHECK(m.n_iter == 50);
  CHECK(m.seed == 4);
  CHECK(m.retain_draws);
}

TEST_CASE("profiles") {
  CHECK(profile_replicates(parse_profile("desk")) == 50);
  CHECK(profile_replicates(parse_profile("full")) == 1000);
  CHECK_THROWS_AS(parse_profile("huge"), ConfigError);
}
