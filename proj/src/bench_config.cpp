#include "savskit/bench_config.hpp"

#include <set>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "savskit/csv.hpp"
#include "savskit/errors.hpp"

namespace savskit {
namespace {

namespace pt = boost::property_tree;

pt::ptree load_tree(const std::filesystem::path& path) {
  if (!std::filesystem::exists(path)) throw IoError("config file not found: " + path.string());
  pt::ptree tree;
  try {
    pt::read_ini(path.string(), tree);
  } catch (const pt::ini_parser_error& e) {
    throw ConfigError(std::string("malformed config: ") + e.what());
  }
  return tree;
}

template <class T>
T get(const pt::ptree& node, const std::string& key, T fallback, const std::string& where) {
  const auto child = node.get_child_optional(key);
  if (!child) return fallback;
  try {
    return child->get_value<T>();
  } catch (const pt::ptree_bad_data&) {
    throw ConfigError("invalid value '" + child->data() + "' for " + where + key);
  }
}

std::uint64_t get_seed(const pt::ptree& node, const std::string& key, std::uint64_t fallback,
                       const std::string& where) {
  const auto child = node.get_child_optional(key);
  if (!child) return fallback;
  try {
    std::size_t used = 0;
    const auto value = std::stoull(child->data(), &used);
    if (used != child->data().size()) throw std::invalid_argument("trailing");
    return value;
  } catch (const std::exception&) {
    throw ConfigError("invalid value '" + child->data() + "' for " + where + key);
  }
}

void require_keys(const pt::ptree& node, const std::set<std::string>& allowed,
                  const std::string& where) {
  for (const auto& [key, child] : node) {
    if (!allowed.count(key)) {
      throw ConfigError("unknown key '" + key + "' in " +
                        (where.empty() ? std::string("top level") : "[" + where + "]"));
    }
  }
}

McmcConfig parse_mcmc(const pt::ptree& node, McmcConfig base, bool allow_seed) {
  std::set<std::string> keys = {"n_iter", "burn_in", "thin"};
  if (allow_seed) keys.insert({"seed", "retain_draws"});
  require_keys(node, keys, "mcmc");
  base.n_iter = get<std::size_t>(node, "n_iter", base.n_iter, "mcmc.");
  base.burn_in = get<std::size_t>(node, "burn_in", base.burn_in, "mcmc.");
  base.thin = get<std::size_t>(node, "thin", base.thin, "mcmc.");
  if (allow_seed) {
    base.seed = get_seed(node, "seed", base.seed, "mcmc.");
    base.retain_draws = get<bool>(node, "retain_draws", base.retain_draws, "mcmc.");
  }
  return base;
}

}  // namespace

Profile parse_profile(const std::string& name) {
  if (name == "desk") return Profile::desk;
  if (name == "full") return Profile::full;
  throw ConfigError("unknown profile '" + name + "' (expected desk or full)");
}

std::size_t profile_replicates(Profile profile) noexcept {
  return profile == Profile::full ? 1000 : 50;
}

BenchConfig read_bench_config(const std::filesystem::path& path, BenchConfig base) {
  const auto tree = load_tree(path);
  for (const auto& [key, child] : tree) {
    static const std::set<std::string> sections = {"design", "signal", "mcmc"};
    static const std::set<std::string> scalars = {"sigma", "replicates", "master_seed", "kappa"};
    if (!sections.count(key) && !scalars.count(key))
      throw ConfigError("unknown key or section '" + key + "'");
  }
  base.sigma = get<double>(tree, "sigma", base.sigma, "");
  base.replicates = get<std::size_t>(tree, "replicates", base.replicates, "");
  base.master_seed = get_seed(tree, "master_seed", base.master_seed, "");
  base.kappa = get<double>(tree, "kappa", base.kappa, "");

  if (const auto design = tree.get_child_optional("design")) {
    require_keys(*design, {"kind", "rho", "n", "p"}, "design");
    if (const auto kind = design->get_optional<std::string>("kind"))
      base.design.kind = parse_design_kind(*kind);
    if (design->get_child_optional("rho"))
      base.design.rho = get<double>(*design, "rho", 0.0, "design.");
    else if (base.design.kind != DesignKind::ar1)
      base.design.rho.reset();
    base.design.n = get<std::size_t>(*design, "n", base.design.n, "design.");
    base.design.p = get<std::size_t>(*design, "p", base.design.p, "design.");
  }
  if (const auto signal = tree.get_child_optional("signal")) {
    require_keys(*signal, {"signal_case", "placement"}, "signal");
    if (const auto c = signal->get_optional<std::string>("signal_case"))
      base.signal.signal_case = parse_signal_case(*c);
    if (const auto pl = signal->get_optional<std::string>("placement"))
      base.signal.placement = parse_placement(*pl);
  }
  if (const auto mcmc = tree.get_child_optional("mcmc"))
    base.mcmc = parse_mcmc(*mcmc, base.mcmc, false);
  return base;
}

McmcConfig read_mcmc_config(const std::filesystem::path& path, McmcConfig base) {
  const auto tree = load_tree(path);
  if (const auto mcmc = tree.get_child_optional("mcmc")) return parse_mcmc(*mcmc, base, true);
  return base;
}

std::string format_bench_config(const BenchConfig& c) {
  std::ostringstream os;
  os << "sigma = " << csv::format_double(c.sigma) << "\n"
     << "replicates = " << c.replicates << "\n"
     << "master_seed = " << c.master_seed << "\n"
     << "kappa = " << csv::format_double(c.kappa) << "\n\n"
     << "[design]\n"
     << "kind = " << to_string(c.design.kind) << "\n";
  if (c.design.rho) os << "rho = " << csv::format_double(*c.design.rho) << "\n";
  os << "n = " << c.design.n << "\n"
     << "p = " << c.design.p << "\n\n"
     << "[signal]\n"
     << "signal_case = " << to_string(c.signal.signal_case) << "\n"
     << "placement = " << to_string(c.signal.placement) << "\n\n"
     << "[mcmc]\n"
     << "n_iter = " << c.mcmc.n_iter << "\n"
     << "burn_in = " << c.mcmc.burn_in << "\n"
     << "thin = " << c.mcmc.thin << "\n";
  return os.str();
}

}  // namespace savskit
