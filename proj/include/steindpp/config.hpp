#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace steindpp {

// Structured run configuration (JSON file with nested sections). Unknown
// sections or keys are rejected; per-subcommand required keys are checked at
// use. Lengths are in window units, intensity in points per unit volume.
struct KernelSection {
  int m = 1;
  double alpha = 0.0;
  double rho = 0.0;
  int d = 1;
  double lambda_envelope = 1.0;
};

struct StatisticSection {
  std::string kind = "count";  // count | pair_indicator | pair_weight
  double tau = 0.0;
  double r = 0.0;  // pair kinds only
  int p_max = 2;
  double g_bound = 1.0;
};

struct ExperimentSection {
  std::vector<int> n_list;
  int replications = 0;
  std::uint64_t seed = 0;
  double window_side = 0.0;  // sample / pcf subcommands
  int pcf_bins = 8;
  double pcf_rmax = 0.0;
};

struct BoundSection {
  int d = 1;
  double m_norm = 0.0;  // uniform third-moment bound
  double kappa = 0.0;
  double lambda = 0.0;
  double gamma = 0.0;
  std::vector<int> n_list;
};

struct OutputSection {
  std::string directory = ".";
  std::vector<std::string> formats = {"json", "csv"};
};

struct RunConfig {
  std::optional<KernelSection> kernel;
  std::optional<StatisticSection> statistic;
  std::optional<ExperimentSection> experiment;
  std::optional<BoundSection> bound;
  std::optional<OutputSection> output;
};

RunConfig load_config(const std::string& path);
RunConfig parse_config_text(const std::string& text);

}  // namespace steindpp
