#include "steindpp/cli.hpp"

#include <chrono>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "steindpp/config.hpp"
#include "steindpp/io.hpp"
#include "steindpp/kernel.hpp"
#include "steindpp/quadrature.hpp"
#include "steindpp/rng.hpp"
#include "steindpp/sampler.hpp"
#include "steindpp/statistics.hpp"
#include "steindpp/stein_bounds.hpp"
#include "steindpp/verify.hpp"

namespace steindpp {

namespace {

using nlohmann::json;

struct CommonFlags {
  std::string config_path;
  std::string out_dir;
  std::optional<std::uint64_t> seed;
  std::optional<int> replications;
  std::vector<int> n_list;
};

void add_common(CLI::App* cmd, CommonFlags& flags) {
  cmd->add_option("--config", flags.config_path, "JSON configuration file");
  cmd->add_option("--out", flags.out_dir, "output directory (overrides config)");
  cmd->add_option("--seed", flags.seed, "master seed (overrides config)");
  cmd->add_option("--replications", flags.replications, "replication count (overrides config)");
  cmd->add_option("--n", flags.n_list, "window side list (overrides config)");
}

RunConfig load_or_empty(const CommonFlags& flags) {
  if (flags.config_path.empty()) return RunConfig{};
  return load_config(flags.config_path);
}

std::string resolve_out_dir(const CommonFlags& flags, const RunConfig& cfg) {
  std::string dir = flags.out_dir;
  if (dir.empty() && cfg.output) dir = cfg.output->directory;
  if (dir.empty()) dir = ".";
  std::filesystem::create_directories(dir);
  return dir;
}

LaguerreGaussianSpec kernel_from(const KernelSection& k) {
  return LaguerreGaussianSpec(k.m, k.alpha, k.rho, k.d);
}

LocalStatistic statistic_from(const StatisticSection& s) {
  if (s.kind == "count") return LocalStatistic::count(s.tau);
  if (s.kind == "pair_indicator") return LocalStatistic::pair_indicator(s.r, s.tau);
  if (s.kind == "pair_weight") return LocalStatistic::pair_weight(s.r, s.tau);
  throw std::runtime_error("config: unknown statistic kind '" + s.kind + "'");
}

json kernel_echo(const KernelSection& k) {
  return json{{"m", k.m}, {"alpha", k.alpha}, {"rho", k.rho}, {"d", k.d},
              {"lambda_envelope", k.lambda_envelope}};
}

std::string timestamp_now() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
  return buf;
}

int cmd_validate_kernel(const KernelSection& k) {
  const LaguerreGaussianSpec spec = kernel_from(k);
  const double amax = spec.alpha_max();
  std::cout << "kernel m=" << spec.m << " alpha=" << format_double(spec.alpha)
            << " rho=" << format_double(spec.rho) << " d=" << spec.dim << "\n";
  std::cout << "alpha_max=" << format_double(amax)
            << " margin=" << format_double(amax - spec.alpha) << "\n";
  if (!spec.valid()) {
    std::cerr << "invalid: alpha " << format_double(spec.alpha)
              << " exceeds the admissible maximum " << format_double(amax) << " for (m="
              << spec.m << ", rho=" << format_double(spec.rho) << ", d=" << spec.dim << ")\n";
    return 1;
  }
  std::cout << (spec.strictly_valid() ? "valid (strict)" : "valid (boundary case)") << "\n";
  return 0;
}

int cmd_sample(const CommonFlags& flags, const RunConfig& cfg) {
  if (!cfg.kernel) throw std::runtime_error("sample: config section 'kernel' is required");
  if (!cfg.experiment || !(cfg.experiment->window_side > 0.0)) {
    throw std::runtime_error("sample: experiment.window_side must be set and positive");
  }
  const LaguerreGaussianSpec spec = kernel_from(*cfg.kernel);
  const Window window(spec.dim, cfg.experiment->window_side);
  const int reps = flags.replications.value_or(cfg.experiment->replications);
  if (reps < 1) throw std::runtime_error("sample: replications must be >= 1");
  const std::uint64_t seed = flags.seed.value_or(cfg.experiment->seed);

  const DppSampler sampler(spec, window);
  std::vector<PointPattern> patterns(reps);
  run_replications(reps, [&](int rep) {
    patterns[rep] = sampler.sample(SeedSpec{seed, static_cast<std::uint64_t>(rep)});
  });

  const std::string dir = resolve_out_dir(flags, cfg);
  std::vector<std::string> header = {"replication_index"};
  for (int q = 1; q <= spec.dim; ++q) header.push_back("x_" + std::to_string(q));
  std::vector<std::vector<std::string>> rows;
  for (int rep = 0; rep < reps; ++rep) {
    for (std::size_t i = 0; i < patterns[rep].size(); ++i) {
      std::vector<std::string> row = {std::to_string(rep)};
      const auto pt = patterns[rep].point(i);
      for (double c : pt) row.push_back(format_double(c));
      rows.push_back(std::move(row));
    }
  }
  write_csv(dir + "/points.csv", header, rows);

  json meta{{"kernel", kernel_echo(*cfg.kernel)},
            {"window_side", window.side},
            {"replications", reps},
            {"seed", seed},
            {"eigenvalue_sum", sampler.eigenvalue_sum()},
            {"kmax", sampler.kmax()},
            {"metadata", json{{"generated_at", timestamp_now()}}}};
  write_text_file(dir + "/sample_meta.json", meta.dump(2) + "\n");
  std::cout << "wrote " << rows.size() << " points over " << reps << " replications to " << dir
            << "/points.csv (sum lambda = " << format_double(sampler.eigenvalue_sum())
            << ", kmax = " << sampler.kmax() << ")\n";
  return 0;
}

int cmd_pcf(const CommonFlags& flags, const RunConfig& cfg) {
  if (!cfg.kernel) throw std::runtime_error("pcf: config section 'kernel' is required");
  if (!cfg.experiment || !(cfg.experiment->window_side > 0.0)) {
    throw std::runtime_error("pcf: experiment.window_side must be set and positive");
  }
  const LaguerreGaussianSpec spec = kernel_from(*cfg.kernel);
  const Window window(spec.dim, cfg.experiment->window_side);
  const int reps = flags.replications.value_or(cfg.experiment->replications);
  if (reps < 2) throw std::runtime_error("pcf: replications must be >= 2");
  const std::uint64_t seed = flags.seed.value_or(cfg.experiment->seed);
  const int n_bins = cfg.experiment->pcf_bins;
  const double rmax =
      (cfg.experiment->pcf_rmax > 0.0) ? cfg.experiment->pcf_rmax : 3.0 * spec.alpha;
  if (n_bins < 2) throw std::runtime_error("pcf: pcf_bins must be >= 2");

  const DppSampler sampler(spec, window);
  std::vector<PointPattern> patterns(reps);
  run_replications(reps, [&](int rep) {
    patterns[rep] = sampler.sample(SeedSpec{seed, static_cast<std::uint64_t>(rep)});
  });

  std::vector<double> edges(n_bins + 1);
  for (int b = 0; b <= n_bins; ++b) edges[b] = rmax * b / n_bins;
  const auto bins = empirical_pcf(patterns, edges);

  // Shell-averaged theoretical pair correlation 1 - C(u)^2 / rho^2.
  const auto& rule = gauss_legendre(32);
  auto shell_avg_theory = [&](double lo, double hi) {
    auto num = [&](double u) {
      const double c = kernel_value_radial(spec, u);
      return std::pow(u, spec.dim - 1) * (1.0 - c * c / (spec.rho * spec.rho));
    };
    auto den = [&](double u) { return std::pow(u, spec.dim - 1); };
    return integrate_composite(num, lo, hi, 8, rule) / integrate_composite(den, lo, hi, 8, rule);
  };

  const std::string dir = resolve_out_dir(flags, cfg);
  std::vector<std::vector<std::string>> rows;
  for (const auto& bin : bins) {
    rows.push_back({format_double(bin.r_lo), format_double(bin.r_hi), format_double(bin.g_hat),
                    format_double(bin.stderr_), std::to_string(bin.pair_count),
                    bin.has_data ? "1" : "0",
                    format_double(shell_avg_theory(bin.r_lo, bin.r_hi))});
  }
  write_csv(dir + "/pcf.csv",
            {"r_lo", "r_hi", "g_hat", "stderr", "pair_count", "has_data", "g_theory"}, rows);
  std::cout << "wrote " << bins.size() << " bins to " << dir << "/pcf.csv\n";
  return 0;
}

int cmd_bound(const CommonFlags& flags, CLI::App* cmd, const RunConfig& cfg,
              const BoundSection& flag_bound, bool have_flag_n) {
  BoundSection b = cfg.bound ? *cfg.bound : BoundSection{};
  if (cmd->count("--d")) b.d = flag_bound.d;
  if (cmd->count("--M")) b.m_norm = flag_bound.m_norm;
  if (cmd->count("--kappa")) b.kappa = flag_bound.kappa;
  if (cmd->count("--lambda")) b.lambda = flag_bound.lambda;
  if (cmd->count("--gamma")) b.gamma = flag_bound.gamma;
  if (have_flag_n) b.n_list = flags.n_list;
  if (b.n_list.empty()) throw std::runtime_error("bound: n list is required (config or --n)");
  if (!(b.m_norm > 0.0) || !(b.kappa > 0.0) || !(b.lambda > 0.0) || !(b.gamma > 0.0)) {
    throw std::runtime_error("bound: M, kappa, lambda, gamma must all be positive");
  }

  const std::string dir = resolve_out_dir(flags, cfg);
  json reports = json::array();
  std::vector<std::vector<std::string>> rows;
  for (int n : b.n_list) {
    BoundInputs inputs;
    inputs.dim = b.d;
    inputs.third_moment = b.m_norm;
    inputs.envelope = DecayEnvelope{b.kappa, b.lambda};
    inputs.variance_rate = b.gamma;
    inputs.n = static_cast<double>(n);
    const BoundReport rep = wasserstein_bound(inputs);
    reports.push_back(to_json(rep));
    rows.push_back({std::to_string(n), format_double(rep.term1), format_double(rep.term2),
                    format_double(rep.term3), format_double(rep.total),
                    std::to_string(rep.l_star)});
    std::cout << "n=" << n << " total=" << format_double(rep.total)
              << " term1=" << format_double(rep.term1) << " l*=" << rep.l_star
              << (rep.l_optimal ? "" : " (non-optimal: n too small)") << "\n";
  }
  write_text_file(dir + "/bound.json", json{{"reports", reports}}.dump(2) + "\n");
  write_csv(dir + "/bound.csv", {"n", "term1", "term2", "term3", "total", "l_star"}, rows);
  return 0;
}

int cmd_verify_clt(const CommonFlags& flags, const RunConfig& cfg, bool dump_wn) {
  if (!cfg.kernel) throw std::runtime_error("verify-clt: config section 'kernel' is required");
  if (!cfg.statistic) throw std::runtime_error("verify-clt: config section 'statistic' is required");
  if (!cfg.experiment) throw std::runtime_error("verify-clt: config section 'experiment' is required");

  ExperimentConfig exp;
  exp.kernel = kernel_from(*cfg.kernel);
  exp.statistic = statistic_from(*cfg.statistic);
  exp.n_list = flags.n_list.empty() ? cfg.experiment->n_list : flags.n_list;
  exp.replications = flags.replications.value_or(cfg.experiment->replications);
  exp.master_seed = flags.seed.value_or(cfg.experiment->seed);
  exp.lambda_envelope = cfg.kernel->lambda_envelope;

  const VerificationReport report = run_experiment(exp, dump_wn);

  const std::string dir = resolve_out_dir(flags, cfg);
  write_text_file(dir + "/verify.json", to_json(report).dump(2) + "\n");

  std::vector<std::vector<std::string>> rows;
  for (const auto& row : report.rows) {
    rows.push_back({std::to_string(row.n), format_double(row.moments.sigma2_hat),
                    format_double(row.moments.m_hat), format_double(row.moments.gamma_hat),
                    format_double(row.w1), format_double(row.kolmogorov),
                    format_double(row.bound.total), row.dominated ? "1" : "0"});
    std::cout << "n=" << row.n;
    if (row.failed) {
      std::cout << " FAILED: " << row.message << "\n";
    } else {
      std::cout << " w1=" << format_double(row.w1) << " bound=" << format_double(row.bound.total)
                << (row.dominated ? " dominated" : " NOT dominated") << "\n";
    }
  }
  write_csv(dir + "/verify.csv",
            {"n", "sigma2_hat", "m_hat", "gamma_hat", "w1", "kolmogorov", "bound_total",
             "dominated"},
            rows);

  if (dump_wn) {
    std::vector<std::vector<std::string>> wn_rows;
    for (const auto& row : report.rows) {
      for (std::size_t i = 0; i < row.wn_samples.size(); ++i) {
        wn_rows.push_back(
            {std::to_string(row.n), std::to_string(i), format_double(row.wn_samples[i])});
      }
    }
    write_csv(dir + "/wn_samples.csv", {"n", "replication_index", "w"}, wn_rows);
  }
  std::cout << "loglog_slope=" << format_double(report.loglog_slope)
            << " (reference rate exponent " << format_double(report.rate_exponent_ref) << ")\n";

  for (const auto& row : report.rows) {
    if (row.failed || !row.dominated) return 1;
  }
  return 0;
}

int cmd_identities() {
  Rng rng(SeedSpec{0xD06F00Dull, 0});
  int failures = 0;
  auto check = [&](bool ok, const std::string& label) {
    if (!ok) {
      ++failures;
      std::cerr << "[FAIL] " << label << "\n";
    }
  };
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 2 + static_cast<int>(rng.uniform01() * 49);
    double w = rng.uniform(0.1, 5.0);
    if (std::abs(w - 1.0) < 0.01) w += 0.02;
    double brute = 0.0;
    for (int k = 1; k <= n - 1; ++k) brute += (n - k) * std::pow(w, k);
    const double closed = weighted_geom_sum(n, w);
    check(std::abs(closed - brute) <= 1e-10 * std::abs(brute), "weighted_geom_sum n=" +
                                                                   std::to_string(n));
    double v = rng.uniform(0.1, 5.0);
    if (std::abs(v - 1.0) < 0.01) v += 0.02;
    double brute2 = n;
    for (int a = 1; a <= n - 1; ++a) brute2 += (n - a) * (std::pow(v, a) + std::pow(v, -a));
    const double closed2 = symmetric_geom_sum(n, v);
    check(std::abs(closed2 - brute2) <= 1e-10 * std::abs(brute2), "symmetric_geom_sum n=" +
                                                                      std::to_string(n));
  }
  for (int n : {2, 5, 17, 50}) {
    check(weighted_geom_sum(n, 1.0) == n * (n - 1) / 2.0, "weighted_geom_sum fallback at w=1");
  }
  if (failures == 0) {
    std::cout << "identities: all checks passed\n";
    return 0;
  }
  std::cerr << "identities: " << failures << " checks failed\n";
  return 1;
}

int cmd_schema() {
  std::cout << "points.csv: replication_index,x_1..x_d\n"
            << "pcf.csv: r_lo,r_hi,g_hat,stderr,pair_count,has_data,g_theory\n"
            << "bound.csv: n,term1,term2,term3,total,l_star\n"
            << "verify.csv: n,sigma2_hat,m_hat,gamma_hat,w1,kolmogorov,bound_total,dominated\n"
            << "wn_samples.csv: n,replication_index,w\n"
            << "floats: 17 significant digits (%.17g)\n";
  return 0;
}

}  // namespace

int dispatch(int argc, const char* const* argv) {
  CLI::App app{"Normal-approximation bounds and simulation for repulsive point processes"};
  app.require_subcommand(1);
  app.footer(
      "Output CSV column orders (floats use 17 significant digits):\n"
      "  points.csv:     replication_index,x_1..x_d\n"
      "  pcf.csv:        r_lo,r_hi,g_hat,stderr,pair_count,has_data,g_theory\n"
      "  bound.csv:      n,term1,term2,term3,total,l_star\n"
      "  verify.csv:     n,sigma2_hat,m_hat,gamma_hat,w1,kolmogorov,bound_total,dominated\n"
      "  wn_samples.csv: n,replication_index,w\n"
      "Lengths are in window units; intensity is points per unit volume.");

  CommonFlags flags;

  auto* validate = app.add_subcommand("validate-kernel", "check the kernel existence condition");
  KernelSection kflags;
  add_common(validate, flags);
  validate->add_option("--m", kflags.m, "family order");
  validate->add_option("--alpha", kflags.alpha, "kernel length scale");
  validate->add_option("--rho", kflags.rho, "intensity");
  validate->add_option("--d", kflags.d, "dimension");

  auto* sample = app.add_subcommand("sample", "simulate point patterns and write CSV");
  add_common(sample, flags);

  auto* pcf = app.add_subcommand("pcf", "sample and estimate the pair correlation function");
  add_common(pcf, flags);

  auto* bound = app.add_subcommand("bound", "evaluate the explicit normal-approximation bound");
  add_common(bound, flags);
  BoundSection bflags;
  bound->add_option("--d", bflags.d, "dimension");
  bound->add_option("--M", bflags.m_norm, "uniform third-moment bound");
  bound->add_option("--kappa", bflags.kappa, "envelope amplitude");
  bound->add_option("--lambda", bflags.lambda, "envelope decay rate");
  bound->add_option("--gamma", bflags.gamma, "variance growth rate");

  auto* verify = app.add_subcommand("verify-clt", "Monte-Carlo CLT verification run");
  add_common(verify, flags);
  bool dump_wn = false;
  verify->add_flag("--dump-wn", dump_wn, "write per-replication standardized values");

  auto* identities = app.add_subcommand("identities", "run the summation-identity self-tests");
  auto* schema = app.add_subcommand("schema", "print output CSV schemas");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (validate->parsed()) {
      RunConfig cfg = load_or_empty(flags);
      KernelSection k = cfg.kernel ? *cfg.kernel : KernelSection{};
      if (validate->count("--m")) k.m = kflags.m;
      if (validate->count("--alpha")) k.alpha = kflags.alpha;
      if (validate->count("--rho")) k.rho = kflags.rho;
      if (validate->count("--d")) k.d = kflags.d;
      return cmd_validate_kernel(k);
    }
    if (sample->parsed()) return cmd_sample(flags, load_or_empty(flags));
    if (pcf->parsed()) return cmd_pcf(flags, load_or_empty(flags));
    if (bound->parsed()) {
      return cmd_bound(flags, bound, load_or_empty(flags), bflags, bound->count("--n") > 0);
    }
    if (verify->parsed()) return cmd_verify_clt(flags, load_or_empty(flags), dump_wn);
    if (identities->parsed()) return cmd_identities();
    if (schema->parsed()) return cmd_schema();
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}

}  // namespace steindpp
