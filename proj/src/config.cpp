#include "steindpp/config.hpp"

#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace steindpp {

namespace {

using nlohmann::json;

void reject_unknown_keys(const json& obj, const std::string& section,
                         const std::set<std::string>& allowed) {
  for (const auto& [key, value] : obj.items()) {
    if (!allowed.count(key)) {
      throw std::runtime_error("config: unknown key '" + key + "' in section '" + section + "'");
    }
  }
}

KernelSection parse_kernel(const json& obj) {
  reject_unknown_keys(obj, "kernel", {"m", "alpha", "rho", "d", "lambda_envelope"});
  KernelSection k;
  if (obj.contains("m")) k.m = obj.at("m").get<int>();
  if (obj.contains("alpha")) k.alpha = obj.at("alpha").get<double>();
  if (obj.contains("rho")) k.rho = obj.at("rho").get<double>();
  if (obj.contains("d")) k.d = obj.at("d").get<int>();
  if (obj.contains("lambda_envelope")) k.lambda_envelope = obj.at("lambda_envelope").get<double>();
  return k;
}

StatisticSection parse_statistic(const json& obj) {
  reject_unknown_keys(obj, "statistic", {"kind", "tau", "r", "p_max", "g_bound"});
  StatisticSection s;
  if (obj.contains("kind")) s.kind = obj.at("kind").get<std::string>();
  if (obj.contains("tau")) s.tau = obj.at("tau").get<double>();
  if (obj.contains("r")) s.r = obj.at("r").get<double>();
  if (obj.contains("p_max")) s.p_max = obj.at("p_max").get<int>();
  if (obj.contains("g_bound")) s.g_bound = obj.at("g_bound").get<double>();
  return s;
}

ExperimentSection parse_experiment(const json& obj) {
  reject_unknown_keys(obj, "experiment",
                      {"n_list", "replications", "seed", "window_side", "pcf_bins", "pcf_rmax"});
  ExperimentSection e;
  if (obj.contains("n_list")) e.n_list = obj.at("n_list").get<std::vector<int>>();
  if (obj.contains("replications")) e.replications = obj.at("replications").get<int>();
  if (obj.contains("seed")) e.seed = obj.at("seed").get<std::uint64_t>();
  if (obj.contains("window_side")) e.window_side = obj.at("window_side").get<double>();
  if (obj.contains("pcf_bins")) e.pcf_bins = obj.at("pcf_bins").get<int>();
  if (obj.contains("pcf_rmax")) e.pcf_rmax = obj.at("pcf_rmax").get<double>();
  return e;
}

BoundSection parse_bound(const json& obj) {
  reject_unknown_keys(obj, "bound", {"d", "M", "kappa", "lambda", "gamma", "n_list"});
  BoundSection b;
  if (obj.contains("d")) b.d = obj.at("d").get<int>();
  if (obj.contains("M")) b.m_norm = obj.at("M").get<double>();
  if (obj.contains("kappa")) b.kappa = obj.at("kappa").get<double>();
  if (obj.contains("lambda")) b.lambda = obj.at("lambda").get<double>();
  if (obj.contains("gamma")) b.gamma = obj.at("gamma").get<double>();
  if (obj.contains("n_list")) b.n_list = obj.at("n_list").get<std::vector<int>>();
  return b;
}

OutputSection parse_output(const json& obj) {
  reject_unknown_keys(obj, "output", {"directory", "formats"});
  OutputSection o;
  if (obj.contains("directory")) o.directory = obj.at("directory").get<std::string>();
  if (obj.contains("formats")) o.formats = obj.at("formats").get<std::vector<std::string>>();
  for (const auto& f : o.formats) {
    if (f != "json" && f != "csv") {
      throw std::runtime_error("config: unknown output format '" + f + "'");
    }
  }
  return o;
}

}  // namespace

RunConfig parse_config_text(const std::string& text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw std::runtime_error(std::string("config: parse failure: ") + e.what());
  }
  if (!root.is_object()) throw std::runtime_error("config: top level must be an object");
  reject_unknown_keys(root, "<top>", {"kernel", "statistic", "experiment", "bound", "output"});

  RunConfig cfg;
  if (root.contains("kernel")) cfg.kernel = parse_kernel(root.at("kernel"));
  if (root.contains("statistic")) cfg.statistic = parse_statistic(root.at("statistic"));
  if (root.contains("experiment")) cfg.experiment = parse_experiment(root.at("experiment"));
  if (root.contains("bound")) cfg.bound = parse_bound(root.at("bound"));
  if (root.contains("output")) cfg.output = parse_output(root.at("output"));
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("config: cannot open '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str());
}

}  // namespace steindpp
