#include "steindpp/io.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace steindpp {

using nlohmann::json;

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("write_csv: cannot open '" + path + "'");
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (i) out << ',';
    out << header[i];
  }
  out << '\n';
  for (const auto& row : rows) {
    if (row.size() != header.size()) throw std::runtime_error("write_csv: ragged row");
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out << ',';
      out << row[i];
    }
    out << '\n';
  }
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("write_text_file: cannot open '" + path + "'");
  out << content;
}

json to_json(const BoundReport& r) {
  return json{{"mu", r.mu},           {"nu", r.nu},
              {"theta", r.theta},     {"c1", r.c1},
              {"c2", r.c2},           {"c3", r.c3},
              {"n", r.n},             {"l_star", r.l_star},
              {"l_optimal", r.l_optimal}, {"term1", r.term1},
              {"term2", r.term2},     {"term3", r.term3},
              {"total", r.total},     {"rate_exponent", r.rate_exponent}};
}

BoundReport bound_report_from_json(const json& j) {
  BoundReport r;
  r.mu = j.at("mu").get<double>();
  r.nu = j.at("nu").get<double>();
  r.theta = j.at("theta").get<double>();
  r.c1 = j.at("c1").get<double>();
  r.c2 = j.at("c2").get<double>();
  r.c3 = j.at("c3").get<double>();
  r.n = j.at("n").get<double>();
  r.l_star = j.at("l_star").get<int>();
  r.l_optimal = j.at("l_optimal").get<bool>();
  r.term1 = j.at("term1").get<double>();
  r.term2 = j.at("term2").get<double>();
  r.term3 = j.at("term3").get<double>();
  r.total = j.at("total").get<double>();
  r.rate_exponent = j.at("rate_exponent").get<double>();
  return r;
}

json to_json(const VerificationRow& row) {
  json j{{"n", row.n},
         {"sigma2_hat", row.moments.sigma2_hat},
         {"sigma2_stderr", row.moments.sigma2_stderr},
         {"m_hat", row.moments.m_hat},
         {"gamma_hat", row.moments.gamma_hat},
         {"mean_per_cube", row.moments.mean_per_cube},
         {"degenerate", row.moments.degenerate},
         {"w1", row.w1},
         {"kolmogorov", row.kolmogorov},
         {"bound", to_json(row.bound)},
         {"dominated", row.dominated},
         {"kw_consistent", row.kw_consistent},
         {"failed", row.failed},
         {"message", row.message}};
  return j;
}

VerificationRow verification_row_from_json(const json& j) {
  VerificationRow row;
  row.n = j.at("n").get<int>();
  row.moments.sigma2_hat = j.at("sigma2_hat").get<double>();
  row.moments.sigma2_stderr = j.at("sigma2_stderr").get<double>();
  row.moments.m_hat = j.at("m_hat").get<double>();
  row.moments.gamma_hat = j.at("gamma_hat").get<double>();
  row.moments.mean_per_cube = j.at("mean_per_cube").get<double>();
  row.moments.degenerate = j.at("degenerate").get<bool>();
  row.w1 = j.at("w1").get<double>();
  row.kolmogorov = j.at("kolmogorov").get<double>();
  row.bound = bound_report_from_json(j.at("bound"));
  row.dominated = j.at("dominated").get<bool>();
  row.kw_consistent = j.at("kw_consistent").get<bool>();
  row.failed = j.at("failed").get<bool>();
  row.message = j.at("message").get<std::string>();
  return row;
}

json to_json(const VerificationReport& report) {
  json rows = json::array();
  for (const auto& row : report.rows) rows.push_back(to_json(row));
  return json{{"rows", rows},
              {"loglog_slope", report.loglog_slope},
              {"rate_exponent_ref", report.rate_exponent_ref},
              {"master_seed", report.master_seed}};
}

VerificationReport verification_report_from_json(const json& j) {
  VerificationReport report;
  for (const auto& row : j.at("rows")) report.rows.push_back(verification_row_from_json(row));
  report.loglog_slope = j.at("loglog_slope").get<double>();
  report.rate_exponent_ref = j.at("rate_exponent_ref").get<double>();
  report.master_seed = j.at("master_seed").get<std::uint64_t>();
  return report;
}

json to_json(const PcfBin& bin) {
  return json{{"r_lo", bin.r_lo},     {"r_hi", bin.r_hi},
              {"g_hat", bin.g_hat},   {"stderr", bin.stderr_},
              {"pair_count", bin.pair_count}, {"has_data", bin.has_data}};
}

}  // namespace steindpp
