#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "steindpp/sampler.hpp"
#include "steindpp/stein_bounds.hpp"
#include "steindpp/verify.hpp"

namespace steindpp {

// Floats are emitted with 17 significant digits so CSV round-trips exactly.
std::string format_double(double v);

void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows);

void write_text_file(const std::string& path, const std::string& content);

nlohmann::json to_json(const BoundReport& report);
BoundReport bound_report_from_json(const nlohmann::json& j);

nlohmann::json to_json(const VerificationRow& row);
VerificationRow verification_row_from_json(const nlohmann::json& j);

nlohmann::json to_json(const VerificationReport& report);
VerificationReport verification_report_from_json(const nlohmann::json& j);

nlohmann::json to_json(const PcfBin& bin);

}  // namespace steindpp
