#pragma once

#include <string>

#include <json.hpp>

#include "uncervals/conformal.hpp"
#include "uncervals/estimators.hpp"
#include "uncervals/evaluate.hpp"

namespace uncervals {

// Values that may be +inf travel as the literal string "inf", matching the
// CSV convention; nlohmann::json would otherwise emit null.
nlohmann::json json_number(double v);
double number_from_json(const nlohmann::json& j);

nlohmann::json model_to_json(const ConditionalCdfModel& model);
ModelPtr model_from_json(const nlohmann::json& j);

void save_model(const ConditionalCdfModel& model, const std::string& path);
ModelPtr load_model(const std::string& path);

nlohmann::json calibration_to_json(const conformal::CalibrationResult& r);
conformal::CalibrationResult calibration_from_json(const nlohmann::json& j);

nlohmann::json link_to_json(const Link& link);
Link link_from_json(const nlohmann::json& j);

nlohmann::json sim_config_to_json(const sim::SimConfig& c);
sim::SimConfig sim_config_from_json(const nlohmann::json& j);

void write_json_file(const nlohmann::json& j, const std::string& path);
nlohmann::json read_json_file(const std::string& path);

}  // namespace uncervals
