#pragma once

// nlohmann::json conversions for configs and reports.

#include "json.hpp"

#include "airmia/classify.hpp"
#include "airmia/harness.hpp"
#include "airmia/mia.hpp"

namespace airmia::classify {
void to_json(nlohmann::json& j, const ClassifierReport& r);
void from_json(const nlohmann::json& j, ClassifierReport& r);
}  // namespace airmia::classify

namespace airmia::mia {
void to_json(nlohmann::json& j, const ConfusionMatrix& cm);
void from_json(const nlohmann::json& j, ConfusionMatrix& cm);
}  // namespace airmia::mia

namespace airmia::harness {

void to_json(nlohmann::json& j, const ScenarioConfig& c);

// Overlays the keys present in `j` onto `c`. Unknown keys and wrong types
// throw InvalidConfig naming the offending key.
void apply_config_json(const nlohmann::json& j, ScenarioConfig& c);

void to_json(nlohmann::json& j, const StageSeeds& s);
void to_json(nlohmann::json& j, const Evaluation& e);
void from_json(const nlohmann::json& j, Evaluation& e);

// The report.json document. Contains no timing, so it is a pure function of
// (config, seed).
nlohmann::json report_json(const ScenarioReport& r);

// {scenario, seed, counts, rates, accuracy}
nlohmann::json confusion_json(const ScenarioReport& r);

}  // namespace airmia::harness
