#pragma once

// JSON persistence for scenarios, grasp fixtures and risk reports. Documents
// carry a schema_version and are read strictly: unknown keys are rejected.

#include <filesystem>
#include <string>
#include <string_view>

#include "json.hpp"
#include "riskaware/composer.hpp"
#include "riskaware/grasp.hpp"
#include "riskaware/scenario.hpp"

namespace riskaware {

using Json = nlohmann::ordered_json;

// Throws ParseError (malformed text), SchemaError (unsupported version,
// missing or unknown field, wrong type) or ValidationError (invariant).
Scenario load_scenario(std::string_view text);
Scenario load_scenario_file(const std::filesystem::path& path);
std::string serialize_scenario(const Scenario& scenario);

enum class ReportFormat { kStructured, kTable };
ReportFormat report_format_from_string(const std::string& name);

// Table columns: id, collision, fall, grasp, total, duration, path_length,
// mc_collision_rate, mc_fall_rate.
std::string write_report(const RiskReport& report, ReportFormat format);
// Throws Error(kRuntime) when the file cannot be written.
void write_report_file(const RiskReport& report, ReportFormat format, const std::filesystem::path& path);
RiskReport parse_report(std::string_view text);

struct GraspFixture {
  ShapeSet object;
  Hand hand;
};
GraspFixture load_grasp_fixture(std::string_view text);
GraspFixture load_grasp_fixture_file(const std::filesystem::path& path);

std::string read_text_file(const std::filesystem::path& path);

// Building blocks shared with the service layer.
Json to_json(const RiskWeights& w);
Json to_json(const NoiseModel& n);
Json to_json(const CompositionReport& r);
Json to_json(const RiskReport& r);
Json to_json(const CompositionSeries& s);
Json to_json(const ShapeSet& shapes);
RiskWeights risk_weights_from_json(const Json& j, const std::string& path);
NoiseModel noise_model_from_json(const Json& j, const std::string& path);

}  // namespace riskaware
