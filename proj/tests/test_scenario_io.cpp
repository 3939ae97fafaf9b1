#include <filesystem>
#include <fstream>

#include "doctest.h"
#include "riskaware/errors.hpp"
#include "riskaware/scenario_io.hpp"
#include "test_support.hpp"

using namespace riskaware;
namespace ts = testing_support;

namespace {

Json minimal_doc() { return Json::parse(read_text_file(ts::scenario_path("minimal.json"))); }

ErrorCategory category_of(const std::string& text) {
  try {
    load_scenario(text);
  } catch (const Error& e) {
    return e.category();
  }
  FAIL("document loaded without error");
  return ErrorCategory::kRuntime;
}

std::string field_of(const std::string& text) {
  try {
    load_scenario(text);
  } catch (const Error& e) {
    return e.field_path();
  }
  return "";
}

std::vector<std::filesystem::path> corpus() {
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::recursive_directory_iterator(ts::data_dir() / "scenarios")) {
    if (entry.path().extension() == ".json") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  return files;
}

}  // namespace

TEST_CASE("bundled minimal scenario loads") {
  const Scenario s = load_scenario_file(ts::scenario_path("minimal.json"));
  CHECK(s.obstacles.size() == 1);
  CHECK(s.compositions.size() == 1);
  CHECK(s.compositions[0].actions[0].trajectory.size() == 2);
  CHECK(s.schema_version == kSchemaVersion);
}

TEST_CASE("weights not summing to one are a validation error naming the weights") {
  Json doc = minimal_doc();
  doc["params"]["weights"] = {{"w_collision", 0.5}, {"w_fall", 0.5}, {"w_grasp", 0.2}};
  CHECK(category_of(doc.dump()) == ErrorCategory::kValidation);
  CHECK(field_of(doc.dump()).find("params.weights") == 0);
}

TEST_CASE("parse, schema and validation errors are distinguished") {
  CHECK(category_of("{ not json") == ErrorCategory::kParse);

  Json version = minimal_doc();
  version["schema_version"] = 99;
  CHECK(category_of(version.dump()) == ErrorCategory::kSchema);

  Json missing = minimal_doc();
  missing.erase("obstacles");
  CHECK(category_of(missing.dump()) == ErrorCategory::kSchema);
  CHECK(field_of(missing.dump()) == "obstacles");

  Json typo = minimal_doc();
  typo["params"]["collision"]["d_safty"] = 0.1;
  CHECK(category_of(typo.dump()) == ErrorCategory::kSchema);
  CHECK(field_of(typo.dump()) == "params.collision.d_safty");

  Json wrong_type = minimal_doc();
  wrong_type["params"]["noise"]["trials"] = "many";
  CHECK(category_of(wrong_type.dump()) == ErrorCategory::kSchema);

  Json negative = minimal_doc();
  negative["obstacles"][0]["shapes"][0]["half_extents"] = {0.1, -0.1, 0.5};
  CHECK(category_of(negative.dump()) == ErrorCategory::kValidation);
  CHECK(field_of(negative.dump()).find("obstacles[0].shapes[0]") == 0);

  Json backwards = minimal_doc();
  backwards["compositions"][0]["actions"][0]["samples"][1]["t"] = -1.0;
  CHECK(category_of(backwards.dump()) == ErrorCategory::kValidation);

  Json collinear = minimal_doc();
  collinear["compositions"][0]["actions"][0]["support"] = {{0, 0}, {1, 0}, {2, 0}};
  CHECK(category_of(collinear.dump()) == ErrorCategory::kValidation);
  CHECK(field_of(collinear.dump()) == "compositions[0].actions[0].support");

  Json bad_kind = minimal_doc();
  bad_kind["compositions"][0]["actions"][0]["kind"] = "jump";
  CHECK(category_of(bad_kind.dump()) == ErrorCategory::kValidation);
  CHECK(field_of(bad_kind.dump()) == "compositions[0].actions[0].kind");
}

TEST_CASE("duplicate composition ids and unmanipulated picks are rejected") {
  Json dup = minimal_doc();
  dup["compositions"].push_back(dup["compositions"][0]);
  CHECK(category_of(dup.dump()) == ErrorCategory::kValidation);

  Json pick = minimal_doc();
  pick["compositions"][0]["actions"][0]["kind"] = "pick_left";
  CHECK(category_of(pick.dump()) == ErrorCategory::kValidation);
}

TEST_CASE("every bundled scenario loads, round-trips, and evaluates") {
  const auto files = corpus();
  CHECK(files.size() >= 15);
  for (const auto& file : files) {
    CAPTURE(file.string());
    const Scenario s = load_scenario_file(file);
    const std::string text = serialize_scenario(s);
    const Scenario again = load_scenario(text);
    CHECK(again == s);
    CHECK(serialize_scenario(again) == text);
    EvaluationOptions options;
    options.noise = NoiseModel{s.params.noise.obstacle_pose_sigma, s.params.noise.com_sigma, 5, 1};
    const RiskReport r = evaluate(s, options);
    CHECK(r.compositions.size() == s.compositions.size());
  }
}

TEST_CASE("report table format") {
  RiskReport empty;
  empty.scenario = "none";
  CHECK(write_report(empty, ReportFormat::kTable) ==
        "id,collision,fall,grasp,total,duration,path_length,mc_collision_rate,mc_fall_rate\n");

  const Scenario s = load_scenario_file(ts::scenario_path("minimal.json"));
  const RiskReport r = evaluate(s);
  const std::string table = write_report(r, ReportFormat::kTable);
  CHECK(std::count(table.begin(), table.end(), '\n') == 2);
  const std::string row = table.substr(table.find('\n') + 1);
  CHECK(row.rfind("reach,", 0) == 0);
  CHECK(std::count(row.begin(), row.end(), ',') == 8);

  EvaluationOptions no_mc;
  no_mc.monte_carlo = false;
  const std::string bare = write_report(evaluate(s, no_mc), ReportFormat::kTable);
  CHECK(bare.substr(bare.size() - 3) == ",,\n");
}

TEST_CASE("structured reports round-trip and serialize deterministically") {
  const Scenario s = load_scenario_file(ts::scenario_path("tabletop.json"));
  EvaluationOptions options;
  options.noise = NoiseModel{0.01, 0.01, 20, 5};
  const RiskReport r = evaluate(s, options);
  const std::string text = write_report(r, ReportFormat::kStructured);
  CHECK(parse_report(text) == r);
  CHECK(write_report(parse_report(text), ReportFormat::kStructured) == text);
  CHECK(write_report(evaluate(s, options), ReportFormat::kStructured) == text);
  CHECK(report_format_from_string("table") == ReportFormat::kTable);
  CHECK_THROWS(report_format_from_string("xml"));
}

TEST_CASE("writing a report to an unwritable path is a runtime error") {
  RiskReport r;
  try {
    write_report_file(r, ReportFormat::kTable, "/nonexistent-dir/sub/report.csv");
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.category() == ErrorCategory::kRuntime);
  }
  const auto path = std::filesystem::temp_directory_path() / "riskaware_report_test.csv";
  write_report_file(r, ReportFormat::kTable, path);
  CHECK(read_text_file(path) == write_report(r, ReportFormat::kTable));
  std::filesystem::remove(path);
}

TEST_CASE("missing files are not-found errors") {
  try {
    load_scenario_file(ts::data_dir() / "no_such_file.json");
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.category() == ErrorCategory::kNotFound);
  }
}

TEST_CASE("grasp fixture loads strictly") {
  const GraspFixture f = load_grasp_fixture_file(ts::data_dir() / "fixtures" / "symmetric_grasp.json");
  CHECK(f.hand.fingertips.size() == 3);
  CHECK(f.hand.contact_model == ContactModel::kHardFinger);
  Json doc = Json::parse(read_text_file(ts::data_dir() / "fixtures" / "symmetric_grasp.json"));
  doc["hand"]["palm"] = 1;
  CHECK_THROWS_AS(load_grasp_fixture(doc.dump()), SchemaError);
  doc["hand"].erase("palm");
  doc["hand"]["fingertips"][0]["direction"] = {0, 0, 0};
  CHECK_THROWS_AS(load_grasp_fixture(doc.dump()), ValidationError);
}
