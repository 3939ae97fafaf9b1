#include <cmath>
#include <fstream>
#include <random>

#include "doctest.h"
#include "json.hpp"
#include "riskaware/composer.hpp"
#include "riskaware/errors.hpp"
#include "riskaware/scenario_io.hpp"
#include "test_support.hpp"

using namespace riskaware;
namespace ts = testing_support;

namespace {

ConvexPolygon2D square() {
  return ConvexPolygon2D::from_ccw_vertices({Vec2(-0.1, -0.1), Vec2(0.1, -0.1), Vec2(0.1, 0.1), Vec2(-0.1, 0.1)});
}

Action still_action(double t0, double t1, const Vec3& hand) {
  std::vector<TrajectorySample> samples = {
      {t0, ShapeSet({Sphere{hand, 0.05}}), Vec2::Zero(), square(), std::nullopt},
      {t1, ShapeSet({Sphere{hand, 0.05}}), Vec2::Zero(), square(), std::nullopt},
  };
  return Action{ActionKind::kReach, TimedTrajectory(std::move(samples)), std::nullopt};
}

CompositionReport report(const std::string& id, double total, double duration) {
  CompositionReport r;
  r.id = id;
  r.total = total;
  r.payoff.duration = duration;
  return r;
}

std::vector<std::string> ids(const std::vector<CompositionReport>& reports) {
  std::vector<std::string> out;
  for (const auto& r : reports) out.push_back(r.id);
  return out;
}

const Scenario& tabletop() {
  static const Scenario s = load_scenario_file(ts::scenario_path("tabletop.json"));
  return s;
}

}  // namespace

TEST_CASE("payoff of simple compositions") {
  const Composition c{"still", {still_action(0.0, 4.0, Vec3(0.3, 0, 1))}};
  CHECK(payoff(c).duration == 4.0);
  CHECK(payoff(c).path_length == 0.0);
}

TEST_CASE("payoff of a bundled composition matches hand-summed displacements") {
  // Sum straight from the document, without the library loader.
  std::ifstream in(ts::scenario_path("tabletop.json"));
  const auto doc = nlohmann::json::parse(in);
  for (const auto& comp : doc["compositions"]) {
    double duration = 0.0;
    double length = 0.0;
    for (const auto& action : comp["actions"]) {
      const auto& samples = action["samples"];
      duration += samples.back()["t"].get<double>() - samples.front()["t"].get<double>();
      for (std::size_t i = 1; i < samples.size(); ++i) {
        double com2 = 0.0, ee2 = 0.0;
        for (int k = 0; k < 2; ++k) {
          const double d = samples[i]["com"][k].get<double>() - samples[i - 1]["com"][k].get<double>();
          com2 += d * d;
        }
        for (int k = 0; k < 3; ++k) {
          const double d = samples[i]["end_effector"][k].get<double>() - samples[i - 1]["end_effector"][k].get<double>();
          ee2 += d * d;
        }
        length += std::sqrt(com2) + std::sqrt(ee2);
      }
    }
    const Payoff p = payoff(tabletop().composition(comp["id"].get<std::string>()));
    CHECK(p.duration == doctest::Approx(duration).epsilon(1e-12));
    CHECK(std::abs(p.path_length - length) < 1e-9);
  }
}

TEST_CASE("total risk arithmetic") {
  const RiskWeights w;
  CHECK(total_risk(0, 0, 0, w) == 0.0);
  CHECK(total_risk(1, 1, 1, w) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(total_risk(0.3, 0.5, 0.2, RiskWeights{0.3, 0.5, 0.2}) == doctest::Approx(0.38).epsilon(1e-15));
  CHECK_THROWS_AS(total_risk(0.1, 0.1, 0.1, RiskWeights{0.5, 0.5, 0.2}), ValidationError);
  CHECK_THROWS_AS(total_risk(0.1, 0.1, 0.1, RiskWeights{1.2, -0.2, 0.0}), ValidationError);
  try {
    RiskWeights{0.5, 0.5, 0.2}.validate("weights");
  } catch (const ValidationError& e) {
    CHECK(e.field_path().find("weights") != std::string::npos);
  }
  CHECK(w.fall > w.collision);
}

TEST_CASE("total risk is linear in each component") {
  std::mt19937_64 rng(61);
  const RiskWeights w{0.25, 0.45, 0.3};
  for (int i = 0; i < 100; ++i) {
    const double c = ts::uniform(rng, 0, 1), f = ts::uniform(rng, 0, 1), g = ts::uniform(rng, 0, 1);
    const double dc = ts::uniform(rng, -0.2, 0.2);
    CHECK(total_risk(c + dc, f, g, w) - total_risk(c, f, g, w) == doctest::Approx(w.collision * dc).epsilon(1e-9));
    CHECK(total_risk(c, f + dc, g, w) - total_risk(c, f, g, w) == doctest::Approx(w.fall * dc).epsilon(1e-9));
    CHECK(total_risk(c, f, g + dc, w) - total_risk(c, f, g, w) == doctest::Approx(w.grasp * dc).epsilon(1e-9));
  }
}

TEST_CASE("ranking order and tie-breaks") {
  CHECK(ids(rank_compositions({report("c", 0.9, 1), report("a", 0.2, 1), report("b", 0.5, 1)})) ==
        std::vector<std::string>{"a", "b", "c"});
  CHECK(ids(rank_compositions({report("slow", 0.4, 10), report("fast", 0.4, 5)})) ==
        std::vector<std::string>{"fast", "slow"});
  CHECK(ids(rank_compositions({report("b", 0.4, 5), report("a", 0.4, 5)})) == std::vector<std::string>{"a", "b"});
}

TEST_CASE("ranking is invariant under increasing transforms of the totals") {
  std::mt19937_64 rng(62);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<CompositionReport> reports, transformed;
    for (int i = 0; i < 8; ++i) {
      const double total = std::round(ts::uniform(rng, 0, 1) * 10) / 10;
      const double duration = std::round(ts::uniform(rng, 1, 4));
      reports.push_back(report("c" + std::to_string(i), total, duration));
      transformed.push_back(report("c" + std::to_string(i), std::exp(3 * total) + total * total, duration));
    }
    CHECK(ids(rank_compositions(reports)) == ids(rank_compositions(transformed)));
  }
}

TEST_CASE("composition grasp risk") {
  const GraspRiskParams params;
  const Composition none{"none", {still_action(0, 1, Vec3::Zero())}};
  CHECK(composition_grasp_risk(none, params) == 0.0);

  Composition one{"one", {still_action(0, 1, Vec3::Zero())}};
  one.actions[0].grasp = GraspContext{Vec3(0.01, 0, 0), Vec3(0, 0.1, 0)};
  const double single = combined_grasp_risk(Vec3(0.01, 0, 0), Vec3(0, 0.1, 0), params.axes, params.weights);
  CHECK(composition_grasp_risk(one, params) == doctest::Approx(single).epsilon(1e-15));

  Composition two = one;
  two.actions.push_back(still_action(1, 2, Vec3::Zero()));
  two.actions[1].grasp = GraspContext{};
  const double zero = combined_grasp_risk(Vec3::Zero(), Vec3::Zero(), params.axes, params.weights);
  CHECK(composition_grasp_risk(two, params) == doctest::Approx(1 - (1 - single) * (1 - zero)).epsilon(1e-15));
}

TEST_CASE("composition contiguity is validated") {
  Composition gap{"gap", {still_action(0, 1, Vec3::Zero()), still_action(2, 3, Vec3::Zero())}};
  CHECK_THROWS_AS(gap.validate("compositions[0]"), ValidationError);
  Composition jump{"jump", {still_action(0, 1, Vec3::Zero()), still_action(1, 2, Vec3(0.1, 0, 0))}};
  CHECK_THROWS_AS(jump.validate("compositions[0]"), ValidationError);
  Composition ok{"ok", {still_action(0, 1, Vec3::Zero()), still_action(1, 2, Vec3::Zero())}};
  CHECK_NOTHROW(ok.validate("compositions[0]"));
  CHECK(ok.concatenated().size() == 4);
  const Composition empty{"empty", {}};
  CHECK_THROWS_AS(empty.validate("compositions[0]"), ValidationError);
}

TEST_CASE("trial generators are reproducible and distinct") {
  auto a = trial_rng(5, 3);
  auto b = trial_rng(5, 3);
  auto c = trial_rng(5, 4);
  auto d = trial_rng(6, 3);
  const auto va = a();
  CHECK(va == b());
  CHECK(va != c());
  CHECK(va != d());
}

TEST_CASE("zero noise on the tabletop scenario gives zero failure rates") {
  const NoiseModel quiet{0.0, 0.0, 50, 3};
  for (const Composition& c : tabletop().compositions) {
    const MonteCarloResult r = monte_carlo_failure(c, tabletop(), quiet);
    CHECK(r.collision_failure_rate == 0.0);
    CHECK(r.fall_failure_rate == 0.0);
    CHECK(r.trials == 50);
  }
}

TEST_CASE("Monte Carlo is deterministic and independent of worker count") {
  const Composition& c = tabletop().composition("left_pick_left_place");
  const NoiseModel noise{0.012, 0.012, 200, 99};
  const MonteCarloResult one = monte_carlo_failure(c, tabletop(), noise, 1);
  CHECK(one == monte_carlo_failure(c, tabletop(), noise, 1));
  CHECK(one == monte_carlo_failure(c, tabletop(), noise, 3));
  CHECK(one == monte_carlo_failure(c, tabletop(), noise, 8));
}

TEST_CASE("failure rates do not decrease with noise") {
  const Composition& c = tabletop().composition("left_pick_left_place");
  const std::uint64_t trials = 400;
  const double tolerance = 2.0 / std::sqrt(static_cast<double>(trials));
  double prev_c = 0.0, prev_f = 0.0;
  for (double scale : {0.0, 1.0, 2.0}) {
    const NoiseModel noise{0.012 * scale, 0.012 * scale, trials, 17};
    const MonteCarloResult r = monte_carlo_failure(c, tabletop(), noise, 2);
    CHECK(r.collision_failure_rate >= prev_c - tolerance);
    CHECK(r.fall_failure_rate >= prev_f - tolerance);
    prev_c = r.collision_failure_rate;
    prev_f = r.fall_failure_rate;
  }
}

TEST_CASE("grazing scenario collides almost always at ten times its clearance") {
  const Scenario s = load_scenario_file(ts::scenario_path("grazing.json"));
  const Composition& c = s.compositions.at(0);
  const double clearance = trajectory_collision_risk(c.concatenated(), s.obstacle_shapes(), s.params.collision).d_min;
  CHECK(clearance == doctest::Approx(0.01).epsilon(1e-9));
  const NoiseModel noise{10 * clearance, 0.0, 2000, s.params.noise.seed};
  CHECK(monte_carlo_failure(c, s, noise, 2).collision_failure_rate >= 0.9);
}

TEST_CASE("a trial reproduces the matching Monte Carlo draw") {
  const Composition& c = tabletop().composition("right_pick_right_place");
  const NoiseModel noise{0.012, 0.012, 1, 4242};
  auto rng = trial_rng(noise.seed, 0);
  const TrialOutcome t = run_trial(c, tabletop(), noise, rng);
  const MonteCarloResult r = monte_carlo_failure(c, tabletop(), noise);
  CHECK(r.collision_failure_rate == (t.collided ? 1.0 : 0.0));
  CHECK(r.fall_failure_rate == (t.fell ? 1.0 : 0.0));
  CHECK(t.collided == (t.min_clearance == 0.0));
  CHECK(t.fell == (t.min_com_margin < 0.0));
}

TEST_CASE("Spearman correlation") {
  CHECK(spearman({1, 2, 3, 4}, {10, 20, 30, 40}) == doctest::Approx(1.0));
  CHECK(spearman({1, 2, 3, 4}, {4, 3, 2, 1}) == doctest::Approx(-1.0));
  // Ties take average ranks: ranks x = (1, 2.5, 2.5, 4), y = (1, 2, 3, 4).
  CHECK(spearman({1, 2, 2, 3}, {1, 2, 3, 4}) == doctest::Approx(0.9486832980505138).epsilon(1e-12));
  CHECK_THROWS_AS(spearman({1, 2}, {1, 2}), ValidationError);
  CHECK_THROWS_AS(spearman({1, 1, 1}, {1, 2, 3}), ValidationError);
  std::vector<CompositionReport> no_mc = {report("a", 0.1, 1), report("b", 0.2, 1), report("c", 0.3, 1)};
  CHECK_THROWS_AS(correlate_risk_failure(no_mc), ValidationError);
}

TEST_CASE("tabletop evaluation ranks the dual-arm composition first") {
  EvaluationOptions options;
  options.noise = NoiseModel{0.012, 0.012, 200, 1234567};
  const RiskReport r = evaluate(tabletop(), options);
  REQUIRE(r.compositions.size() == 3);
  CHECK(rank_compositions(r.compositions).front().id == "dual_arm_handover");
  for (const auto& c : r.compositions) {
    CHECK(c.total >= 0.0);
    CHECK(c.total <= 1.0);
    REQUIRE(c.monte_carlo);
    CHECK(c.monte_carlo->trials == 200);
  }
}

TEST_CASE("composition series lines up with the trajectory") {
  const Composition& c = tabletop().composition("dual_arm_handover");
  const CompositionSeries s = composition_series(c, tabletop());
  const std::size_t n = c.concatenated().size();
  CHECK(s.t.size() == n);
  CHECK(s.distance.size() == n);
  CHECK(s.margin.size() == n);
  CHECK(s.com.size() == n);
  CHECK(s.support.size() == n);
  CHECK(s.uncertainty_radius == tabletop().params.fall.uncertainty_radius);
}
