#pragma once

// Risk aggregation over action compositions: payoff, weighted total risk,
// ranking, and Monte Carlo failure estimation under sensing noise.

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "riskaware/scenario.hpp"

namespace riskaware {

struct Payoff {
  double duration = 0.0;     // s
  double path_length = 0.0;  // m, CoM plus end-effector displacement
  bool operator==(const Payoff&) const = default;
};

struct RiskComponents {
  double peak = 0.0;
  double exposure = 0.0;
  double combined = 0.0;
  bool operator==(const RiskComponents&) const = default;
};

struct MonteCarloResult {
  double collision_failure_rate = 0.0;
  double fall_failure_rate = 0.0;
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;

  // Mean of the collision and fall rates.
  double total_failure_rate() const { return 0.5 * (collision_failure_rate + fall_failure_rate); }
  bool operator==(const MonteCarloResult&) const = default;
};

struct CompositionReport {
  std::string id;
  RiskComponents collision;
  RiskComponents fall;
  double grasp = 0.0;
  double total = 0.0;
  Payoff payoff;
  std::optional<MonteCarloResult> monte_carlo;
  bool operator==(const CompositionReport&) const = default;
};

struct RiskReport {
  int schema_version = kSchemaVersion;
  std::string scenario;
  RiskWeights weights;
  std::vector<CompositionReport> compositions;
  bool operator==(const RiskReport&) const = default;
};

Payoff payoff(const Composition& c);

// w_collision * collision + w_fall * fall + w_grasp * grasp.
double total_risk(double collision, double fall, double grasp, const RiskWeights& w);

// Probability that at least one grasp in the composition fails, treating the
// per-action sigmoid risks as independent. Zero when no action grasps.
double composition_grasp_risk(const Composition& c, const GraspRiskParams& params);

// Ascending total risk, then shorter duration, then id.
std::vector<CompositionReport> rank_compositions(std::vector<CompositionReport> reports);

// Independent generator for one trial, derived from (seed, trial index).
std::mt19937_64 trial_rng(std::uint64_t seed, std::uint64_t trial);

struct TrialOutcome {
  bool collided = false;
  bool fell = false;
  double min_clearance = 0.0;
  double min_com_margin = 0.0;
  bool operator==(const TrialOutcome&) const = default;
};

// One perturbed execution: every obstacle is displaced by an isotropic
// Gaussian offset and the CoM track by one 2-D Gaussian estimation bias.
// Collision = some sample penetrates; fall = some CoM sample strictly outside.
TrialOutcome run_trial(const Composition& c, const Scenario& scenario, const NoiseModel& noise,
                       std::mt19937_64& rng);

MonteCarloResult monte_carlo_failure(const Composition& c, const Scenario& scenario, const NoiseModel& noise,
                                     std::size_t workers = 1);

// Spearman rank correlation (average ranks for ties) between total risk and
// total failure rate. Needs at least 3 reports carrying Monte Carlo results.
double correlate_risk_failure(const std::vector<CompositionReport>& reports);

double spearman(const std::vector<double>& x, const std::vector<double>& y);

struct EvaluationOptions {
  std::optional<RiskWeights> weights;
  std::optional<NoiseModel> noise;
  bool monte_carlo = true;
  std::size_t workers = 1;
};

CompositionReport evaluate_composition(const Composition& c, const Scenario& scenario,
                                       const EvaluationOptions& options = {});

RiskReport evaluate(const Scenario& scenario, const EvaluationOptions& options = {});

// Per-sample data behind the distance, margin and CoM-track plots.
struct CompositionSeries {
  std::string id;
  std::vector<double> t;
  std::vector<double> distance;
  std::vector<double> collision_risk;
  std::vector<double> margin;
  std::vector<double> fall_risk;
  std::vector<Vec2> com;
  std::vector<ConvexPolygon2D> support;
  double uncertainty_radius = 0.0;
};

CompositionSeries composition_series(const Composition& c, const Scenario& scenario, std::size_t workers = 1);

}  // namespace riskaware
