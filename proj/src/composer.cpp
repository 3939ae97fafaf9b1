#include "riskaware/composer.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "riskaware/errors.hpp"
#include "riskaware/parallel.hpp"

namespace riskaware {

Payoff payoff(const Composition& c) {
  Payoff p;
  for (const Action& a : c.actions) {
    const auto& s = a.trajectory.samples();
    p.duration += a.trajectory.duration();
    for (std::size_t i = 1; i < s.size(); ++i) {
      p.path_length += (s[i].com_xy - s[i - 1].com_xy).norm();
      p.path_length += (s[i].end_effector_point() - s[i - 1].end_effector_point()).norm();
    }
  }
  return p;
}

double total_risk(double collision, double fall, double grasp, const RiskWeights& w) {
  w.validate("weights");
  return w.collision * collision + w.fall * fall + w.grasp * grasp;
}

double composition_grasp_risk(const Composition& c, const GraspRiskParams& params) {
  double survive = 1.0;
  for (const Action& a : c.actions) {
    if (!a.grasp) continue;
    survive *= 1.0 - combined_grasp_risk(a.grasp->position_deviation, a.grasp->orientation_deviation, params.axes,
                                         params.weights);
  }
  return 1.0 - survive;
}

std::vector<CompositionReport> rank_compositions(std::vector<CompositionReport> reports) {
  std::stable_sort(reports.begin(), reports.end(), [](const CompositionReport& a, const CompositionReport& b) {
    if (a.total != b.total) return a.total < b.total;
    if (a.payoff.duration != b.payoff.duration) return a.payoff.duration < b.payoff.duration;
    return a.id < b.id;
  });
  return reports;
}

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

TrialOutcome run_trial_on(const TimedTrajectory& traj, const Scenario& scenario, const NoiseModel& noise,
                          std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<Shape> perturbed;
  for (const NamedObstacle& o : scenario.obstacles) {
    // Fixed draw order: x, y, z per obstacle, then the CoM bias.
    Vec3 offset;
    for (int k = 0; k < 3; ++k) offset[k] = noise.obstacle_pose_sigma * normal(rng);
    const ShapeSet moved = o.shapes.translated(offset);
    perturbed.insert(perturbed.end(), moved.shapes().begin(), moved.shapes().end());
  }
  Vec2 com_bias;
  for (int k = 0; k < 2; ++k) com_bias[k] = noise.com_sigma * normal(rng);

  const ShapeSet obstacles(std::move(perturbed));
  TrialOutcome out;
  out.min_clearance = std::numeric_limits<double>::infinity();
  out.min_com_margin = std::numeric_limits<double>::infinity();
  for (const TrajectorySample& s : traj.samples()) {
    const double d = min_distance(s.body, obstacles);
    out.min_clearance = std::min(out.min_clearance, d);
    if (d == 0.0) out.collided = true;
    const Vec2 com = s.com_xy + com_bias;
    out.min_com_margin = std::min(out.min_com_margin, signed_margin(com, s.support));
    if (!s.support.contains(com)) out.fell = true;
  }
  return out;
}

std::vector<double> average_ranks(const std::vector<double>& v) {
  std::vector<std::size_t> order(v.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
  std::vector<double> ranks(v.size());
  for (std::size_t i = 0; i < order.size();) {
    std::size_t j = i;
    while (j + 1 < order.size() && v[order[j + 1]] == v[order[i]]) ++j;
    const double rank = 0.5 * static_cast<double>(i + j) + 1.0;
    for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = rank;
    i = j + 1;
  }
  return ranks;
}

}  // namespace

std::mt19937_64 trial_rng(std::uint64_t seed, std::uint64_t trial) {
  const std::uint64_t stream = splitmix64(seed ^ splitmix64(trial + 0x632be59bd9b4e019ULL));
  std::seed_seq seq{static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32),
                    static_cast<std::uint32_t>(trial), static_cast<std::uint32_t>(trial >> 32)};
  return std::mt19937_64(seq);
}

TrialOutcome run_trial(const Composition& c, const Scenario& scenario, const NoiseModel& noise,
                       std::mt19937_64& rng) {
  return run_trial_on(c.concatenated(), scenario, noise, rng);
}

MonteCarloResult monte_carlo_failure(const Composition& c, const Scenario& scenario, const NoiseModel& noise,
                                     std::size_t workers) {
  noise.validate("noise");
  const TimedTrajectory traj = c.concatenated();
  std::vector<TrialOutcome> outcomes(noise.trials);
  parallel_for(noise.trials, workers, [&](std::size_t i) {
    auto rng = trial_rng(noise.seed, i);
    outcomes[i] = run_trial_on(traj, scenario, noise, rng);
  });
  std::uint64_t collisions = 0;
  std::uint64_t falls = 0;
  for (const TrialOutcome& o : outcomes) {
    collisions += o.collided ? 1 : 0;
    falls += o.fell ? 1 : 0;
  }
  const auto n = static_cast<double>(noise.trials);
  return MonteCarloResult{static_cast<double>(collisions) / n, static_cast<double>(falls) / n, noise.trials,
                          noise.seed};
}

double spearman(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 3) {
    throw ValidationError("reports", "rank correlation needs at least 3 paired values");
  }
  const std::vector<double> rx = average_ranks(x);
  const std::vector<double> ry = average_ranks(y);
  const double n = static_cast<double>(x.size());
  const double mx = std::accumulate(rx.begin(), rx.end(), 0.0) / n;
  const double my = std::accumulate(ry.begin(), ry.end(), 0.0) / n;
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < rx.size(); ++i) {
    sxy += (rx[i] - mx) * (ry[i] - my);
    sxx += (rx[i] - mx) * (rx[i] - mx);
    syy += (ry[i] - my) * (ry[i] - my);
  }
  if (sxx == 0.0 || syy == 0.0) {
    throw ValidationError("reports", "rank correlation is undefined when one variable is constant");
  }
  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

double correlate_risk_failure(const std::vector<CompositionReport>& reports) {
  std::vector<double> risk;
  std::vector<double> failure;
  for (std::size_t i = 0; i < reports.size(); ++i) {
    if (!reports[i].monte_carlo) {
      throw ValidationError("reports[" + std::to_string(i) + "].monte_carlo", "report has no Monte Carlo result");
    }
    risk.push_back(reports[i].total);
    failure.push_back(reports[i].monte_carlo->total_failure_rate());
  }
  return spearman(risk, failure);
}

CompositionReport evaluate_composition(const Composition& c, const Scenario& scenario,
                                       const EvaluationOptions& options) {
  const RiskWeights weights = options.weights.value_or(scenario.params.weights);
  const TimedTrajectory traj = c.concatenated();
  const CollisionRisk collision =
      trajectory_collision_risk(traj, scenario.obstacle_shapes(), scenario.params.collision, options.workers);
  const FallRisk fall = trajectory_fall_risk(traj, scenario.params.fall, options.workers);

  CompositionReport r;
  r.id = c.id;
  r.collision = {collision.peak, collision.exposure, collision.combined};
  r.fall = {fall.peak, fall.exposure, fall.combined};
  r.grasp = composition_grasp_risk(c, scenario.params.grasp);
  r.total = total_risk(r.collision.combined, r.fall.combined, r.grasp, weights);
  r.payoff = payoff(c);
  if (options.monte_carlo) {
    r.monte_carlo = monte_carlo_failure(c, scenario, options.noise.value_or(scenario.params.noise), options.workers);
  }
  return r;
}

RiskReport evaluate(const Scenario& scenario, const EvaluationOptions& options) {
  RiskReport report;
  report.scenario = scenario.name;
  report.weights = options.weights.value_or(scenario.params.weights);
  report.weights.validate("weights");
  for (const Composition& c : scenario.compositions) {
    report.compositions.push_back(evaluate_composition(c, scenario, options));
  }
  return report;
}

CompositionSeries composition_series(const Composition& c, const Scenario& scenario, std::size_t workers) {
  const TimedTrajectory traj = c.concatenated();
  const CollisionRisk collision =
      trajectory_collision_risk(traj, scenario.obstacle_shapes(), scenario.params.collision, workers);
  const FallRisk fall = trajectory_fall_risk(traj, scenario.params.fall, workers);
  CompositionSeries s;
  s.id = c.id;
  s.distance = collision.d_series;
  s.collision_risk = collision.risk_series;
  s.margin = fall.margin_series;
  s.fall_risk = fall.risk_series;
  s.uncertainty_radius = scenario.params.fall.uncertainty_radius;
  for (const TrajectorySample& sample : traj.samples()) {
    s.t.push_back(sample.t);
    s.com.push_back(sample.com_xy);
    s.support.push_back(sample.support);
  }
  return s;
}

}  // namespace riskaware
