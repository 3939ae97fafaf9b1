#pragma once

#include <vector>

#include "riskaware/geometry.hpp"
#include "riskaware/trajectory.hpp"

namespace riskaware {

struct CollisionRiskParams {
  double d_safety = 0.15;
  double exponent_b = 2.0;
  double w_peak = 0.5;
  double w_exposure = 0.5;

  void validate(const std::string& field_path) const;
  bool operator==(const CollisionRiskParams&) const = default;
};

// (1 - d / d_safety)^b inside the safety margin, 0 outside.
double instantaneous_collision_risk(double d, const CollisionRiskParams& p);

struct CollisionRisk {
  double peak = 0.0;
  double exposure = 0.0;
  double combined = 0.0;
  double d_min = 0.0;
  std::vector<double> d_series;
  std::vector<double> risk_series;
};

// peak is the risk at the closest approach; exposure is the duration-averaged
// instantaneous risk (trapezoid over the given samples).
CollisionRisk trajectory_collision_risk(const TimedTrajectory& traj, const ShapeSet& obstacles,
                                        const CollisionRiskParams& p, std::size_t workers = 1);

// Rows "t,d,risk" with a header line.
std::string collision_series_csv(const TimedTrajectory& traj, const CollisionRisk& risk);

}  // namespace riskaware
