#pragma once

#include <vector>

#include "riskaware/geometry.hpp"
#include "riskaware/trajectory.hpp"

namespace riskaware {

struct FallRiskParams {
  double uncertainty_radius = 0.03;
  double w_peak = 0.5;
  double w_exposure = 0.5;

  void validate(const std::string& field_path) const;
  bool operator==(const FallRiskParams&) const = default;
};

// Area of the disk (center, radius) that lies inside `polygon`.
double disk_polygon_intersection_area(const Vec2& center, double radius, const ConvexPolygon2D& polygon);

// Fraction of the CoM uncertainty disk lying outside the support polygon.
// With a zero radius this is the indicator of the CoM being strictly outside.
double instantaneous_fall_risk(const Vec2& com_xy, const ConvexPolygon2D& support, const FallRiskParams& p);

struct FallRisk {
  double peak = 0.0;
  double exposure = 0.0;
  double combined = 0.0;
  std::vector<double> margin_series;
  std::vector<double> risk_series;
};

FallRisk trajectory_fall_risk(const TimedTrajectory& traj, const FallRiskParams& p, std::size_t workers = 1);

// Rows "t,margin,risk" with a header line.
std::string fall_series_csv(const TimedTrajectory& traj, const FallRisk& risk);

}  // namespace riskaware
