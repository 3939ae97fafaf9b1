#pragma once

#include <optional>
#include <span>
#include <vector>

#include "riskaware/geometry.hpp"

namespace riskaware {

struct TrajectorySample {
  double t = 0.0;
  ShapeSet body;
  Vec2 com_xy = Vec2::Zero();
  ConvexPolygon2D support;
  // End-effector proxy used for path length; defaults to the center of the
  // first body primitive when absent.
  std::optional<Vec3> end_effector;

  Vec3 end_effector_point() const;
  bool operator==(const TrajectorySample&) const = default;
};

// Samples with non-decreasing timestamps spanning a positive duration.
// Repeated timestamps are allowed and contribute zero-length intervals.
class TimedTrajectory {
 public:
  // Throws ValidationError when the invariants above do not hold.
  explicit TimedTrajectory(std::vector<TrajectorySample> samples);

  const std::vector<TrajectorySample>& samples() const { return samples_; }
  std::size_t size() const { return samples_.size(); }
  double start_time() const { return samples_.front().t; }
  double end_time() const { return samples_.back().t; }
  double duration() const { return end_time() - start_time(); }

  bool operator==(const TimedTrajectory&) const = default;

 private:
  std::vector<TrajectorySample> samples_;
};

// (1/T) * trapezoidal integral of values over times.
double time_average(std::span<const double> times, std::span<const double> values);

}  // namespace riskaware
