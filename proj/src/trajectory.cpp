#include "riskaware/trajectory.hpp"

#include <cmath>
#include <string>

#include "riskaware/errors.hpp"

namespace riskaware {

Vec3 TrajectorySample::end_effector_point() const {
  if (end_effector) return *end_effector;
  if (body.empty()) return Vec3::Zero();
  return shape_center(body.shapes().front());
}

TimedTrajectory::TimedTrajectory(std::vector<TrajectorySample> samples) : samples_(std::move(samples)) {
  if (samples_.size() < 2) throw ValidationError("samples", "trajectory needs at least 2 samples");
  for (std::size_t i = 0; i < samples_.size(); ++i) {
    const std::string path = "samples[" + std::to_string(i) + "]";
    const TrajectorySample& s = samples_[i];
    if (!std::isfinite(s.t)) throw ValidationError(path + ".t", "time must be finite");
    if (i > 0 && s.t < samples_[i - 1].t) throw ValidationError(path + ".t", "times must be non-decreasing");
    if (s.body.empty()) throw ValidationError(path + ".body", "body proxy must not be empty");
    if (!s.com_xy.allFinite()) throw ValidationError(path + ".com_xy", "CoM must be finite");
  }
  if (!(duration() > 0.0)) throw ValidationError("samples", "trajectory must span a positive duration");
}

double time_average(std::span<const double> times, std::span<const double> values) {
  if (times.size() != values.size() || times.size() < 2) {
    throw ValidationError("series", "time_average needs matching series of at least 2 samples");
  }
  const double span = times.back() - times.front();
  if (!(span > 0.0)) throw ValidationError("series", "time_average needs a positive duration");
  double integral = 0.0;
  for (std::size_t i = 1; i < times.size(); ++i) {
    integral += 0.5 * (values[i] + values[i - 1]) * (times[i] - times[i - 1]);
  }
  return integral / span;
}

}  // namespace riskaware
