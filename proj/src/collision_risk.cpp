#include "riskaware/collision_risk.hpp"

#include <algorithm>
#include <cmath>

#include "riskaware/errors.hpp"
#include "riskaware/format.hpp"
#include "riskaware/parallel.hpp"

namespace riskaware {

void CollisionRiskParams::validate(const std::string& field_path) const {
  if (!(d_safety > 0.0) || !std::isfinite(d_safety)) {
    throw ValidationError(field_path + ".d_safety", "d_safety must be > 0");
  }
  if (!(exponent_b > 0.0) || !std::isfinite(exponent_b)) {
    throw ValidationError(field_path + ".exponent_b", "exponent_b must be > 0");
  }
  if (!(w_peak >= 0.0) || !(w_exposure >= 0.0)) {
    throw ValidationError(field_path + ".w_peak", "weights must be non-negative");
  }
  if (std::abs(w_peak + w_exposure - 1.0) > 1e-12) {
    throw ValidationError(field_path + ".w_peak", "w_peak + w_exposure must equal 1");
  }
}

double instantaneous_collision_risk(double d, const CollisionRiskParams& p) {
  if (!(d >= 0.0)) throw ValidationError("d", "distance must be non-negative");
  if (d >= p.d_safety) return 0.0;
  return std::pow(1.0 - d / p.d_safety, p.exponent_b);
}

CollisionRisk trajectory_collision_risk(const TimedTrajectory& traj, const ShapeSet& obstacles,
                                        const CollisionRiskParams& p, std::size_t workers) {
  const auto& samples = traj.samples();
  CollisionRisk out;
  out.d_series.resize(samples.size());
  out.risk_series.resize(samples.size());
  parallel_for(samples.size(), workers, [&](std::size_t i) {
    out.d_series[i] = min_distance(samples[i].body, obstacles);
    out.risk_series[i] = instantaneous_collision_risk(out.d_series[i], p);
  });
  std::vector<double> times(samples.size());
  std::transform(samples.begin(), samples.end(), times.begin(), [](const auto& s) { return s.t; });
  out.d_min = *std::min_element(out.d_series.begin(), out.d_series.end());
  out.peak = instantaneous_collision_risk(out.d_min, p);
  out.exposure = std::min(time_average(times, out.risk_series), out.peak);
  out.combined = p.w_peak * out.peak + p.w_exposure * out.exposure;
  return out;
}

std::string collision_series_csv(const TimedTrajectory& traj, const CollisionRisk& risk) {
  std::string out = "t,d,risk\n";
  for (std::size_t i = 0; i < traj.size(); ++i) {
    out += format_double(traj.samples()[i].t) + ',' + format_double(risk.d_series[i]) + ',' +
           format_double(risk.risk_series[i]) + '\n';
  }
  return out;
}

}  // namespace riskaware
