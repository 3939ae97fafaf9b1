#include "riskaware/balance_risk.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

#include "riskaware/errors.hpp"
#include "riskaware/format.hpp"
#include "riskaware/parallel.hpp"

namespace riskaware {

namespace {

double cross(const Vec2& a, const Vec2& b) { return a.x() * b.y() - a.y() * b.x(); }

// Signed area of disk(origin, r) intersected with triangle (origin, a, b).
double disk_triangle_area(const Vec2& a, const Vec2& b, double r) {
  const Vec2 d = b - a;
  const double qa = d.squaredNorm();
  if (qa == 0.0) return 0.0;
  // |a + t d|^2 = r^2
  const double qb = 2.0 * a.dot(d);
  const double qc = a.squaredNorm() - r * r;
  std::array<double, 4> cuts{0.0, 0.0, 0.0, 1.0};
  std::size_t n = 1;
  const double disc = qb * qb - 4.0 * qa * qc;
  if (disc > 0.0) {
    const double root = std::sqrt(disc);
    for (double t : {(-qb - root) / (2.0 * qa), (-qb + root) / (2.0 * qa)}) {
      if (t > 0.0 && t < 1.0) cuts[n++] = t;
    }
  }
  cuts[n++] = 1.0;
  double area = 0.0;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const Vec2 p = a + cuts[i] * d;
    const Vec2 q = a + cuts[i + 1] * d;
    const Vec2 mid = 0.5 * (p + q);
    if (mid.squaredNorm() <= r * r) {
      area += 0.5 * cross(p, q);
    } else {
      area += 0.5 * r * r * std::atan2(cross(p, q), p.dot(q));
    }
  }
  return area;
}

}  // namespace

void FallRiskParams::validate(const std::string& field_path) const {
  if (!(uncertainty_radius >= 0.0) || !std::isfinite(uncertainty_radius)) {
    throw ValidationError(field_path + ".uncertainty_radius", "uncertainty radius must be >= 0");
  }
  if (!(w_peak >= 0.0) || !(w_exposure >= 0.0)) {
    throw ValidationError(field_path + ".w_peak", "weights must be non-negative");
  }
  if (std::abs(w_peak + w_exposure - 1.0) > 1e-12) {
    throw ValidationError(field_path + ".w_peak", "w_peak + w_exposure must equal 1");
  }
}

double disk_polygon_intersection_area(const Vec2& center, double radius, const ConvexPolygon2D& polygon) {
  if (radius <= 0.0) return 0.0;
  const auto& v = polygon.vertices();
  double area = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    area += disk_triangle_area(v[i] - center, v[(i + 1) % v.size()] - center, radius);
  }
  return std::clamp(area, 0.0, std::numbers::pi * radius * radius);
}

double instantaneous_fall_risk(const Vec2& com_xy, const ConvexPolygon2D& support, const FallRiskParams& p) {
  const double r = p.uncertainty_radius;
  if (r == 0.0) return support.contains(com_xy) ? 0.0 : 1.0;
  const double margin = signed_margin(com_xy, support);
  if (margin >= r) return 0.0;
  if (margin <= -r) return 1.0;
  const double disk = std::numbers::pi * r * r;
  return std::clamp(1.0 - disk_polygon_intersection_area(com_xy, r, support) / disk, 0.0, 1.0);
}

FallRisk trajectory_fall_risk(const TimedTrajectory& traj, const FallRiskParams& p, std::size_t workers) {
  const auto& samples = traj.samples();
  FallRisk out;
  out.margin_series.resize(samples.size());
  out.risk_series.resize(samples.size());
  parallel_for(samples.size(), workers, [&](std::size_t i) {
    out.margin_series[i] = signed_margin(samples[i].com_xy, samples[i].support);
    out.risk_series[i] = instantaneous_fall_risk(samples[i].com_xy, samples[i].support, p);
  });
  std::vector<double> times(samples.size());
  std::transform(samples.begin(), samples.end(), times.begin(), [](const auto& s) { return s.t; });
  out.peak = *std::max_element(out.risk_series.begin(), out.risk_series.end());
  out.exposure = std::min(time_average(times, out.risk_series), out.peak);
  out.combined = p.w_peak * out.peak + p.w_exposure * out.exposure;
  return out;
}

std::string fall_series_csv(const TimedTrajectory& traj, const FallRisk& risk) {
  std::string out = "t,margin,risk\n";
  for (std::size_t i = 0; i < traj.size(); ++i) {
    out += format_double(traj.samples()[i].t) + ',' + format_double(risk.margin_series[i]) + ',' +
           format_double(risk.risk_series[i]) + '\n';
  }
  return out;
}

}  // namespace riskaware
