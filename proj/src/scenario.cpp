#include "riskaware/scenario.hpp"

#include <array>
#include <cmath>
#include <set>

#include "riskaware/errors.hpp"
#include "riskaware/format.hpp"

namespace riskaware {

namespace {

constexpr std::array<std::pair<ActionKind, const char*>, 7> kActionNames = {{
    {ActionKind::kPickLeft, "pick_left"},
    {ActionKind::kPickRight, "pick_right"},
    {ActionKind::kPlaceLeft, "place_left"},
    {ActionKind::kPlaceRight, "place_right"},
    {ActionKind::kHandover, "handover"},
    {ActionKind::kStep, "step"},
    {ActionKind::kReach, "reach"},
}};

constexpr double kContiguityTolerance = 1e-6;

}  // namespace

const char* to_string(ActionKind kind) {
  for (const auto& [k, name] : kActionNames) {
    if (k == kind) return name;
  }
  return "reach";
}

ActionKind action_kind_from_string(const std::string& name) {
  for (const auto& [k, n] : kActionNames) {
    if (name == n) return k;
  }
  throw ValidationError("", "unknown action kind '" + name + "'");
}

bool manipulates_object(ActionKind kind) {
  return kind != ActionKind::kStep && kind != ActionKind::kReach;
}

void Composition::validate(const std::string& field_path) const {
  if (id.empty()) throw ValidationError(field_path + ".id", "composition id must not be empty");
  if (actions.empty()) throw ValidationError(field_path + ".actions", "composition needs at least one action");
  for (std::size_t i = 1; i < actions.size(); ++i) {
    const TrajectorySample& prev = actions[i - 1].trajectory.samples().back();
    const TrajectorySample& next = actions[i].trajectory.samples().front();
    const std::string path = field_path + ".actions[" + std::to_string(i) + "]";
    if (std::abs(next.t - prev.t) > kContiguityTolerance) {
      throw ValidationError(path + ".samples[0].t", "action must start when the previous one ends");
    }
    if ((next.com_xy - prev.com_xy).norm() > kContiguityTolerance ||
        (next.end_effector_point() - prev.end_effector_point()).norm() > kContiguityTolerance) {
      throw ValidationError(path + ".samples[0]", "action must start where the previous one ends");
    }
  }
}

TimedTrajectory Composition::concatenated() const {
  std::vector<TrajectorySample> all;
  for (const Action& a : actions) {
    all.insert(all.end(), a.trajectory.samples().begin(), a.trajectory.samples().end());
  }
  // Snap boundary timestamps so a sub-tolerance overlap cannot break ordering.
  for (std::size_t i = 1; i < all.size(); ++i) all[i].t = std::max(all[i].t, all[i - 1].t);
  return TimedTrajectory(std::move(all));
}

void RiskWeights::validate(const std::string& field_path) const {
  for (const auto& [v, name] : {std::pair{collision, "w_collision"}, {fall, "w_fall"}, {grasp, "w_grasp"}}) {
    if (!(v >= 0.0) || !std::isfinite(v)) {
      throw ValidationError(field_path + "." + name, "risk weight must be finite and non-negative");
    }
  }
  const double sum = collision + fall + grasp;
  if (std::abs(sum - 1.0) > 1e-12) {
    throw ValidationError(field_path, "w_collision + w_fall + w_grasp must equal 1 (got " + format_double(sum) + ")");
  }
}

void NoiseModel::validate(const std::string& field_path) const {
  if (!(obstacle_pose_sigma >= 0.0) || !std::isfinite(obstacle_pose_sigma)) {
    throw ValidationError(field_path + ".obstacle_pose_sigma", "sigma must be finite and >= 0");
  }
  if (!(com_sigma >= 0.0) || !std::isfinite(com_sigma)) {
    throw ValidationError(field_path + ".com_sigma", "sigma must be finite and >= 0");
  }
  if (trials < 1) throw ValidationError(field_path + ".trials", "trials must be >= 1");
}

void ScenarioParams::validate(const std::string& field_path) const {
  collision.validate(field_path + ".collision");
  fall.validate(field_path + ".fall");
  weights.validate(field_path + ".weights");
  noise.validate(field_path + ".noise");
  for (std::size_t i = 0; i < grasp.axes.size(); ++i) {
    grasp.axes[i].validate(field_path + ".grasp.axes[" + std::to_string(i) + "]");
  }
  grasp.weights.validate(field_path + ".grasp.weights");
}

void Scenario::validate() const {
  if (schema_version != kSchemaVersion) {
    throw SchemaError("schema_version", "unsupported schema version " + std::to_string(schema_version));
  }
  if (obstacles.empty()) throw ValidationError("obstacles", "scenario needs at least one obstacle");
  std::set<std::string> names;
  for (std::size_t i = 0; i < obstacles.size(); ++i) {
    const std::string path = "obstacles[" + std::to_string(i) + "]";
    if (!names.insert(obstacles[i].name).second) {
      throw ValidationError(path + ".name", "duplicate obstacle name '" + obstacles[i].name + "'");
    }
    if (obstacles[i].shapes.empty()) throw ValidationError(path + ".shapes", "obstacle has no shapes");
  }
  std::set<std::string> ids;
  for (std::size_t i = 0; i < compositions.size(); ++i) {
    const std::string path = "compositions[" + std::to_string(i) + "]";
    const Composition& c = compositions[i];
    c.validate(path);
    if (!ids.insert(c.id).second) throw ValidationError(path + ".id", "duplicate composition id '" + c.id + "'");
    for (std::size_t j = 0; j < c.actions.size(); ++j) {
      if (manipulates_object(c.actions[j].kind) && !manipulated_object) {
        throw ValidationError(path + ".actions[" + std::to_string(j) + "].kind",
                              "action manipulates an object but the scenario has no manipulated_object");
      }
    }
  }
  params.validate("params");
}

ShapeSet Scenario::obstacle_shapes() const {
  std::vector<Shape> all;
  for (const NamedObstacle& o : obstacles) all.insert(all.end(), o.shapes.shapes().begin(), o.shapes.shapes().end());
  return ShapeSet(std::move(all));
}

const Composition& Scenario::composition(const std::string& id) const {
  for (const Composition& c : compositions) {
    if (c.id == id) return c;
  }
  throw NotFoundError("composition_id", "unknown composition '" + id + "'");
}

}  // namespace riskaware
