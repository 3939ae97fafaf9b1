#pragma once

// Domain model of a manipulation task: obstacles, candidate action
// compositions and the risk/noise parameters used to evaluate them.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "riskaware/balance_risk.hpp"
#include "riskaware/collision_risk.hpp"
#include "riskaware/geometry.hpp"
#include "riskaware/grasp.hpp"
#include "riskaware/trajectory.hpp"

namespace riskaware {

inline constexpr int kSchemaVersion = 1;

enum class ActionKind { kPickLeft, kPickRight, kPlaceLeft, kPlaceRight, kHandover, kStep, kReach };

const char* to_string(ActionKind kind);
ActionKind action_kind_from_string(const std::string& name);
// Pick, place and handover move the manipulated object.
bool manipulates_object(ActionKind kind);

// Expected hand pose error at grasp time; feeds the sigmoid grasp risk.
struct GraspContext {
  Vec3 position_deviation = Vec3::Zero();
  Vec3 orientation_deviation = Vec3::Zero();
  bool operator==(const GraspContext&) const = default;
};

struct Action {
  ActionKind kind = ActionKind::kReach;
  TimedTrajectory trajectory;
  std::optional<GraspContext> grasp;
  bool operator==(const Action&) const = default;
};

// Ordered, time-contiguous sequence of actions completing the task.
struct Composition {
  std::string id;
  std::vector<Action> actions;

  // Non-empty; each action starts where the previous one ends (time,
  // CoM and end effector within 1e-6).
  void validate(const std::string& field_path) const;
  // All samples of all actions in order, boundary samples kept.
  TimedTrajectory concatenated() const;
  bool operator==(const Composition&) const = default;
};

struct RiskWeights {
  double collision = 0.3;
  double fall = 0.5;
  double grasp = 0.2;

  void validate(const std::string& field_path) const;
  bool operator==(const RiskWeights&) const = default;
};

struct NoiseModel {
  double obstacle_pose_sigma = 0.0;
  double com_sigma = 0.0;
  std::uint64_t trials = 1000;
  std::uint64_t seed = 0;

  void validate(const std::string& field_path) const;
  bool operator==(const NoiseModel&) const = default;
};

struct GraspRiskParams {
  AxisSigmoidParams axes = default_axis_params();
  GraspRiskWeights weights;
  bool operator==(const GraspRiskParams&) const = default;
};

struct ScenarioParams {
  CollisionRiskParams collision;
  FallRiskParams fall;
  RiskWeights weights;
  NoiseModel noise;
  GraspRiskParams grasp;

  void validate(const std::string& field_path) const;
  bool operator==(const ScenarioParams&) const = default;
};

struct NamedObstacle {
  std::string name;
  ShapeSet shapes;
  bool operator==(const NamedObstacle&) const = default;
};

struct Scenario {
  int schema_version = kSchemaVersion;
  std::string name;
  std::vector<NamedObstacle> obstacles;
  std::optional<ShapeSet> manipulated_object;
  std::vector<Composition> compositions;
  ScenarioParams params;

  void validate() const;
  // Union of all obstacle shapes.
  ShapeSet obstacle_shapes() const;
  const Composition& composition(const std::string& id) const;
  bool operator==(const Scenario&) const = default;
};

}  // namespace riskaware
