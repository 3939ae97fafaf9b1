#pragma once

// Grasp-matrix construction and quality, pose-deviation sigmoid risk, and a
// quasi-static pre-grasp study (offset sweep and sinusoidal shake).

#include <Eigen/Core>
#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "riskaware/geometry.hpp"

namespace riskaware {

enum class ContactModel {
  kFullConstraint,     // 6 constrained directions
  kHardFinger,         // 3 force directions
  kFrictionlessPoint,  // normal force only
};

int constraint_dimension(ContactModel model);
const char* to_string(ContactModel model);
ContactModel contact_model_from_string(const std::string& name);

// A contact on the object. `frame` is the contact frame relative to the
// object frame; `normal` is expressed in the object frame and points into
// the object.
struct Contact {
  Pose frame;
  Vec3 normal = Vec3::UnitZ();
  ContactModel model = ContactModel::kFullConstraint;
};

// Wrench-side grasp matrix: object wrench = G * stacked contact forces, and
// contact-frame velocities = G^T * object twist. Wrenches are ordered
// (torque, force) to pair with twists ordered (angular, linear).
struct GraspMatrix {
  Eigen::MatrixXd matrix;
  std::size_t contact_count = 0;

  Eigen::Index rank() const;
};

GraspMatrix build_grasp_matrix(const std::vector<Contact>& contacts);

// Inverse condition number sigma_min / sigma_max in [0, 1]; zero when G does
// not have full row rank.
double grasp_quality(const GraspMatrix& g);

// Orthonormal basis of object twists t with G^T t = 0.
std::vector<Twist> free_motions(const GraspMatrix& g);

struct SigmoidParams {
  double a = 10.0;
  double b = 5.0;
  double x_max = 1.0;

  void validate(const std::string& field_path) const;
  bool operator==(const SigmoidParams&) const = default;
};

// P(x) = 1 / (1 + exp(-a * x / x_max + b)).
double deviation_risk(double x, const SigmoidParams& p);

struct GraspRiskWeights {
  Vec3 position = Vec3::Constant(1.0 / 6.0);
  Vec3 orientation = Vec3::Constant(1.0 / 6.0);

  void validate(const std::string& field_path) const;
  bool operator==(const GraspRiskWeights&) const = default;
};

// Per-axis sigmoid parameters: x, y, z position then roll, pitch, yaw.
using AxisSigmoidParams = std::array<SigmoidParams, 6>;

// Default per-axis parameters: x_max 0.05 m for positions, 0.35 rad for angles.
AxisSigmoidParams default_axis_params();

double combined_grasp_risk(const Vec3& position_deviation, const Vec3& angular_deviation,
                           const AxisSigmoidParams& params, const GraspRiskWeights& weights);

// Hand model: fingertip spheres closing along straight rays in the hand frame.
struct Fingertip {
  Vec3 start = Vec3::Zero();      // hand frame
  Vec3 direction = Vec3::UnitX(); // hand frame, unit
  double radius = 0.01;
  double max_travel = 0.1;
};

struct Hand {
  std::vector<Fingertip> fingertips;
  Pose nominal;
  ContactModel contact_model = ContactModel::kHardFinger;
  // Moment arms are divided by this length before building G so that torque
  // and force rows are commensurate.
  double reference_length = 1.0;
};

// Fingertip within this distance of the surface counts as touching.
inline constexpr double kContactTolerance = 1e-3;

struct ClosedGrasp {
  std::vector<Vec3> fingertip_centers;      // world frame, after closing
  std::vector<bool> touching;               // per fingertip
  std::vector<Contact> contacts;            // object frame
  double quality = 0.0;
};

// Closes every fingertip of `hand` placed at `hand_pose` onto `object`
// (object frame = world frame) and evaluates the resulting grasp.
ClosedGrasp close_hand(const ShapeSet& object, const Hand& hand, const Pose& hand_pose);

// Contacts of fixed fingertip spheres against `object`.
std::vector<Contact> contacts_at(const ShapeSet& object, const std::vector<Vec3>& centers,
                                 const std::vector<Fingertip>& tips, ContactModel model,
                                 std::vector<bool>* touching = nullptr);

double quality_of(const std::vector<Contact>& contacts, double reference_length);

struct PoseOffset {
  double x = 0.0, y = 0.0, z = 0.0;
  double roll = 0.0, pitch = 0.0, yaw = 0.0;

  Pose to_pose() const { return Pose::from_rpy(roll, pitch, yaw, Vec3(x, y, z)); }
  bool operator==(const PoseOffset&) const = default;
};

struct SweepCell {
  PoseOffset offset;
  double quality = 0.0;
  std::size_t contact_count = 0;
};

// Inclusive start:stop:step ranges per axis; unspecified axes stay at 0.
struct SweepGrid {
  struct Range {
    double start = 0.0;
    double stop = 0.0;
    double step = 1.0;
    std::vector<double> values() const;
  };
  std::array<Range, 6> axes{};

  // "x=-0.02:0.02:0.005,y=-0.02:0.02:0.005". Axis names: x y z roll pitch yaw.
  static SweepGrid parse(const std::string& text);
  std::vector<PoseOffset> offsets() const;
};

// For each offset, the hand is placed at offset * nominal, fingertips closed
// and Q evaluated. Cells are computed independently and returned in grid order.
std::vector<SweepCell> pregrasp_sweep(const ShapeSet& object, const Hand& hand,
                                      const std::vector<PoseOffset>& offsets, std::size_t workers = 1);

std::string sweep_to_csv(const std::vector<SweepCell>& cells);

struct ShakeResult {
  double quality_before = 0.0;
  double quality_after_min = 0.0;
};

// Displaces the object along `axis` by amplitude * sin(2 pi k / samples_per_cycle)
// with the closed fingertips held fixed, recomputing contacts at each sample.
ShakeResult quasi_static_shake(const ShapeSet& object, const Hand& hand, const Pose& hand_pose,
                               double amplitude, int cycles, int samples_per_cycle,
                               const Vec3& axis = Vec3::UnitX());

}  // namespace riskaware
