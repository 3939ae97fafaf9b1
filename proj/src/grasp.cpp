#include "riskaware/grasp.hpp"

#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "riskaware/errors.hpp"
#include "riskaware/format.hpp"
#include "riskaware/parallel.hpp"

namespace riskaware {

namespace {

// Singular values below this fraction of the largest count as zero.
constexpr double kRankTolerance = 1e-9;

Eigen::JacobiSVD<Eigen::MatrixXd> svd_of(const Eigen::MatrixXd& m, unsigned options) {
  return Eigen::JacobiSVD<Eigen::MatrixXd>(m, options);
}

// Rotation whose z axis is `normal`.
Mat3 frame_from_normal(const Vec3& normal) {
  const Vec3 z = normal.normalized();
  const Vec3 trial = std::abs(z.x()) < 0.9 ? Vec3::UnitX() : Vec3::UnitY();
  const Vec3 x = trial.cross(z).normalized();
  const Vec3 y = z.cross(x);
  Mat3 r;
  r.col(0) = x;
  r.col(1) = y;
  r.col(2) = z;
  return r;
}

}  // namespace

int constraint_dimension(ContactModel model) {
  switch (model) {
    case ContactModel::kFullConstraint:
      return 6;
    case ContactModel::kHardFinger:
      return 3;
    case ContactModel::kFrictionlessPoint:
      return 1;
  }
  return 6;
}

const char* to_string(ContactModel model) {
  switch (model) {
    case ContactModel::kFullConstraint:
      return "full_constraint";
    case ContactModel::kHardFinger:
      return "hard_finger";
    case ContactModel::kFrictionlessPoint:
      return "frictionless_point";
  }
  return "full_constraint";
}

ContactModel contact_model_from_string(const std::string& name) {
  if (name == "full_constraint") return ContactModel::kFullConstraint;
  if (name == "hard_finger") return ContactModel::kHardFinger;
  if (name == "frictionless_point") return ContactModel::kFrictionlessPoint;
  throw ValidationError("", "unknown contact model '" + name + "'");
}

Eigen::Index GraspMatrix::rank() const {
  if (matrix.size() == 0) return 0;
  const Eigen::VectorXd s = svd_of(matrix, 0).singularValues();
  if (s.size() == 0 || s(0) == 0.0) return 0;
  return (s.array() > kRankTolerance * s(0)).count();
}

GraspMatrix build_grasp_matrix(const std::vector<Contact>& contacts) {
  if (contacts.empty()) throw ValidationError("contacts", "grasp matrix needs at least one contact");
  Eigen::Index cols = 0;
  for (std::size_t i = 0; i < contacts.size(); ++i) {
    if (std::abs(contacts[i].normal.norm() - 1.0) > kGeometryTolerance) {
      throw ValidationError("contacts[" + std::to_string(i) + "].normal", "normal must be unit length");
    }
    cols += constraint_dimension(contacts[i].model);
  }
  GraspMatrix g;
  g.contact_count = contacts.size();
  g.matrix = Eigen::MatrixXd::Zero(6, cols);
  Eigen::Index col = 0;
  for (const Contact& c : contacts) {
    const Vec3& p = c.frame.translation();
    switch (c.model) {
      case ContactModel::kFullConstraint: {
        // Transpose of the inverse adjoint: contact wrench -> object wrench.
        g.matrix.block<6, 6>(0, col) = adjoint(c.frame.inverse()).transpose();
        break;
      }
      case ContactModel::kHardFinger: {
        const Mat3& r = c.frame.rotation();
        g.matrix.block<3, 3>(0, col) = skew(p) * r;
        g.matrix.block<3, 3>(3, col) = r;
        break;
      }
      case ContactModel::kFrictionlessPoint: {
        g.matrix.block<3, 1>(0, col) = p.cross(c.normal);
        g.matrix.block<3, 1>(3, col) = c.normal;
        break;
      }
    }
    col += constraint_dimension(c.model);
  }
  return g;
}

double grasp_quality(const GraspMatrix& g) {
  if (g.matrix.rows() != 6 || g.matrix.cols() < 6) return 0.0;
  const Eigen::VectorXd s = svd_of(g.matrix, 0).singularValues();
  const double s_max = s(0);
  const double s_min = s(5);
  if (!(s_max > 0.0) || s_min <= kRankTolerance * s_max) return 0.0;
  return s_min / s_max;
}

std::vector<Twist> free_motions(const GraspMatrix& g) {
  const auto svd = svd_of(g.matrix, Eigen::ComputeFullU);
  const Eigen::Index rank = g.rank();
  std::vector<Twist> basis;
  for (Eigen::Index i = rank; i < 6; ++i) basis.push_back(Twist::from_vector(svd.matrixU().col(i)));
  return basis;
}

// ---------------------------------------------------------------------------
// Sigmoid risk

void SigmoidParams::validate(const std::string& field_path) const {
  if (!(a > 0.0) || !std::isfinite(a)) throw ValidationError(field_path + ".a", "slope a must be > 0");
  if (!std::isfinite(b)) throw ValidationError(field_path + ".b", "offset b must be finite");
  if (!(x_max > 0.0) || !std::isfinite(x_max)) {
    throw ValidationError(field_path + ".x_max", "x_max must be > 0");
  }
}

double deviation_risk(double x, const SigmoidParams& p) {
  if (!(x >= 0.0)) throw ValidationError("x", "deviation must be non-negative");
  p.validate("params");
  const double z = -p.a * x / p.x_max + p.b;
  // Only ever exponentiate a non-positive number.
  if (z >= 0.0) {
    const double e = std::exp(-z);
    return e / (1.0 + e);
  }
  return 1.0 / (1.0 + std::exp(z));
}

void GraspRiskWeights::validate(const std::string& field_path) const {
  if (!position.allFinite() || !orientation.allFinite() || position.minCoeff() < 0.0 ||
      orientation.minCoeff() < 0.0) {
    throw ValidationError(field_path, "grasp risk weights must be finite and non-negative");
  }
  const double sum = position.sum() + orientation.sum();
  if (std::abs(sum - 1.0) > 1e-12) {
    throw ValidationError(field_path, "grasp risk weights must sum to 1 (got " + format_double(sum) + ")");
  }
}

AxisSigmoidParams default_axis_params() {
  AxisSigmoidParams p;
  for (int i = 0; i < 3; ++i) p[i] = SigmoidParams{10.0, 5.0, 0.05};
  for (int i = 3; i < 6; ++i) p[i] = SigmoidParams{10.0, 5.0, 0.35};
  return p;
}

double combined_grasp_risk(const Vec3& position_deviation, const Vec3& angular_deviation,
                           const AxisSigmoidParams& params, const GraspRiskWeights& weights) {
  weights.validate("grasp_weights");
  double total = 0.0;
  for (int i = 0; i < 3; ++i) {
    if (position_deviation[i] < 0.0 || angular_deviation[i] < 0.0) {
      throw ValidationError("grasp_deviation", "deviations must be non-negative");
    }
    total += weights.position[i] * deviation_risk(position_deviation[i], params[i]);
    total += weights.orientation[i] * deviation_risk(angular_deviation[i], params[3 + i]);
  }
  return total;
}

// ---------------------------------------------------------------------------
// Quasi-static hand model

namespace {

struct NearestShape {
  std::size_t index = 0;
  double signed_distance = std::numeric_limits<double>::infinity();
};

NearestShape nearest_shape(const ShapeSet& object, const Vec3& point) {
  NearestShape best;
  for (std::size_t i = 0; i < object.size(); ++i) {
    const double d = signed_distance(object.shapes()[i], point);
    if (d < best.signed_distance) best = {i, d};
  }
  return best;
}

}  // namespace

double quality_of(const std::vector<Contact>& contacts, double reference_length) {
  if (contacts.empty()) return 0.0;
  std::vector<Contact> scaled = contacts;
  for (Contact& c : scaled) c.frame = Pose(c.frame.rotation(), c.frame.translation() / reference_length);
  return grasp_quality(build_grasp_matrix(scaled));
}

std::vector<Contact> contacts_at(const ShapeSet& object, const std::vector<Vec3>& centers,
                                 const std::vector<Fingertip>& tips, ContactModel model,
                                 std::vector<bool>* touching) {
  std::vector<Contact> contacts;
  if (touching) touching->assign(centers.size(), false);
  for (std::size_t i = 0; i < centers.size(); ++i) {
    const NearestShape near = nearest_shape(object, centers[i]);
    if (near.signed_distance - tips[i].radius > kContactTolerance) continue;
    const SurfacePoint sp = closest_surface_point(object.shapes()[near.index], centers[i]);
    const Vec3 inward = -sp.outward_normal;
    contacts.push_back(Contact{Pose(frame_from_normal(inward), sp.point), inward, model});
    if (touching) (*touching)[i] = true;
  }
  return contacts;
}

ClosedGrasp close_hand(const ShapeSet& object, const Hand& hand, const Pose& hand_pose) {
  ClosedGrasp out;
  for (const Fingertip& tip : hand.fingertips) {
    const Vec3 start = hand_pose.apply(tip.start);
    const Vec3 dir = (hand_pose.rotation() * tip.direction).normalized();
    // Sphere tracing: the gap is a safe step because distance is 1-Lipschitz.
    double travel = 0.0;
    Vec3 center = start;
    for (int iter = 0; iter < 10000; ++iter) {
      center = start + travel * dir;
      const double gap = nearest_shape(object, center).signed_distance - tip.radius;
      if (gap <= kContactTolerance) break;
      if (travel + gap > tip.max_travel) {
        center = start + tip.max_travel * dir;
        break;
      }
      travel += gap;
    }
    out.fingertip_centers.push_back(center);
  }
  out.contacts = contacts_at(object, out.fingertip_centers, hand.fingertips, hand.contact_model, &out.touching);
  out.quality = quality_of(out.contacts, hand.reference_length);
  return out;
}

std::vector<double> SweepGrid::Range::values() const {
  if (!(step > 0.0)) throw ValidationError("grid.step", "step must be > 0");
  if (stop < start) throw ValidationError("grid.stop", "stop must be >= start");
  const auto n = static_cast<std::size_t>(std::floor((stop - start) / step + 1e-9)) + 1;
  std::vector<double> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = start + static_cast<double>(i) * step;
  return v;
}

SweepGrid SweepGrid::parse(const std::string& text) {
  static const std::array<std::string, 6> kNames = {"x", "y", "z", "roll", "pitch", "yaw"};
  SweepGrid grid;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw ValidationError("grid", "expected axis=start:stop:step, got '" + item + "'");
    const std::string name = item.substr(0, eq);
    const auto it = std::find(kNames.begin(), kNames.end(), name);
    if (it == kNames.end()) throw ValidationError("grid", "unknown axis '" + name + "'");
    std::stringstream rs(item.substr(eq + 1));
    std::array<double, 3> v{};
    for (double& x : v) {
      std::string part;
      if (!std::getline(rs, part, ':')) throw ValidationError("grid." + name, "expected start:stop:step");
      try {
        x = std::stod(part);
      } catch (const std::exception&) {
        throw ValidationError("grid." + name, "not a number: '" + part + "'");
      }
    }
    Range& r = grid.axes[static_cast<std::size_t>(it - kNames.begin())];
    r = Range{v[0], v[1], v[2]};
    r.values();
  }
  return grid;
}

std::vector<PoseOffset> SweepGrid::offsets() const {
  std::array<std::vector<double>, 6> vals;
  for (std::size_t i = 0; i < 6; ++i) vals[i] = axes[i].values();
  std::vector<PoseOffset> out;
  for (double x : vals[0])
    for (double y : vals[1])
      for (double z : vals[2])
        for (double roll : vals[3])
          for (double pitch : vals[4])
            for (double yaw : vals[5]) out.push_back(PoseOffset{x, y, z, roll, pitch, yaw});
  return out;
}

std::vector<SweepCell> pregrasp_sweep(const ShapeSet& object, const Hand& hand,
                                      const std::vector<PoseOffset>& offsets, std::size_t workers) {
  if (offsets.empty()) throw ValidationError("grid", "sweep grid is empty");
  if (hand.fingertips.empty()) throw ValidationError("hand.fingertips", "hand has no fingertips");
  std::vector<SweepCell> cells(offsets.size());
  parallel_for(offsets.size(), workers, [&](std::size_t i) {
    const ClosedGrasp g = close_hand(object, hand, offsets[i].to_pose() * hand.nominal);
    cells[i] = SweepCell{offsets[i], g.quality, g.contacts.size()};
  });
  return cells;
}

std::string sweep_to_csv(const std::vector<SweepCell>& cells) {
  std::string out = "offset_x,offset_y,offset_z,roll,pitch,yaw,Q,contact_count\n";
  for (const SweepCell& c : cells) {
    const PoseOffset& o = c.offset;
    for (double v : {o.x, o.y, o.z, o.roll, o.pitch, o.yaw, c.quality}) {
      out += format_double(v);
      out += ',';
    }
    out += std::to_string(c.contact_count);
    out += '\n';
  }
  return out;
}

ShakeResult quasi_static_shake(const ShapeSet& object, const Hand& hand, const Pose& hand_pose,
                               double amplitude, int cycles, int samples_per_cycle, const Vec3& axis) {
  if (amplitude < 0.0 || cycles < 1 || samples_per_cycle < 1) {
    throw ValidationError("shake", "amplitude >= 0, cycles >= 1 and samples_per_cycle >= 1 required");
  }
  const ClosedGrasp initial = close_hand(object, hand, hand_pose);
  ShakeResult result{initial.quality, initial.quality};
  if (initial.contacts.empty()) return ShakeResult{0.0, 0.0};
  const Vec3 unit = axis.normalized();
  for (int cycle = 0; cycle < cycles; ++cycle) {
    for (int k = 0; k < samples_per_cycle; ++k) {
      const double phase = 2.0 * std::numbers::pi * k / samples_per_cycle;
      const Vec3 displacement = amplitude * std::sin(phase) * unit;
      std::vector<bool> touching;
      std::vector<Contact> contacts = contacts_at(object.translated(displacement), initial.fingertip_centers,
                                                  hand.fingertips, hand.contact_model, &touching);
      bool lost = false;
      for (std::size_t i = 0; i < touching.size(); ++i) lost = lost || (initial.touching[i] && !touching[i]);
      if (lost) {
        result.quality_after_min = 0.0;
        return result;
      }
      // Express contacts in the displaced object frame.
      for (Contact& c : contacts) c.frame = Pose(c.frame.rotation(), c.frame.translation() - displacement);
      result.quality_after_min = std::min(result.quality_after_min, quality_of(contacts, hand.reference_length));
    }
  }
  return result;
}

}  // namespace riskaware
