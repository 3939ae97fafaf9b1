#pragma once

// Spatial primitives shared by the risk metrics: rigid poses and twists,
// convex support polygons, and primitive shape sets with exact minimum
// distance queries.

#include <Eigen/Core>
#include <Eigen/Geometry>
#include <span>
#include <variant>
#include <vector>

namespace riskaware {

using Vec2 = Eigen::Vector2d;
using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;
using Vec6 = Eigen::Matrix<double, 6, 1>;
using Mat6 = Eigen::Matrix<double, 6, 6>;

// Exact-algebra tolerance (orthonormality, collinearity, unit normals).
inline constexpr double kGeometryTolerance = 1e-9;
// Tolerance for iterative or sampled distance results.
inline constexpr double kDistanceTolerance = 1e-6;

Mat3 skew(const Vec3& v);

// Rigid transform. The rotation is checked for orthonormality at construction.
class Pose {
 public:
  Pose();
  Pose(const Mat3& rotation, const Vec3& translation);

  static Pose identity() { return Pose(); }
  static Pose from_translation(const Vec3& translation);
  // Fixed-axis roll/pitch/yaw: R = Rz(yaw) * Ry(pitch) * Rx(roll).
  static Pose from_rpy(double roll, double pitch, double yaw, const Vec3& translation);

  const Mat3& rotation() const { return rotation_; }
  const Vec3& translation() const { return translation_; }

  Pose inverse() const;
  Vec3 apply(const Vec3& point) const { return rotation_ * point + translation_; }
  Pose operator*(const Pose& other) const;

  bool operator==(const Pose& other) const = default;

 private:
  Mat3 rotation_;
  Vec3 translation_;
};

// Rigid body velocity, angular part first.
struct Twist {
  Vec3 angular = Vec3::Zero();
  Vec3 linear = Vec3::Zero();

  Vec6 as_vector() const;
  static Twist from_vector(const Vec6& v);
  bool operator==(const Twist& other) const = default;
};

// 6x6 adjoint of `pose`. For a pose of frame B in frame A, maps a twist in B
// coordinates to the same rigid motion in A coordinates:
//   w_A = R w_B,   v_A = p x (R w_B) + R v_B
Mat6 adjoint(const Pose& pose);

// Counterclockwise, strictly convex polygon with at least three vertices.
class ConvexPolygon2D {
 public:
  // Validates that `ccw_vertices` are already strictly convex and
  // counterclockwise; throws DegenerateGeometryError otherwise.
  static ConvexPolygon2D from_ccw_vertices(std::vector<Vec2> ccw_vertices);

  const std::vector<Vec2>& vertices() const { return vertices_; }
  std::size_t size() const { return vertices_.size(); }
  double area() const;
  Vec2 centroid() const;
  // True when `point` lies inside or on the boundary.
  bool contains(const Vec2& point) const;

  bool operator==(const ConvexPolygon2D& other) const = default;

 private:
  explicit ConvexPolygon2D(std::vector<Vec2> vertices) : vertices_(std::move(vertices)) {}
  std::vector<Vec2> vertices_;
};

// Monotone-chain hull. Collinear boundary points (within 1e-9 m) are dropped.
// Throws DegenerateGeometryError for fewer than three non-collinear points.
ConvexPolygon2D convex_hull(std::span<const Vec2> points);

// Positive inside (distance to nearest edge), zero on the boundary,
// negative outside (minus distance to the polygon).
double signed_margin(const Vec2& point, const ConvexPolygon2D& polygon);

struct Sphere {
  Vec3 center = Vec3::Zero();
  double radius = 0.0;
  bool operator==(const Sphere&) const = default;
};

// Segment [a, b] swept by a ball of `radius`.
struct Capsule {
  Vec3 a = Vec3::Zero();
  Vec3 b = Vec3::Zero();
  double radius = 0.0;
  bool operator==(const Capsule&) const = default;
};

// Oriented box centered at pose.translation().
struct Box {
  Pose pose;
  Vec3 half_extents = Vec3::Zero();
  bool operator==(const Box&) const = default;
};

using Shape = std::variant<Sphere, Capsule, Box>;

// Rigidly moves a shape: the result is `pose` applied to `shape`.
Shape transformed(const Shape& shape, const Pose& pose);

// Nearest point on the surface of `shape` to `point` plus the outward
// surface normal there. Valid for interior points as well.
struct SurfacePoint {
  Vec3 point;
  Vec3 outward_normal;
};
SurfacePoint closest_surface_point(const Shape& shape, const Vec3& point);

// Signed distance from `point` to the solid (negative inside).
double signed_distance(const Shape& shape, const Vec3& point);

// Distance between two solids; 0 when they touch or overlap.
double shape_distance(const Shape& a, const Shape& b);

class ShapeSet {
 public:
  ShapeSet() = default;
  // Throws ValidationError on non-positive radius or half-extent.
  explicit ShapeSet(std::vector<Shape> shapes);

  const std::vector<Shape>& shapes() const { return shapes_; }
  bool empty() const { return shapes_.empty(); }
  std::size_t size() const { return shapes_.size(); }

  ShapeSet transformed(const Pose& pose) const;
  ShapeSet translated(const Vec3& offset) const { return transformed(Pose::from_translation(offset)); }

  bool operator==(const ShapeSet&) const = default;

 private:
  std::vector<Shape> shapes_;
};

// Minimum over all primitive pairs; throws ValidationError on empty sets.
double min_distance(const ShapeSet& a, const ShapeSet& b);

// Distance between segments [p0,p1] and [q0,q1].
double segment_segment_distance(const Vec3& p0, const Vec3& p1, const Vec3& q0, const Vec3& q1);

// Shape center (sphere center, capsule midpoint, box center).
Vec3 shape_center(const Shape& shape);

}  // namespace riskaware
