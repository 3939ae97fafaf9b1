#include "riskaware/geometry.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>

#include "riskaware/errors.hpp"

namespace riskaware {

const char* to_string(ErrorCategory category) {
  switch (category) {
    case ErrorCategory::kParse:
      return "parse";
    case ErrorCategory::kSchema:
      return "schema";
    case ErrorCategory::kValidation:
      return "validation";
    case ErrorCategory::kDegenerateGeometry:
      return "degenerate_geometry";
    case ErrorCategory::kNotFound:
      return "not_found";
    case ErrorCategory::kRuntime:
      return "runtime";
  }
  return "runtime";
}

Mat3 skew(const Vec3& v) {
  Mat3 m;
  m << 0.0, -v.z(), v.y(),
       v.z(), 0.0, -v.x(),
       -v.y(), v.x(), 0.0;
  return m;
}

// ---------------------------------------------------------------------------
// Pose / Twist / adjoint

Pose::Pose() : rotation_(Mat3::Identity()), translation_(Vec3::Zero()) {}

Pose::Pose(const Mat3& rotation, const Vec3& translation)
    : rotation_(rotation), translation_(translation) {
  if (!rotation.allFinite() || !translation.allFinite()) {
    throw ValidationError("pose", "non-finite pose component");
  }
  const double ortho_err = (rotation.transpose() * rotation - Mat3::Identity()).cwiseAbs().maxCoeff();
  if (ortho_err > kGeometryTolerance || std::abs(rotation.determinant() - 1.0) > kGeometryTolerance) {
    throw ValidationError("pose.rotation", "rotation is not orthonormal with determinant +1");
  }
}

Pose Pose::from_translation(const Vec3& translation) { return Pose(Mat3::Identity(), translation); }

Pose Pose::from_rpy(double roll, double pitch, double yaw, const Vec3& translation) {
  const Mat3 r = (Eigen::AngleAxisd(yaw, Vec3::UnitZ()) * Eigen::AngleAxisd(pitch, Vec3::UnitY()) *
                  Eigen::AngleAxisd(roll, Vec3::UnitX()))
                     .toRotationMatrix();
  return Pose(r, translation);
}

Pose Pose::inverse() const {
  Pose inv;
  inv.rotation_ = rotation_.transpose();
  inv.translation_ = -(inv.rotation_ * translation_);
  return inv;
}

Pose Pose::operator*(const Pose& other) const {
  Pose out;
  out.rotation_ = rotation_ * other.rotation_;
  out.translation_ = rotation_ * other.translation_ + translation_;
  return out;
}

Vec6 Twist::as_vector() const {
  Vec6 v;
  v << angular, linear;
  return v;
}

Twist Twist::from_vector(const Vec6& v) { return Twist{v.head<3>(), v.tail<3>()}; }

Mat6 adjoint(const Pose& pose) {
  const Mat3& r = pose.rotation();
  Mat6 ad = Mat6::Zero();
  ad.topLeftCorner<3, 3>() = r;
  ad.bottomLeftCorner<3, 3>() = skew(pose.translation()) * r;
  ad.bottomRightCorner<3, 3>() = r;
  return ad;
}

// ---------------------------------------------------------------------------
// Polygons

namespace {

double cross2(const Vec2& o, const Vec2& a, const Vec2& b) {
  return (a.x() - o.x()) * (b.y() - o.y()) - (a.y() - o.y()) * (b.x() - o.x());
}

// True when `mid` is a strict left turn from (prev -> mid -> next), i.e. its
// distance from line prev-next exceeds the geometry tolerance.
bool strict_left_turn(const Vec2& prev, const Vec2& mid, const Vec2& next) {
  const double base = (next - prev).norm();
  if (base == 0.0) return false;
  return cross2(prev, mid, next) / base > kGeometryTolerance;
}

double point_segment_distance_2d(const Vec2& p, const Vec2& a, const Vec2& b) {
  const Vec2 ab = b - a;
  const double len2 = ab.squaredNorm();
  double t = len2 > 0.0 ? (p - a).dot(ab) / len2 : 0.0;
  t = std::clamp(t, 0.0, 1.0);
  return (p - (a + t * ab)).norm();
}

}  // namespace

ConvexPolygon2D ConvexPolygon2D::from_ccw_vertices(std::vector<Vec2> ccw_vertices) {
  const std::size_t n = ccw_vertices.size();
  if (n < 3) throw DegenerateGeometryError("polygon needs at least 3 vertices");
  double turning = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2& prev = ccw_vertices[(i + n - 1) % n];
    const Vec2& cur = ccw_vertices[i];
    const Vec2& next = ccw_vertices[(i + 1) % n];
    if (!cur.allFinite()) throw DegenerateGeometryError("non-finite polygon vertex");
    if (!strict_left_turn(prev, cur, next)) {
      throw DegenerateGeometryError("polygon is not strictly convex and counterclockwise");
    }
    const Vec2 e0 = cur - prev;
    const Vec2 e1 = next - cur;
    turning += std::atan2(e0.x() * e1.y() - e0.y() * e1.x(), e0.dot(e1));
  }
  if (std::abs(turning - 2.0 * std::numbers::pi) > 1e-6) {
    throw DegenerateGeometryError("polygon winds more than once");
  }
  return ConvexPolygon2D(std::move(ccw_vertices));
}

double ConvexPolygon2D::area() const {
  double twice = 0.0;
  for (std::size_t i = 0; i < vertices_.size(); ++i) {
    const Vec2& a = vertices_[i];
    const Vec2& b = vertices_[(i + 1) % vertices_.size()];
    twice += a.x() * b.y() - a.y() * b.x();
  }
  return 0.5 * twice;
}

Vec2 ConvexPolygon2D::centroid() const {
  Vec2 c = Vec2::Zero();
  double twice = 0.0;
  for (std::size_t i = 0; i < vertices_.size(); ++i) {
    const Vec2& a = vertices_[i];
    const Vec2& b = vertices_[(i + 1) % vertices_.size()];
    const double w = a.x() * b.y() - a.y() * b.x();
    twice += w;
    c += w * (a + b);
  }
  return c / (3.0 * twice);
}

bool ConvexPolygon2D::contains(const Vec2& point) const {
  for (std::size_t i = 0; i < vertices_.size(); ++i) {
    if (cross2(vertices_[i], vertices_[(i + 1) % vertices_.size()], point) < 0.0) return false;
  }
  return true;
}

ConvexPolygon2D convex_hull(std::span<const Vec2> points) {
  std::vector<Vec2> pts(points.begin(), points.end());
  for (const Vec2& p : pts) {
    if (!p.allFinite()) throw DegenerateGeometryError("non-finite hull input point");
  }
  std::sort(pts.begin(), pts.end(), [](const Vec2& a, const Vec2& b) {
    return a.x() < b.x() || (a.x() == b.x() && a.y() < b.y());
  });
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() < 3) throw DegenerateGeometryError("convex hull needs at least 3 distinct points");

  std::vector<Vec2> hull(2 * pts.size());
  std::size_t k = 0;
  // Lower chain, then upper chain; a point is kept only on a strict left turn.
  for (const Vec2& p : pts) {
    while (k >= 2 && !strict_left_turn(hull[k - 2], hull[k - 1], p)) --k;
    hull[k++] = p;
  }
  for (std::size_t i = pts.size() - 1, lower = k + 1; i-- > 0;) {
    const Vec2& p = pts[i];
    while (k >= lower && !strict_left_turn(hull[k - 2], hull[k - 1], p)) --k;
    hull[k++] = p;
  }
  hull.resize(k - 1);
  if (hull.size() < 3) throw DegenerateGeometryError("convex hull input is collinear");
  return ConvexPolygon2D::from_ccw_vertices(std::move(hull));
}

double signed_margin(const Vec2& point, const ConvexPolygon2D& polygon) {
  const auto& v = polygon.vertices();
  const std::size_t n = v.size();
  double inside = std::numeric_limits<double>::infinity();
  bool is_inside = true;
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2 edge = v[(i + 1) % n] - v[i];
    const Vec2 inward(-edge.y(), edge.x());
    const double s = inward.dot(point - v[i]) / edge.norm();
    if (s < 0.0) is_inside = false;
    inside = std::min(inside, s);
  }
  if (is_inside) return inside;
  double outside = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i) {
    outside = std::min(outside, point_segment_distance_2d(point, v[i], v[(i + 1) % n]));
  }
  return -outside;
}

// ---------------------------------------------------------------------------
// Shapes

namespace {

Vec3 closest_on_segment(const Vec3& p, const Vec3& a, const Vec3& b) {
  const Vec3 ab = b - a;
  const double len2 = ab.squaredNorm();
  if (len2 == 0.0) return a;
  const double t = std::clamp((p - a).dot(ab) / len2, 0.0, 1.0);
  return a + t * ab;
}

Vec3 any_perpendicular(const Vec3& axis) {
  const Vec3 trial = std::abs(axis.x()) < 0.9 ? Vec3::UnitX() : Vec3::UnitY();
  Vec3 perp = axis.cross(trial);
  const double n = perp.norm();
  return n > 0.0 ? Vec3(perp / n) : Vec3::UnitZ();
}

Vec3 to_box_local(const Box& box, const Vec3& p) {
  return box.pose.rotation().transpose() * (p - box.pose.translation());
}

double point_box_distance(const Box& box, const Vec3& p) {
  const Vec3 local = to_box_local(box, p);
  const Vec3 excess = (local.cwiseAbs() - box.half_extents).cwiseMax(0.0);
  return excess.norm();
}

std::array<Vec3, 8> box_corners(const Box& box) {
  std::array<Vec3, 8> corners;
  for (int i = 0; i < 8; ++i) {
    const Vec3 sign((i & 1) ? 1.0 : -1.0, (i & 2) ? 1.0 : -1.0, (i & 4) ? 1.0 : -1.0);
    corners[i] = box.pose.apply(sign.cwiseProduct(box.half_extents));
  }
  return corners;
}

// Index pairs into box_corners() differing in exactly one sign bit.
constexpr std::array<std::array<int, 2>, 12> kBoxEdges = {{
    {0, 1}, {2, 3}, {4, 5}, {6, 7},
    {0, 2}, {1, 3}, {4, 6}, {5, 7},
    {0, 4}, {1, 5}, {2, 6}, {3, 7},
}};

// Slab test of segment [p0, p1] against the box, inclusive of the boundary.
bool segment_intersects_box(const Box& box, const Vec3& p0, const Vec3& p1) {
  const Vec3 a = to_box_local(box, p0);
  const Vec3 d = to_box_local(box, p1) - a;
  double t_min = 0.0;
  double t_max = 1.0;
  for (int i = 0; i < 3; ++i) {
    const double h = box.half_extents[i];
    if (std::abs(d[i]) < 1e-300) {
      if (std::abs(a[i]) > h) return false;
      continue;
    }
    double t0 = (-h - a[i]) / d[i];
    double t1 = (h - a[i]) / d[i];
    if (t0 > t1) std::swap(t0, t1);
    t_min = std::max(t_min, t0);
    t_max = std::min(t_max, t1);
    if (t_min > t_max) return false;
  }
  return true;
}

double segment_box_distance(const Box& box, const Vec3& p0, const Vec3& p1) {
  if (segment_intersects_box(box, p0, p1)) return 0.0;
  double best = std::min(point_box_distance(box, p0), point_box_distance(box, p1));
  const auto corners = box_corners(box);
  for (const auto& e : kBoxEdges) {
    best = std::min(best, segment_segment_distance(p0, p1, corners[e[0]], corners[e[1]]));
  }
  return best;
}

// Separating-axis overlap test; touching boxes count as overlapping.
bool boxes_overlap(const Box& a, const Box& b) {
  const Mat3& ra = a.pose.rotation();
  const Mat3& rb = b.pose.rotation();
  const Vec3 t = b.pose.translation() - a.pose.translation();
  std::array<Vec3, 15> axes;
  int count = 0;
  for (int i = 0; i < 3; ++i) axes[count++] = ra.col(i);
  for (int i = 0; i < 3; ++i) axes[count++] = rb.col(i);
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      const Vec3 c = ra.col(i).cross(rb.col(j));
      if (c.norm() > 1e-12) axes[count++] = c.normalized();
    }
  }
  for (int k = 0; k < count; ++k) {
    const Vec3& axis = axes[k];
    double reach = 0.0;
    for (int i = 0; i < 3; ++i) {
      reach += a.half_extents[i] * std::abs(ra.col(i).dot(axis));
      reach += b.half_extents[i] * std::abs(rb.col(i).dot(axis));
    }
    if (std::abs(t.dot(axis)) > reach) return false;
  }
  return true;
}

double box_box_distance(const Box& a, const Box& b) {
  if (boxes_overlap(a, b)) return 0.0;
  const auto ca = box_corners(a);
  const auto cb = box_corners(b);
  double best = std::numeric_limits<double>::infinity();
  for (const Vec3& c : ca) best = std::min(best, point_box_distance(b, c));
  for (const Vec3& c : cb) best = std::min(best, point_box_distance(a, c));
  for (const auto& ea : kBoxEdges) {
    for (const auto& eb : kBoxEdges) {
      best = std::min(best, segment_segment_distance(ca[ea[0]], ca[ea[1]], cb[eb[0]], cb[eb[1]]));
    }
  }
  return best;
}

struct PairDistance {
  double operator()(const Sphere& a, const Sphere& b) const {
    return (a.center - b.center).norm() - a.radius - b.radius;
  }
  double operator()(const Sphere& a, const Capsule& b) const {
    return (a.center - closest_on_segment(a.center, b.a, b.b)).norm() - a.radius - b.radius;
  }
  double operator()(const Sphere& a, const Box& b) const {
    return point_box_distance(b, a.center) - a.radius;
  }
  double operator()(const Capsule& a, const Capsule& b) const {
    return segment_segment_distance(a.a, a.b, b.a, b.b) - a.radius - b.radius;
  }
  double operator()(const Capsule& a, const Box& b) const {
    return segment_box_distance(b, a.a, a.b) - a.radius;
  }
  double operator()(const Box& a, const Box& b) const { return box_box_distance(a, b); }

  template <typename A, typename B>
  double operator()(const A& a, const B& b) const {
    return (*this)(b, a);
  }
};

}  // namespace

double segment_segment_distance(const Vec3& p0, const Vec3& p1, const Vec3& q0, const Vec3& q1) {
  // Closest points of two segments (Ericson, Real-Time Collision Detection 5.1.9).
  const Vec3 d1 = p1 - p0;
  const Vec3 d2 = q1 - q0;
  const Vec3 r = p0 - q0;
  const double a = d1.squaredNorm();
  const double e = d2.squaredNorm();
  const double f = d2.dot(r);
  constexpr double eps = 1e-300;
  double s = 0.0;
  double t = 0.0;
  if (a <= eps && e <= eps) return r.norm();
  if (a <= eps) {
    t = std::clamp(f / e, 0.0, 1.0);
  } else {
    const double c = d1.dot(r);
    if (e <= eps) {
      s = std::clamp(-c / a, 0.0, 1.0);
    } else {
      const double b = d1.dot(d2);
      const double denom = a * e - b * b;
      s = denom > 0.0 ? std::clamp((b * f - c * e) / denom, 0.0, 1.0) : 0.0;
      t = (b * s + f) / e;
      if (t < 0.0) {
        t = 0.0;
        s = std::clamp(-c / a, 0.0, 1.0);
      } else if (t > 1.0) {
        t = 1.0;
        s = std::clamp((b - c) / a, 0.0, 1.0);
      }
    }
  }
  return ((p0 + s * d1) - (q0 + t * d2)).norm();
}

Shape transformed(const Shape& shape, const Pose& pose) {
  return std::visit(
      [&](const auto& s) -> Shape {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, Sphere>) {
          return Sphere{pose.apply(s.center), s.radius};
        } else if constexpr (std::is_same_v<T, Capsule>) {
          return Capsule{pose.apply(s.a), pose.apply(s.b), s.radius};
        } else {
          return Box{pose * s.pose, s.half_extents};
        }
      },
      shape);
}

SurfacePoint closest_surface_point(const Shape& shape, const Vec3& point) {
  return std::visit(
      [&](const auto& s) -> SurfacePoint {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, Sphere>) {
          Vec3 dir = point - s.center;
          const double n = dir.norm();
          dir = n > 0.0 ? Vec3(dir / n) : Vec3::UnitZ();
          return {s.center + s.radius * dir, dir};
        } else if constexpr (std::is_same_v<T, Capsule>) {
          const Vec3 q = closest_on_segment(point, s.a, s.b);
          Vec3 dir = point - q;
          const double n = dir.norm();
          dir = n > 0.0 ? Vec3(dir / n) : any_perpendicular(s.b - s.a);
          return {q + s.radius * dir, dir};
        } else {
          const Vec3 local = to_box_local(s, point);
          const Vec3& h = s.half_extents;
          const Mat3& r = s.pose.rotation();
          const bool outside = (local.cwiseAbs() - h).maxCoeff() > 0.0;
          if (outside) {
            const Vec3 clamped = local.cwiseMax(-h).cwiseMin(h);
            const Vec3 normal_local = (local - clamped).normalized();
            return {s.pose.apply(clamped), r * normal_local};
          }
          int axis = 0;
          double slack = std::numeric_limits<double>::infinity();
          for (int i = 0; i < 3; ++i) {
            const double d = h[i] - std::abs(local[i]);
            if (d < slack) {
              slack = d;
              axis = i;
            }
          }
          Vec3 on_face = local;
          const double sign = local[axis] < 0.0 ? -1.0 : 1.0;
          on_face[axis] = sign * h[axis];
          Vec3 normal_local = Vec3::Zero();
          normal_local[axis] = sign;
          return {s.pose.apply(on_face), r * normal_local};
        }
      },
      shape);
}

double signed_distance(const Shape& shape, const Vec3& point) {
  return std::visit(
      [&](const auto& s) -> double {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, Sphere>) {
          return (point - s.center).norm() - s.radius;
        } else if constexpr (std::is_same_v<T, Capsule>) {
          return (point - closest_on_segment(point, s.a, s.b)).norm() - s.radius;
        } else {
          const Vec3 q = to_box_local(s, point).cwiseAbs() - s.half_extents;
          const double outside = q.cwiseMax(0.0).norm();
          return outside > 0.0 ? outside : q.maxCoeff();
        }
      },
      shape);
}

double shape_distance(const Shape& a, const Shape& b) {
  // Evaluating both argument orders makes the result exactly symmetric.
  const double ab = std::visit(PairDistance{}, a, b);
  const double ba = std::visit(PairDistance{}, b, a);
  return std::max(0.0, std::min(ab, ba));
}

Vec3 shape_center(const Shape& shape) {
  return std::visit(
      [](const auto& s) -> Vec3 {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, Sphere>) {
          return s.center;
        } else if constexpr (std::is_same_v<T, Capsule>) {
          return 0.5 * (s.a + s.b);
        } else {
          return s.pose.translation();
        }
      },
      shape);
}

ShapeSet::ShapeSet(std::vector<Shape> shapes) : shapes_(std::move(shapes)) {
  for (std::size_t i = 0; i < shapes_.size(); ++i) {
    const std::string path = "shapes[" + std::to_string(i) + "]";
    std::visit(
        [&](const auto& s) {
          using T = std::decay_t<decltype(s)>;
          if constexpr (std::is_same_v<T, Box>) {
            if (!(s.half_extents.minCoeff() > 0.0) || !s.half_extents.allFinite()) {
              throw ValidationError(path + ".half_extents", "half-extents must be strictly positive");
            }
          } else {
            if (!(s.radius > 0.0) || !std::isfinite(s.radius)) {
              throw ValidationError(path + ".radius", "radius must be strictly positive");
            }
          }
        },
        shapes_[i]);
  }
}

ShapeSet ShapeSet::transformed(const Pose& pose) const {
  ShapeSet out;
  out.shapes_.reserve(shapes_.size());
  for (const Shape& s : shapes_) out.shapes_.push_back(riskaware::transformed(s, pose));
  return out;
}

double min_distance(const ShapeSet& a, const ShapeSet& b) {
  if (a.empty() || b.empty()) throw ValidationError("shapes", "min_distance needs non-empty shape sets");
  double best = std::numeric_limits<double>::infinity();
  for (const Shape& sa : a.shapes()) {
    for (const Shape& sb : b.shapes()) {
      best = std::min(best, shape_distance(sa, sb));
      if (best == 0.0) return 0.0;
    }
  }
  return best;
}

}  // namespace riskaware
