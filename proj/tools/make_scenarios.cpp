// Writes the bundled scenario corpus and grasp fixture under data/.
//
// The tabletop scenes are synthetic: a table with a book stack in the
// middle, a book picked on the left side and placed on the right. Single-arm
// compositions carry the book over the stack close to it and lean the CoM
// toward the support edge; the dual-arm composition pulls the book back to
// the torso and hands it over.

#include <CLI11.hpp>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "riskaware/scenario_io.hpp"

namespace ra = riskaware;
using ra::Vec2;
using ra::Vec3;

namespace {

struct TabletopParams {
  std::string name = "tabletop";
  double hug_clearance = 0.012;    // single-arm clearance over the stack
  double support_half_width = 0.15;
  double reach_lean = 0.25;        // CoM shift per metre of hand displacement
  double dt = 0.05;
  double obstacle_sigma = 0.012;
  double com_sigma = 0.012;
};

constexpr double kHandRadius = 0.05;
constexpr double kTableTop = 0.72;
constexpr double kStackTop = 0.92;
const Vec3 kRestLeft(0.25, 0.25, 1.0);
const Vec3 kRestRight(0.25, -0.25, 1.0);
const Vec2 kComRest(0.02, 0.0);

struct Keyframe {
  Vec3 left;
  Vec3 right;
  double duration;  // time to reach this keyframe from the previous one
};

struct Segment {
  ra::ActionKind kind;
  std::vector<Keyframe> keys;
  bool left_active;
  std::optional<ra::GraspContext> grasp;
};

double smoothstep(double s) { return s * s * (3.0 - 2.0 * s); }

ra::ShapeSet body_at(const Vec3& left, const Vec3& right) {
  return ra::ShapeSet({
      ra::Capsule{Vec3(0.0, 0.0, 0.85), Vec3(0.0, 0.0, 1.35), 0.15},
      ra::Sphere{Vec3(0.0, 0.0, 1.55), 0.1},
      ra::Sphere{left, kHandRadius},
      ra::Sphere{right, kHandRadius},
  });
}

ra::ConvexPolygon2D feet(double half_width) {
  // Two feet whose hull is the support rectangle.
  const std::vector<Vec2> corners = {
      {-0.10, half_width}, {0.16, half_width}, {-0.10, 0.05}, {0.16, 0.05},
      {-0.10, -half_width}, {0.16, -half_width}, {-0.10, -0.05}, {0.16, -0.05},
  };
  return ra::convex_hull(corners);
}

ra::Composition build_composition(const std::string& id, const Vec3& start_left, const Vec3& start_right,
                                  const std::vector<Segment>& segments, const ra::ConvexPolygon2D& support,
                                  const TabletopParams& p) {
  ra::Composition c;
  c.id = id;
  Vec3 left = start_left;
  Vec3 right = start_right;
  double t = 0.0;
  for (const Segment& seg : segments) {
    std::vector<ra::TrajectorySample> samples;
    auto emit = [&](const Vec3& l, const Vec3& r, double time) {
      const Vec2 lean = p.reach_lean * ((l - kRestLeft).head<2>() + (r - kRestRight).head<2>());
      samples.push_back(ra::TrajectorySample{time, body_at(l, r), kComRest + lean, support,
                                             seg.left_active ? l : r});
    };
    emit(left, right, t);
    for (const Keyframe& key : seg.keys) {
      const int steps = std::max(1, static_cast<int>(std::lround(key.duration / p.dt)));
      for (int k = 1; k <= steps; ++k) {
        const double s = smoothstep(static_cast<double>(k) / steps);
        emit(left + s * (key.left - left), right + s * (key.right - right), t + key.duration * k / steps);
      }
      left = key.left;
      right = key.right;
      t += key.duration;
    }
    c.actions.push_back(ra::Action{seg.kind, ra::TimedTrajectory(std::move(samples)), seg.grasp});
  }
  return c;
}

ra::Scenario tabletop(const TabletopParams& p) {
  ra::Scenario s;
  s.name = p.name;
  s.obstacles.push_back({"table", ra::ShapeSet({ra::Box{ra::Pose::from_translation(Vec3(0.62, 0.0, kTableTop / 2)),
                                                         Vec3(0.22, 0.55, kTableTop / 2)}})});
  s.obstacles.push_back(
      {"stack", ra::ShapeSet({ra::Box{ra::Pose::from_translation(Vec3(0.60, 0.0, (kStackTop + kTableTop) / 2)),
                                      Vec3(0.10, 0.08, (kStackTop - kTableTop) / 2)}})});
  s.manipulated_object =
      ra::ShapeSet({ra::Box{ra::Pose::from_translation(Vec3(0.58, 0.30, kTableTop + 0.025)), Vec3(0.08, 0.06, 0.025)}});

  const ra::ConvexPolygon2D support = feet(p.support_half_width);
  const double grasp_z = kTableTop + kHandRadius + 0.06;
  const Vec3 pick(0.58, 0.30, grasp_z);
  const Vec3 place(0.58, -0.30, grasp_z);
  const Vec3 above_pick = pick + Vec3(0, 0, 0.12);
  const Vec3 above_place = place + Vec3(0, 0, 0.12);
  const double hug_z = kStackTop + kHandRadius + p.hug_clearance;
  const Vec3 over_in(0.58, 0.05, hug_z);
  const Vec3 over_out(0.58, -0.05, hug_z);
  const Vec3 lift_in(0.58, 0.22, hug_z);
  const Vec3 lift_out(0.58, -0.22, hug_z);
  const Vec3 retreat(0.32, -0.25, 1.0);
  const Vec3 meet(0.35, 0.0, 1.0);
  const ra::GraspContext grasp{Vec3(0.01, 0.01, 0.005), Vec3(0.05, 0.05, 0.05)};
  const ra::GraspContext handover_grasp{Vec3(0.008, 0.008, 0.004), Vec3(0.04, 0.04, 0.04)};

  using K = ra::ActionKind;
  // Left pick, left place: carries the book across the body over the stack.
  s.compositions.push_back(build_composition(
      "left_pick_left_place", kRestLeft, kRestRight,
      {
          {K::kPickLeft, {{above_pick, kRestRight, 1.5}, {pick, kRestRight, 0.8}}, true, grasp},
          {K::kPlaceLeft,
           {{lift_in, kRestRight, 0.8}, {over_in, kRestRight, 0.6}, {over_out, kRestRight, 1.0},
            {lift_out, kRestRight, 0.6}, {above_place, kRestRight, 0.5}, {place, kRestRight, 0.8}},
           true, std::nullopt},
          {K::kReach, {{above_place, kRestRight, 0.5}, {retreat, kRestRight, 0.6}, {kRestLeft, kRestRight, 0.8}},
           true, std::nullopt},
      },
      support, p));
  // Right pick, right place: reaches across the body to pick, then the same carry.
  s.compositions.push_back(build_composition(
      "right_pick_right_place", kRestLeft, kRestRight,
      {
          {K::kPickRight, {{kRestLeft, above_pick, 1.7}, {kRestLeft, pick, 0.8}}, false, grasp},
          {K::kPlaceRight,
           {{kRestLeft, lift_in, 0.7}, {kRestLeft, over_in, 0.5}, {kRestLeft, over_out, 0.9},
            {kRestLeft, lift_out, 0.5}, {kRestLeft, above_place, 0.5}, {kRestLeft, place, 0.8}},
           false, std::nullopt},
          {K::kReach, {{kRestLeft, kRestRight, 1.2}}, false, std::nullopt},
      },
      support, p));
  // Dual arm: pull the book back to the torso, hand over, place with the right.
  s.compositions.push_back(build_composition(
      "dual_arm_handover", kRestLeft, kRestRight,
      {
          {K::kPickLeft, {{above_pick, kRestRight, 1.5}, {pick, kRestRight, 0.8}}, true, grasp},
          {K::kHandover, {{above_pick, kRestRight, 0.6}, {meet, meet, 1.4}}, true, handover_grasp},
          {K::kPlaceRight, {{kRestLeft, above_place, 1.4}, {kRestLeft, place, 0.8}}, false, std::nullopt},
          {K::kReach, {{kRestLeft, kRestRight, 1.5}}, false, std::nullopt},
      },
      support, p));

  s.params.noise = ra::NoiseModel{p.obstacle_sigma, p.com_sigma, 1000, 1234567};
  s.validate();
  return s;
}

// A hand circling a tall post at 1 cm clearance.
ra::Scenario grazing() {
  ra::Scenario s;
  s.name = "grazing";
  const double half = 0.05;
  const double clearance = 0.01;
  s.obstacles.push_back({"post", ra::ShapeSet({ra::Box{ra::Pose::from_translation(Vec3(0.5, 0.0, 0.9)),
                                                        Vec3(half, half, 0.4)}})});
  const ra::ConvexPolygon2D support = feet(0.15);
  // Offset curve of the square section: four sides joined by quarter arcs.
  const double ring = kHandRadius + clearance;
  const Vec2 center(0.5, 0.0);
  std::vector<Vec2> path;
  const int per_side = 20;
  const int per_arc = 10;
  for (int side = 0; side < 4; ++side) {
    const double base = side * M_PI / 2.0;  // outward normal angle of this side
    const Vec2 normal(std::cos(base), std::sin(base));
    const Vec2 along(-normal.y(), normal.x());
    for (int k = 0; k < per_side; ++k) {
      const double s = -half + 2.0 * half * k / per_side;
      path.push_back(center + (half + ring) * normal + s * along);
    }
    const Vec2 corner = center + half * (normal + along);
    for (int k = 0; k < per_arc; ++k) {
      const double a = base + (M_PI / 2.0) * k / per_arc;
      path.push_back(corner + ring * Vec2(std::cos(a), std::sin(a)));
    }
  }
  path.push_back(path.front());
  std::vector<ra::TrajectorySample> samples;
  for (std::size_t k = 0; k < path.size(); ++k) {
    const Vec3 hand(path[k].x(), path[k].y(), 1.0);
    samples.push_back(ra::TrajectorySample{0.05 * static_cast<double>(k), ra::ShapeSet({ra::Sphere{hand, kHandRadius}}),
                                           Vec2(0.02, 0.0), support, hand});
  }
  ra::Composition c{"circle_post", {ra::Action{ra::ActionKind::kReach, ra::TimedTrajectory(std::move(samples)), {}}}};
  s.compositions.push_back(std::move(c));
  s.params.noise = ra::NoiseModel{0.1, 0.0, 1000, 7};
  s.validate();
  return s;
}

ra::Scenario minimal() {
  ra::Scenario s;
  s.name = "minimal";
  s.obstacles.push_back({"block", ra::ShapeSet({ra::Box{ra::Pose::from_translation(Vec3(1.0, 0.0, 0.5)),
                                                         Vec3(0.1, 0.1, 0.5)}})});
  const ra::ConvexPolygon2D support = ra::ConvexPolygon2D::from_ccw_vertices(
      {Vec2(-0.1, -0.1), Vec2(0.1, -0.1), Vec2(0.1, 0.1), Vec2(-0.1, 0.1)});
  std::vector<ra::TrajectorySample> samples = {
      {0.0, ra::ShapeSet({ra::Sphere{Vec3(0.3, 0.0, 1.0), 0.05}}), Vec2(0.0, 0.0), support, std::nullopt},
      {2.0, ra::ShapeSet({ra::Sphere{Vec3(0.7, 0.0, 1.0), 0.05}}), Vec2(0.02, 0.0), support, std::nullopt},
  };
  s.compositions.push_back(
      ra::Composition{"reach", {ra::Action{ra::ActionKind::kReach, ra::TimedTrajectory(std::move(samples)), {}}}});
  s.params.noise = ra::NoiseModel{0.01, 0.01, 200, 1};
  s.validate();
  return s;
}

std::string symmetric_grasp_fixture() {
  // Three fingertips at 120 degrees closing radially on a 4 cm sphere. Each
  // can travel across the whole cage, so a finger only stops short by missing.
  ra::Json tips = ra::Json::array();
  for (int i = 0; i < 3; ++i) {
    const double a = 2.0 * M_PI * i / 3.0;
    tips.push_back(ra::Json{{"start", {0.12 * std::cos(a), 0.12 * std::sin(a), 0.0}},
                            {"direction", {-std::cos(a), -std::sin(a), 0.0}},
                            {"radius", 0.01},
                            {"max_travel", 0.24}});
  }
  ra::Json j{{"schema_version", ra::kSchemaVersion},
             {"object", {{{"type", "sphere"}, {"center", {0.0, 0.0, 0.0}}, {"radius", 0.04}}}},
             {"hand",
              {{"nominal", {{"translation", {0.0, 0.0, 0.0}}}},
               {"contact_model", "hard_finger"},
               {"reference_length", 0.04},
               {"fingertips", tips}}}};
  return j.dump(2) + "\n";
}

void write(const std::filesystem::path& path, const std::string& text) {
  std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << text;
  std::cout << "wrote " << path.string() << "\n";
}


// Straight-line samples of a point moving through `waypoints` at constant
// speed on each leg, every `dt` seconds.
std::vector<std::pair<double, Vec3>> piecewise_linear(const std::vector<std::pair<double, Vec3>>& waypoints, double dt) {
  std::vector<std::pair<double, Vec3>> out{waypoints.front()};
  for (std::size_t i = 1; i < waypoints.size(); ++i) {
    const auto& [t0, p0] = waypoints[i - 1];
    const auto& [t1, p1] = waypoints[i];
    const int steps = std::max(1, static_cast<int>(std::lround((t1 - t0) / dt)));
    for (int k = 1; k <= steps; ++k) {
      const double s = static_cast<double>(k) / steps;
      out.emplace_back(t0 + s * (t1 - t0), p0 + s * (p1 - p0));
    }
  }
  return out;
}

// A hand sphere approaches a block to 0.2 * d_safety, lingers for a tenth of
// the duration and retreats. Two actions: approach and retreat.
ra::Scenario approach_retreat() {
  ra::Scenario s;
  s.name = "approach_retreat";
  s.obstacles.push_back({"block", ra::ShapeSet({ra::Box{ra::Pose::from_translation(Vec3(1.0, 0.0, 1.0)),
                                                         Vec3(0.1, 0.1, 0.1)}})});
  const ra::ConvexPolygon2D support = ra::ConvexPolygon2D::from_ccw_vertices(
      {Vec2(-0.1, -0.1), Vec2(0.1, -0.1), Vec2(0.1, 0.1), Vec2(-0.1, 0.1)});
  const double closest_x = 0.9 - kHandRadius - 0.2 * s.params.collision.d_safety;
  const Vec3 far(0.5, 0.0, 1.0);
  const Vec3 near(closest_x, 0.0, 1.0);
  auto action = [&](const std::vector<std::pair<double, Vec3>>& legs) {
    std::vector<ra::TrajectorySample> samples;
    for (const auto& [t, hand] : piecewise_linear(legs, 0.05)) {
      samples.push_back({t, ra::ShapeSet({ra::Sphere{hand, kHandRadius}}), Vec2::Zero(), support, hand});
    }
    return ra::Action{ra::ActionKind::kReach, ra::TimedTrajectory(std::move(samples)), {}};
  };
  s.compositions.push_back(ra::Composition{
      "approach_retreat",
      {action({{0.0, far}, {4.5, near}, {5.5, near}}), action({{5.5, near}, {10.0, far}})}});
  s.params.noise = ra::NoiseModel{0.0, 0.0, 100, 1};
  s.validate();
  return s;
}

// The CoM walks from the center of a square support to one edge, stays on
// the edge for a fifth of the duration and walks back.
ra::Scenario edge_graze() {
  ra::Scenario s;
  s.name = "edge_graze";
  s.obstacles.push_back({"block", ra::ShapeSet({ra::Box{ra::Pose::from_translation(Vec3(2.0, 0.0, 0.5)),
                                                         Vec3(0.1, 0.1, 0.5)}})});
  const ra::ConvexPolygon2D support = ra::ConvexPolygon2D::from_ccw_vertices(
      {Vec2(-0.1, -0.1), Vec2(0.1, -0.1), Vec2(0.1, 0.1), Vec2(-0.1, 0.1)});
  const Vec3 hand(0.3, 0.0, 1.0);
  std::vector<ra::TrajectorySample> samples;
  for (const auto& [t, com] :
       piecewise_linear({{0.0, Vec3::Zero()}, {4.0, Vec3(0.1, 0.0, 0.0)}, {6.0, Vec3(0.1, 0.0, 0.0)},
                         {10.0, Vec3::Zero()}},
                        0.05)) {
    samples.push_back({t, ra::ShapeSet({ra::Sphere{hand, kHandRadius}}), com.head<2>(), support, hand});
  }
  s.compositions.push_back(
      ra::Composition{"edge_graze", {ra::Action{ra::ActionKind::kStep, ra::TimedTrajectory(std::move(samples)), {}}}});
  s.params.noise = ra::NoiseModel{0.0, 0.0, 100, 1};
  s.validate();
  return s;
}
}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Generate the bundled scenario corpus"};
  std::string out_dir = "data";
  app.add_option("--out", out_dir, "Output data directory");
  CLI11_PARSE(app, argc, argv);

  const std::filesystem::path root(out_dir);
  write(root / "scenarios" / "minimal.json", ra::serialize_scenario(minimal()));
  write(root / "scenarios" / "tabletop.json", ra::serialize_scenario(tabletop(TabletopParams{})));
  write(root / "scenarios" / "grazing.json", ra::serialize_scenario(grazing()));
  write(root / "scenarios" / "approach_retreat.json", ra::serialize_scenario(approach_retreat()));
  write(root / "scenarios" / "edge_graze.json", ra::serialize_scenario(edge_graze()));
  for (int i = 0; i < 10; ++i) {
    TabletopParams p;
    p.name = "batch_" + std::to_string(i);
    p.hug_clearance = 0.004 + 0.006 * i;
    p.support_half_width = 0.142 + 0.004 * i;
    char file[32];
    std::snprintf(file, sizeof(file), "batch_%02d.json", i);
    write(root / "scenarios" / "batch" / file, ra::serialize_scenario(tabletop(p)));
  }
  write(root / "fixtures" / "symmetric_grasp.json", symmetric_grasp_fixture());
  // Lateral by height surface of pre-grasp offsets at 5 mm spacing.
  write(root / "fixtures" / "symmetric_grasp.grid", "y=-0.07:0.07:0.005,z=-0.07:0.07:0.005\n");
  return 0;
}
