// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
// failure. Runs against the bundled data and the built CLI only.

#include <sys/wait.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

#include "oracles.hpp"
#include "riskaware/balance_risk.hpp"
#include "riskaware/collision_risk.hpp"
#include "riskaware/composer.hpp"
#include "riskaware/grasp.hpp"
#include "riskaware/scenario_io.hpp"
#include "test_support.hpp"

using namespace riskaware;
namespace fs = std::filesystem;
namespace ts = testing_support;

namespace {

// A criterion returns an empty string on success, otherwise what went wrong.
using Check = std::function<std::string()>;

std::string fmt(double v) {
  std::ostringstream ss;
  ss.precision(6);
  ss << v;
  return ss.str();
}

std::string sigmoid_conformance() {
  const std::vector<double> as = {0.5, 2.0, 5.0, 10.0};
  const std::vector<double> bs = {-5.0, -1.0, 0.0, 2.5, 5.0};
  const std::vector<double> x_maxes = {0.01, 0.1, 0.5, 1.0, 3.0};
  int points = 0;
  double worst = 0.0;
  for (double a : as) {
    for (double b : bs) {
      for (double x_max : x_maxes) {
        const SigmoidParams p{a, b, x_max};
        double prev = -1.0;
        for (int k = 0; k < 10; ++k) {
          const double x = x_max * k / 9.0;
          const double direct = 1.0 / (1.0 + std::exp(-a * x / x_max + b));
          const double r = deviation_risk(x, p);
          worst = std::max(worst, std::abs(r - direct));
          if (r < prev) return "not monotone at a=" + fmt(a) + " b=" + fmt(b) + " x=" + fmt(x);
          prev = r;
          ++points;
        }
      }
    }
  }
  if (points != 1000) return "grid has " + std::to_string(points) + " points";
  if (worst > 1e-12) return "max deviation " + fmt(worst);
  return "";
}

std::string collision_endpoints() {
  CollisionRiskParams p;
  p.exponent_b = 2.0;
  if (instantaneous_collision_risk(p.d_safety, p) != 0.0) return "risk(d_safety) != 0";
  if (instantaneous_collision_risk(0.0, p) != 1.0) return "risk(0) != 1";
  const double mid = instantaneous_collision_risk(0.5 * p.d_safety, p);
  if (std::abs(mid - 0.25) > 1e-12) return "risk(d_safety/2) = " + fmt(mid);
  return "";
}

std::string geometry_oracles() {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 1000; ++trial) {
    std::vector<Vec2> pts;
    for (int i = 0; i < 20; ++i) pts.emplace_back(ts::uniform(rng, -1, 1), ts::uniform(rng, -1, 1));
    std::vector<Vec2> hull = convex_hull(pts).vertices();
    auto lowest = std::min_element(hull.begin(), hull.end(), [](const Vec2& a, const Vec2& b) {
      return a.y() < b.y() || (a.y() == b.y() && a.x() < b.x());
    });
    std::rotate(hull.begin(), lowest, hull.end());
    if (hull != oracle::brute_force_hull(pts)) return "hull mismatch on set " + std::to_string(trial);
  }

  double worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const Shape a = ts::random_primitive(rng, trial);
    const Shape b = ts::random_primitive(rng, trial / 3);
    const auto ref = oracle::sampled_distance(a, b, 1000000);
    worst = std::max(worst, std::abs(min_distance(ShapeSet({a}), ShapeSet({b})) - ref.value));
  }
  if (worst > 1e-3) return "distance off by " + fmt(worst);

  const ConvexPolygon2D rect =
      ConvexPolygon2D::from_ccw_vertices({Vec2(-0.5, -0.25), Vec2(0.5, -0.25), Vec2(0.5, 0.25), Vec2(-0.5, 0.25)});
  const std::vector<std::pair<Vec2, double>> cases = {
      {Vec2(0, 0), 0.25},     {Vec2(0.25, 0), 0.25},  {Vec2(0.375, 0.0625), 0.125}, {Vec2(0.5, 0), 0.0},
      {Vec2(0, -0.25), 0.0},  {Vec2(0.75, 0), -0.25}, {Vec2(0, 1.25), -1.0}, {Vec2(-0.375, 0.125), 0.125},
  };
  for (const auto& [p, expected] : cases) {
    if (signed_margin(p, rect) != expected) return "signed margin at (" + fmt(p.x()) + "," + fmt(p.y()) + ")";
  }
  return "";
}

std::string fall_oracle() {
  std::mt19937_64 rng(2025);
  double worst = 0.0;
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<Vec2> pts;
    const int n = std::uniform_int_distribution<int>(3, 12)(rng);
    for (int i = 0; i < n; ++i) pts.emplace_back(ts::uniform(rng, -0.3, 0.3), ts::uniform(rng, -0.2, 0.2));
    const ConvexPolygon2D poly = convex_hull(pts);
    const double r = ts::uniform(rng, 0.01, 0.15);
    // Centers near a vertex so the disk straddles the boundary.
    const Vec2 com = poly.vertices()[trial % poly.size()] + Vec2(ts::uniform(rng, -r, r), ts::uniform(rng, -r, r));
    FallRiskParams p;
    p.uncertainty_radius = r;
    const double mc = oracle::disk_outside_fraction_mc(com, r, poly.vertices(), 1000000, trial);
    worst = std::max(worst, std::abs(instantaneous_fall_risk(com, poly, p) - mc));
  }
  if (worst > 0.01) return "area fraction off by " + fmt(worst);

  const ConvexPolygon2D poly =
      convex_hull(std::vector<Vec2>{Vec2(-0.2, -0.1), Vec2(0.25, -0.15), Vec2(0.3, 0.1), Vec2(0.0, 0.2), Vec2(-0.25, 0.05)});
  FallRiskParams zero;
  zero.uncertainty_radius = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const Vec2 p(ts::uniform(rng, -0.4, 0.4), ts::uniform(rng, -0.3, 0.3));
    const double expected = oracle::inside_polygon(p, poly.vertices()) ? 0.0 : 1.0;
    if (instantaneous_fall_risk(p, poly, zero) != expected) return "indicator mismatch at point " + std::to_string(i);
  }
  return "";
}

std::string grasp_algebra() {
  const GraspMatrix identity = build_grasp_matrix({Contact{Pose::identity(), Vec3::UnitZ(), ContactModel::kFullConstraint}});
  if (std::abs(grasp_quality(identity) - 1.0) > 1e-12) return "identity contact Q = " + fmt(grasp_quality(identity));

  const GraspMatrix antipodal = build_grasp_matrix(
      {Contact{Pose::from_translation(Vec3(1, 0, 0)), Vec3(-1, 0, 0), ContactModel::kFrictionlessPoint},
       Contact{Pose::from_translation(Vec3(-1, 0, 0)), Vec3(1, 0, 0), ContactModel::kFrictionlessPoint}});
  if (antipodal.rank() != 1) return "antipodal rank " + std::to_string(antipodal.rank());
  const auto free = free_motions(antipodal);
  if (free.size() != 5) return "antipodal free motions " + std::to_string(free.size());
  for (const Twist& t : free) {
    if ((antipodal.matrix.transpose() * t.as_vector()).norm() > 1e-12) return "free motion is constrained";
  }

  std::mt19937_64 rng(2026);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<Contact> contacts;
    const int n = std::uniform_int_distribution<int>(1, 5)(rng);
    for (int i = 0; i < n; ++i) {
      const auto model = static_cast<ContactModel>(std::uniform_int_distribution<int>(0, 2)(rng));
      const Vec3 p = ts::uniform_vec(rng, -1, 1);
      contacts.push_back(Contact{Pose(ts::random_rotation(rng), p), -p.normalized(), model});
    }
    const GraspMatrix g = build_grasp_matrix(contacts);
    if (static_cast<std::size_t>(g.rank()) + free_motions(g).size() != 6) return "rank + nullity != 6";
    double expected = 0.0;
    if (g.matrix.cols() >= 6) {
      const auto sv = oracle::singular_values(g.matrix);
      if (sv.back() > 1e-9 * sv.front()) expected = sv.back() / sv.front();
    }
    if (std::abs(grasp_quality(g) - expected) > 1e-9) return "Q differs from the oracle on grasp " + std::to_string(trial);
  }
  return "";
}

std::string sweep_shape() {
  const GraspFixture f = load_grasp_fixture_file(ts::data_dir() / "fixtures" / "symmetric_grasp.json");
  std::string grid_text = read_text_file(ts::data_dir() / "fixtures" / "symmetric_grasp.grid");
  while (!grid_text.empty() && std::isspace(static_cast<unsigned char>(grid_text.back()))) grid_text.pop_back();
  const SweepGrid grid = SweepGrid::parse(grid_text);
  const auto cells = pregrasp_sweep(f.object, f.hand, grid.offsets(), 4);

  // Cells enumerate the active axes in row-major order.
  std::vector<std::size_t> dims;
  for (const auto& axis : grid.axes) {
    if (axis.values().size() > 1) dims.push_back(axis.values().size());
  }
  std::size_t count = 1;
  for (std::size_t d : dims) count *= d;
  if (count != cells.size()) return "unexpected cell count";

  const auto best = std::max_element(cells.begin(), cells.end(),
                                     [](const SweepCell& a, const SweepCell& b) { return a.quality < b.quality; });
  const PoseOffset& o = best->offset;
  for (double v : {o.x, o.y, o.z, o.roll, o.pitch, o.yaw}) {
    if (std::abs(v) > 1e-12) return "argmax is not at zero offset";
  }

  double max_step = 0.0;
  std::size_t stride = 1;
  for (std::size_t k = dims.size(); k-- > 0;) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if ((i / stride) % dims[k] + 1 < dims[k]) {
        max_step = std::max(max_step, std::abs(cells[i + stride].quality - cells[i].quality));
      }
    }
    stride *= dims[k];
  }
  if (max_step > 0.2) return "neighbor step " + fmt(max_step);

  if (cells.front().quality != 0.0 || cells.back().quality != 0.0) return "Q nonzero beyond contact range";
  return "";
}

std::string table_ordering() {
  const Scenario s = load_scenario_file(ts::scenario_path("tabletop.json"));
  EvaluationOptions options;
  options.noise = s.params.noise;
  options.noise->trials = 1000;
  options.workers = 4;
  const RiskReport r = evaluate(s, options);
  const auto dual = std::find_if(r.compositions.begin(), r.compositions.end(),
                                 [](const CompositionReport& c) { return c.id == "dual_arm_handover"; });
  if (dual == r.compositions.end()) return "no dual-arm composition";
  for (const CompositionReport& c : r.compositions) {
    if (c.id == dual->id) continue;
    if (!(dual->collision.combined < c.collision.combined)) return "collision risk not strictly lowest vs " + c.id;
    if (!(dual->fall.combined < c.fall.combined)) return "fall risk not strictly lowest vs " + c.id;
    if (dual->monte_carlo->collision_failure_rate > c.monte_carlo->collision_failure_rate ||
        dual->monte_carlo->fall_failure_rate > c.monte_carlo->fall_failure_rate) {
      return "failure rates not lowest vs " + c.id;
    }
  }
  if (dual->monte_carlo->collision_failure_rate != 0.0 || dual->monte_carlo->fall_failure_rate != 0.0) {
    return "dual-arm failure rate " + fmt(dual->monte_carlo->total_failure_rate());
  }
  return "";
}

double batch_correlation_value = 0.0;

std::string risk_failure_correlation() {
  std::vector<CompositionReport> pooled;
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(ts::scenario_path("batch"))) files.push_back(e.path());
  std::sort(files.begin(), files.end());
  if (files.size() != 10) return "expected 10 batch scenarios, found " + std::to_string(files.size());
  for (const fs::path& file : files) {
    EvaluationOptions options;
    options.workers = 4;
    const RiskReport r = evaluate(load_scenario_file(file), options);
    pooled.insert(pooled.end(), r.compositions.begin(), r.compositions.end());
  }
  batch_correlation_value = correlate_risk_failure(pooled);
  if (!(batch_correlation_value > 0.6)) return "Spearman " + fmt(batch_correlation_value);
  return "";
}

std::string run_cli(const std::string& args, const fs::path& out) {
  const std::string cmd = std::string("\"") + RISKAWARE_CLI + "\" " + args + " > \"" + out.string() + "\" 2>/dev/null";
  const int status = std::system(cmd.c_str());
  if (!WIFEXITED(status) || WEXITSTATUS(status) != 0) return {};
  return read_text_file(out);
}

std::string determinism() {
  const fs::path out = fs::temp_directory_path() / "riskaware_acceptance_mc.json";
  const std::string args = "montecarlo \"" + ts::scenario_path("tabletop.json").string() + "\" --trials 300 --seed 99";
  const std::string first = run_cli(args, out);
  const std::string second = run_cli(args, out);
  const std::string pooled = run_cli("--workers 6 " + args, out);
  fs::remove(out);
  if (first.empty()) return "CLI run failed";
  if (first != second) return "repeat run differs";
  if (first != pooled) return "worker count changes the report";
  return "";
}

std::string no_console() {
  // Everything above ran from this binary and the CLI; neither the source
  // tree nor the build tree carries a web front end.
  const fs::path root = fs::path(RISKAWARE_DATA_DIR).parent_path();
  for (const char* marker : {"package.json", "node_modules", "console"}) {
    if (fs::exists(root / marker)) return std::string("found ") + marker + " in the source tree";
  }
  for (const auto& e : fs::recursive_directory_iterator(fs::current_path())) {
    const auto ext = e.path().extension();
    if (ext == ".js" || ext == ".ts" || ext == ".html") return "found " + e.path().string();
  }
  return "";
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, Check>> criteria = {
      {"sigmoid conformance and monotonicity", sigmoid_conformance},
      {"collision risk endpoints", collision_endpoints},
      {"geometry oracles (hull, distance, margin)", geometry_oracles},
      {"fall risk area oracle and zero-radius indicator", fall_oracle},
      {"grasp matrix algebra", grasp_algebra},
      {"pre-grasp sweep shape", sweep_shape},
      {"tabletop ordering of risks and failure rates", table_ordering},
      {"batch risk/failure rank correlation", risk_failure_correlation},
      {"Monte Carlo determinism", determinism},
      {"suite runs without the console", no_console},
  };
  int failures = 0;
  for (const auto& [name, check] : criteria) {
    const auto start = std::chrono::steady_clock::now();
    std::string problem;
    try {
      problem = check();
    } catch (const std::exception& e) {
      problem = std::string("exception: ") + e.what();
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::string line = (problem.empty() ? "PASS " : "FAIL ") + name;
    if (name.rfind("batch", 0) == 0 && batch_correlation_value != 0.0) line += " (rho = " + fmt(batch_correlation_value) + ")";
    if (!problem.empty()) line += ": " + problem;
    std::printf("%s [%.1fs]\n", line.c_str(), seconds);
    std::fflush(stdout);
    if (!problem.empty()) ++failures;
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
