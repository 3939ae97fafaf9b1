#include "riskaware/scenario_io.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "riskaware/errors.hpp"
#include "riskaware/format.hpp"

namespace riskaware {

namespace {

std::string join(const std::string& path, const std::string& key) { return path.empty() ? key : path + "." + key; }
std::string index(const std::string& path, std::size_t i) { return path + "[" + std::to_string(i) + "]"; }

// Re-roots validation errors raised by constructors under `path`.
template <typename Fn>
auto validated(const std::string& path, Fn&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const ValidationError& e) {
    throw ValidationError(e.field_path().empty() ? path : join(path, e.field_path()), e.message());
  } catch (const DegenerateGeometryError& e) {
    throw ValidationError(path, e.message());
  }
}

class ObjectReader {
 public:
  ObjectReader(const Json& j, std::string path) : json_(j), path_(std::move(path)) {
    if (!j.is_object()) throw SchemaError(path_, "expected an object");
  }

  const Json& required(const std::string& key) {
    seen_.insert(key);
    const auto it = json_.find(key);
    if (it == json_.end()) throw SchemaError(join(path_, key), "missing required field");
    return *it;
  }

  const Json* optional(const std::string& key) {
    seen_.insert(key);
    const auto it = json_.find(key);
    return it == json_.end() || it->is_null() ? nullptr : &*it;
  }

  std::string at(const std::string& key) const { return join(path_, key); }

  void finish() const {
    for (const auto& [key, value] : json_.items()) {
      if (!seen_.count(key)) throw SchemaError(join(path_, key), "unknown field");
    }
  }

 private:
  const Json& json_;
  std::string path_;
  std::set<std::string> seen_;
};

double read_number(const Json& j, const std::string& path) {
  if (!j.is_number()) throw SchemaError(path, "expected a number");
  return j.get<double>();
}

std::uint64_t read_uint(const Json& j, const std::string& path) {
  if (!j.is_number_unsigned()) throw SchemaError(path, "expected a non-negative integer");
  return j.get<std::uint64_t>();
}

int read_int(const Json& j, const std::string& path) {
  if (!j.is_number_integer()) throw SchemaError(path, "expected an integer");
  return j.get<int>();
}

std::string read_string(const Json& j, const std::string& path) {
  if (!j.is_string()) throw SchemaError(path, "expected a string");
  return j.get<std::string>();
}

const Json& read_array(const Json& j, const std::string& path) {
  if (!j.is_array()) throw SchemaError(path, "expected an array");
  return j;
}

template <int N>
Eigen::Matrix<double, N, 1> read_vec(const Json& j, const std::string& path) {
  if (!j.is_array() || j.size() != N) throw SchemaError(path, "expected an array of " + std::to_string(N) + " numbers");
  Eigen::Matrix<double, N, 1> v;
  for (int i = 0; i < N; ++i) v[i] = read_number(j[static_cast<std::size_t>(i)], index(path, i));
  return v;
}

template <typename Derived>
Json vec_json(const Eigen::MatrixBase<Derived>& v) {
  Json a = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v[i]);
  return a;
}

Json pose_json(const Pose& p) {
  Json rows = Json::array();
  for (int r = 0; r < 3; ++r) rows.push_back(vec_json(Vec3(p.rotation().row(r).transpose())));
  return Json{{"rotation", rows}, {"translation", vec_json(p.translation())}};
}

Pose read_pose(const Json& j, const std::string& path) {
  ObjectReader o(j, path);
  Vec3 t = read_vec<3>(o.required("translation"), o.at("translation"));
  Mat3 r = Mat3::Identity();
  if (const Json* rot = o.optional("rotation")) {
    if (!rot->is_array() || rot->size() != 3) throw SchemaError(o.at("rotation"), "expected 3 rows");
    for (std::size_t i = 0; i < 3; ++i) r.row(static_cast<int>(i)) = read_vec<3>((*rot)[i], index(o.at("rotation"), i));
  }
  o.finish();
  return validated(path, [&] { return Pose(r, t); });
}

Json shape_json(const Shape& shape) {
  return std::visit(
      [](const auto& s) -> Json {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, Sphere>) {
          return Json{{"type", "sphere"}, {"center", vec_json(s.center)}, {"radius", s.radius}};
        } else if constexpr (std::is_same_v<T, Capsule>) {
          return Json{{"type", "capsule"}, {"a", vec_json(s.a)}, {"b", vec_json(s.b)}, {"radius", s.radius}};
        } else {
          return Json{{"type", "box"}, {"pose", pose_json(s.pose)}, {"half_extents", vec_json(s.half_extents)}};
        }
      },
      shape);
}

Shape read_shape(const Json& j, const std::string& path) {
  ObjectReader o(j, path);
  const std::string type = read_string(o.required("type"), o.at("type"));
  Shape shape;
  if (type == "sphere") {
    shape = Sphere{read_vec<3>(o.required("center"), o.at("center")), read_number(o.required("radius"), o.at("radius"))};
  } else if (type == "capsule") {
    shape = Capsule{read_vec<3>(o.required("a"), o.at("a")), read_vec<3>(o.required("b"), o.at("b")),
                    read_number(o.required("radius"), o.at("radius"))};
  } else if (type == "box") {
    shape = Box{read_pose(o.required("pose"), o.at("pose")),
                read_vec<3>(o.required("half_extents"), o.at("half_extents"))};
  } else {
    throw SchemaError(o.at("type"), "unknown shape type '" + type + "'");
  }
  o.finish();
  return shape;
}

ShapeSet read_shapes(const Json& j, const std::string& path) {
  const Json& arr = read_array(j, path);
  std::vector<Shape> shapes;
  for (std::size_t i = 0; i < arr.size(); ++i) shapes.push_back(read_shape(arr[i], index(path, i)));
  try {
    return ShapeSet(std::move(shapes));
  } catch (const ValidationError& e) {
    // ShapeSet reports "shapes[i]..."; re-root that under `path`.
    const std::string& field = e.field_path();
    throw ValidationError(field.rfind("shapes", 0) == 0 ? path + field.substr(6) : join(path, field), e.message());
  }
}

Json polygon_json(const ConvexPolygon2D& p) {
  Json a = Json::array();
  for (const Vec2& v : p.vertices()) a.push_back(vec_json(v));
  return a;
}

ConvexPolygon2D read_polygon(const Json& j, const std::string& path) {
  const Json& arr = read_array(j, path);
  std::vector<Vec2> pts;
  for (std::size_t i = 0; i < arr.size(); ++i) pts.push_back(read_vec<2>(arr[i], index(path, i)));
  return validated(path, [&] { return ConvexPolygon2D::from_ccw_vertices(std::move(pts)); });
}

TrajectorySample read_sample(const Json& j, const std::string& path, const std::optional<ConvexPolygon2D>& support) {
  ObjectReader o(j, path);
  const double t = read_number(o.required("t"), o.at("t"));
  ShapeSet body = read_shapes(o.required("body"), o.at("body"));
  const Vec2 com = read_vec<2>(o.required("com"), o.at("com"));
  std::optional<ConvexPolygon2D> poly = support;
  if (const Json* s = o.optional("support")) poly = read_polygon(*s, o.at("support"));
  if (!poly) throw SchemaError(o.at("support"), "missing support polygon (per sample or per action)");
  std::optional<Vec3> ee;
  if (const Json* e = o.optional("end_effector")) ee = read_vec<3>(*e, o.at("end_effector"));
  o.finish();
  return TrajectorySample{t, std::move(body), com, *poly, ee};
}

Action read_action(const Json& j, const std::string& path) {
  ObjectReader o(j, path);
  const std::string kind_name = read_string(o.required("kind"), o.at("kind"));
  const ActionKind kind = validated(o.at("kind"), [&] { return action_kind_from_string(kind_name); });
  std::optional<ConvexPolygon2D> support;
  if (const Json* s = o.optional("support")) support = read_polygon(*s, o.at("support"));
  std::optional<GraspContext> grasp;
  if (const Json* g = o.optional("grasp")) {
    ObjectReader go(*g, o.at("grasp"));
    GraspContext ctx{read_vec<3>(go.required("position_deviation"), go.at("position_deviation")),
                     read_vec<3>(go.required("orientation_deviation"), go.at("orientation_deviation"))};
    go.finish();
    if (ctx.position_deviation.minCoeff() < 0.0 || ctx.orientation_deviation.minCoeff() < 0.0) {
      throw ValidationError(o.at("grasp"), "grasp deviations must be non-negative");
    }
    grasp = ctx;
  }
  const Json& arr = read_array(o.required("samples"), o.at("samples"));
  std::vector<TrajectorySample> samples;
  for (std::size_t i = 0; i < arr.size(); ++i) samples.push_back(read_sample(arr[i], index(o.at("samples"), i), support));
  o.finish();
  TimedTrajectory traj = validated(path, [&] { return TimedTrajectory(std::move(samples)); });
  return Action{kind, std::move(traj), grasp};
}

Json action_json(const Action& a) {
  Json j{{"kind", to_string(a.kind)}};
  if (a.grasp) {
    j["grasp"] = Json{{"position_deviation", vec_json(a.grasp->position_deviation)},
                      {"orientation_deviation", vec_json(a.grasp->orientation_deviation)}};
  }
  const auto& samples = a.trajectory.samples();
  const bool shared_support = std::all_of(samples.begin(), samples.end(),
                                          [&](const TrajectorySample& s) { return s.support == samples.front().support; });
  if (shared_support) j["support"] = polygon_json(samples.front().support);
  Json arr = Json::array();
  for (const TrajectorySample& s : samples) {
    Json sj{{"t", s.t}, {"com", vec_json(s.com_xy)}};
    if (s.end_effector) sj["end_effector"] = vec_json(*s.end_effector);
    if (!shared_support) sj["support"] = polygon_json(s.support);
    sj["body"] = to_json(s.body);
    arr.push_back(std::move(sj));
  }
  j["samples"] = std::move(arr);
  return j;
}

Json params_json(const ScenarioParams& p) {
  Json axes = Json::array();
  for (const SigmoidParams& s : p.grasp.axes) axes.push_back(Json{{"a", s.a}, {"b", s.b}, {"x_max", s.x_max}});
  return Json{
      {"collision",
       {{"d_safety", p.collision.d_safety},
        {"exponent_b", p.collision.exponent_b},
        {"w_peak", p.collision.w_peak},
        {"w_exposure", p.collision.w_exposure}}},
      {"fall",
       {{"uncertainty_radius", p.fall.uncertainty_radius}, {"w_peak", p.fall.w_peak}, {"w_exposure", p.fall.w_exposure}}},
      {"weights", to_json(p.weights)},
      {"noise", to_json(p.noise)},
      {"grasp",
       {{"axes", axes},
        {"weights",
         {{"position", vec_json(p.grasp.weights.position)}, {"orientation", vec_json(p.grasp.weights.orientation)}}}}},
  };
}

ScenarioParams read_params(const Json& j, const std::string& path) {
  ObjectReader o(j, path);
  ScenarioParams p;
  {
    ObjectReader c(o.required("collision"), o.at("collision"));
    p.collision.d_safety = read_number(c.required("d_safety"), c.at("d_safety"));
    p.collision.exponent_b = read_number(c.required("exponent_b"), c.at("exponent_b"));
    p.collision.w_peak = read_number(c.required("w_peak"), c.at("w_peak"));
    p.collision.w_exposure = read_number(c.required("w_exposure"), c.at("w_exposure"));
    c.finish();
    p.collision.validate(o.at("collision"));
  }
  {
    ObjectReader f(o.required("fall"), o.at("fall"));
    p.fall.uncertainty_radius = read_number(f.required("uncertainty_radius"), f.at("uncertainty_radius"));
    p.fall.w_peak = read_number(f.required("w_peak"), f.at("w_peak"));
    p.fall.w_exposure = read_number(f.required("w_exposure"), f.at("w_exposure"));
    f.finish();
    p.fall.validate(o.at("fall"));
  }
  p.weights = risk_weights_from_json(o.required("weights"), o.at("weights"));
  p.noise = noise_model_from_json(o.required("noise"), o.at("noise"));
  if (const Json* g = o.optional("grasp")) {
    ObjectReader go(*g, o.at("grasp"));
    const Json& axes = read_array(go.required("axes"), go.at("axes"));
    if (axes.size() != 6) throw SchemaError(go.at("axes"), "expected 6 axis entries (x y z roll pitch yaw)");
    for (std::size_t i = 0; i < 6; ++i) {
      ObjectReader a(axes[i], index(go.at("axes"), i));
      p.grasp.axes[i] = SigmoidParams{read_number(a.required("a"), a.at("a")), read_number(a.required("b"), a.at("b")),
                                      read_number(a.required("x_max"), a.at("x_max"))};
      a.finish();
      p.grasp.axes[i].validate(index(go.at("axes"), i));
    }
    ObjectReader w(go.required("weights"), go.at("weights"));
    p.grasp.weights.position = read_vec<3>(w.required("position"), w.at("position"));
    p.grasp.weights.orientation = read_vec<3>(w.required("orientation"), w.at("orientation"));
    w.finish();
    go.finish();
    p.grasp.weights.validate(go.at("weights"));
  }
  o.finish();
  return p;
}

Json parse_json(std::string_view text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(e.what());
  }
}

RiskComponents read_components(const Json& j, const std::string& path) {
  ObjectReader o(j, path);
  RiskComponents c{read_number(o.required("peak"), o.at("peak")), read_number(o.required("exposure"), o.at("exposure")),
                   read_number(o.required("combined"), o.at("combined"))};
  o.finish();
  return c;
}

Json components_json(const RiskComponents& c) {
  return Json{{"peak", c.peak}, {"exposure", c.exposure}, {"combined", c.combined}};
}

}  // namespace

Json to_json(const ShapeSet& shapes) {
  Json a = Json::array();
  for (const Shape& s : shapes.shapes()) a.push_back(shape_json(s));
  return a;
}

Json to_json(const RiskWeights& w) {
  return Json{{"w_collision", w.collision}, {"w_fall", w.fall}, {"w_grasp", w.grasp}};
}

Json to_json(const NoiseModel& n) {
  return Json{{"obstacle_pose_sigma", n.obstacle_pose_sigma},
              {"com_sigma", n.com_sigma},
              {"trials", n.trials},
              {"seed", n.seed}};
}

RiskWeights risk_weights_from_json(const Json& j, const std::string& path) {
  ObjectReader o(j, path);
  RiskWeights w{read_number(o.required("w_collision"), o.at("w_collision")),
                read_number(o.required("w_fall"), o.at("w_fall")), read_number(o.required("w_grasp"), o.at("w_grasp"))};
  o.finish();
  w.validate(path);
  return w;
}

NoiseModel noise_model_from_json(const Json& j, const std::string& path) {
  ObjectReader o(j, path);
  NoiseModel n{read_number(o.required("obstacle_pose_sigma"), o.at("obstacle_pose_sigma")),
               read_number(o.required("com_sigma"), o.at("com_sigma")), read_uint(o.required("trials"), o.at("trials")),
               read_uint(o.required("seed"), o.at("seed"))};
  o.finish();
  n.validate(path);
  return n;
}

Scenario load_scenario(std::string_view text) {
  const Json j = parse_json(text);
  ObjectReader o(j, "");
  Scenario s;
  s.schema_version = read_int(o.required("schema_version"), "schema_version");
  if (s.schema_version != kSchemaVersion) {
    throw SchemaError("schema_version", "unsupported schema version " + std::to_string(s.schema_version));
  }
  s.name = read_string(o.required("name"), "name");
  const Json& obstacles = read_array(o.required("obstacles"), "obstacles");
  for (std::size_t i = 0; i < obstacles.size(); ++i) {
    const std::string path = index("obstacles", i);
    ObjectReader ob(obstacles[i], path);
    NamedObstacle named{read_string(ob.required("name"), ob.at("name")), read_shapes(ob.required("shapes"), ob.at("shapes"))};
    ob.finish();
    s.obstacles.push_back(std::move(named));
  }
  if (const Json* m = o.optional("manipulated_object")) {
    ObjectReader mo(*m, "manipulated_object");
    s.manipulated_object = read_shapes(mo.required("shapes"), mo.at("shapes"));
    mo.finish();
  }
  const Json& comps = read_array(o.required("compositions"), "compositions");
  for (std::size_t i = 0; i < comps.size(); ++i) {
    const std::string path = index("compositions", i);
    ObjectReader co(comps[i], path);
    Composition c;
    c.id = read_string(co.required("id"), co.at("id"));
    const Json& actions = read_array(co.required("actions"), co.at("actions"));
    for (std::size_t k = 0; k < actions.size(); ++k) c.actions.push_back(read_action(actions[k], index(co.at("actions"), k)));
    co.finish();
    s.compositions.push_back(std::move(c));
  }
  s.params = read_params(o.required("params"), "params");
  o.finish();
  s.validate();
  return s;
}

std::string read_text_file(const std::filesystem::path& path) {
  if (!std::filesystem::exists(path)) throw Error(ErrorCategory::kNotFound, "", "no such file '" + path.string() + "'");
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCategory::kRuntime, "", "cannot open '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Scenario load_scenario_file(const std::filesystem::path& path) { return load_scenario(read_text_file(path)); }

std::string serialize_scenario(const Scenario& s) {
  Json j{{"schema_version", s.schema_version}, {"name", s.name}};
  Json obstacles = Json::array();
  for (const NamedObstacle& o : s.obstacles) obstacles.push_back(Json{{"name", o.name}, {"shapes", to_json(o.shapes)}});
  j["obstacles"] = std::move(obstacles);
  if (s.manipulated_object) j["manipulated_object"] = Json{{"shapes", to_json(*s.manipulated_object)}};
  Json comps = Json::array();
  for (const Composition& c : s.compositions) {
    Json actions = Json::array();
    for (const Action& a : c.actions) actions.push_back(action_json(a));
    comps.push_back(Json{{"id", c.id}, {"actions", std::move(actions)}});
  }
  j["compositions"] = std::move(comps);
  j["params"] = params_json(s.params);
  return j.dump(1) + "\n";
}

ReportFormat report_format_from_string(const std::string& name) {
  if (name == "structured") return ReportFormat::kStructured;
  if (name == "table") return ReportFormat::kTable;
  throw ValidationError("format", "unknown report format '" + name + "' (expected structured or table)");
}

Json to_json(const CompositionReport& r) {
  Json j{{"id", r.id},
         {"collision", components_json(r.collision)},
         {"fall", components_json(r.fall)},
         {"grasp", r.grasp},
         {"total", r.total},
         {"payoff", {{"duration", r.payoff.duration}, {"path_length", r.payoff.path_length}}}};
  if (r.monte_carlo) {
    j["monte_carlo"] = Json{{"collision_failure_rate", r.monte_carlo->collision_failure_rate},
                            {"fall_failure_rate", r.monte_carlo->fall_failure_rate},
                            {"trials", r.monte_carlo->trials},
                            {"seed", r.monte_carlo->seed}};
  }
  return j;
}

Json to_json(const RiskReport& r) {
  Json comps = Json::array();
  for (const CompositionReport& c : r.compositions) comps.push_back(to_json(c));
  return Json{{"schema_version", r.schema_version},
              {"scenario", r.scenario},
              {"weights", to_json(r.weights)},
              {"compositions", std::move(comps)}};
}

Json to_json(const CompositionSeries& s) {
  Json com = Json::array();
  for (const Vec2& c : s.com) com.push_back(vec_json(c));
  Json support = Json::array();
  for (const ConvexPolygon2D& p : s.support) support.push_back(polygon_json(p));
  return Json{{"id", s.id},
              {"t", s.t},
              {"distance", s.distance},
              {"collision_risk", s.collision_risk},
              {"margin", s.margin},
              {"fall_risk", s.fall_risk},
              {"com", std::move(com)},
              {"support", std::move(support)},
              {"uncertainty_radius", s.uncertainty_radius}};
}

std::string write_report(const RiskReport& report, ReportFormat format) {
  if (format == ReportFormat::kStructured) return to_json(report).dump(2) + "\n";
  std::string out = "id,collision,fall,grasp,total,duration,path_length,mc_collision_rate,mc_fall_rate\n";
  for (const CompositionReport& r : report.compositions) {
    out += r.id;
    for (double v : {r.collision.combined, r.fall.combined, r.grasp, r.total, r.payoff.duration, r.payoff.path_length}) {
      out += ',' + format_double(v);
    }
    if (r.monte_carlo) {
      out += ',' + format_double(r.monte_carlo->collision_failure_rate) + ',' +
             format_double(r.monte_carlo->fall_failure_rate);
    } else {
      out += ",,";
    }
    out += '\n';
  }
  return out;
}

void write_report_file(const RiskReport& report, ReportFormat format, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCategory::kRuntime, "out", "cannot write '" + path.string() + "'");
  out << write_report(report, format);
  if (!out) throw Error(ErrorCategory::kRuntime, "out", "failed writing '" + path.string() + "'");
}

RiskReport parse_report(std::string_view text) {
  const Json j = parse_json(text);
  ObjectReader o(j, "");
  RiskReport r;
  r.schema_version = read_int(o.required("schema_version"), "schema_version");
  if (r.schema_version != kSchemaVersion) {
    throw SchemaError("schema_version", "unsupported schema version " + std::to_string(r.schema_version));
  }
  r.scenario = read_string(o.required("scenario"), "scenario");
  r.weights = risk_weights_from_json(o.required("weights"), "weights");
  const Json& comps = read_array(o.required("compositions"), "compositions");
  for (std::size_t i = 0; i < comps.size(); ++i) {
    ObjectReader c(comps[i], index("compositions", i));
    CompositionReport cr;
    cr.id = read_string(c.required("id"), c.at("id"));
    cr.collision = read_components(c.required("collision"), c.at("collision"));
    cr.fall = read_components(c.required("fall"), c.at("fall"));
    cr.grasp = read_number(c.required("grasp"), c.at("grasp"));
    cr.total = read_number(c.required("total"), c.at("total"));
    {
      ObjectReader p(c.required("payoff"), c.at("payoff"));
      cr.payoff = Payoff{read_number(p.required("duration"), p.at("duration")),
                         read_number(p.required("path_length"), p.at("path_length"))};
      p.finish();
    }
    if (const Json* mc = c.optional("monte_carlo")) {
      ObjectReader m(*mc, c.at("monte_carlo"));
      cr.monte_carlo = MonteCarloResult{read_number(m.required("collision_failure_rate"), m.at("collision_failure_rate")),
                                        read_number(m.required("fall_failure_rate"), m.at("fall_failure_rate")),
                                        read_uint(m.required("trials"), m.at("trials")),
                                        read_uint(m.required("seed"), m.at("seed"))};
      m.finish();
    }
    c.finish();
    r.compositions.push_back(std::move(cr));
  }
  o.finish();
  return r;
}

GraspFixture load_grasp_fixture(std::string_view text) {
  const Json j = parse_json(text);
  ObjectReader o(j, "");
  const int version = read_int(o.required("schema_version"), "schema_version");
  if (version != kSchemaVersion) throw SchemaError("schema_version", "unsupported schema version " + std::to_string(version));
  GraspFixture f;
  f.object = read_shapes(o.required("object"), "object");
  ObjectReader h(o.required("hand"), "hand");
  f.hand.nominal = read_pose(h.required("nominal"), h.at("nominal"));
  const std::string model = read_string(h.required("contact_model"), h.at("contact_model"));
  f.hand.contact_model = validated(h.at("contact_model"), [&] { return contact_model_from_string(model); });
  f.hand.reference_length = read_number(h.required("reference_length"), h.at("reference_length"));
  if (!(f.hand.reference_length > 0.0)) throw ValidationError(h.at("reference_length"), "must be > 0");
  const Json& tips = read_array(h.required("fingertips"), h.at("fingertips"));
  if (tips.empty()) throw ValidationError(h.at("fingertips"), "hand needs at least one fingertip");
  for (std::size_t i = 0; i < tips.size(); ++i) {
    const std::string path = index(h.at("fingertips"), i);
    ObjectReader t(tips[i], path);
    Fingertip tip{read_vec<3>(t.required("start"), t.at("start")), read_vec<3>(t.required("direction"), t.at("direction")),
                  read_number(t.required("radius"), t.at("radius")), read_number(t.required("max_travel"), t.at("max_travel"))};
    t.finish();
    if (!(tip.direction.norm() > 0.0)) throw ValidationError(t.at("direction"), "direction must be non-zero");
    tip.direction.normalize();
    if (!(tip.radius > 0.0)) throw ValidationError(t.at("radius"), "radius must be > 0");
    if (!(tip.max_travel >= 0.0)) throw ValidationError(t.at("max_travel"), "max_travel must be >= 0");
    f.hand.fingertips.push_back(tip);
  }
  h.finish();
  o.finish();
  return f;
}

GraspFixture load_grasp_fixture_file(const std::filesystem::path& path) {
  return load_grasp_fixture(read_text_file(path));
}

}  // namespace riskaware
