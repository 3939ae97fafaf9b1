#include "riskaware/service.hpp"

#include <chrono>
#include <fstream>
#include <mutex>

#include "httplib.h"
#include "riskaware/errors.hpp"

namespace riskaware {

const char* to_string(Outcome outcome) {
  switch (outcome) {
    case Outcome::kSuccess:
      return "success";
    case Outcome::kCollisionFailure:
      return "collision_failure";
    case Outcome::kFallFailure:
      return "fall_failure";
  }
  return "success";
}

Outcome classify(const TrialOutcome& trial) {
  if (trial.collided) return Outcome::kCollisionFailure;
  if (trial.fell) return Outcome::kFallFailure;
  return Outcome::kSuccess;
}

Session::Session(Scenario scenario, std::size_t workers) : scenario_(std::move(scenario)), workers_(workers) {
  scenario_.validate();
  report_ = compute(overrides_);
}

RiskReport Session::compute(const Overrides& overrides) const {
  EvaluationOptions options;
  options.weights = overrides.weights;
  options.noise = overrides.noise;
  options.workers = workers_;
  return evaluate(scenario_, options);
}

NoiseModel Session::effective_noise(const Overrides& overrides) const {
  return overrides.noise.value_or(scenario_.params.noise);
}

Snapshot Session::get_state() const {
  std::shared_lock lock(mutex_);
  Snapshot s;
  s.scenario = scenario_.name;
  for (const Composition& c : scenario_.compositions) s.composition_ids.push_back(c.id);
  s.overrides = overrides_;
  s.effective_weights = overrides_.weights.value_or(scenario_.params.weights);
  s.effective_noise = effective_noise(overrides_);
  s.report = report_;
  s.history = history_;
  return s;
}

CompositionReport Session::report(const std::string& composition_id) const {
  std::shared_lock lock(mutex_);
  for (const CompositionReport& r : report_.compositions) {
    if (r.id == composition_id) return r;
  }
  throw NotFoundError("composition_id", "unknown composition '" + composition_id + "'");
}

CompositionSeries Session::series(const std::string& composition_id) const {
  // The scenario is immutable after construction.
  return composition_series(scenario_.composition(composition_id), scenario_, workers_);
}

std::vector<HistoryEntry> Session::history() const {
  std::shared_lock lock(mutex_);
  return history_;
}

RiskReport Session::what_if(const Overrides& overrides) {
  std::unique_lock lock(mutex_);
  Overrides next = overrides_;
  if (overrides.weights) {
    overrides.weights->validate("weights");
    next.weights = overrides.weights;
  }
  if (overrides.noise) {
    overrides.noise->validate("noise");
    next.noise = overrides.noise;
  }
  RiskReport report = compute(next);
  overrides_ = std::move(next);
  report_ = std::move(report);
  return report_;
}

HistoryEntry Session::commit(const std::string& composition_id, std::uint64_t seed) {
  std::unique_lock lock(mutex_);
  const Composition& c = scenario_.composition(composition_id);
  auto rng = trial_rng(seed, 0);
  const TrialOutcome trial = run_trial(c, scenario_, effective_noise(overrides_), rng);
  HistoryEntry entry;
  entry.sequence = history_.size();
  entry.composition_id = composition_id;
  entry.seed = seed;
  entry.outcome = classify(trial);
  entry.detail = trial;
  entry.timestamp_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                           std::chrono::system_clock::now().time_since_epoch())
                           .count();
  history_.push_back(entry);
  if (history_export_) {
    std::ofstream out(*history_export_, std::ios::app);
    if (out) out << to_json(entry).dump() << '\n';
  }
  return entry;
}

void Session::set_history_export(std::filesystem::path path) {
  std::unique_lock lock(mutex_);
  history_export_ = std::move(path);
}

Json to_json(const HistoryEntry& e) {
  auto finite_or_null = [](double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); };
  return Json{{"sequence", e.sequence},
              {"composition_id", e.composition_id},
              {"seed", e.seed},
              {"outcome", to_string(e.outcome)},
              {"detail",
               {{"collided", e.detail.collided},
                {"fell", e.detail.fell},
                {"min_clearance", finite_or_null(e.detail.min_clearance)},
                {"min_com_margin", finite_or_null(e.detail.min_com_margin)}}},
              {"timestamp_ms", e.timestamp_ms}};
}

Json to_json(const Snapshot& s) {
  Json overrides = Json::object();
  if (s.overrides.weights) overrides["weights"] = to_json(*s.overrides.weights);
  if (s.overrides.noise) overrides["noise"] = to_json(*s.overrides.noise);
  Json history = Json::array();
  for (const HistoryEntry& e : s.history) history.push_back(to_json(e));
  return Json{{"scenario", {{"name", s.scenario}, {"compositions", s.composition_ids}}},
              {"overrides", std::move(overrides)},
              {"effective", {{"weights", to_json(s.effective_weights)}, {"noise", to_json(s.effective_noise)}}},
              {"report", to_json(s.report)},
              {"history", std::move(history)}};
}

Overrides overrides_from_json(const Json& j) {
  if (!j.is_object()) throw SchemaError("", "expected an object");
  Overrides o;
  for (const auto& [key, value] : j.items()) {
    if (key == "weights") {
      o.weights = risk_weights_from_json(value, "weights");
    } else if (key == "noise") {
      o.noise = noise_model_from_json(value, "noise");
    } else {
      throw SchemaError(key, "unknown field");
    }
  }
  return o;
}

// ---------------------------------------------------------------------------
// HTTP

namespace {

int status_for(ErrorCategory category) {
  switch (category) {
    case ErrorCategory::kParse:
    case ErrorCategory::kSchema:
    case ErrorCategory::kValidation:
    case ErrorCategory::kDegenerateGeometry:
      return 400;
    case ErrorCategory::kNotFound:
      return 404;
    case ErrorCategory::kRuntime:
      return 500;
  }
  return 500;
}

void send_json(httplib::Response& res, const Json& body, int status = 200) {
  res.status = status;
  res.set_content(body.dump(), "application/json");
}

void send_error(httplib::Response& res, ErrorCategory category, const std::string& field_path,
                const std::string& message) {
  send_json(res, Json{{"category", to_string(category)}, {"field_path", field_path}, {"message", message}},
            status_for(category));
}

template <typename Fn>
httplib::Server::Handler guarded(Fn fn) {
  return [fn](const httplib::Request& req, httplib::Response& res) {
    try {
      fn(req, res);
    } catch (const Error& e) {
      send_error(res, e.category(), e.field_path(), e.message());
    } catch (const std::exception& e) {
      send_error(res, ErrorCategory::kRuntime, "", e.what());
    }
  };
}

Json parse_body(const httplib::Request& req) {
  try {
    return Json::parse(req.body);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(e.what());
  }
}

}  // namespace

struct Server::Impl {
  explicit Impl(Session& s) : session(s) {}
  Session& session;
  httplib::Server http;
};

Server::Server(Session& session) : impl_(std::make_unique<Impl>(session)) {
  auto& http = impl_->http;
  Session& s = session;
  http.Get("/state", guarded([&s](const httplib::Request&, httplib::Response& res) {
             send_json(res, to_json(s.get_state()));
           }));
  http.Get("/history", guarded([&s](const httplib::Request&, httplib::Response& res) {
             Json arr = Json::array();
             for (const HistoryEntry& e : s.history()) arr.push_back(to_json(e));
             send_json(res, arr);
           }));
  http.Get(R"(/report/([^/]+))", guarded([&s](const httplib::Request& req, httplib::Response& res) {
             send_json(res, to_json(s.report(req.matches[1].str())));
           }));
  http.Get(R"(/series/([^/]+))", guarded([&s](const httplib::Request& req, httplib::Response& res) {
             send_json(res, to_json(s.series(req.matches[1].str())));
           }));
  http.Post("/what-if", guarded([&s](const httplib::Request& req, httplib::Response& res) {
              send_json(res, to_json(s.what_if(overrides_from_json(parse_body(req)))));
            }));
  http.Post("/commit", guarded([&s](const httplib::Request& req, httplib::Response& res) {
              const Json body = parse_body(req);
              if (!body.is_object()) throw SchemaError("", "expected an object");
              for (const auto& [key, value] : body.items()) {
                if (key != "composition_id" && key != "seed") throw SchemaError(key, "unknown field");
              }
              if (!body.contains("composition_id") || !body["composition_id"].is_string()) {
                throw SchemaError("composition_id", "expected a string");
              }
              if (!body.contains("seed") || !body["seed"].is_number_unsigned()) {
                throw SchemaError("seed", "expected a non-negative integer");
              }
              send_json(res, to_json(s.commit(body["composition_id"].get<std::string>(),
                                               body["seed"].get<std::uint64_t>())));
            }));
}

Server::~Server() { stop(); }

int Server::bind(const std::string& host, int port) {
  if (port == 0) return impl_->http.bind_to_any_port(host);
  if (!impl_->http.bind_to_port(host, port)) {
    throw Error(ErrorCategory::kRuntime, "port", "cannot bind " + host + ":" + std::to_string(port));
  }
  return port;
}

void Server::run() { impl_->http.listen_after_bind(); }

void Server::stop() {
  if (impl_) impl_->http.stop();
}

}  // namespace riskaware
