#pragma once

// Operator session: serves risk/payoff reports for one scenario, applies
// what-if parameter overrides and commits compositions, each commit drawing
// one seeded perturbation trial as the observed outcome.

#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>
#include <shared_mutex>
#include <string>
#include <vector>

#include "riskaware/composer.hpp"
#include "riskaware/scenario.hpp"
#include "riskaware/scenario_io.hpp"

namespace riskaware {

enum class Outcome { kSuccess, kCollisionFailure, kFallFailure };
const char* to_string(Outcome outcome);

struct HistoryEntry {
  std::uint64_t sequence = 0;
  std::string composition_id;
  std::uint64_t seed = 0;
  Outcome outcome = Outcome::kSuccess;
  TrialOutcome detail;
  std::int64_t timestamp_ms = 0;
};

struct Overrides {
  std::optional<RiskWeights> weights;
  std::optional<NoiseModel> noise;
  bool operator==(const Overrides&) const = default;
};

struct Snapshot {
  std::string scenario;
  std::vector<std::string> composition_ids;
  Overrides overrides;
  RiskWeights effective_weights;
  NoiseModel effective_noise;
  RiskReport report;
  std::vector<HistoryEntry> history;
};

// Maps a trial to an outcome; collision takes precedence over falling.
Outcome classify(const TrialOutcome& trial);

class Session {
 public:
  explicit Session(Scenario scenario, std::size_t workers = 1);

  Snapshot get_state() const;
  CompositionReport report(const std::string& composition_id) const;
  CompositionSeries series(const std::string& composition_id) const;
  std::vector<HistoryEntry> history() const;

  // Validates and stores the given overrides (absent fields keep their
  // current value) and recomputes every report. On error nothing changes.
  RiskReport what_if(const Overrides& overrides);

  // Runs trial 0 of the substream family `seed` under the effective noise.
  HistoryEntry commit(const std::string& composition_id, std::uint64_t seed);

  // Appends every commit to this file as one JSON line.
  void set_history_export(std::filesystem::path path);

 private:
  RiskReport compute(const Overrides& overrides) const;
  NoiseModel effective_noise(const Overrides& overrides) const;

  Scenario scenario_;
  std::size_t workers_;
  mutable std::shared_mutex mutex_;
  Overrides overrides_;
  RiskReport report_;
  std::vector<HistoryEntry> history_;
  std::optional<std::filesystem::path> history_export_;
};

Json to_json(const HistoryEntry& entry);
Json to_json(const Snapshot& snapshot);
Overrides overrides_from_json(const Json& j);

// Thin HTTP front end over a Session. Routes:
//   GET  /state            GET /history
//   GET  /report/<id>      GET /series/<id>
//   POST /what-if          {"weights": {...}?, "noise": {...}?}
//   POST /commit           {"composition_id": "...", "seed": N}
// Errors answer {"category", "field_path", "message"}.
class Server {
 public:
  explicit Server(Session& session);
  ~Server();
  Server(const Server&) = delete;
  Server& operator=(const Server&) = delete;

  // Binds to `port` (0 picks a free port) and returns the bound port.
  int bind(const std::string& host, int port);
  // Blocks until stop() is called.
  void run();
  void stop();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace riskaware
