// Command-line front end: evaluate, rank, montecarlo, sweep and serve.
//
// Exit codes: 0 success, 1 usage error, 2 validation error, 3 runtime error.

#include <CLI11.hpp>
#include <csignal>
#include <iostream>

#include "riskaware/errors.hpp"
#include "riskaware/format.hpp"
#include "riskaware/scenario_io.hpp"
#include "riskaware/service.hpp"

namespace ra = riskaware;

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitValidation = 2;
constexpr int kExitRuntime = 3;

ra::Server* g_server = nullptr;

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path, std::ios::binary | std::ios::trunc);
  if (!out) throw ra::Error(ra::ErrorCategory::kRuntime, "out", "cannot write '" + out_path + "'");
  out << text;
}

std::string ranked_table(const ra::RiskReport& report) {
  std::string out = "rank,id,total,collision,fall,grasp,duration,path_length\n";
  const auto ranked = ra::rank_compositions(report.compositions);
  for (std::size_t i = 0; i < ranked.size(); ++i) {
    const auto& r = ranked[i];
    out += std::to_string(i + 1) + ',' + r.id;
    for (double v : {r.total, r.collision.combined, r.fall.combined, r.grasp, r.payoff.duration, r.payoff.path_length}) {
      out += ',' + ra::format_double(v);
    }
    out += '\n';
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Risk assessment for robot action compositions"};
  app.require_subcommand(1);
  std::size_t workers = 1;
  app.add_option("--workers", workers, "Worker threads for evaluation")->check(CLI::PositiveNumber);

  std::string scenario_path;
  std::string out_path;
  std::string format = "structured";

  auto* evaluate = app.add_subcommand("evaluate", "Evaluate every composition of a scenario");
  bool skip_mc = false;
  evaluate->add_option("scenario", scenario_path, "Scenario file")->required();
  evaluate->add_option("--out", out_path, "Write the report to this path");
  evaluate->add_option("--format", format, "structured or table")->check(CLI::IsMember({"structured", "table"}));
  evaluate->add_flag("--no-montecarlo", skip_mc, "Skip Monte Carlo failure estimation");

  auto* rank = app.add_subcommand("rank", "Rank compositions by total risk");
  rank->add_option("scenario", scenario_path, "Scenario file")->required();

  auto* mc = app.add_subcommand("montecarlo", "Estimate failure rates under sensing noise");
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
  mc->add_option("scenario", scenario_path, "Scenario file")->required();
  mc->add_option("--trials", trials, "Trials per composition")->required()->check(CLI::PositiveNumber);
  mc->add_option("--seed", seed, "Random seed")->required();
  mc->add_option("--out", out_path, "Write the report to this path");
  mc->add_option("--format", format, "structured or table")->check(CLI::IsMember({"structured", "table"}));

  auto* sweep = app.add_subcommand("sweep", "Pre-grasp offset sweep of grasp quality");
  std::string fixture_path;
  std::string grid;
  sweep->add_option("fixture", fixture_path, "Grasp fixture file")->required();
  sweep->add_option("--grid", grid, "Grid, e.g. x=-0.02:0.02:0.005,y=-0.02:0.02:0.005")->required();
  sweep->add_option("--out", out_path, "Write the CSV to this path");

  auto* serve = app.add_subcommand("serve", "Serve the operator session over HTTP");
  int port = 8080;
  std::string host = "127.0.0.1";
  std::string history_out;
  serve->add_option("--port", port, "Port (0 picks a free one)")->required();
  serve->add_option("--scenario", scenario_path, "Scenario file")->required();
  serve->add_option("--host", host, "Bind address");
  serve->add_option("--history-out", history_out, "Append committed outcomes to this file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (*evaluate) {
      const ra::Scenario scenario = ra::load_scenario_file(scenario_path);
      ra::EvaluationOptions options;
      options.monte_carlo = !skip_mc;
      options.workers = workers;
      emit(ra::write_report(ra::evaluate(scenario, options), ra::report_format_from_string(format)), out_path);
    } else if (*rank) {
      const ra::Scenario scenario = ra::load_scenario_file(scenario_path);
      ra::EvaluationOptions options;
      options.monte_carlo = false;
      options.workers = workers;
      std::cout << ranked_table(ra::evaluate(scenario, options));
    } else if (*mc) {
      const ra::Scenario scenario = ra::load_scenario_file(scenario_path);
      ra::NoiseModel noise = scenario.params.noise;
      noise.trials = trials;
      noise.seed = seed;
      ra::EvaluationOptions options;
      options.noise = noise;
      options.workers = workers;
      emit(ra::write_report(ra::evaluate(scenario, options), ra::report_format_from_string(format)), out_path);
    } else if (*sweep) {
      const ra::GraspFixture fixture = ra::load_grasp_fixture_file(fixture_path);
      const auto cells =
          ra::pregrasp_sweep(fixture.object, fixture.hand, ra::SweepGrid::parse(grid).offsets(), workers);
      emit(ra::sweep_to_csv(cells), out_path);
    } else if (*serve) {
      ra::Session session(ra::load_scenario_file(scenario_path), workers);
      if (!history_out.empty()) session.set_history_export(history_out);
      ra::Server server(session);
      const int bound = server.bind(host, port);
      g_server = &server;
      std::signal(SIGINT, [](int) {
        if (g_server) g_server->stop();
      });
      std::signal(SIGTERM, [](int) {
        if (g_server) g_server->stop();
      });
      std::cerr << "serving " << session.get_state().scenario << " on http://" << host << ':' << bound << "\n";
      server.run();
      g_server = nullptr;
    }
  } catch (const ra::Error& e) {
    std::cerr << "error (" << ra::to_string(e.category()) << "): " << e.what() << "\n";
    const bool runtime = e.category() == ra::ErrorCategory::kRuntime || e.category() == ra::ErrorCategory::kNotFound;
    return runtime ? kExitRuntime : kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
  return 0;
}
