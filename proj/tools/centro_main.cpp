#include <CLI11.hpp>
#include <cstdio>
#include <filesystem>
#include <sstream>
#include <string>
#include <vector>

#include "centro/config_io.hpp"
#include "centro/csv_io.hpp"
#include "centro/metrics.hpp"
#include "centro/phase_plot.hpp"
#include "centro/sim.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kConfigError = 2;
constexpr int kIoError = 3;

int fail(const std::string& message) {
  std::fprintf(stderr, "%s\n", message.c_str());
  return message.rfind("io:", 0) == 0 ? kIoError : kConfigError;
}

int load(const std::string& path, centro::ScenarioConfig& config) {
  const std::string error = centro::load_config_file(path, config);
  if (!error.empty()) return fail(error);
  const std::string invalid = config.validate();
  if (!invalid.empty()) return fail(invalid);
  return kOk;
}

bool ensure_dir(const std::string& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  return !ec;
}

std::string config_comment(const centro::ScenarioConfig& config) {
  std::ostringstream out;
  out << "# seed = " << config.seed << "\n";
  out << "# config begin\n";
  std::istringstream lines(centro::serialize_config(config));
  std::string line;
  while (std::getline(lines, line)) out << "#   " << line << "\n";
  out << "# config end\n";
  return out.str();
}

double requested_velocity(const centro::ScenarioConfig& config) {
  return config.commands.empty() ? 0.0 : std::abs(config.commands.back().command.vx);
}

int cmd_simulate(const std::string& scenario, const std::string& out_dir, long long seed) {
  centro::ScenarioConfig config;
  if (int rc = load(scenario, config)) return rc;
  if (seed >= 0) config.seed = std::uint64_t(seed);
  if (!ensure_dir(out_dir)) return fail("io: cannot create '" + out_dir + "'");

  centro::RunLog log;
  try {
    log = centro::run_scenario(config);
  } catch (const std::invalid_argument& e) {
    return fail(e.what());
  }
  const centro::IseMetrics metrics =
      centro::ise_metrics(log, requested_velocity(config), config.duration);

  std::string error = centro::write_text_file(out_dir + "/runlog.csv", centro::runlog_csv(log));
  if (!error.empty()) return fail(error);

  std::ostringstream summary;
  summary << "e_c = " << metrics.e_c << "\n";
  summary << "e_z = " << metrics.e_z << "\n";
  summary << "e_v = " << metrics.e_v << "\n";
  summary << "normalized = " << (metrics.normalized ? 1 : 0) << "\n";
  summary << "fallen = " << (log.fallen ? 1 : 0) << "\n";
  summary << "fall_time = " << log.fall_time << "\n";
  summary << "exchanges = " << log.exchange_count << "\n";
  summary << "seed = " << log.seed << "\n";
  summary << "mode = " << centro::mode_name(config.mode) << "\n";
  error = centro::write_text_file(out_dir + "/summary.txt", summary.str());
  if (!error.empty()) return fail(error);

  std::printf("wrote %s/runlog.csv (%zu ticks, %d exchanges%s)\n", out_dir.c_str(),
              log.ticks.size(), log.exchange_count, log.fallen ? ", FALL" : "");
  return kOk;
}

int cmd_ablation(const std::string& scenario, const std::string& out_dir) {
  centro::ScenarioConfig base;
  if (int rc = load(scenario, base)) return rc;
  if (!ensure_dir(out_dir)) return fail("io: cannot create '" + out_dir + "'");

  const centro::ControlMode modes[] = {
      centro::ControlMode::kOpenLoop, centro::ControlMode::kStraightLeg,
      centro::ControlMode::kClosedLoopPlain, centro::ControlMode::kLeaky,
      centro::ControlMode::kExtended, centro::ControlMode::kInertia,
      centro::ControlMode::kTiming, centro::ControlMode::kFull,
      centro::ControlMode::kNoInertia};

  std::ostringstream table;
  table << config_comment(base);
  table << "mode,max_velocity,e_c,e_z,e_v,normalized,fallen\n";
  std::printf("%-18s %12s %12s %12s %12s\n", "mode", "max_vel", "e_c", "e_z", "e_v");
  for (centro::ControlMode mode : modes) {
    centro::ScenarioConfig config = base;
    config.mode = mode;
    const double vmax = centro::max_stable_velocity(config, 0.0, 0.8, 0.005, 30.0);

    config.duration = 20.0;
    config.commands.clear();
    config.commands.push_back({0.0, {}});
    centro::CommandPoint target;
    target.time = 2.0;
    target.command.vx = vmax;
    config.commands.push_back(target);
    const centro::RunLog log = centro::run_scenario(config);
    const centro::IseMetrics metrics = centro::ise_metrics(log, vmax, config.duration - 2.0);

    table << centro::mode_name(mode) << ',' << vmax << ',' << metrics.e_c << ',' << metrics.e_z
          << ',' << metrics.e_v << ',' << (metrics.normalized ? 1 : 0) << ','
          << (log.fallen ? 1 : 0) << "\n";
    std::printf("%-18s %12.3f %12.5g %12.5g %12.5g%s\n", centro::mode_name(mode), vmax,
                metrics.e_c, metrics.e_z, metrics.e_v, log.fallen ? "  FALL" : "");
  }
  const std::string error = centro::write_text_file(out_dir + "/ablation.csv", table.str());
  if (!error.empty()) return fail(error);
  return kOk;
}

int cmd_push_bench(const std::string& scenario, const std::string& out_dir,
                   const std::string& levels_text, int trials) {
  centro::ScenarioConfig base;
  if (int rc = load(scenario, base)) return rc;
  if (trials < 1) return fail("trials must be >= 1");
  if (!ensure_dir(out_dir)) return fail("io: cannot create '" + out_dir + "'");

  std::vector<double> levels;
  std::istringstream list(levels_text);
  std::string item;
  while (std::getline(list, item, ',')) {
    char* end = nullptr;
    const double level = std::strtod(item.c_str(), &end);
    if (end == item.c_str() || *end != '\0' || level < 0.0)
      return fail("levels: expected a comma-separated list of impulses");
    levels.push_back(level);
  }
  if (levels.empty()) return fail("levels: list is empty");

  const std::vector<centro::PushBenchRow> rows =
      centro::push_benchmark(base, levels, trials, base.seed);

  std::ostringstream table;
  table << config_comment(base);
  table << "impulse,survived,trials\n";
  std::printf("%-10s %-10s\n", "impulse", "survived");
  for (const centro::PushBenchRow& row : rows) {
    table << row.impulse << ',' << row.survived << ',' << row.trials << "\n";
    std::printf("%-10.3g %d/%d\n", row.impulse, row.survived, row.trials);
  }
  const std::string error = centro::write_text_file(out_dir + "/push_bench.csv", table.str());
  if (!error.empty()) return fail(error);
  return kOk;
}

int cmd_phase_plot(const std::string& log_path, const std::string& axis,
                   const std::string& out_path) {
  centro::CsvTable table;
  std::string error = centro::read_csv_file(log_path, table);
  if (!error.empty()) return fail(error);

  centro::PhasePlot plot;
  error = centro::make_phase_plot(table, axis, 0.05, plot);
  if (!error.empty()) return fail(error);

  error = centro::write_text_file(out_path, plot.svg);
  if (!error.empty()) return fail(error);
  std::string csv_path = out_path;
  const size_t dot = csv_path.find_last_of('.');
  if (dot != std::string::npos && csv_path.find('/', dot) == std::string::npos)
    csv_path = csv_path.substr(0, dot);
  csv_path += ".csv";
  error = centro::write_text_file(csv_path, plot.csv);
  if (!error.empty()) return fail(error);

  std::printf("wrote %s and %s (%d/%d diverging)\n", out_path.c_str(), csv_path.c_str(),
              plot.diverging, plot.total);
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"centroidal locomotion simulator"};
  app.require_subcommand(1);

  std::string scenario, out_dir = "out", log_path, axis = "sagittal", out_path;
  std::string levels = "1.2,1.5,1.8,2.0,2.2,2.4,2.6,2.8";
  long long seed = -1;
  int trials = 20;

  CLI::App* simulate = app.add_subcommand("simulate", "run one scenario and write its log");
  simulate->add_option("--scenario", scenario, "scenario file")->required();
  simulate->add_option("--out", out_dir, "output directory");
  simulate->add_option("--seed", seed, "override the scenario seed");

  CLI::App* ablation =
      app.add_subcommand("ablation", "max stable velocity and tracking errors per mode");
  ablation->add_option("--scenario", scenario, "scenario file")->required();
  ablation->add_option("--out", out_dir, "output directory");

  CLI::App* push =
      app.add_subcommand("push-bench", "survival counts under randomized pushes");
  push->add_option("--scenario", scenario, "scenario file")->required();
  push->add_option("--out", out_dir, "output directory");
  push->add_option("--levels", levels, "comma-separated impulse levels [N*s]");
  push->add_option("--trials", trials, "trials per level");

  CLI::App* phase = app.add_subcommand("phase-plot", "phase portrait from a run log");
  phase->add_option("--log", log_path, "runlog.csv produced by simulate")->required();
  phase->add_option("--axis", axis, "sagittal or lateral");
  phase->add_option("--out", out_path, "output SVG path")->required();

  CLI11_PARSE(app, argc, argv);

  if (simulate->parsed()) return cmd_simulate(scenario, out_dir, seed);
  if (ablation->parsed()) return cmd_ablation(scenario, out_dir);
  if (push->parsed()) return cmd_push_bench(scenario, out_dir, levels, trials);
  if (phase->parsed()) return cmd_phase_plot(log_path, axis, out_path);
  return kConfigError;
}
