// colorvib: build color-vibration stimuli, run flicker-detection sessions and
// fit the detection threshold.

#include <CLI11.hpp>
#include <httplib.h>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "colorvib/config.hpp"
#include "colorvib/ellipse_atlas.hpp"
#include "colorvib/http_service.hpp"
#include "colorvib/serialize.hpp"
#include "colorvib/session_store.hpp"
#include "colorvib/simulate.hpp"

namespace fs = std::filesystem;
using namespace colorvib;

namespace {

ExperimentConfig config_or(const std::string& path, ExperimentConfig fallback) {
  return path.empty() ? fallback : load_config(path);
}

void print_set_summary(const StimulusSet& set, std::ostream& os) {
  os << "Y=" << set.Y << " colors:";
  for (int id : set.color_ids) os << ' ' << id;
  os << "\npairs=" << set.pairs.size() << " rejected=" << set.rejected.size()
     << " requested=" << set.pairs.size() + set.rejected.size() << '\n';
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << text;
  if (!out) throw Error(ErrorCode::kIo, "cannot write '" + path + "'");
}

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_report(const SessionAnalysis& analysis, const std::string& report_path,
                  const std::string& curve_path) {
  const auto report = report_to_json(analysis);
  if (report_path.empty()) {
    std::cout << report.dump(2) << '\n';
  } else {
    write_json_file(report_path, report);
  }
  if (!curve_path.empty() && !analysis.bins.empty()) {
    std::ofstream csv(curve_path, std::ios::trunc);
    write_curve_csv(csv, analysis.curve, analysis.bins.front().r, analysis.bins.back().r);
  }
}

int run_simulate(const std::string& config_path, const std::string& observer_name,
                 double threshold, double beta, std::uint64_t observer_seed,
                 const std::string& out_dir) {
  const ExperimentConfig config = config_or(config_path, simulation_config());
  const StimulusSet set = stimulus_set_from_config(config);
  const Schedule schedule = schedule_from_config(config, set);

  Observer observer;
  if (observer_name == "step") {
    observer = step_observer(threshold);
  } else if (observer_name == "logistic") {
    observer = logistic_observer(threshold, beta);
  } else {
    observer = coin_observer();
  }
  const SessionRecord rec = simulate_session(schedule, "simulated-" + observer_name, observer,
                                             observer_seed);

  fs::create_directories(out_dir);
  const std::string schedule_path = (fs::path(out_dir) / "schedule.json").string();
  const std::string session_path = (fs::path(out_dir) / "session.jsonl").string();
  const std::string stimuli_path = (fs::path(out_dir) / "stimuli.json").string();
  write_json_file(stimuli_path, stimulus_set_to_json(set));
  write_json_file(schedule_path, schedule_to_json(schedule));
  write_text(session_path, serialize_session(rec));

  // Reload both files and check the log reproduces byte for byte.
  const Schedule reloaded_schedule = schedule_from_json(read_json_file(schedule_path));
  const std::string bytes = read_text(session_path);
  const SessionRecord reloaded = parse_session(bytes);
  const bool round_trip = serialize_session(reloaded) == bytes && reloaded == rec &&
                          reloaded_schedule == schedule;

  const SessionAnalysis analysis = analyze_session(reloaded, reloaded_schedule, config.suspect_threshold);
  write_report(analysis, (fs::path(out_dir) / "report.json").string(),
               (fs::path(out_dir) / "curve.csv").string());

  std::size_t catches = 0;
  for (const auto& t : schedule.trials) catches += t.kind() == TrialKind::kCatch;
  std::cout << "trials=" << schedule.trials.size() << " vibration=" << schedule.trials.size() - catches
            << " catch=" << catches << '\n';
  print_set_summary(set, std::cout);
  std::cout << "alpha=" << analysis.curve.alpha << " beta=" << analysis.curve.beta
            << " converged=" << analysis.curve.converged << '\n';
  if (analysis.threshold_50) std::cout << "threshold_50=" << *analysis.threshold_50 << '\n';
  std::cout << "false_alarm_rate=" << analysis.catch_stats.false_alarm_rate
            << " suspect=" << analysis.suspect << '\n';
  std::cout << "session_round_trip=" << (round_trip ? "ok" : "MISMATCH") << '\n';
  std::cout << "outputs in " << out_dir << '\n';
  return round_trip ? 0 : 1;
}

int run_serve(const std::string& schedule_path, const std::string& session_path,
              const std::string& participant, const std::string& config_path,
              const std::string& static_dir, const std::string& host, int port) {
  const ExperimentConfig config = config_or(config_path, ExperimentConfig{});
  const Schedule schedule = schedule_from_json(read_json_file(schedule_path));
  ServiceOptions options{config.px_per_cm, config.suspect_threshold, session_path};
  ExperimentService service(schedule, start_session(schedule, participant), options);

  httplib::Server server;
  mount_api(server, service, static_dir);
  std::cout << "serving " << schedule.trials.size() << " trials on http://" << host << ':' << port
            << " (log: " << session_path << ")\n";
  if (!server.listen(host, port)) {
    std::cerr << "failed to listen on " << host << ':' << port << '\n';
    return 1;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Color-vibration stimulus generation and flicker-threshold analysis"};
  app.require_subcommand(1);

  std::string out, config_path, schedule_path, session_path, report_path, curve_path;
  std::string stimuli_path, participant = "anonymous", static_dir, host = "127.0.0.1";
  std::string observer = "step", out_dir = "sim_out";
  int port = 8080;
  double threshold = 24.4, beta = 0.3, suspect = kDefaultSuspectThreshold;
  std::uint64_t observer_seed = 7;

  auto* atlas = app.add_subcommand("atlas", "Print the built-in MacAdam ellipse table");
  atlas->add_option("-o,--out", out, "Write the table to a file instead of stdout");

  auto* pairs = app.add_subcommand("pairs", "Build the stimulus set from a config");
  pairs->add_option("-c,--config", config_path, "Experiment config JSON")->check(CLI::ExistingFile);
  pairs->add_option("-o,--out", out, "Stimulus set JSON output");

  auto* schedule = app.add_subcommand("schedule", "Build a randomized trial schedule");
  schedule->add_option("-c,--config", config_path, "Experiment config JSON")->check(CLI::ExistingFile);
  schedule->add_option("-o,--out", out, "Schedule JSON output")->required();
  schedule->add_option("--stimuli", stimuli_path, "Also write the stimulus set JSON here");

  auto* serve = app.add_subcommand("serve", "Host the session API and the static UI");
  serve->add_option("-s,--schedule", schedule_path, "Schedule JSON")->required()->check(CLI::ExistingFile);
  serve->add_option("-l,--session", session_path, "Session log (JSONL); resumed if present")->required();
  serve->add_option("-p,--participant", participant, "Participant label");
  serve->add_option("-c,--config", config_path, "Config JSON for display settings")->check(CLI::ExistingFile);
  serve->add_option("--static", static_dir, "Directory served at /")->check(CLI::ExistingDirectory);
  serve->add_option("--host", host, "Bind address");
  serve->add_option("--port", port, "Port");

  auto* analyze = app.add_subcommand("analyze", "Fit the psychometric curve for a session");
  analyze->add_option("-s,--schedule", schedule_path, "Schedule JSON")->required()->check(CLI::ExistingFile);
  analyze->add_option("-l,--session", session_path, "Session log (JSONL)")->required()->check(CLI::ExistingFile);
  analyze->add_option("-r,--report", report_path, "Report JSON output (default stdout)");
  analyze->add_option("--curve", curve_path, "Fitted curve CSV output");
  analyze->add_option("--suspect-threshold", suspect, "False-alarm rate above which a session is suspect");

  auto* simulate = app.add_subcommand("simulate", "Run a synthetic observer end to end");
  simulate->add_option("-c,--config", config_path, "Experiment config JSON")->check(CLI::ExistingFile);
  simulate->add_option("--observer", observer, "step | logistic | coin")
      ->check(CLI::IsMember({"step", "logistic", "coin"}));
  simulate->add_option("--threshold", threshold, "Observer threshold (step) or alpha (logistic)");
  simulate->add_option("--beta", beta, "Logistic observer slope");
  simulate->add_option("--observer-seed", observer_seed, "Observer RNG seed");
  simulate->add_option("-o,--out-dir", out_dir, "Output directory");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*atlas) {
      if (out.empty()) {
        write_atlas_table(std::cout, builtin_atlas());
      } else {
        std::ofstream f(out, std::ios::trunc);
        write_atlas_table(f, builtin_atlas());
      }
    } else if (*pairs) {
      const StimulusSet set = stimulus_set_from_config(config_or(config_path, ExperimentConfig{}));
      if (out.empty()) {
        std::cout << stimulus_set_to_json(set).dump(2) << '\n';
      } else {
        write_json_file(out, stimulus_set_to_json(set));
        print_set_summary(set, std::cout);
      }
    } else if (*schedule) {
      const ExperimentConfig config = config_or(config_path, ExperimentConfig{});
      const StimulusSet set = stimulus_set_from_config(config);
      const Schedule s = schedule_from_config(config, set);
      write_json_file(out, schedule_to_json(s));
      if (!stimuli_path.empty()) write_json_file(stimuli_path, stimulus_set_to_json(set));
      print_set_summary(set, std::cout);
      std::cout << "trials=" << s.trials.size() << " hash=" << schedule_hash(s) << '\n';
    } else if (*serve) {
      return run_serve(schedule_path, session_path, participant, config_path, static_dir, host, port);
    } else if (*analyze) {
      const Schedule s = schedule_from_json(read_json_file(schedule_path));
      const SessionAnalysis analysis = analyze_session(load_session(session_path), s, suspect);
      write_report(analysis, report_path, curve_path);
    } else if (*simulate) {
      return run_simulate(config_path, observer, threshold, beta, observer_seed, out_dir);
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
