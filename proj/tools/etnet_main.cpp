// Command-line front end: single runs, gamma sweeps, slope sweeps, the
// theoretical inter-event bound, and config validation.
//
// Exit codes: 0 success, 1 config error, 2 non-convergence of a run
// flagged --require-convergence, 3 I/O error.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "etnet/config.hpp"

namespace {

struct CommonArgs {
  std::string config_path;
  std::string engine;
  std::string out_dir;
  std::string format = "csv";
  std::int64_t seed = -1;
  double override_m_bound = 0.0;
  double override_sigma = 0.0;
  double max_time = 0.0;
  bool require_convergence = false;
};

void add_common(CLI::App* cmd, CommonArgs& args, bool needs_out) {
  cmd->add_option("--config", args.config_path, "configuration file (JSON)")->required();
  cmd->add_option("--engine", args.engine, "continuous|discrete (overrides config)");
  auto* out = cmd->add_option("--out", args.out_dir, "output directory");
  if (needs_out) out->required();
  cmd->add_option("--format", args.format, "csv|json for event/trace files (default csv)");
  cmd->add_option("--seed", args.seed, "overrides experiment.seed");
  cmd->add_option("--override-m-bound", args.override_m_bound,
                  "replace the computed Hessian-based bound M");
  cmd->add_option("--override-sigma", args.override_sigma, "replace sigma = e^{2 d_max T}");
  cmd->add_option("--max-time", args.max_time, "overrides experiment.max_time");
  cmd->add_flag("--require-convergence", args.require_convergence,
                "exit 2 if any run fails to converge");
}

etnet::ParsedConfig load(const CommonArgs& args) {
  etnet::ParsedConfig cfg = etnet::parse_config_file(args.config_path);
  if (!args.engine.empty()) {
    if (args.engine == "continuous")
      cfg.experiment.engine = etnet::Engine::continuous;
    else if (args.engine == "discrete")
      cfg.experiment.engine = etnet::Engine::discrete;
    else
      throw etnet::ConfigError("--engine: must be \"continuous\" or \"discrete\"");
  }
  if (args.seed >= 0) cfg.experiment.seed = static_cast<std::uint64_t>(args.seed);
  if (args.override_m_bound != 0.0) {
    if (!(args.override_m_bound > 0.0))
      throw etnet::ConfigError("--override-m-bound: must be positive");
    cfg.trigger.m_bound = args.override_m_bound;
  }
  if (args.override_sigma != 0.0) {
    if (!(args.override_sigma > 0.0))
      throw etnet::ConfigError("--override-sigma: must be positive");
    cfg.trigger.sigma = args.override_sigma;
  }
  if (args.max_time != 0.0) {
    if (!(args.max_time > 0.0)) throw etnet::ConfigError("--max-time: must be positive");
    cfg.experiment.stop.max_time = args.max_time;
  }
  return cfg;
}

std::filesystem::path ensure_dir(const std::string& dir) {
  std::filesystem::path path(dir);
  std::error_code ec;
  std::filesystem::create_directories(path, ec);
  if (ec) throw etnet::IoError(dir + ": cannot create output directory");
  return path;
}

int do_run(const CommonArgs& args, int trace_samples) {
  const etnet::ParsedConfig cfg = load(args);
  if (!cfg.x0)
    throw etnet::ConfigError("experiment.x0: required by the run subcommand");
  const etnet::OutputFormat format = etnet::parse_output_format(args.format);

  etnet::RunOptions options;
  options.record_trace = true;
  const etnet::RunResult result = etnet::run_with_engine(
      cfg.experiment.engine, cfg.model, cfg.trigger, *cfg.x0, cfg.experiment.stop, options);

  const etnet::OutputMeta meta{etnet::config_hash(cfg), cfg.experiment.seed, 1};
  const std::filesystem::path dir = ensure_dir(args.out_dir);
  const char* ext = format == etnet::OutputFormat::csv ? ".csv" : ".json";
  etnet::write_event_log(dir / (std::string("events") + ext), result.events, meta, format);
  etnet::write_trace(dir / (std::string("trace") + ext), cfg.model, result, meta, format,
                     trace_samples);
  etnet::write_run_summary(dir / "summary", result.summary, meta);

  const auto& s = result.summary;
  std::printf("%s after t=%.6g  residual=%.3g  events=%zu  eta_sim=%.6g  T_first=%.6g\n",
              s.converged() ? "converged" : "timed out", s.t_end, s.final_residual,
              s.total_events, s.eta_sim, s.t_first);
  if (s.diagnostics.admissibility_warning)
    std::fprintf(stderr,
                 "warning: gamma=%.3g exceeds the admissible bound sqrt(alpha/beta)=%.3g; "
                 "proceeding because allow_inadmissible_gamma is set\n",
                 cfg.trigger.gamma, s.apriori.gamma_max);
  if (args.require_convergence && !s.converged()) return 2;
  return 0;
}

int do_sweep(const CommonArgs& args) {
  const etnet::ParsedConfig cfg = load(args);
  if (cfg.experiment.gamma_grid.empty())
    throw etnet::ConfigError("experiment.gamma_grid: required by the sweep subcommand");
  if (cfg.experiment.init_box.empty())
    throw etnet::ConfigError("experiment.init_box: required by the sweep subcommand");

  const auto rows = etnet::gamma_sweep(cfg.model, cfg.trigger, cfg.experiment);
  const etnet::OutputMeta meta{etnet::config_hash(cfg), cfg.experiment.seed, 1};
  const std::filesystem::path dir = ensure_dir(args.out_dir);
  etnet::write_stat_rows(dir / "sweep", rows, meta);

  std::printf("%-8s %-12s %-12s %-10s %-10s %s\n", "gamma", "eta_sim", "eta", "N", "T_first",
              "non_conv");
  int non_converged = 0;
  for (const auto& r : rows) {
    std::printf("%-8.3g %-12.6g %-12.6g %-10.4g %-10.4g %d\n", r.gamma, r.eta_sim_mean,
                r.eta_theory, r.n_mean, r.t_first_mean, r.non_converged);
    non_converged += r.non_converged;
  }
  if (args.require_convergence && non_converged > 0) return 2;
  return 0;
}

int do_lambda_sweep(const CommonArgs& args) {
  const etnet::ParsedConfig cfg = load(args);
  if (cfg.lambda_grid.empty())
    throw etnet::ConfigError("experiment.lambda_grid: required by the lambda-sweep subcommand");
  if (cfg.experiment.init_box.empty())
    throw etnet::ConfigError("experiment.init_box: required by the lambda-sweep subcommand");

  const auto rows =
      etnet::lambda_sweep(cfg.model, cfg.trigger, cfg.lambda_grid, cfg.lambda_trials,
                          cfg.experiment.seed, cfg.experiment.stop, cfg.experiment.init_box);
  const etnet::OutputMeta meta{etnet::config_hash(cfg), cfg.experiment.seed, 1};
  const std::filesystem::path dir = ensure_dir(args.out_dir);
  etnet::write_lambda_rows(dir / "lambda_sweep", rows, meta);

  int non_converged = 0;
  for (const auto& r : rows) non_converged += r.converged ? 0 : 1;
  std::printf("lambda sweep: %zu rows (%d non-convergent) -> %s\n", rows.size(), non_converged,
              (dir / "lambda_sweep.csv").c_str());
  if (args.require_convergence && non_converged > 0) return 2;
  return 0;
}

int do_eta(const CommonArgs& args) {
  const etnet::ParsedConfig cfg = load(args);
  etnet::TriggerConfig trig = cfg.trigger;
  std::printf("M=%.17g sigma=%.17g\n", etnet::resolved_m_bound(cfg.model, trig),
              etnet::resolved_sigma(cfg.model, trig));
  auto print_one = [&](double gamma) {
    etnet::TriggerConfig t = trig;
    t.gamma = gamma;
    std::printf("gamma=%.6g eta=%.17g\n", gamma, etnet::eta_lower_bound(t, cfg.model));
  };
  if (cfg.experiment.gamma_grid.empty())
    print_one(trig.gamma);
  else
    for (double g : cfg.experiment.gamma_grid) print_one(g);
  return 0;
}

int do_validate(const CommonArgs& args, const std::string& emit_path) {
  const etnet::ParsedConfig cfg = load(args);
  if (!emit_path.empty()) {
    std::ofstream out(emit_path);
    if (!out) throw etnet::IoError(emit_path + ": cannot open for writing");
    out << etnet::emit_config(cfg);
    if (!out.flush()) throw etnet::IoError(emit_path + ": write failed");
  }
  std::printf("ok: %s (hash %016llx)\n", args.config_path.c_str(),
              static_cast<unsigned long long>(etnet::config_hash(cfg)));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Event-triggered analytic neural network simulator.\n"
      "Configs are JSON with model/trigger/experiment sections; see configs/ for\n"
      "ready-made examples. Summaries are always written as both .csv and .json;\n"
      "--format picks the event/trace encoding."};
  app.require_subcommand(1);

  CommonArgs run_args, sweep_args, lambda_args, eta_args, validate_args;
  int trace_samples = 8;
  std::string emit_path;

  CLI::App* cmd_run = app.add_subcommand("run", "simulate one trajectory");
  add_common(cmd_run, run_args, true);
  cmd_run->add_option("--trace-samples", trace_samples,
                      "trace rows per inter-event interval (default 8)");

  CLI::App* cmd_sweep = app.add_subcommand("sweep", "gamma sweep with seeded random starts");
  add_common(cmd_sweep, sweep_args, true);

  CLI::App* cmd_lambda =
      app.add_subcommand("lambda-sweep", "slope sweep snapping limit outputs to vertices");
  add_common(cmd_lambda, lambda_args, true);

  CLI::App* cmd_eta =
      app.add_subcommand("eta", "print the theoretical inter-event lower bound");
  add_common(cmd_eta, eta_args, false);

  CLI::App* cmd_validate = app.add_subcommand("validate", "check a config and exit");
  add_common(cmd_validate, validate_args, false);
  cmd_validate->add_option("--emit", emit_path, "write the normalized config here");

  CLI11_PARSE(app, argc, argv);

  try {
    if (cmd_run->parsed()) return do_run(run_args, trace_samples);
    if (cmd_sweep->parsed()) return do_sweep(sweep_args);
    if (cmd_lambda->parsed()) return do_lambda_sweep(lambda_args);
    if (cmd_eta->parsed()) return do_eta(eta_args);
    if (cmd_validate->parsed()) return do_validate(validate_args, emit_path);
  } catch (const etnet::ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 1;
  } catch (const etnet::IoError& e) {
    std::fprintf(stderr, "io error: %s\n", e.what());
    return 3;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 1;
  }
  return 0;
}
