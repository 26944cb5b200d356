#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>

#include "etnet/harness.hpp"

namespace etnet {

/// Configuration problem: unparseable text (with line number) or a
/// value violating its constraint (with the offending field path).
class ConfigError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Output problem, reported with the path involved.
class IoError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Fully validated configuration triple plus the optional experiment
/// extras used by the run and lambda-sweep subcommands.
struct ParsedConfig {
  NetworkModel model;
  TriggerConfig trigger;
  ExperimentSpec experiment;
  std::optional<Vec> x0;           ///< starting point for single runs
  std::vector<double> lambda_grid; ///< slope grid for lambda sweeps
  int lambda_trials = 100;
};

/// Parses and validates; unknown keys are rejected, parse errors carry
/// the line number, validation errors name the field and constraint.
ParsedConfig parse_config_file(const std::filesystem::path& path);
ParsedConfig parse_config_text(const std::string& text, const std::string& origin);

/// Canonical serialization (sorted keys, 17 significant digits);
/// parse(emit(parse(f))) == parse(f).
std::string emit_config(const ParsedConfig& config);

/// FNV-1a hash of the canonical serialization; embedded in every output
/// file for provenance.
std::uint64_t config_hash(const ParsedConfig& config);

enum class OutputFormat : std::uint8_t { csv, json };

OutputFormat parse_output_format(const std::string& name);

/// Provenance stamp carried by every output file.
struct OutputMeta {
  std::uint64_t config_hash = 0;
  std::uint64_t seed = 0;
  int schema_version = 1;
};

/// Event log: one row per event record.
void write_event_log(const std::filesystem::path& path, const std::vector<EventRecord>& events,
                     const OutputMeta& meta, OutputFormat format);

/// Dense trace regenerated from the exact piecewise flow:
/// (t, x_1..x_n, L, sum F_i^2, fired neurons), strictly increasing t.
void write_trace(const std::filesystem::path& path, const NetworkModel& model,
                 const RunResult& result, const OutputMeta& meta, OutputFormat format,
                 int samples_per_interval = 8);

/// Run summary in both delimited and structured form (.csv and .json
/// appended to the stem).
void write_run_summary(const std::filesystem::path& stem, const RunSummary& summary,
                       const OutputMeta& meta);

/// Gamma-sweep table, Table-style column order
/// (gamma, eta_sim, eta, N, T_first, ...).
void write_stat_rows(const std::filesystem::path& stem, const std::vector<StatRow>& rows,
                     const OutputMeta& meta);

/// Lambda-sweep rows (lambda, trial, y components, vertex, distance).
void write_lambda_rows(const std::filesystem::path& stem, const std::vector<LambdaRow>& rows,
                       const OutputMeta& meta);

/// 17-significant-digit float formatting used by every writer.
std::string format_double(double v);

}  // namespace etnet
