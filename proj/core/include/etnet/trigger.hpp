#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <string>

#include "etnet/dynamics.hpp"

namespace etnet {

enum class Cause : std::uint8_t { autonomy, compulsory };

const char* to_string(Cause c);

/// Event-rule parameters. Zero-valued optional fields are resolved from
/// the model: m_bound -> sqrt(n) * max lambda * hessian_sup_bound(),
/// sigma -> e^{2 d_max T}, bracketing_step -> min(T, eta estimate)/50.
struct TriggerConfig {
  double gamma = 0.0;
  double c = 1.0;  ///< Young-inequality constant, in (0,2)
  double compulsory_period = 0.0;  ///< T
  double m_bound = 0.0;
  double sigma = 0.0;
  double bracketing_step = 0.0;
  double bisection_tol = 1e-12;
  bool allow_inadmissible_gamma = false;
};

struct StopRule {
  double max_time = 100.0;
  double residual = 1e-9;
};

struct EventRecord {
  std::size_t neuron = 0;
  double time = 0.0;
  Cause cause = Cause::autonomy;
  Vec state_snapshot;
  double new_sampled_grad_component = 0.0;
};

/// Decrease-rate constants: alpha = (1-c/2) min_i lambda_i g'(lambda_i * box),
/// beta = (1/(2c)) max_i lambda_i / 4, gamma_max = sqrt(alpha/beta).
struct AlphaBeta {
  double alpha = 0.0;
  double beta = 0.0;
  double gamma_max = 0.0;
};

/// A-priori constants over the invariant box [-state_box, state_box]^n.
AlphaBeta compute_alpha_beta(const NetworkModel& model, double c, double state_box);

/// Trajectory-based recomputation from visited states (inf/sup of
/// lambda_i g'(lambda_i x_i) over the samples).
AlphaBeta posthoc_alpha_beta(const NetworkModel& model, double c,
                             const std::vector<Vec>& states);

double resolved_m_bound(const NetworkModel& model, const TriggerConfig& cfg);
double resolved_sigma(const NetworkModel& model, const TriggerConfig& cfg);

/// Smallest positive root over neurons of
///   gamma e^{-d_i eta} / (M sqrt(sigma) e^{d_max T}) = eta,
/// located by bisection on (0, K] to residual <= 1e-12.
double eta_lower_bound(const TriggerConfig& cfg, const NetworkModel& model);

struct NextEvent {
  std::size_t neuron = 0;
  double time = 0.0;
  Cause cause = Cause::compulsory;
};

/// Earliest over i of min{first zero of the autonomy criterion after t,
/// t_k^i + T}. Crossings are bracketed with `step` (or the resolved
/// default) and bisected to cfg.bisection_tol. Ties at equal times go to
/// the lowest neuron index, and an exact tie between branches counts as
/// compulsory.
NextEvent next_event(const NetworkModel& model, const HybridState& state,
                     const TriggerConfig& cfg, double step_hint = 0.0);

/// Updates neuron's trigger time and held gradient component from the
/// current output; every other component is untouched. Idempotent at a
/// fixed instant.
HybridState fire(const NetworkModel& model, HybridState state, std::size_t neuron);

/// Aggregated run diagnostics. Interior checks are populated only when
/// RunOptions::dense_samples_per_interval > 0.
struct Diagnostics {
  std::size_t audited_intervals = 0;
  std::size_t missed_crossings = 0;  ///< intervals whose interior violates the criterion
  double max_interior_trigger_value = -std::numeric_limits<double>::infinity();
  double max_lyapunov_increase = 0.0;
  double max_rate_bound_violation = -std::numeric_limits<double>::infinity();
  double max_box_excess = -std::numeric_limits<double>::infinity();
  bool admissibility_warning = false;
  /// Popped predictions failing re-verification against the continuous
  /// criterion (discrete engine only).
  std::size_t prediction_audit_failures = 0;
};

struct RunOptions {
  int dense_samples_per_interval = 0;  ///< interior diagnostics resolution
  bool record_trace = false;           ///< keep per-sample Lyapunov trace rows
};

enum class RunOutcome : std::uint8_t { converged, timed_out };

struct RunSummary {
  RunOutcome outcome = RunOutcome::timed_out;
  Vec x_star;
  double final_residual = std::numeric_limits<double>::infinity();
  double t_end = 0.0;
  double eta_sim = std::numeric_limits<double>::infinity();  ///< min same-neuron gap
  std::vector<std::size_t> events_per_neuron;
  std::size_t total_events = 0;
  std::size_t autonomy_events = 0;
  std::size_t compulsory_events = 0;
  double t_first = std::numeric_limits<double>::quiet_NaN();  ///< ||x-x*|| <= 0.001
  double trajectory_length = 0.0;
  AlphaBeta apriori;     ///< box-based constants used for admissibility
  double m_bound = 0.0;  ///< resolved value
  double sigma = 0.0;    ///< resolved value
  double eta_theory = 0.0;
  Diagnostics diagnostics;

  bool converged() const { return outcome == RunOutcome::converged; }
};

struct RunResult {
  RunSummary summary;
  std::vector<EventRecord> events;
  std::vector<FlowInterval> intervals;  ///< exact piecewise-flow decomposition
  LyapunovTrace trace;                  ///< nonempty when record_trace is set
};

/// Full continuous-monitoring simulation: alternate exact flow to the
/// next event with the feedback update, until the equilibrium residual
/// drops below stop.residual or max_time is exceeded (reported as a
/// distinct outcome, not an error). Deterministic for identical inputs.
RunResult run(const NetworkModel& model, const TriggerConfig& cfg, const Vec& x0,
              const StopRule& stop = {}, const RunOptions& options = {});

}  // namespace etnet
