#pragma once

#include "etnet/trigger.hpp"

namespace etnet {

/// Per-neuron prediction state for the discrete-time monitoring scheme:
/// predictions are recomputed from the newest trigger instant and
/// invalidated whenever any neuron fires.
struct PredictionContext {
  double t_star = 0.0;            ///< newest trigger time over all neurons
  std::vector<double> pending;    ///< predicted absolute trigger times
  std::vector<Cause> cause;       ///< branch each prediction came from
};

/// Next trigger time of neuron i predicted from the closed-form state
/// formula anchored at the newest event instant (state.t = t_star):
/// the largest horizon on which |e_i| <= gamma Psi_i still holds, capped
/// at t_k^i + T. No dense state observation is involved beyond the
/// bracketing of the first violation.
double predict_next(const NetworkModel& model, const HybridState& state,
                    const TriggerConfig& cfg, std::size_t i, double step_hint = 0.0);

struct MonitorOptions {
  /// Re-predict only synaptically linked neurons (S_ji != 0) after a
  /// fire instead of everyone. Approximate: the threshold normalization
  /// couples all neurons, so this is off by default.
  bool synaptic_narrowing = false;
};

/// Event-queue realization of the same updating rule: keeps a predicted
/// time per neuron, pops the earliest, fires, invalidates and
/// re-predicts. Produces the same RunSummary schema as run().
RunResult run_discrete(const NetworkModel& model, const TriggerConfig& cfg, const Vec& x0,
                       const StopRule& stop = {}, const RunOptions& options = {},
                       const MonitorOptions& monitor_options = {});

}  // namespace etnet
