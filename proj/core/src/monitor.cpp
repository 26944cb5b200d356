#include "etnet/monitor.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "run_driver.hpp"

namespace etnet {

namespace {

// State formula anchored at the newest trigger instant: from x(t*) and
// the held feedback, x_i(t* + dt) = x_i + (1/d_i)(d_i x_i + G_i - theta_i)(e^{-d_i dt} - 1).
HybridState formula_state(const NetworkModel& model, const HybridState& anchor, double dt) {
  HybridState out = anchor;
  out.t = anchor.t + dt;
  for (std::size_t i = 0; i < model.size(); ++i) {
    const double di = model.d[i];
    const double coeff = di * anchor.x[i] + anchor.sampled_grad[i] - model.theta[i];
    out.x[i] = anchor.x[i] + coeff / di * std::expm1(-di * dt);
  }
  return out;
}

}  // namespace

double predict_next(const NetworkModel& model, const HybridState& state,
                    const TriggerConfig& cfg, std::size_t i, double step_hint) {
  if (i >= model.size()) throw std::out_of_range("predict_next: neuron index out of range");
  const double cap = state.last_trigger[i] + cfg.compulsory_period;
  const double horizon = cap - state.t;
  if (horizon <= 0.0) return cap;
  const double step =
      step_hint > 0.0
          ? step_hint
          : engine_detail::resolved_step(cfg, engine_detail::eta_theory_or_infinity(cfg, model));
  auto value_at = [&](double s) {
    return trigger_value(model, formula_state(model, state, s), i, cfg.gamma);
  };
  if (value_at(0.0) >= 0.0) return state.t;  // violated already at the anchor
  double lo = 0.0;
  double hi = 0.0;
  bool bracketed = false;
  for (double s = step; !bracketed; s += step) {
    if (s >= horizon) s = horizon;
    if (value_at(s) >= 0.0) {
      hi = s;
      bracketed = true;
    } else {
      lo = s;
      if (s >= horizon) return cap;  // constraint holds through the horizon
    }
  }
  while (hi - lo > cfg.bisection_tol) {
    const double mid = 0.5 * (lo + hi);
    (value_at(mid) >= 0.0 ? hi : lo) = mid;
  }
  return state.t + hi;
}

namespace {

struct PredictiveSource {
  const NetworkModel& model;
  const TriggerConfig& cfg;
  MonitorOptions options;
  PredictionContext ctx;
  std::vector<bool> stale;

  void start(const HybridState& state) {
    const std::size_t n = model.size();
    ctx.t_star = state.t;
    ctx.pending.assign(n, 0.0);
    ctx.cause.assign(n, Cause::compulsory);
    stale.assign(n, true);
  }

  void refresh(const HybridState& state, double step) {
    for (std::size_t i = 0; i < model.size(); ++i) {
      if (!stale[i]) continue;
      const double cap = state.last_trigger[i] + cfg.compulsory_period;
      const double predicted = predict_next(model, state, cfg, i, step);
      ctx.pending[i] = predicted;
      ctx.cause[i] = predicted < cap ? Cause::autonomy : Cause::compulsory;
      stale[i] = false;
    }
  }

  NextEvent propose(const HybridState& state, double step, Diagnostics& diag) {
    ctx.t_star = state.t;
    refresh(state, step);
    std::size_t best = 0;
    for (std::size_t i = 1; i < model.size(); ++i)
      if (ctx.pending[i] < ctx.pending[best]) best = i;

    // Invalidation-soundness audit: a popped autonomy prediction must be
    // an actual crossing of the continuous criterion; a compulsory one
    // must sit on the neuron's cap.
    const double when = ctx.pending[best];
    if (ctx.cause[best] == Cause::autonomy) {
      const HybridState probe = exact_flow(model, state, when - state.t);
      if (trigger_value(model, probe, best, cfg.gamma) < -1e-9)
        diag.prediction_audit_failures += 1;
    } else {
      const double cap = state.last_trigger[best] + cfg.compulsory_period;
      if (std::abs(when - cap) > 10.0 * cfg.bisection_tol) diag.prediction_audit_failures += 1;
    }
    return {best, when, ctx.cause[best]};
  }

  void after_instant(const HybridState& state, const std::vector<std::size_t>& fired) {
    ctx.t_star = state.t;
    if (!options.synaptic_narrowing) {
      stale.assign(model.size(), true);
      return;
    }
    // Narrowed invalidation: the fired neurons plus everything
    // synaptically linked to them (S_ji != 0). Approximate by design:
    // the threshold normalization still couples every neuron.
    const Matrix& s = model.cost.coupling_symmetrized();
    for (std::size_t f : fired) {
      stale[f] = true;
      for (std::size_t j = 0; j < model.size(); ++j)
        if (s(j, f) != 0.0) stale[j] = true;
    }
  }
};

}  // namespace

RunResult run_discrete(const NetworkModel& model, const TriggerConfig& cfg, const Vec& x0,
                       const StopRule& stop, const RunOptions& options,
                       const MonitorOptions& monitor_options) {
  if (x0.size() != model.size())
    throw std::invalid_argument("run_discrete: x0 dimension mismatch");
  if (!(cfg.gamma > 0.0)) throw std::invalid_argument("run_discrete: gamma must be positive");
  if (!(cfg.compulsory_period > 0.0))
    throw std::invalid_argument("run_discrete: compulsory period must be positive");
  engine_detail::RunDriver<PredictiveSource> driver(
      model, cfg, x0, stop, options, PredictiveSource{model, cfg, monitor_options, {}, {}});
  return std::move(driver).take();
}

}  // namespace etnet
