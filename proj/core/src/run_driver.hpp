#pragma once

// Internal: event-loop driver shared by the continuous and the
// discrete-time monitoring engines. The EventSource policy supplies the
// next event; everything else (exact flow, instant resolution, gap and
// Lyapunov bookkeeping, diagnostics) is identical by construction.

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "etnet/trigger.hpp"

namespace etnet::engine_detail {

inline double resolved_step(const TriggerConfig& cfg, double eta_estimate) {
  if (cfg.bracketing_step > 0.0) return cfg.bracketing_step;
  return std::min(cfg.compulsory_period, eta_estimate) / 50.0;
}

// Theoretical gap bound, treating an uncoupled model (M = 0, the error
// cannot grow) as unbounded.
inline double eta_theory_or_infinity(const TriggerConfig& cfg, const NetworkModel& model) {
  if (resolved_m_bound(model, cfg) == 0.0) return std::numeric_limits<double>::infinity();
  return eta_lower_bound(cfg, model);
}

struct GapTracker {
  std::vector<double> previous;
  double min_gap = std::numeric_limits<double>::infinity();

  explicit GapTracker(std::size_t n) : previous(n, 0.0) {}

  void record(std::size_t i, double t) {
    min_gap = std::min(min_gap, t - previous[i]);
    previous[i] = t;
  }
};

template <class EventSource>
class RunDriver {
public:
  RunDriver(const NetworkModel& model, const TriggerConfig& cfg, const Vec& x0,
            const StopRule& stop, const RunOptions& options, EventSource source)
      : model_(model),
        cfg_(cfg),
        stop_(stop),
        options_(options),
        source_(std::move(source)),
        gaps_(model.size()) {
    result_.summary.m_bound = resolved_m_bound(model, cfg);
    result_.summary.sigma = resolved_sigma(model, cfg);

    TriggerConfig resolved = cfg;
    resolved.m_bound = result_.summary.m_bound;
    resolved.sigma = result_.summary.sigma;
    eta_theory_ = eta_theory_or_infinity(resolved, model);
    result_.summary.eta_theory = eta_theory_;

    box_ = std::max(invariant_box_radius(model), norm_inf(x0));
    result_.summary.apriori = compute_alpha_beta(model, cfg.c, box_);
    if (cfg.gamma >= result_.summary.apriori.gamma_max) {
      if (!cfg.allow_inadmissible_gamma)
        throw std::invalid_argument(
            "run: gamma " + std::to_string(cfg.gamma) +
            " violates gamma < sqrt(alpha/beta) = " +
            std::to_string(result_.summary.apriori.gamma_max) +
            " (set allow_inadmissible_gamma to proceed)");
      result_.summary.diagnostics.admissibility_warning = true;
    }

    state_ = initial_state(model, x0);
    result_.summary.events_per_neuron.assign(model.size(), 0);
    rate_slack_ =
        result_.summary.apriori.alpha - result_.summary.apriori.beta * cfg.gamma * cfg.gamma;
    source_.start(state_);
    observe(state_, true);
  }

  RunResult take() && {
    loop();
    finish();
    return std::move(result_);
  }

private:
  void observe(const HybridState& s, bool force_trace_row = false) {
    const double value = lyapunov(model_, s.x);
    if (have_last_lyapunov_) {
      auto& diag = result_.summary.diagnostics;
      diag.max_lyapunov_increase = std::max(diag.max_lyapunov_increase, value - last_lyapunov_);
    }
    last_lyapunov_ = value;
    have_last_lyapunov_ = true;
    if (options_.record_trace || force_trace_row) {
      const Vec f = drift(model_, s);
      result_.trace.samples.push_back({s.t, value, lyapunov_rate(model_, s), dot(f, f)});
    }
  }

  void check_interior(const HybridState& s) {
    auto& diag = result_.summary.diagnostics;
    const Vec e = measurement_error(model_, s);
    const double sqrt_delta = std::sqrt(delta(model_, s));
    double worst = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < model_.size(); ++i) {
      const double psi_i = sqrt_delta * std::exp(-model_.d[i] * (s.t - s.last_trigger[i]));
      worst = std::max(worst, std::abs(e[i]) - cfg_.gamma * psi_i);
    }
    diag.max_interior_trigger_value = std::max(diag.max_interior_trigger_value, worst);
    interval_violated_ = interval_violated_ || worst > 1e-9;

    const Vec f = drift(model_, s);
    const double rate = lyapunov_rate(model_, s);
    diag.max_rate_bound_violation =
        std::max(diag.max_rate_bound_violation, rate + rate_slack_ * dot(f, f));
    diag.max_box_excess = std::max(diag.max_box_excess, norm_inf(s.x) - box_);
    observe(s);
  }

  void advance_to(double t) {
    const double span = t - state_.t;
    if (span <= 0.0) return;
    Vec input(model_.size());
    for (std::size_t i = 0; i < model_.size(); ++i)
      input[i] = model_.theta[i] - state_.sampled_grad[i];
    result_.intervals.push_back({state_.t, t, state_.x, std::move(input)});
    if (options_.dense_samples_per_interval > 0) {
      interval_violated_ = false;
      const int m = options_.dense_samples_per_interval;
      for (int k = 1; k < m; ++k) check_interior(exact_flow(model_, state_, span * k / m));
      auto& diag = result_.summary.diagnostics;
      diag.audited_intervals += 1;
      if (interval_violated_) diag.missed_crossings += 1;
    }
    state_ = exact_flow(model_, state_, span);
  }

  void fire_at_instant(std::size_t neuron, Cause cause) {
    state_ = fire(model_, state_, neuron);
    result_.events.push_back({neuron, state_.t, cause, state_.x, state_.sampled_grad[neuron]});
    result_.summary.events_per_neuron[neuron] += 1;
    (cause == Cause::autonomy ? result_.summary.autonomy_events
                              : result_.summary.compulsory_events) += 1;
    gaps_.record(neuron, state_.t);
    fired_now_.push_back(neuron);
  }

  // Fire everything due at the current instant, ascending neuron index,
  // each neuron at most once. Other neurons' thresholds jump with every
  // fire (the normalization couples them), so keep sweeping until quiet.
  void resolve_instant(std::size_t first_neuron, Cause first_cause) {
    fired_now_.clear();
    fire_at_instant(first_neuron, first_cause);
    bool fired = true;
    while (fired) {
      fired = false;
      for (std::size_t i = 0; i < model_.size(); ++i) {
        if (state_.last_trigger[i] == state_.t) continue;
        if (state_.last_trigger[i] + cfg_.compulsory_period <= state_.t + cfg_.bisection_tol) {
          fire_at_instant(i, Cause::compulsory);
          fired = true;
        } else if (trigger_value(model_, state_, i, cfg_.gamma) >= 0.0) {
          fire_at_instant(i, Cause::autonomy);
          fired = true;
        }
      }
    }
    source_.after_instant(state_, fired_now_);
  }

  void loop() {
    while (true) {
      result_.summary.final_residual = residual(model_, state_.x);
      if (result_.summary.final_residual <= stop_.residual) {
        result_.summary.outcome = RunOutcome::converged;
        return;
      }
      if (state_.t >= stop_.max_time) return;

      const double eta_estimate =
          gaps_.min_gap < std::numeric_limits<double>::infinity() ? gaps_.min_gap : eta_theory_;
      const double step = resolved_step(cfg_, eta_estimate);
      const NextEvent ev =
          source_.propose(state_, step, result_.summary.diagnostics);
      if (ev.time > stop_.max_time) {
        advance_to(stop_.max_time);
        observe(state_, true);
        result_.summary.final_residual = residual(model_, state_.x);
        if (result_.summary.final_residual <= stop_.residual)
          result_.summary.outcome = RunOutcome::converged;
        return;
      }
      advance_to(ev.time);
      resolve_instant(ev.neuron, ev.cause);
      observe(state_, true);
    }
  }

  void finish() {
    auto& s = result_.summary;
    s.x_star = state_.x;
    s.t_end = state_.t;
    s.eta_sim = gaps_.min_gap;
    s.total_events = result_.events.size();
    double length = 0.0;
    for (const FlowInterval& iv : result_.intervals) length += interval_arc_length(model_, iv);
    s.trajectory_length = length;
    s.t_first = first_approach_time();
  }

  // First t with ||x(t) - x_end||_2 <= 0.001, from the exact piecewise flow.
  double first_approach_time() const {
    const Vec& target = state_.x;
    auto gap = [&](const FlowInterval& iv, double t) {
      return norm2(interval_state(model_, iv, t) - target) - 0.001;
    };
    if (result_.intervals.empty()) return state_.t;
    const FlowInterval& head = result_.intervals.front();
    if (gap(head, head.t_begin) <= 0.0) return head.t_begin;
    for (const FlowInterval& iv : result_.intervals) {
      const int probes = 64;
      double prev = iv.t_begin;
      for (int k = 1; k <= probes; ++k) {
        const double t = iv.t_begin + (iv.t_end - iv.t_begin) * k / probes;
        if (gap(iv, t) <= 0.0) {
          double lo = prev;
          double hi = t;
          while (hi - lo > 1e-12) {
            const double mid = 0.5 * (lo + hi);
            (gap(iv, mid) <= 0.0 ? hi : lo) = mid;
          }
          return hi;
        }
        prev = t;
      }
    }
    return state_.t;
  }

  const NetworkModel& model_;
  const TriggerConfig& cfg_;
  const StopRule stop_;
  const RunOptions options_;
  EventSource source_;
  GapTracker gaps_;
  HybridState state_;
  RunResult result_;
  std::vector<std::size_t> fired_now_;
  double eta_theory_ = 0.0;
  double box_ = 0.0;
  double rate_slack_ = 0.0;
  double last_lyapunov_ = 0.0;
  bool have_last_lyapunov_ = false;
  bool interval_violated_ = false;
};

}  // namespace etnet::engine_detail
