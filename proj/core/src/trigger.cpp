#include "etnet/trigger.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "run_driver.hpp"

namespace etnet {

const char* to_string(Cause c) { return c == Cause::autonomy ? "autonomy" : "compulsory"; }

AlphaBeta compute_alpha_beta(const NetworkModel& model, double c, double state_box) {
  if (!(c > 0.0 && c < 2.0)) throw std::invalid_argument("compute_alpha_beta: c outside (0,2)");
  if (!(state_box >= 0.0)) throw std::invalid_argument("compute_alpha_beta: negative state_box");
  double inf_slope = std::numeric_limits<double>::infinity();
  double sup_slope = 0.0;
  for (std::size_t i = 0; i < model.size(); ++i) {
    // g' is even and unimodal: minimum over [-box, box] at the edge,
    // maximum (1/4) at the origin.
    inf_slope =
        std::min(inf_slope, model.lambda[i] * sigmoid_derivative(model.lambda[i] * state_box));
    sup_slope = std::max(sup_slope, model.lambda[i] * 0.25);
  }
  AlphaBeta ab;
  ab.alpha = (1.0 - 0.5 * c) * inf_slope;
  ab.beta = sup_slope / (2.0 * c);
  ab.gamma_max = std::sqrt(ab.alpha / ab.beta);
  return ab;
}

AlphaBeta posthoc_alpha_beta(const NetworkModel& model, double c, const std::vector<Vec>& states) {
  if (!(c > 0.0 && c < 2.0)) throw std::invalid_argument("posthoc_alpha_beta: c outside (0,2)");
  if (states.empty()) throw std::invalid_argument("posthoc_alpha_beta: no states");
  double inf_slope = std::numeric_limits<double>::infinity();
  double sup_slope = 0.0;
  for (const Vec& x : states) {
    for (std::size_t i = 0; i < model.size(); ++i) {
      const double s = model.lambda[i] * sigmoid_derivative(model.lambda[i] * x[i]);
      inf_slope = std::min(inf_slope, s);
      sup_slope = std::max(sup_slope, s);
    }
  }
  AlphaBeta ab;
  ab.alpha = (1.0 - 0.5 * c) * inf_slope;
  ab.beta = sup_slope / (2.0 * c);
  ab.gamma_max = std::sqrt(ab.alpha / ab.beta);
  return ab;
}

double resolved_m_bound(const NetworkModel& model, const TriggerConfig& cfg) {
  if (cfg.m_bound > 0.0) return cfg.m_bound;
  return std::sqrt(static_cast<double>(model.size())) * model.lambda_max() *
         model.cost.hessian_sup_bound();
}

double resolved_sigma(const NetworkModel& model, const TriggerConfig& cfg) {
  if (cfg.sigma > 0.0) return cfg.sigma;
  return std::exp(2.0 * model.d_max() * cfg.compulsory_period);
}

double eta_lower_bound(const TriggerConfig& cfg, const NetworkModel& model) {
  const double m = resolved_m_bound(model, cfg);
  const double sigma = resolved_sigma(model, cfg);
  const double t_comp = cfg.compulsory_period;
  if (!(cfg.gamma > 0.0) || !(m > 0.0) || !(sigma > 0.0) || !(t_comp > 0.0))
    throw std::invalid_argument("eta_lower_bound: gamma, M, sigma, T must be positive");
  const double k = cfg.gamma / (m * std::sqrt(sigma) * std::exp(model.d_max() * t_comp));
  double eta = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < model.size(); ++i) {
    const double di = model.d[i];
    // K e^{-d eta} - eta is positive at 0 and nonpositive at K; the root
    // is unique (decreasing left side against increasing right side).
    double lo = 0.0;
    double hi = k;
    double mid = 0.5 * k;
    for (int it = 0; it < 200; ++it) {
      mid = 0.5 * (lo + hi);
      const double h = k * std::exp(-di * mid) - mid;
      if (std::abs(h) <= 1e-12) break;
      (h > 0.0 ? lo : hi) = mid;
    }
    eta = std::min(eta, mid);
  }
  return eta;
}

namespace detail {

// First time in (state.t, t_hi] where neuron i's criterion reaches zero.
// The criterion value at state.t itself must be negative (between-event
// invariant); crossings are bracketed with `step`, then bisected.
std::optional<double> first_crossing(const NetworkModel& model, const HybridState& state,
                                     double gamma, std::size_t i, double t_hi, double step,
                                     double tol) {
  const double horizon = t_hi - state.t;
  if (horizon <= 0.0) return std::nullopt;
  auto value_at = [&](double s) {
    return trigger_value(model, exact_flow(model, state, s), i, gamma);
  };
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
      if (s >= horizon) return std::nullopt;
    }
  }
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    (value_at(mid) >= 0.0 ? hi : lo) = mid;
  }
  return state.t + hi;
}

}  // namespace detail

NextEvent next_event(const NetworkModel& model, const HybridState& state,
                     const TriggerConfig& cfg, double step_hint) {
  const double step =
      step_hint > 0.0
          ? step_hint
          : engine_detail::resolved_step(cfg, engine_detail::eta_theory_or_infinity(cfg, model));
  NextEvent best;
  best.time = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < model.size(); ++i) {
    const double cap = state.last_trigger[i] + cfg.compulsory_period;
    double when = cap;
    Cause cause = Cause::compulsory;
    const auto crossing =
        detail::first_crossing(model, state, cfg.gamma, i, cap, step, cfg.bisection_tol);
    if (crossing && *crossing < cap) {
      when = *crossing;
      cause = Cause::autonomy;
    }
    if (when < best.time) {
      best.neuron = i;
      best.time = when;
      best.cause = cause;
    }
  }
  return best;
}

HybridState fire(const NetworkModel& model, HybridState state, std::size_t neuron) {
  if (neuron >= model.size()) throw std::out_of_range("fire: neuron index out of range");
  state.last_trigger[neuron] = state.t;
  state.sampled_grad[neuron] = model.cost.gradient(model.output(state.x))[neuron];
  return state;
}

namespace {

struct ContinuousSource {
  const NetworkModel& model;
  const TriggerConfig& cfg;

  void start(const HybridState&) {}
  void after_instant(const HybridState&, const std::vector<std::size_t>&) {}

  NextEvent propose(const HybridState& state, double step, Diagnostics&) {
    return next_event(model, state, cfg, step);
  }
};

}  // namespace

RunResult run(const NetworkModel& model, const TriggerConfig& cfg, const Vec& x0,
              const StopRule& stop, const RunOptions& options) {
  if (x0.size() != model.size()) throw std::invalid_argument("run: x0 dimension mismatch");
  if (!(cfg.gamma > 0.0)) throw std::invalid_argument("run: gamma must be positive");
  if (!(cfg.compulsory_period > 0.0))
    throw std::invalid_argument("run: compulsory period must be positive");
  engine_detail::RunDriver<ContinuousSource> driver(model, cfg, x0, stop, options,
                                                    ContinuousSource{model, cfg});
  return std::move(driver).take();
}

}  // namespace etnet
