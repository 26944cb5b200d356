#pragma once

#include "etnet/model.hpp"

namespace etnet {

/// Full hybrid state between events: continuous states plus each
/// neuron's latest trigger time and the gradient component sampled there.
struct HybridState {
  double t = 0.0;
  Vec x;
  Vec last_trigger;  ///< t_k^i <= t
  Vec sampled_grad;  ///< held synaptic feedback [grad f(y(t_k^i))]_i
};

/// Fresh state at time 0: every neuron triggers at t=0, so the held
/// feedback is the instantaneous gradient and the error starts at zero.
HybridState initial_state(const NetworkModel& model, const Vec& x0);

/// F_i = -d_i x_i - sampled_grad_i + theta_i (also x_i').
Vec drift(const NetworkModel& model, const HybridState& state);

/// Closed-form inter-event flow over dt >= 0 (no event may occur inside):
/// x_i <- e^{-d_i dt} x_i + (I_i/d_i)(1 - e^{-d_i dt}), I_i = theta_i - G_i.
/// dt = 0 returns the state unchanged.
HybridState exact_flow(const NetworkModel& model, const HybridState& state, double dt);

/// e_i = [grad f(g(Lambda x(t)))]_i - sampled_grad_i.
Vec measurement_error(const NetworkModel& model, const HybridState& state);

/// delta(t) = sum |F_i|^2 / sum e^{-2 d_i (t - t_k^i)}; denominator > 0 always.
double delta(const NetworkModel& model, const HybridState& state);

/// Psi_i = sqrt(delta) e^{-d_i (t - t_k^i)}.
double psi(const NetworkModel& model, const HybridState& state, std::size_t i);

/// Autonomy criterion value |e_i| - gamma Psi_i; an event fires when it
/// reaches 0 from below.
double trigger_value(const NetworkModel& model, const HybridState& state, std::size_t i,
                     double gamma);

/// L(x) = f(y) + sum_i (d_i/lambda_i) (y_i ln y_i + (1-y_i) ln(1-y_i)) - theta^T y.
double lyapunov(const NetworkModel& model, const Vec& x);

/// Exact dL/dt along the hybrid flow:
/// -sum_i lambda_i g'(lambda_i x_i) [F_i - e_i] F_i.
double lyapunov_rate(const NetworkModel& model, const HybridState& state);

/// Equilibrium residual ||-D x - grad f(g(Lambda x)) + theta||_inf.
double residual(const NetworkModel& model, const Vec& x);

/// Invariant-box radius r0 = max_i (|theta_i| + B_i)/d_i with B_i the
/// componentwise gradient bound over the unit output box.
double invariant_box_radius(const NetworkModel& model);

/// One maximal event-free segment of a run. Together with the model it
/// reconstructs the exact trajectory: the flow inside is
/// x_i(t) = e^{-d_i (t-t_begin)} x_begin_i + (input_i/d_i)(1 - e^{-d_i (t-t_begin)}).
struct FlowInterval {
  double t_begin = 0.0;
  double t_end = 0.0;
  Vec x_begin;
  Vec input;  ///< I_i = theta_i - sampled_grad_i, constant on the segment
};

/// State at absolute time t inside the interval.
Vec interval_state(const NetworkModel& model, const FlowInterval& iv, double t);

/// int ||F(t)||_2 dt over the segment, using the closed-form decay
/// F_i(t) = F_i(t_begin) e^{-d_i (t-t_begin)} (exact when all d_i equal,
/// adaptive Simpson otherwise).
double interval_arc_length(const NetworkModel& model, const FlowInterval& iv);

/// One diagnostic sample along a trajectory.
struct TraceSample {
  double t = 0.0;
  double lyapunov = 0.0;
  double lyapunov_rate = 0.0;
  double sum_drift_sq = 0.0;
};

/// Lyapunov values along a run; monotonicity is checked, never assumed.
struct LyapunovTrace {
  std::vector<TraceSample> samples;

  /// Largest increase between consecutive samples (0 for monotone traces).
  double max_increase() const;
};

}  // namespace etnet
