#include "etnet/dynamics.hpp"

#include <stdexcept>

namespace etnet {

HybridState initial_state(const NetworkModel& model, const Vec& x0) {
  if (x0.size() != model.size()) throw std::invalid_argument("initial_state: dimension mismatch");
  HybridState s;
  s.t = 0.0;
  s.x = x0;
  s.last_trigger.assign(model.size(), 0.0);
  s.sampled_grad = model.cost.gradient(model.output(x0));
  return s;
}

Vec drift(const NetworkModel& model, const HybridState& state) {
  const std::size_t n = model.size();
  Vec f(n);
  for (std::size_t i = 0; i < n; ++i)
    f[i] = -model.d[i] * state.x[i] - state.sampled_grad[i] + model.theta[i];
  return f;
}

HybridState exact_flow(const NetworkModel& model, const HybridState& state, double dt) {
  if (dt < 0.0) throw std::invalid_argument("exact_flow: negative dt");
  if (dt == 0.0) return state;
  HybridState out = state;
  out.t = state.t + dt;
  for (std::size_t i = 0; i < model.size(); ++i) {
    const double di = model.d[i];
    const double decay = std::exp(-di * dt);
    const double input = model.theta[i] - state.sampled_grad[i];
    out.x[i] = decay * state.x[i] - input / di * std::expm1(-di * dt);
  }
  return out;
}

Vec measurement_error(const NetworkModel& model, const HybridState& state) {
  Vec e = model.cost.gradient(model.output(state.x));
  for (std::size_t i = 0; i < e.size(); ++i) e[i] -= state.sampled_grad[i];
  return e;
}

double delta(const NetworkModel& model, const HybridState& state) {
  const Vec f = drift(model, state);
  double num = 0.0;
  double den = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    num += f[i] * f[i];
    den += std::exp(-2.0 * model.d[i] * (state.t - state.last_trigger[i]));
  }
  return num / den;
}

double psi(const NetworkModel& model, const HybridState& state, std::size_t i) {
  if (i >= model.size()) throw std::out_of_range("psi: neuron index out of range");
  return std::sqrt(delta(model, state)) *
         std::exp(-model.d[i] * (state.t - state.last_trigger[i]));
}

double trigger_value(const NetworkModel& model, const HybridState& state, std::size_t i,
                     double gamma) {
  if (i >= model.size()) throw std::out_of_range("trigger_value: neuron index out of range");
  const Vec e = measurement_error(model, state);
  return std::abs(e[i]) - gamma * psi(model, state, i);
}

double lyapunov(const NetworkModel& model, const Vec& x) {
  const Vec y = model.output(x);
  double value = model.cost.value(y);
  for (std::size_t i = 0; i < y.size(); ++i) {
    value += model.d[i] / model.lambda[i] * inverse_sigmoid_integral(y[i]);
    value -= model.theta[i] * y[i];
  }
  return value;
}

double lyapunov_rate(const NetworkModel& model, const HybridState& state) {
  const Vec f = drift(model, state);
  const Vec e = measurement_error(model, state);
  double rate = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    const double slope = model.lambda[i] * sigmoid_derivative(model.lambda[i] * state.x[i]);
    rate -= slope * (f[i] - e[i]) * f[i];
  }
  return rate;
}

double residual(const NetworkModel& model, const Vec& x) {
  const Vec g = model.cost.gradient(model.output(x));
  double r = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i)
    r = std::max(r, std::abs(-model.d[i] * x[i] - g[i] + model.theta[i]));
  return r;
}

double invariant_box_radius(const NetworkModel& model) {
  const Vec bound = model.cost.gradient_component_bounds();
  double r0 = 0.0;
  for (std::size_t i = 0; i < model.size(); ++i)
    r0 = std::max(r0, (std::abs(model.theta[i]) + bound[i]) / model.d[i]);
  return r0;
}

Vec interval_state(const NetworkModel& model, const FlowInterval& iv, double t) {
  const double dt = t - iv.t_begin;
  Vec x(iv.x_begin.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double di = model.d[i];
    x[i] = std::exp(-di * dt) * iv.x_begin[i] - iv.input[i] / di * std::expm1(-di * dt);
  }
  return x;
}

namespace {

double simpson(const std::vector<double>& f2, const Vec& d, double a, double b, double fa,
               double fm, double fb, double tol, int depth) {
  auto eval = [&](double s) {
    double v = 0.0;
    for (std::size_t i = 0; i < f2.size(); ++i) v += f2[i] * std::exp(-2.0 * d[i] * s);
    return std::sqrt(v);
  };
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = eval(lm);
  const double frm = eval(rm);
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  if (depth >= 40 || std::abs(left + right - whole) <= 15.0 * tol)
    return left + right + (left + right - whole) / 15.0;
  return simpson(f2, d, a, m, fa, flm, fm, 0.5 * tol, depth + 1) +
         simpson(f2, d, m, b, fm, frm, fb, 0.5 * tol, depth + 1);
}

}  // namespace

double interval_arc_length(const NetworkModel& model, const FlowInterval& iv) {
  const double span = iv.t_end - iv.t_begin;
  if (span <= 0.0) return 0.0;
  const std::size_t n = iv.x_begin.size();
  std::vector<double> f2(n);
  double norm0_sq = 0.0;
  bool uniform_d = true;
  for (std::size_t i = 0; i < n; ++i) {
    const double fi = -model.d[i] * iv.x_begin[i] + iv.input[i];
    f2[i] = fi * fi;
    norm0_sq += f2[i];
    uniform_d = uniform_d && model.d[i] == model.d[0];
  }
  if (norm0_sq == 0.0) return 0.0;
  if (uniform_d) {
    const double d0 = model.d[0];
    return std::sqrt(norm0_sq) * -std::expm1(-d0 * span) / d0;
  }
  auto eval = [&](double s) {
    double v = 0.0;
    for (std::size_t i = 0; i < n; ++i) v += f2[i] * std::exp(-2.0 * model.d[i] * s);
    return std::sqrt(v);
  };
  const double fa = eval(0.0);
  const double fm = eval(0.5 * span);
  const double fb = eval(span);
  const double scale = std::max(1e-300, fa * span);
  return simpson(f2, model.d, 0.0, span, fa, fm, fb, 1e-12 * scale, 0);
}

double LyapunovTrace::max_increase() const {
  double worst = 0.0;
  for (std::size_t k = 1; k < samples.size(); ++k)
    worst = std::max(worst, samples[k].lyapunov - samples[k - 1].lyapunov);
  return worst;
}

}  // namespace etnet
