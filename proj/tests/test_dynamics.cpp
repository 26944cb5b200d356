#include "etnet/dynamics.hpp"

#include <cmath>

#include "doctest.h"
#include "etnet/harness.hpp"
#include "oracles.hpp"

using namespace etnet;

namespace {

NetworkModel scalar_model(double d, double theta) {
  CostFunction cost(0.0, 0.0, Matrix(1, 1), Vec(1, 0.0));
  return NetworkModel(Vec{d}, Vec{1.0}, Vec{theta}, cost);
}

/// A model with a known equilibrium manufactured at x_star: pick theta so
/// that D x* + grad f(g(x*)) - theta = 0.
NetworkModel pinned_equilibrium_model(const Vec& x_star) {
  CostFunction cost = builtin_example(BuiltinExample::example2).cost;
  Vec lambda(3, 1.0), d(3, 1.0);
  Vec y(3);
  for (int i = 0; i < 3; ++i) y[i] = sigmoid(x_star[i]);
  const Vec g = cost.gradient(y);
  Vec theta(3);
  for (int i = 0; i < 3; ++i) theta[i] = d[i] * x_star[i] + g[i];
  return NetworkModel(d, lambda, theta, cost);
}

}  // namespace

TEST_CASE("drift") {
  SUBCASE("zero at a fresh equilibrium") {
    const Vec x_star{0.4, -1.2, 0.9};
    const NetworkModel model = pinned_equilibrium_model(x_star);
    CHECK(residual(model, x_star) == doctest::Approx(0.0).epsilon(1e-14));
    const HybridState s = initial_state(model, x_star);
    for (double f : drift(model, s)) CHECK(f == doctest::Approx(0.0).epsilon(1e-14));
  }
  SUBCASE("direct substitution in one dimension") {
    const NetworkModel model = scalar_model(1.0, 0.0);
    HybridState s = initial_state(model, Vec{0.0});
    s.sampled_grad[0] = -1.0;
    CHECK(drift(model, s)[0] == doctest::Approx(1.0));
  }
  SUBCASE("five-neuron start against an independent re-evaluation") {
    const BuiltinCase c = builtin_case(BuiltinExample::example1);
    const HybridState s = initial_state(c.model, c.x0);
    // re-derive the held gradient by finite differences of the cost value
    const Vec y = c.model.output(c.x0);
    const Vec held =
        oracle::fd_gradient([&](const Vec& p) { return c.model.cost.value(p); }, y, 1e-6);
    const Vec f = drift(c.model, s);
    const Vec expect = oracle::held_feedback_rhs(c.model, held, c.x0);
    for (std::size_t i = 0; i < 5; ++i)
      CHECK(f[i] == doctest::Approx(expect[i]).epsilon(1e-6));
  }
}

TEST_CASE("exact flow") {
  const BuiltinCase c = builtin_case(BuiltinExample::example2);
  const HybridState s0 = initial_state(c.model, c.x0);

  SUBCASE("dt=0 is the identity") {
    const HybridState s1 = exact_flow(c.model, s0, 0.0);
    CHECK(s1.t == s0.t);
    for (int i = 0; i < 3; ++i) CHECK(s1.x[i] == s0.x[i]);
  }
  SUBCASE("negative dt is rejected") {
    CHECK_THROWS_AS(exact_flow(c.model, s0, -0.5), std::invalid_argument);
  }
  SUBCASE("long flows approach the frozen-feedback fixed point") {
    const HybridState far = exact_flow(c.model, s0, 200.0);
    for (int i = 0; i < 3; ++i) {
      const double target = (c.model.theta[i] - s0.sampled_grad[i]) / c.model.d[i];
      CHECK(far.x[i] == doctest::Approx(target).epsilon(1e-12));
    }
  }
  SUBCASE("dt=0.1 against an RK4 oracle") {
    const HybridState s1 = exact_flow(c.model, s0, 0.1);
    const Vec by_rk4 = oracle::rk4(
        [&](const Vec& x) { return oracle::held_feedback_rhs(c.model, s0.sampled_grad, x); },
        c.x0, 0.1, 1e-5);
    for (int i = 0; i < 3; ++i) CHECK(std::abs(s1.x[i] - by_rk4[i]) <= 1e-8);
  }
  SUBCASE("flows compose") {
    const HybridState once = exact_flow(c.model, s0, 0.7);
    const HybridState twice = exact_flow(c.model, exact_flow(c.model, s0, 0.3), 0.4);
    for (int i = 0; i < 3; ++i) CHECK(once.x[i] == doctest::Approx(twice.x[i]).epsilon(1e-14));
  }
}

TEST_CASE("measurement error") {
  const BuiltinCase c = builtin_case(BuiltinExample::example1);
  const HybridState s0 = initial_state(c.model, c.x0);

  SUBCASE("zero right after the initial synchronization") {
    for (double e : measurement_error(c.model, s0)) CHECK(e == 0.0);
  }
  SUBCASE("two-point evaluation after a short flow") {
    const HybridState s1 = exact_flow(c.model, s0, 0.05);
    const Vec e = measurement_error(c.model, s1);
    const Vec now = c.model.cost.gradient(c.model.output(s1.x));
    const Vec then = c.model.cost.gradient(c.model.output(c.x0));
    for (std::size_t i = 0; i < 5; ++i)
      CHECK(e[i] == doctest::Approx(now[i] - then[i]).epsilon(1e-12));
  }
}

TEST_CASE("delta and psi") {
  const BuiltinCase c = builtin_case(BuiltinExample::example1);
  const HybridState s0 = initial_state(c.model, c.x0);

  SUBCASE("fresh triggers give ||F||^2 / n") {
    const Vec f = drift(c.model, s0);
    CHECK(delta(c.model, s0) == doctest::Approx(dot(f, f) / 5.0).epsilon(1e-14));
  }
  SUBCASE("zero at a fresh equilibrium") {
    const Vec x_star{0.4, -1.2, 0.9};
    const NetworkModel pinned = pinned_equilibrium_model(x_star);
    const HybridState s = initial_state(pinned, x_star);
    CHECK(delta(pinned, s) == doctest::Approx(0.0).epsilon(1e-25));
  }
  SUBCASE("delta is constant between events when all d_i are equal") {
    // both numerator and denominator decay at rate 2d, so the ratio holds
    const double d0 = delta(c.model, s0);
    for (double dt : {0.01, 0.1, 0.5, 2.0}) {
      const HybridState s = exact_flow(c.model, s0, dt);
      CHECK(delta(c.model, s) == doctest::Approx(d0).epsilon(1e-11));
    }
  }
  SUBCASE("psi at the trigger instant is sqrt(delta)") {
    CHECK(psi(c.model, s0, 2) == doctest::Approx(std::sqrt(delta(c.model, s0))));
  }
  SUBCASE("psi decays at rate d_i between events for uniform d") {
    const HybridState s = exact_flow(c.model, s0, 0.25);
    CHECK(psi(c.model, s, 1) ==
          doctest::Approx(psi(c.model, s0, 1) * std::exp(-0.25)).epsilon(1e-11));
  }
  SUBCASE("index range is checked") {
    CHECK_THROWS_AS(psi(c.model, s0, 9), std::out_of_range);
  }
}

TEST_CASE("trigger value") {
  const BuiltinCase c = builtin_case(BuiltinExample::example1);
  const HybridState s0 = initial_state(c.model, c.x0);

  SUBCASE("right after a trigger it sits at -gamma sqrt(delta)") {
    const double expect = -0.3 * std::sqrt(delta(c.model, s0));
    CHECK(trigger_value(c.model, s0, 0, 0.3) == doctest::Approx(expect).epsilon(1e-12));
  }
  SUBCASE("first crossing against a dense bracketing oracle") {
    const double gamma = 0.3;
    double earliest = std::numeric_limits<double>::infinity();
    std::size_t which = 0;
    for (std::size_t i = 0; i < 5; ++i) {
      const double crossing = oracle::first_root(
          [&](double s) {
            return trigger_value(c.model, exact_flow(c.model, s0, s), i, gamma);
          },
          0.0, 5.0, 1e-5, 1e-12);
      if (std::isfinite(crossing) && crossing < earliest) {
        earliest = crossing;
        which = i;
      }
    }
    REQUIRE(std::isfinite(earliest));
    // engine search with the compulsory cap pushed out of the way
    TriggerConfig cfg;
    cfg.gamma = gamma;
    cfg.compulsory_period = 5.0;
    cfg.bracketing_step = 1e-5;
    const NextEvent ev = next_event(c.model, s0, cfg);
    CHECK(ev.cause == Cause::autonomy);
    CHECK(ev.neuron == which);
    CHECK(std::abs(ev.time - earliest) <= 1e-9);
  }
}

TEST_CASE("lyapunov function") {
  SUBCASE("scalar entropy value at the origin") {
    const NetworkModel model = scalar_model(1.0, 0.0);
    CHECK(lyapunov(model, Vec{0.0}) == doctest::Approx(-std::log(2.0)));
  }
  SUBCASE("scalar symmetric grid is minimized at the origin") {
    const NetworkModel model = scalar_model(1.0, 0.0);
    const double at_zero = lyapunov(model, Vec{0.0});
    for (double x = -3.0; x <= 3.0001; x += 0.25)
      CHECK(lyapunov(model, Vec{x}) >= at_zero - 1e-15);
  }
  SUBCASE("five-neuron value against a quadrature oracle") {
    const BuiltinCase c = builtin_case(BuiltinExample::example1);
    const Vec y = c.model.output(c.x0);
    double expected = c.model.cost.value(y);
    for (int i = 0; i < 5; ++i) {
      const double entropy = oracle::adaptive_simpson(
          [](double s) { return std::log(s / (1.0 - s)); }, 1e-12, y[i], 1e-12);
      expected += c.model.d[i] / c.model.lambda[i] * entropy - c.model.theta[i] * y[i];
    }
    CHECK(lyapunov(c.model, c.x0) == doctest::Approx(expected).epsilon(1e-8));
  }
}

TEST_CASE("lyapunov rate") {
  const BuiltinCase c = builtin_case(BuiltinExample::example2);

  SUBCASE("zero at a fresh equilibrium") {
    const Vec x_star{0.4, -1.2, 0.9};
    const NetworkModel pinned = pinned_equilibrium_model(x_star);
    CHECK(lyapunov_rate(pinned, initial_state(pinned, x_star)) ==
          doctest::Approx(0.0).epsilon(1e-20));
  }
  SUBCASE("with zero error the rate is the explicit nonpositive sum") {
    const HybridState s0 = initial_state(c.model, c.x0);
    const Vec f = drift(c.model, s0);
    double expect = 0.0;
    for (int i = 0; i < 3; ++i) {
      const double slope =
          c.model.lambda[i] * sigmoid_derivative(c.model.lambda[i] * c.x0[i]);
      expect -= slope * f[i] * f[i];
    }
    const double rate = lyapunov_rate(c.model, s0);
    CHECK(rate == doctest::Approx(expect).epsilon(1e-12));
    CHECK(rate <= 0.0);
  }
  SUBCASE("matches the finite-difference slope along a held-feedback flow") {
    const HybridState s0 = initial_state(c.model, c.x0);
    for (double at : {0.05, 0.4, 1.7}) {
      const HybridState s = exact_flow(c.model, s0, at);
      const double h = 1e-6;
      const double ahead = lyapunov(c.model, exact_flow(c.model, s, h).x);
      const double behind = lyapunov(c.model, exact_flow(c.model, s0, at - h).x);
      const double fd = (ahead - behind) / (2.0 * h);
      CHECK(lyapunov_rate(c.model, s) == doctest::Approx(fd).epsilon(1e-4));
    }
  }
}

TEST_CASE("inter-event drift decay identity") {
  const BuiltinCase c = builtin_case(BuiltinExample::example1);
  const HybridState s0 = initial_state(c.model, c.x0);
  const Vec f0 = drift(c.model, s0);
  for (double dt : {0.05, 0.3, 1.0}) {
    const Vec f = drift(c.model, exact_flow(c.model, s0, dt));
    for (std::size_t i = 0; i < 5; ++i) {
      const double predicted = f0[i] * std::exp(-c.model.d[i] * dt);
      CHECK(std::abs(f[i] - predicted) <= 1e-10);
    }
  }
}

TEST_CASE("flow intervals reconstruct states and arc length") {
  const BuiltinCase c = builtin_case(BuiltinExample::example2);
  const HybridState s0 = initial_state(c.model, c.x0);
  FlowInterval iv;
  iv.t_begin = 0.0;
  iv.t_end = 1.3;
  iv.x_begin = c.x0;
  iv.input.resize(3);
  for (int i = 0; i < 3; ++i) iv.input[i] = c.model.theta[i] - s0.sampled_grad[i];

  SUBCASE("interval state equals exact flow") {
    const Vec mid = interval_state(c.model, iv, 0.8);
    const HybridState flowed = exact_flow(c.model, s0, 0.8);
    for (int i = 0; i < 3; ++i) CHECK(mid[i] == doctest::Approx(flowed.x[i]).epsilon(1e-15));
  }
  SUBCASE("uniform-d arc length has the scalar closed form") {
    const Vec f0 = drift(c.model, s0);
    const double expect = norm2(f0) * (1.0 - std::exp(-1.3));
    CHECK(interval_arc_length(c.model, iv) == doctest::Approx(expect).epsilon(1e-12));
  }
  SUBCASE("mixed-d arc length agrees with quadrature") {
    NetworkModel mixed(Vec{1.0, 2.0, 0.5}, c.model.lambda, c.model.theta, c.model.cost);
    const double via_simpson = oracle::adaptive_simpson(
        [&](double s) {
          double v = 0.0;
          for (int i = 0; i < 3; ++i) {
            const double fi = (-mixed.d[i] * iv.x_begin[i] + iv.input[i]) *
                              std::exp(-mixed.d[i] * s);
            v += fi * fi;
          }
          return std::sqrt(v);
        },
        0.0, 1.3, 1e-13);
    CHECK(interval_arc_length(mixed, iv) == doctest::Approx(via_simpson).epsilon(1e-10));
  }
}

TEST_CASE("invariant box radius bounds the long-run flow") {
  const BuiltinCase c = builtin_case(BuiltinExample::example2);
  const double r0 = invariant_box_radius(c.model);
  CHECK(r0 > 0.0);
  // the frozen-feedback fixed points all live inside the box
  const HybridState s0 = initial_state(c.model, c.x0);
  const HybridState far = exact_flow(c.model, s0, 500.0);
  CHECK(norm_inf(far.x) <= std::max(r0, norm_inf(c.x0)) + 1e-9);
}
