#include "etnet/monitor.hpp"

#include <cmath>

#include "doctest.h"
#include "etnet/harness.hpp"
#include "oracles.hpp"

using namespace etnet;

namespace {

TriggerConfig permissive(double gamma, double period) {
  TriggerConfig cfg;
  cfg.gamma = gamma;
  cfg.compulsory_period = period;
  cfg.allow_inadmissible_gamma = true;
  return cfg;
}

NetworkModel self_coupled_model() {
  CostFunction cost(0.0, 0.0, Matrix{{2.0}}, Vec{0.0});
  return NetworkModel(Vec{1.0}, Vec{1.0}, Vec{0.3}, cost);
}

NetworkModel decoupled_pair() {
  CostFunction cost(0.0, 0.0, Matrix{{1.5, 0.0}, {0.0, 2.0}}, Vec(2, 0.0));
  return NetworkModel(Vec(2, 1.0), Vec(2, 1.0), Vec{0.4, -0.3}, cost);
}

}  // namespace

TEST_CASE("predict_next") {
  SUBCASE("single neuron matches the continuous search exactly") {
    const NetworkModel model = self_coupled_model();
    const TriggerConfig cfg = permissive(0.2, 5.0);
    const HybridState s0 = initial_state(model, Vec{1.0});
    const double predicted = predict_next(model, s0, cfg, 0);
    const NextEvent ev = next_event(model, s0, cfg);
    CHECK(std::abs(predicted - ev.time) <= 10.0 * cfg.bisection_tol);
  }
  SUBCASE("quiet constraint returns the compulsory cap") {
    CostFunction cost(0.0, 0.0, Matrix(1, 1), Vec{0.5});
    NetworkModel model(Vec{1.0}, Vec{1.0}, Vec{0.0}, cost);
    const TriggerConfig cfg = permissive(0.3, 0.75);
    const HybridState s0 = initial_state(model, Vec{0.2});
    CHECK(predict_next(model, s0, cfg, 0) == doctest::Approx(0.75).epsilon(1e-15));
  }
  SUBCASE("three-neuron first predictions against a dense feasibility oracle") {
    const BuiltinCase c = builtin_case(BuiltinExample::example2);
    TriggerConfig cfg = permissive(0.5, c.compulsory_period);
    cfg.bracketing_step = 1e-6;
    const HybridState s0 = initial_state(c.model, c.x0);
    for (std::size_t i = 0; i < 3; ++i) {
      const double predicted = predict_next(c.model, s0, cfg, i, 1e-6);
      const double oracle_time = oracle::first_root(
          [&](double s) {
            return trigger_value(c.model, exact_flow(c.model, s0, s), i, cfg.gamma);
          },
          0.0, c.compulsory_period, 1e-6, 1e-12);
      const double expect =
          std::isfinite(oracle_time) ? oracle_time : c.compulsory_period;
      CHECK(std::abs(predicted - expect) <= 1e-8);
    }
  }
  SUBCASE("index out of range") {
    const NetworkModel model = self_coupled_model();
    CHECK_THROWS_AS(predict_next(model, initial_state(model, Vec{0.1}), permissive(0.2, 1.0), 4),
                    std::out_of_range);
  }
}

TEST_CASE("engine equivalence on the three-neuron example") {
  const BuiltinCase c = builtin_case(BuiltinExample::example2);
  const TriggerConfig cfg = permissive(c.gamma, c.compulsory_period);
  const RunResult cont = run(c.model, cfg, c.x0);
  const RunResult disc = run_discrete(c.model, cfg, c.x0);

  REQUIRE(cont.summary.converged());
  REQUIRE(disc.summary.converged());

  SUBCASE("event sequences agree in neuron order and time") {
    REQUIRE(cont.events.size() == disc.events.size());
    for (std::size_t k = 0; k < cont.events.size(); ++k) {
      CHECK(cont.events[k].neuron == disc.events[k].neuron);
      CHECK(cont.events[k].cause == disc.events[k].cause);
      CHECK(std::abs(cont.events[k].time - disc.events[k].time) <= 10.0 * cfg.bisection_tol);
    }
  }
  SUBCASE("states agree along the whole trajectory") {
    for (std::size_t k = 0; k < cont.events.size(); ++k) {
      const Vec& a = cont.events[k].state_snapshot;
      const Vec& b = disc.events[k].state_snapshot;
      for (std::size_t i = 0; i < a.size(); ++i) CHECK(std::abs(a[i] - b[i]) <= 1e-6);
    }
    CHECK(norm_inf(cont.summary.x_star - disc.summary.x_star) <= 1e-6);
  }
  SUBCASE("run summaries tell the same story") {
    CHECK(cont.summary.total_events == disc.summary.total_events);
    CHECK(cont.summary.eta_sim == doctest::Approx(disc.summary.eta_sim).epsilon(1e-9));
    CHECK(cont.summary.t_first == doctest::Approx(disc.summary.t_first).epsilon(1e-6));
  }
  SUBCASE("full invalidation never pops a stale prediction") {
    CHECK(disc.summary.diagnostics.prediction_audit_failures == 0);
  }
}

TEST_CASE("discrete engine with synaptic narrowing") {
  SUBCASE("decoupled networks never invalidate each other") {
    const NetworkModel model = decoupled_pair();
    const TriggerConfig cfg = permissive(0.2, 1.0);
    MonitorOptions narrowed;
    narrowed.synaptic_narrowing = true;
    const RunResult r = run_discrete(model, cfg, Vec{1.0, -0.8}, StopRule{}, RunOptions{},
                                     narrowed);
    CHECK(r.summary.converged());
    // the criterion invariants still hold under narrowing here
    std::vector<double> last(2, 0.0);
    for (const EventRecord& e : r.events) {
      CHECK(e.time - last[e.neuron] <= cfg.compulsory_period + 1e-9);
      last[e.neuron] = e.time;
    }
  }
  SUBCASE("coupled networks still complete under the documented approximation") {
    const BuiltinCase c = builtin_case(BuiltinExample::example2);
    MonitorOptions narrowed;
    narrowed.synaptic_narrowing = true;
    const RunResult r = run_discrete(c.model, permissive(c.gamma, c.compulsory_period), c.x0,
                                     StopRule{}, RunOptions{}, narrowed);
    CHECK(r.summary.converged());
  }
}

TEST_CASE("discrete engine determinism") {
  const BuiltinCase c = builtin_case(BuiltinExample::example2);
  const TriggerConfig cfg = permissive(c.gamma, c.compulsory_period);
  const RunResult a = run_discrete(c.model, cfg, c.x0);
  const RunResult b = run_discrete(c.model, cfg, c.x0);
  REQUIRE(a.events.size() == b.events.size());
  for (std::size_t k = 0; k < a.events.size(); ++k)
    CHECK(a.events[k].time == b.events[k].time);
  CHECK(a.summary.x_star == b.summary.x_star);
}
