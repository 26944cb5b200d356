#pragma once

#include <cstdint>

#include "etnet/monitor.hpp"
#include "etnet/trigger.hpp"

namespace etnet {

enum class Engine : std::uint8_t { continuous, discrete };

const char* to_string(Engine e);

enum class BuiltinExample : std::uint8_t {
  example1,             ///< 5-neuron quartic network
  example2,             ///< 3-neuron quartic network
  example2_smalltheta,  ///< example2 with seeded |theta_i| < 0.001
};

/// Exact built-in parameter sets. The small-theta variant draws theta
/// uniformly from (-0.001, 0.001) with the given seed.
NetworkModel builtin_example(BuiltinExample which, std::uint64_t smalltheta_seed = 2024);

/// A built-in model together with its published single-run scenario.
struct BuiltinCase {
  NetworkModel model;
  Vec x0;
  double gamma = 0.0;
  double compulsory_period = 0.0;
  Vec reference_equilibrium;  ///< externally published reference point
};

BuiltinCase builtin_case(BuiltinExample which);

/// Batch experiment description for gamma sweeps.
struct ExperimentSpec {
  Engine engine = Engine::continuous;
  std::vector<double> gamma_grid;
  int runs_per_point = 50;
  std::vector<std::pair<double, double>> init_box;  ///< per-coordinate [lo, hi]
  std::uint64_t seed = 1;
  StopRule stop;
};

/// One aggregated row of a gamma sweep.
struct StatRow {
  double gamma = 0.0;
  double eta_sim_mean = 0.0;
  double eta_theory = 0.0;
  double n_mean = 0.0;      ///< mean events per neuron per run
  double t_first_mean = 0.0;  ///< over converged runs
  int runs = 0;
  int non_converged = 0;
};

/// Runs runs_per_point seeded simulations per gamma and aggregates.
/// Per-run non-convergence is counted, not fatal. Reproducible: the
/// x0 stream depends only on (seed, gamma index, run index).
std::vector<StatRow> gamma_sweep(const NetworkModel& model, const TriggerConfig& base,
                                 const ExperimentSpec& spec);

/// One trial of the slope sweep.
struct LambdaRow {
  double lambda = 0.0;
  int trial = 0;
  Vec y_bar;                ///< limit output g(Lambda x*)
  std::vector<int> vertex;  ///< nearest corner of {0,1}^n
  double distance = 0.0;    ///< Euclidean distance to that corner
  bool converged = false;
};

/// For each slope value (applied uniformly to every neuron), runs
/// seeded-random starts and snaps the limit output to the nearest
/// hypercube vertex. Ties break lexicographically.
std::vector<LambdaRow> lambda_sweep(const NetworkModel& model, const TriggerConfig& base,
                                    const std::vector<double>& lambda_grid, int trials,
                                    std::uint64_t seed, const StopRule& stop,
                                    const std::vector<std::pair<double, double>>& init_box);

/// Exhaustive single-bit-flip enumeration: vertices of {0,1}^n whose
/// cost is strictly below every neighbor's. Dimension capped at 20.
std::vector<std::vector<int>> vertex_local_minima(const CostFunction& cost);

/// Arc length int ||x'(t)|| dt of a completed run, from its exact
/// piecewise-flow decomposition.
double trajectory_length(const NetworkModel& model, const RunResult& result);

/// Uniform draw helpers used by the experiment harness; the generator
/// stream is fixed by construction (splitmix64) so outputs are portable
/// across platforms and standard libraries.
class SeededSampler {
public:
  explicit SeededSampler(std::uint64_t seed) : state_(seed) {}

  /// Uniform in [0, 1).
  double next_unit();
  /// Uniform in [lo, hi).
  double next_in(double lo, double hi);
  Vec next_vector(const std::vector<std::pair<double, double>>& box);

private:
  std::uint64_t state_;
};

/// Stream seed for run `index` of grid point `point` under master seed.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t point, std::uint64_t index);

/// Dispatch to the requested engine.
RunResult run_with_engine(Engine engine, const NetworkModel& model, const TriggerConfig& cfg,
                          const Vec& x0, const StopRule& stop, const RunOptions& options = {});

}  // namespace etnet
