#include "etnet/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <thread>

namespace etnet {

const char* to_string(Engine e) { return e == Engine::continuous ? "continuous" : "discrete"; }

namespace {

// splitmix64: tiny, portable, and plenty for drawing starting points.
std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

Matrix example1_coupling() {
  return Matrix{{3.919, 3.948, 2.564, 3.204, 0.156},
                {-4.672, 6.491, -4.117, -1.371, -0.501},
                {4.011, 1.370, 5.727, 5.411, 1.185},
                {-1.983, 1.656, -8.428, 7.652, -7.694},
                {1.282, 2.135, 5.559, 0.659, 9.569}};
}

Matrix example2_coupling() {
  return Matrix{{3.0, 2.5, 2.0}, {2.0, 2.0, 3.0}, {3.0, 2.0, 2.5}};
}

void parallel_over(std::size_t count, const std::function<void(std::size_t)>& body) {
  const unsigned workers =
      std::min<unsigned>(std::max(1u, std::thread::hardware_concurrency()),
                         static_cast<unsigned>(count == 0 ? 1 : count));
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::vector<std::thread> pool;
  std::atomic<std::size_t> cursor{0};
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      while (true) {
        const std::size_t i = cursor.fetch_add(1);
        if (i >= count) return;
        body(i);
      }
    });
  }
  for (auto& t : pool) t.join();
}

}  // namespace

double SeededSampler::next_unit() {
  return static_cast<double>(splitmix64(state_) >> 11) * 0x1.0p-53;
}

double SeededSampler::next_in(double lo, double hi) { return lo + (hi - lo) * next_unit(); }

Vec SeededSampler::next_vector(const std::vector<std::pair<double, double>>& box) {
  Vec v(box.size());
  for (std::size_t i = 0; i < box.size(); ++i) v[i] = next_in(box[i].first, box[i].second);
  return v;
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t point, std::uint64_t index) {
  std::uint64_t s = master;
  s ^= 0x62e29a57a9b4e3d1ULL + splitmix64(s) + (point << 32) + index;
  splitmix64(s);
  return s;
}

NetworkModel builtin_example(BuiltinExample which, std::uint64_t smalltheta_seed) {
  switch (which) {
    case BuiltinExample::example1: {
      CostFunction cost(0.75, -1.0, example1_coupling(), Vec(5, 1.0));
      return NetworkModel(Vec(5, 1.0), Vec(5, 1.0), Vec{1.0, -1.0, 1.0, -1.0, 1.0},
                          std::move(cost));
    }
    case BuiltinExample::example2: {
      CostFunction cost(0.5, -1.0, example2_coupling(), Vec(3, 1.0));
      return NetworkModel(Vec(3, 1.0), Vec(3, 1.0), Vec{1.0, -1.0, 1.0}, std::move(cost));
    }
    case BuiltinExample::example2_smalltheta: {
      CostFunction cost(0.5, -1.0, example2_coupling(), Vec(3, 1.0));
      SeededSampler sampler(smalltheta_seed);
      Vec theta(3);
      for (double& th : theta) th = sampler.next_in(-0.001, 0.001);
      return NetworkModel(Vec(3, 1.0), Vec(3, 1.0), std::move(theta), std::move(cost));
    }
  }
  throw std::invalid_argument("builtin_example: unknown case");
}

BuiltinCase builtin_case(BuiltinExample which) {
  switch (which) {
    case BuiltinExample::example1:
      return {builtin_example(BuiltinExample::example1),
              Vec{0.728, -0.769, 1.770, -1.827, 0.315},
              0.3,
              0.03,
              Vec{-1.314, 0.861, -1.709, 0.580, -0.944}};
    case BuiltinExample::example2:
    case BuiltinExample::example2_smalltheta:
      return {builtin_example(which),
              Vec{1.211, -0.772, -1.753},
              0.5,
              3.0,
              Vec{0.080, -1.807, -0.088}};
  }
  throw std::invalid_argument("builtin_case: unknown case");
}

RunResult run_with_engine(Engine engine, const NetworkModel& model, const TriggerConfig& cfg,
                          const Vec& x0, const StopRule& stop, const RunOptions& options) {
  return engine == Engine::continuous ? run(model, cfg, x0, stop, options)
                                      : run_discrete(model, cfg, x0, stop, options);
}

std::vector<StatRow> gamma_sweep(const NetworkModel& model, const TriggerConfig& base,
                                 const ExperimentSpec& spec) {
  if (spec.gamma_grid.empty()) throw std::invalid_argument("gamma_sweep: empty gamma grid");
  if (spec.init_box.size() != model.size())
    throw std::invalid_argument("gamma_sweep: init_box dimension mismatch");
  for (const auto& [lo, hi] : spec.init_box)
    if (!(lo <= hi)) throw std::invalid_argument("gamma_sweep: init_box bounds out of order");
  if (spec.runs_per_point <= 0)
    throw std::invalid_argument("gamma_sweep: runs_per_point must be positive");

  std::vector<StatRow> rows(spec.gamma_grid.size());
  for (std::size_t gi = 0; gi < spec.gamma_grid.size(); ++gi) {
    TriggerConfig cfg = base;
    cfg.gamma = spec.gamma_grid[gi];
    const std::size_t runs = static_cast<std::size_t>(spec.runs_per_point);

    std::vector<RunSummary> summaries(runs);
    parallel_over(runs, [&](std::size_t j) {
      SeededSampler sampler(derive_seed(spec.seed, gi, j));
      const Vec x0 = sampler.next_vector(spec.init_box);
      summaries[j] =
          run_with_engine(spec.engine, model, cfg, x0, spec.stop, RunOptions{}).summary;
    });

    StatRow row;
    row.gamma = cfg.gamma;
    row.runs = spec.runs_per_point;
    row.eta_theory = eta_lower_bound(cfg, model);
    double eta_sum = 0.0;
    double n_sum = 0.0;
    double t_first_sum = 0.0;
    int converged = 0;
    for (const RunSummary& s : summaries) {
      eta_sum += s.eta_sim;
      n_sum += static_cast<double>(s.total_events) / static_cast<double>(model.size());
      if (s.converged()) {
        t_first_sum += s.t_first;
        converged += 1;
      }
    }
    row.eta_sim_mean = eta_sum / static_cast<double>(runs);
    row.n_mean = n_sum / static_cast<double>(runs);
    row.t_first_mean = converged > 0 ? t_first_sum / converged : 0.0;
    row.non_converged = static_cast<int>(runs) - converged;
    rows[gi] = row;
  }
  return rows;
}

std::vector<LambdaRow> lambda_sweep(const NetworkModel& model, const TriggerConfig& base,
                                    const std::vector<double>& lambda_grid, int trials,
                                    std::uint64_t seed, const StopRule& stop,
                                    const std::vector<std::pair<double, double>>& init_box) {
  for (double l : lambda_grid)
    if (!(l > 0.0)) throw std::invalid_argument("lambda_sweep: slopes must be positive");
  if (init_box.size() != model.size())
    throw std::invalid_argument("lambda_sweep: init_box dimension mismatch");

  const std::size_t n = model.size();
  std::vector<LambdaRow> rows(lambda_grid.size() * static_cast<std::size_t>(trials));
  for (std::size_t li = 0; li < lambda_grid.size(); ++li) {
    NetworkModel scaled(model.d, Vec(n, lambda_grid[li]), model.theta, model.cost);
    parallel_over(static_cast<std::size_t>(trials), [&](std::size_t j) {
      SeededSampler sampler(derive_seed(seed, li, j));
      const Vec x0 = sampler.next_vector(init_box);
      const RunResult result = run(scaled, base, x0, stop, RunOptions{});

      LambdaRow row;
      row.lambda = lambda_grid[li];
      row.trial = static_cast<int>(j);
      row.converged = result.summary.converged();
      row.y_bar = scaled.output(result.summary.x_star);
      row.vertex.assign(n, 0);
      // Nearest corner coordinatewise; ties resolved toward 0, which is
      // the lexicographically smaller corner.
      double dist_sq = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        row.vertex[i] = row.y_bar[i] > 0.5 ? 1 : 0;
        const double diff = row.y_bar[i] - row.vertex[i];
        dist_sq += diff * diff;
      }
      row.distance = std::sqrt(dist_sq);
      rows[li * static_cast<std::size_t>(trials) + j] = std::move(row);
    });
  }
  return rows;
}

std::vector<std::vector<int>> vertex_local_minima(const CostFunction& cost) {
  const std::size_t n = cost.dimension();
  if (n > 20) throw std::invalid_argument("vertex_local_minima: dimension too large");
  const std::size_t count = std::size_t{1} << n;
  std::vector<double> value(count);
  Vec y(n);
  for (std::size_t mask = 0; mask < count; ++mask) {
    for (std::size_t i = 0; i < n; ++i) y[i] = (mask >> i) & 1 ? 1.0 : 0.0;
    value[mask] = cost.value(y);
  }
  std::vector<std::vector<int>> minima;
  for (std::size_t mask = 0; mask < count; ++mask) {
    bool is_min = true;
    for (std::size_t i = 0; i < n && is_min; ++i)
      is_min = value[mask] < value[mask ^ (std::size_t{1} << i)];
    if (is_min) {
      std::vector<int> vertex(n);
      for (std::size_t i = 0; i < n; ++i) vertex[i] = (mask >> i) & 1;
      minima.push_back(std::move(vertex));
    }
  }
  return minima;
}

double trajectory_length(const NetworkModel& model, const RunResult& result) {
  double length = 0.0;
  for (const FlowInterval& iv : result.intervals) length += interval_arc_length(model, iv);
  return length;
}

}  // namespace etnet
