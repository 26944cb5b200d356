#include "etnet/config.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "json.hpp"

namespace etnet {

using nlohmann::json;

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

namespace {

[[noreturn]] void fail_field(const std::string& path, const std::string& what) {
  throw ConfigError(path + ": " + what);
}

void require_keys(const json& obj, const std::string& path, const std::set<std::string>& allowed,
                  const std::set<std::string>& required) {
  for (const auto& [key, value] : obj.items()) {
    (void)value;
    if (!allowed.count(key)) fail_field(path + "." + key, "unknown key");
  }
  for (const std::string& key : required)
    if (!obj.contains(key)) fail_field(path + "." + key, "missing required key");
}

double get_number(const json& obj, const std::string& path, const std::string& key) {
  const json& v = obj.at(key);
  if (!v.is_number()) fail_field(path + "." + key, "expected a number");
  return v.get<double>();
}

Vec get_vector(const json& obj, const std::string& path, const std::string& key) {
  const json& v = obj.at(key);
  if (!v.is_array()) fail_field(path + "." + key, "expected an array of numbers");
  Vec out;
  out.reserve(v.size());
  for (const auto& c : v) {
    if (!c.is_number()) fail_field(path + "." + key, "expected an array of numbers");
    out.push_back(c.get<double>());
  }
  return out;
}

Matrix get_matrix(const json& obj, const std::string& path, const std::string& key,
                  std::size_t n) {
  const json& v = obj.at(key);
  if (!v.is_array() || v.size() != n)
    fail_field(path + "." + key, "expected " + std::to_string(n) + " rows");
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    const json& row = v.at(i);
    if (!row.is_array() || row.size() != n)
      fail_field(path + "." + key, "row " + std::to_string(i) + " must have " +
                                       std::to_string(n) + " entries");
    for (std::size_t j = 0; j < n; ++j) {
      if (!row.at(j).is_number())
        fail_field(path + "." + key, "row " + std::to_string(i) + " must be numeric");
      m(i, j) = row.at(j).get<double>();
    }
  }
  return m;
}

NetworkModel parse_model(const json& section) {
  require_keys(section, "model", {"n", "d", "lambda", "theta", "cost"},
               {"n", "d", "lambda", "theta", "cost"});
  const json& jn = section.at("n");
  if (!jn.is_number_integer() || jn.get<long long>() <= 0)
    fail_field("model.n", "must be a positive integer");
  const std::size_t n = jn.get<std::size_t>();

  Vec d = get_vector(section, "model", "d");
  Vec lambda = get_vector(section, "model", "lambda");
  Vec theta = get_vector(section, "model", "theta");
  if (d.size() != n) fail_field("model.d", "must have n entries");
  if (lambda.size() != n) fail_field("model.lambda", "must have n entries");
  if (theta.size() != n) fail_field("model.theta", "must have n entries");
  for (double v : d)
    if (!(v > 0.0)) fail_field("model.d", "all entries must be positive");
  for (double v : lambda)
    if (!(v > 0.0)) fail_field("model.lambda", "all entries must be positive");

  const json& jcost = section.at("cost");
  if (!jcost.is_object()) fail_field("model.cost", "expected an object");
  require_keys(jcost, "model.cost", {"c4", "c3", "W", "b"}, {"c4", "c3", "W", "b"});
  const double c4 = get_number(jcost, "model.cost", "c4");
  const double c3 = get_number(jcost, "model.cost", "c3");
  Matrix w = get_matrix(jcost, "model.cost", "W", n);
  Vec b = get_vector(jcost, "model.cost", "b");
  if (b.size() != n) fail_field("model.cost.b", "must have n entries");

  return NetworkModel(std::move(d), std::move(lambda), std::move(theta),
                      CostFunction(c4, c3, std::move(w), std::move(b)));
}

TriggerConfig parse_trigger(const json& section) {
  require_keys(section, "trigger",
               {"gamma", "c", "T", "m_bound", "sigma", "bracketing_step", "bisection_tol",
                "allow_inadmissible_gamma"},
               {"gamma", "T"});
  TriggerConfig cfg;
  cfg.gamma = get_number(section, "trigger", "gamma");
  if (!(cfg.gamma > 0.0)) fail_field("trigger.gamma", "must be positive");
  cfg.compulsory_period = get_number(section, "trigger", "T");
  if (!(cfg.compulsory_period > 0.0)) fail_field("trigger.T", "must be positive");
  if (section.contains("c")) {
    cfg.c = get_number(section, "trigger", "c");
    if (!(cfg.c > 0.0 && cfg.c < 2.0))
      fail_field("trigger.c", "must lie in (0,2) (got " + format_double(cfg.c) + ")");
  }
  if (section.contains("m_bound")) {
    cfg.m_bound = get_number(section, "trigger", "m_bound");
    if (!(cfg.m_bound > 0.0)) fail_field("trigger.m_bound", "must be positive when given");
  }
  if (section.contains("sigma")) {
    cfg.sigma = get_number(section, "trigger", "sigma");
    if (!(cfg.sigma > 0.0)) fail_field("trigger.sigma", "must be positive when given");
  }
  if (section.contains("bracketing_step")) {
    cfg.bracketing_step = get_number(section, "trigger", "bracketing_step");
    if (!(cfg.bracketing_step > 0.0))
      fail_field("trigger.bracketing_step", "must be positive when given");
  }
  if (section.contains("bisection_tol")) {
    cfg.bisection_tol = get_number(section, "trigger", "bisection_tol");
    if (!(cfg.bisection_tol > 0.0)) fail_field("trigger.bisection_tol", "must be positive");
  }
  if (section.contains("allow_inadmissible_gamma")) {
    const json& v = section.at("allow_inadmissible_gamma");
    if (!v.is_boolean()) fail_field("trigger.allow_inadmissible_gamma", "expected a boolean");
    cfg.allow_inadmissible_gamma = v.get<bool>();
  }
  return cfg;
}

void parse_experiment(const json& section, std::size_t n, ParsedConfig& out) {
  require_keys(section, "experiment",
               {"engine", "gamma_grid", "runs", "init_box", "seed", "max_time", "stop_residual",
                "x0", "lambda_grid", "trials"},
               {});
  ExperimentSpec& spec = out.experiment;
  if (section.contains("engine")) {
    const std::string name = section.at("engine").is_string()
                                 ? section.at("engine").get<std::string>()
                                 : std::string();
    if (name == "continuous")
      spec.engine = Engine::continuous;
    else if (name == "discrete")
      spec.engine = Engine::discrete;
    else
      fail_field("experiment.engine", "must be \"continuous\" or \"discrete\"");
  }
  if (section.contains("gamma_grid")) {
    spec.gamma_grid = get_vector(section, "experiment", "gamma_grid");
    for (double g : spec.gamma_grid)
      if (!(g > 0.0)) fail_field("experiment.gamma_grid", "entries must be positive");
  }
  if (section.contains("runs")) {
    const json& v = section.at("runs");
    if (!v.is_number_integer() || v.get<long long>() <= 0)
      fail_field("experiment.runs", "must be a positive integer");
    spec.runs_per_point = v.get<int>();
  }
  if (section.contains("init_box")) {
    const json& v = section.at("init_box");
    if (!v.is_array() || v.size() != n)
      fail_field("experiment.init_box", "must have n [lo, hi] pairs");
    for (std::size_t i = 0; i < n; ++i) {
      const json& pair = v.at(i);
      if (!pair.is_array() || pair.size() != 2 || !pair.at(0).is_number() ||
          !pair.at(1).is_number())
        fail_field("experiment.init_box", "entry " + std::to_string(i) + " must be [lo, hi]");
      const double lo = pair.at(0).get<double>();
      const double hi = pair.at(1).get<double>();
      if (!(lo <= hi))
        fail_field("experiment.init_box", "entry " + std::to_string(i) + " is out of order");
      spec.init_box.emplace_back(lo, hi);
    }
  }
  if (section.contains("seed")) {
    const json& v = section.at("seed");
    if (!v.is_number_integer()) fail_field("experiment.seed", "must be an integer");
    spec.seed = v.get<std::uint64_t>();
  }
  if (section.contains("max_time")) {
    spec.stop.max_time = get_number(section, "experiment", "max_time");
    if (!(spec.stop.max_time > 0.0)) fail_field("experiment.max_time", "must be positive");
  }
  if (section.contains("stop_residual")) {
    spec.stop.residual = get_number(section, "experiment", "stop_residual");
    if (!(spec.stop.residual > 0.0)) fail_field("experiment.stop_residual", "must be positive");
  }
  if (section.contains("x0")) {
    Vec x0 = get_vector(section, "experiment", "x0");
    if (x0.size() != n) fail_field("experiment.x0", "must have n entries");
    out.x0 = std::move(x0);
  }
  if (section.contains("lambda_grid")) {
    out.lambda_grid = get_vector(section, "experiment", "lambda_grid");
    for (double l : out.lambda_grid)
      if (!(l > 0.0)) fail_field("experiment.lambda_grid", "entries must be positive");
  }
  if (section.contains("trials")) {
    const json& v = section.at("trials");
    if (!v.is_number_integer() || v.get<long long>() <= 0)
      fail_field("experiment.trials", "must be a positive integer");
    out.lambda_trials = v.get<int>();
  }
}

ParsedConfig parse_json(const json& root) {
  if (!root.is_object()) throw ConfigError("top level: expected an object");
  require_keys(root, "config", {"model", "trigger", "experiment"}, {"model", "trigger"});
  ParsedConfig out{parse_model(root.at("model")), parse_trigger(root.at("trigger")),
                   ExperimentSpec{}, std::nullopt, {}, 100};
  if (root.contains("experiment")) {
    if (!root.at("experiment").is_object()) fail_field("experiment", "expected an object");
    parse_experiment(root.at("experiment"), out.model.size(), out);
  }
  return out;
}

std::size_t line_of_offset(const std::string& text, std::size_t offset) {
  std::size_t line = 1;
  for (std::size_t i = 0; i < offset && i < text.size(); ++i)
    if (text[i] == '\n') ++line;
  return line;
}

}  // namespace

ParsedConfig parse_config_text(const std::string& text, const std::string& origin) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(origin + ":" + std::to_string(line_of_offset(text, e.byte)) +
                      ": parse error: " + e.what());
  }
  return parse_json(root);
}

ParsedConfig parse_config_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path.string() + ": cannot open config file");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_config_text(buffer.str(), path.string());
}

namespace {

json number(double v) {
  if (!std::isfinite(v)) return json();  // JSON has no inf/nan
  // Round-trip-exact through the canonical text form.
  return json::parse(format_double(v));
}

json vec_to_json(const Vec& v) {
  json a = json::array();
  for (double x : v) a.push_back(number(x));
  return a;
}

}  // namespace

std::string emit_config(const ParsedConfig& config) {
  const NetworkModel& m = config.model;
  json root;
  root["model"]["n"] = m.size();
  root["model"]["d"] = vec_to_json(m.d);
  root["model"]["lambda"] = vec_to_json(m.lambda);
  root["model"]["theta"] = vec_to_json(m.theta);
  root["model"]["cost"]["c4"] = number(m.cost.quartic_coefficient());
  root["model"]["cost"]["c3"] = number(m.cost.cubic_coefficient());
  json rows = json::array();
  for (std::size_t i = 0; i < m.size(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.size(); ++j) row.push_back(number(m.cost.coupling()(i, j)));
    rows.push_back(std::move(row));
  }
  root["model"]["cost"]["W"] = std::move(rows);
  root["model"]["cost"]["b"] = vec_to_json(m.cost.linear_term());

  const TriggerConfig& t = config.trigger;
  root["trigger"]["gamma"] = number(t.gamma);
  root["trigger"]["c"] = number(t.c);
  root["trigger"]["T"] = number(t.compulsory_period);
  if (t.m_bound > 0.0) root["trigger"]["m_bound"] = number(t.m_bound);
  if (t.sigma > 0.0) root["trigger"]["sigma"] = number(t.sigma);
  if (t.bracketing_step > 0.0) root["trigger"]["bracketing_step"] = number(t.bracketing_step);
  root["trigger"]["bisection_tol"] = number(t.bisection_tol);
  if (t.allow_inadmissible_gamma) root["trigger"]["allow_inadmissible_gamma"] = true;

  const ExperimentSpec& e = config.experiment;
  root["experiment"]["engine"] = to_string(e.engine);
  if (!e.gamma_grid.empty()) root["experiment"]["gamma_grid"] = vec_to_json(e.gamma_grid);
  root["experiment"]["runs"] = e.runs_per_point;
  if (!e.init_box.empty()) {
    json box = json::array();
    for (const auto& [lo, hi] : e.init_box) box.push_back({number(lo), number(hi)});
    root["experiment"]["init_box"] = std::move(box);
  }
  root["experiment"]["seed"] = e.seed;
  root["experiment"]["max_time"] = number(e.stop.max_time);
  root["experiment"]["stop_residual"] = number(e.stop.residual);
  if (config.x0) root["experiment"]["x0"] = vec_to_json(*config.x0);
  if (!config.lambda_grid.empty()) {
    root["experiment"]["lambda_grid"] = vec_to_json(config.lambda_grid);
    root["experiment"]["trials"] = config.lambda_trials;
  }
  return root.dump(2) + "\n";
}

std::uint64_t config_hash(const ParsedConfig& config) {
  const std::string text = emit_config(config);
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

OutputFormat parse_output_format(const std::string& name) {
  if (name == "csv") return OutputFormat::csv;
  if (name == "json") return OutputFormat::json;
  throw ConfigError("format: must be \"csv\" or \"json\" (got \"" + name + "\")");
}

namespace {

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw IoError(path.string() + ": cannot open for writing");
  return out;
}

void finish(std::ofstream& out, const std::filesystem::path& path) {
  out.flush();
  if (!out) throw IoError(path.string() + ": write failed");
}

std::string hash_string(std::uint64_t h) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

void csv_preamble(std::ofstream& out, const OutputMeta& meta) {
  out << "# schema=" << meta.schema_version << " config_hash=" << hash_string(meta.config_hash)
      << " seed=" << meta.seed << "\n";
}

json json_preamble(const OutputMeta& meta) {
  json root;
  root["schema"] = meta.schema_version;
  root["config_hash"] = hash_string(meta.config_hash);
  root["seed"] = meta.seed;
  return root;
}

// Collect fired neurons grouped by instant, in firing order.
std::map<double, std::vector<std::size_t>> events_by_time(const std::vector<EventRecord>& events) {
  std::map<double, std::vector<std::size_t>> grouped;
  for (const EventRecord& e : events) grouped[e.time].push_back(e.neuron);
  return grouped;
}

}  // namespace

void write_event_log(const std::filesystem::path& path, const std::vector<EventRecord>& events,
                     const OutputMeta& meta, OutputFormat format) {
  std::ofstream out = open_out(path);
  if (format == OutputFormat::csv) {
    csv_preamble(out, meta);
    out << "neuron,time,cause,new_sampled_grad_component";
    const std::size_t n = events.empty() ? 0 : events.front().state_snapshot.size();
    for (std::size_t i = 0; i < n; ++i) out << ",x" << i + 1;
    out << "\n";
    for (const EventRecord& e : events) {
      out << e.neuron << ',' << format_double(e.time) << ',' << to_string(e.cause) << ','
          << format_double(e.new_sampled_grad_component);
      for (double x : e.state_snapshot) out << ',' << format_double(x);
      out << "\n";
    }
  } else {
    json root = json_preamble(meta);
    json rows = json::array();
    for (const EventRecord& e : events) {
      json row;
      row["neuron"] = e.neuron;
      row["time"] = number(e.time);
      row["cause"] = to_string(e.cause);
      row["new_sampled_grad_component"] = number(e.new_sampled_grad_component);
      row["x"] = vec_to_json(e.state_snapshot);
      rows.push_back(std::move(row));
    }
    root["events"] = std::move(rows);
    out << root.dump(2) << "\n";
  }
  finish(out, path);
}

void write_trace(const std::filesystem::path& path, const NetworkModel& model,
                 const RunResult& result, const OutputMeta& meta, OutputFormat format,
                 int samples_per_interval) {
  const auto grouped = events_by_time(result.events);
  struct Row {
    double t;
    Vec x;
    double sum_drift_sq;
    std::vector<std::size_t> fired;
  };
  auto drift_sq = [&](const FlowInterval& iv, const Vec& x) {
    double s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      const double fi = -model.d[i] * x[i] + iv.input[i];
      s += fi * fi;
    }
    return s;
  };
  std::vector<Row> rows;
  for (std::size_t k = 0; k < result.intervals.size(); ++k) {
    const FlowInterval& iv = result.intervals[k];
    const int m = std::max(1, samples_per_interval);
    const bool last = k + 1 == result.intervals.size();
    for (int j = 0; j < m + (last ? 1 : 0); ++j) {
      const double t = iv.t_begin + (iv.t_end - iv.t_begin) * j / m;
      Row row{t, interval_state(model, iv, t), 0.0, {}};
      row.sum_drift_sq = drift_sq(iv, row.x);
      if (j == 0) {
        if (auto found = grouped.find(iv.t_begin); found != grouped.end())
          row.fired = found->second;
      } else if (last && j == m) {
        if (auto found = grouped.find(iv.t_end); found != grouped.end())
          row.fired = found->second;
      }
      rows.push_back(std::move(row));
    }
  }

  std::ofstream out = open_out(path);
  if (format == OutputFormat::csv) {
    csv_preamble(out, meta);
    out << "t";
    for (std::size_t i = 0; i < model.size(); ++i) out << ",x" << i + 1;
    out << ",lyapunov,sum_drift_sq,events\n";
    for (const Row& row : rows) {
      out << format_double(row.t);
      for (double x : row.x) out << ',' << format_double(x);
      out << ',' << format_double(lyapunov(model, row.x)) << ','
          << format_double(row.sum_drift_sq) << ',';
      for (std::size_t i = 0; i < row.fired.size(); ++i) out << (i ? ";" : "") << row.fired[i];
      out << "\n";
    }
  } else {
    json root = json_preamble(meta);
    json arr = json::array();
    for (const Row& row : rows) {
      json r;
      r["t"] = number(row.t);
      r["x"] = vec_to_json(row.x);
      r["lyapunov"] = number(lyapunov(model, row.x));
      r["sum_drift_sq"] = number(row.sum_drift_sq);
      r["events"] = row.fired;
      arr.push_back(std::move(r));
    }
    root["trace"] = std::move(arr);
    out << root.dump(2) << "\n";
  }
  finish(out, path);
}

namespace {

json summary_to_json(const RunSummary& s) {
  json j;
  j["outcome"] = s.converged() ? "converged" : "timed_out";
  j["x_star"] = vec_to_json(s.x_star);
  j["final_residual"] = number(s.final_residual);
  j["t_end"] = number(s.t_end);
  j["eta_sim"] = s.total_events ? number(s.eta_sim) : json();
  j["events_per_neuron"] = s.events_per_neuron;
  j["total_events"] = s.total_events;
  j["autonomy_events"] = s.autonomy_events;
  j["compulsory_events"] = s.compulsory_events;
  j["t_first"] = number(s.t_first);
  j["trajectory_length"] = number(s.trajectory_length);
  j["alpha"] = number(s.apriori.alpha);
  j["beta"] = number(s.apriori.beta);
  j["gamma_max"] = number(s.apriori.gamma_max);
  j["m_bound"] = number(s.m_bound);
  j["sigma"] = number(s.sigma);
  j["eta_theory"] = number(s.eta_theory);
  j["admissibility_warning"] = s.diagnostics.admissibility_warning;
  return j;
}

}  // namespace

void write_run_summary(const std::filesystem::path& stem, const RunSummary& summary,
                       const OutputMeta& meta) {
  {
    const std::filesystem::path path = stem.string() + ".json";
    std::ofstream out = open_out(path);
    json root = json_preamble(meta);
    root["summary"] = summary_to_json(summary);
    out << root.dump(2) << "\n";
    finish(out, path);
  }
  {
    const std::filesystem::path path = stem.string() + ".csv";
    std::ofstream out = open_out(path);
    csv_preamble(out, meta);
    out << "outcome,t_end,final_residual,eta_sim,eta_theory,total_events,autonomy_events,"
           "compulsory_events,t_first,trajectory_length";
    for (std::size_t i = 0; i < summary.x_star.size(); ++i) out << ",x_star" << i + 1;
    out << "\n";
    out << (summary.converged() ? "converged" : "timed_out") << ','
        << format_double(summary.t_end) << ',' << format_double(summary.final_residual) << ','
        << format_double(summary.eta_sim) << ',' << format_double(summary.eta_theory) << ','
        << summary.total_events << ',' << summary.autonomy_events << ','
        << summary.compulsory_events << ',' << format_double(summary.t_first) << ','
        << format_double(summary.trajectory_length);
    for (double x : summary.x_star) out << ',' << format_double(x);
    out << "\n";
    finish(out, path);
  }
}

void write_stat_rows(const std::filesystem::path& stem, const std::vector<StatRow>& rows,
                     const OutputMeta& meta) {
  {
    const std::filesystem::path path = stem.string() + ".csv";
    std::ofstream out = open_out(path);
    csv_preamble(out, meta);
    out << "gamma,eta_sim,eta,N,T_first,runs,non_converged\n";
    for (const StatRow& r : rows) {
      out << format_double(r.gamma) << ',' << format_double(r.eta_sim_mean) << ','
          << format_double(r.eta_theory) << ',' << format_double(r.n_mean) << ','
          << format_double(r.t_first_mean) << ',' << r.runs << ',' << r.non_converged << "\n";
    }
    finish(out, path);
  }
  {
    const std::filesystem::path path = stem.string() + ".json";
    std::ofstream out = open_out(path);
    json root = json_preamble(meta);
    json arr = json::array();
    for (const StatRow& r : rows) {
      json j;
      j["gamma"] = number(r.gamma);
      j["eta_sim"] = number(r.eta_sim_mean);
      j["eta"] = number(r.eta_theory);
      j["N"] = number(r.n_mean);
      j["T_first"] = number(r.t_first_mean);
      j["runs"] = r.runs;
      j["non_converged"] = r.non_converged;
      arr.push_back(std::move(j));
    }
    root["rows"] = std::move(arr);
    out << root.dump(2) << "\n";
    finish(out, path);
  }
}

void write_lambda_rows(const std::filesystem::path& stem, const std::vector<LambdaRow>& rows,
                       const OutputMeta& meta) {
  {
    const std::filesystem::path path = stem.string() + ".csv";
    std::ofstream out = open_out(path);
    csv_preamble(out, meta);
    const std::size_t n = rows.empty() ? 0 : rows.front().y_bar.size();
    out << "lambda,trial,converged";
    for (std::size_t i = 0; i < n; ++i) out << ",y" << i + 1;
    for (std::size_t i = 0; i < n; ++i) out << ",vertex" << i + 1;
    out << ",distance\n";
    for (const LambdaRow& r : rows) {
      out << format_double(r.lambda) << ',' << r.trial << ',' << (r.converged ? 1 : 0);
      for (double y : r.y_bar) out << ',' << format_double(y);
      for (int v : r.vertex) out << ',' << v;
      out << ',' << format_double(r.distance) << "\n";
    }
    finish(out, path);
  }
  {
    const std::filesystem::path path = stem.string() + ".json";
    std::ofstream out = open_out(path);
    json root = json_preamble(meta);
    json arr = json::array();
    for (const LambdaRow& r : rows) {
      json j;
      j["lambda"] = number(r.lambda);
      j["trial"] = r.trial;
      j["converged"] = r.converged;
      j["y_bar"] = vec_to_json(r.y_bar);
      j["vertex"] = r.vertex;
      j["distance"] = number(r.distance);
      arr.push_back(std::move(j));
    }
    root["rows"] = std::move(arr);
    out << root.dump(2) << "\n";
    finish(out, path);
  }
}

}  // namespace etnet
