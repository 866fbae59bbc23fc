#include "phasectl/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <set>
#include <vector>

#include <json.hpp>

#include "phasectl/collocation.hpp"
#include "phasectl/controllability.hpp"
#include "phasectl/integrate.hpp"
#include "phasectl/json_util.hpp"
#include "phasectl/single_neuron.hpp"
#include "phasectl/svg.hpp"
#include "phasectl/two_neuron.hpp"

namespace phasectl {

namespace {

using nlohmann::json;

/// Infeasible problem instance (maps to exit code 2).
struct Infeasible : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void require_keys(const json& obj, const std::set<std::string>& allowed,
                  const std::set<std::string>& required, const std::string& where) {
  if (!obj.is_object()) throw ScenarioError(where + ": expected an object");
  for (const auto& [key, value] : obj.items()) {
    (void)value;
    if (!allowed.count(key)) throw ScenarioError(where + ": unknown field '" + key + "'");
  }
  for (const auto& key : required) {
    if (!obj.contains(key)) throw ScenarioError(where + ": missing field '" + key + "'");
  }
}

Scalar get_num(const json& obj, const std::string& key, const std::string& where) {
  if (!obj.at(key).is_number()) {
    throw ScenarioError(where + ": field '" + key + "' must be a number");
  }
  return obj.at(key).get<Scalar>();
}

Scalar get_num_or(const json& obj, const std::string& key, Scalar fallback,
                  const std::string& where) {
  return obj.contains(key) ? get_num(obj, key, where) : fallback;
}

int get_int(const json& obj, const std::string& key, const std::string& where) {
  if (!obj.at(key).is_number_integer()) {
    throw ScenarioError(where + ": field '" + key + "' must be an integer");
  }
  return obj.at(key).get<int>();
}

Vector get_vector(const json& obj, const std::string& key, const std::string& where) {
  const json& arr = obj.at(key);
  if (!arr.is_array()) throw ScenarioError(where + ": field '" + key + "' must be an array");
  Vector v(static_cast<Eigen::Index>(arr.size()));
  for (size_t i = 0; i < arr.size(); ++i) {
    if (!arr[i].is_number()) {
      throw ScenarioError(where + ": field '" + key + "' must hold numbers");
    }
    v[static_cast<Eigen::Index>(i)] = arr[i].get<Scalar>();
  }
  return v;
}

PhaseModel parse_model(const json& obj, const std::string& where) {
  require_keys(obj, {"kind", "I", "omega", "z"}, {"kind"}, where);
  if (!obj.at("kind").is_string()) throw ScenarioError(where + ": 'kind' must be a string");
  ModelKind kind;
  try {
    kind = model_kind_from_string(obj.at("kind").get<std::string>());
  } catch (const std::exception& e) {
    throw ScenarioError(where + ": " + e.what());
  }
  if (kind == ModelKind::Theta) {
    if (obj.contains("z")) throw ScenarioError(where + ": 'z' does not apply to theta");
    if (obj.contains("I") == obj.contains("omega")) {
      throw ScenarioError(where + ": theta needs exactly one of 'I' or 'omega'");
    }
    if (obj.contains("I")) {
      const Scalar I = get_num(obj, "I", where);
      if (I <= 0.0) throw ScenarioError(where + ": 'I' must be positive");
      return PhaseModel::theta_from_current(I);
    }
    const Scalar omega = get_num(obj, "omega", where);
    if (omega <= 0.0) throw ScenarioError(where + ": 'omega' must be positive");
    return PhaseModel::theta_from_omega(omega);
  }
  if (obj.contains("I")) throw ScenarioError(where + ": 'I' only applies to theta");
  if (!obj.contains("omega")) throw ScenarioError(where + ": missing field 'omega'");
  const Scalar omega = get_num(obj, "omega", where);
  if (omega <= 0.0) throw ScenarioError(where + ": 'omega' must be positive");
  const Scalar z = get_num_or(obj, "z", -1.0, where);
  if (obj.contains("z") && z <= 0.0) throw ScenarioError(where + ": 'z' must be positive");
  return kind == ModelKind::Sniper ? PhaseModel::sniper(omega, z)
                                   : PhaseModel::sinusoidal(omega, z);
}

std::vector<PhaseModel> parse_models(const json& scenario, const std::string& where) {
  const json& arr = scenario.at("models");
  if (!arr.is_array() || arr.empty()) {
    throw ScenarioError(where + ": 'models' must be a non-empty array");
  }
  std::vector<PhaseModel> models;
  for (size_t i = 0; i < arr.size(); ++i) {
    models.push_back(parse_model(arr[i], where + ".models[" + std::to_string(i) + "]"));
  }
  return models;
}

ControlSignal parse_control(const json& obj, const std::string& where) {
  require_keys(obj,
               {"type", "level", "initial_sign", "switch_times", "M", "T", "times",
                "values", "order", "bound"},
               {"type"}, where);
  if (!obj.at("type").is_string()) throw ScenarioError(where + ": 'type' must be a string");
  const std::string type = obj.at("type").get<std::string>();
  if (type == "zero") {
    require_keys(obj, {"type"}, {}, where);
    return ControlSignal::zero();
  }
  if (type == "constant") {
    require_keys(obj, {"type", "level"}, {"level"}, where);
    return ControlSignal::constant(get_num(obj, "level", where));
  }
  if (type == "piecewise") {
    require_keys(obj, {"type", "initial_sign", "switch_times", "M", "T"},
                 {"initial_sign", "switch_times", "M", "T"}, where);
    SwitchingSchedule sched;
    const int sign = get_int(obj, "initial_sign", where);
    if (sign != 1 && sign != -1) {
      throw ScenarioError(where + ": 'initial_sign' must be +1 or -1");
    }
    sched.initial_field =
        sign > 0 ? SwitchingSchedule::Field::Y : SwitchingSchedule::Field::X;
    sched.M = get_num(obj, "M", where);
    sched.T = get_num(obj, "T", where);
    const Vector st = get_vector(obj, "switch_times", where);
    sched.switch_times.assign(st.data(), st.data() + st.size());
    if (!std::is_sorted(sched.switch_times.begin(), sched.switch_times.end())) {
      throw ScenarioError(where + ": 'switch_times' must be increasing");
    }
    return ControlSignal::piecewise(sched);
  }
  if (type == "sampled") {
    require_keys(obj, {"type", "times", "values", "order", "bound"}, {"times", "values"},
                 where);
    const Vector times = get_vector(obj, "times", where);
    const Vector values = get_vector(obj, "values", where);
    if (times.size() != values.size() || times.size() < 2) {
      throw ScenarioError(where + ": 'times' and 'values' must match, length >= 2");
    }
    int order = 1;
    if (obj.contains("order")) order = get_int(obj, "order", where);
    const Scalar bound = get_num_or(obj, "bound", kInf, where);
    return ControlSignal::sampled(times, values, order, bound);
  }
  throw ScenarioError(where + ": unknown control type '" + type + "'");
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot open " + path.string() + " for writing");
  os << content;
}

void write_trajectory(const std::filesystem::path& dir, const Trajectory& traj) {
  std::ofstream os(dir / "trajectory.csv");
  if (!os) throw std::runtime_error("cannot write trajectory.csv");
  write_csv(traj, os);
}

void write_control_csv(const std::filesystem::path& dir, const Trajectory& traj) {
  std::ofstream os(dir / "control.csv");
  if (!os) throw std::runtime_error("cannot write control.csv");
  os << "t,u\n";
  char buf[80];
  for (Eigen::Index i = 0; i < traj.num_points(); ++i) {
    std::snprintf(buf, sizeof buf, "%.9g,%.9g\n", traj.times[i], traj.controls[i]);
    os << buf;
  }
}

json control_spec_json(const ControlSignal& u) {
  json j;
  switch (u.kind()) {
    case ControlSignal::Kind::Zero:
      j["type"] = "zero";
      break;
    case ControlSignal::Kind::Constant:
      j["type"] = "constant";
      j["level"] = json_num(u.eval(0.0));
      break;
    case ControlSignal::Kind::PiecewiseConstant: {
      const auto& s = u.schedule();
      j["type"] = "piecewise";
      j["initial_sign"] = s.initial_field == SwitchingSchedule::Field::Y ? 1 : -1;
      j["switch_times"] = json_range(s.switch_times);
      j["M"] = json_num(s.M);
      j["T"] = json_num(s.T);
      break;
    }
    case ControlSignal::Kind::Sampled:
      j["type"] = "sampled";
      j["times"] = json_vec(u.sample_times());
      j["values"] = json_vec(u.sample_values());
      j["order"] = static_cast<int>(u.sample_times().size()) - 1;
      if (std::isfinite(u.bound())) j["bound"] = json_num(u.bound());
      break;
    case ControlSignal::Kind::FeedbackLaw:
      j["type"] = "feedback";
      break;
  }
  return j;
}

json spikes_json(const Trajectory& traj) {
  json out = json::array();
  for (const auto& s : spike_times(traj)) out.push_back(json_range(s));
  return out;
}

void plot_phases(const std::filesystem::path& dir, const Trajectory& traj) {
  SvgPlot plot;
  for (Eigen::Index i = 0; i < traj.num_neurons(); ++i) {
    plot.fit_view(traj.times, traj.states.col(i));
  }
  static const char* kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                  "#ff7f0e", "#8c564b"};
  for (Eigen::Index i = 0; i < traj.num_neurons(); ++i) {
    plot.add_polyline(traj.times, traj.states.col(i), kColors[i % 6]);
  }
  plot.set_labels("t", "theta", "phase trajectories");
  write_file(dir / "phases.svg", plot.render());
}

void plot_control(const std::filesystem::path& dir, const Trajectory& traj) {
  SvgPlot plot;
  plot.fit_view(traj.times, traj.controls);
  plot.add_polyline(traj.times, traj.controls, "#1f77b4");
  plot.set_labels("t", "u", "control input");
  write_file(dir / "control.svg", plot.render());
}

void plot_raster(const std::filesystem::path& dir, const Trajectory& traj) {
  const auto spikes = spike_times(traj);
  SvgPlot plot(640.0, 240.0);
  plot.set_view(0.0, traj.times[traj.times.size() - 1], 0.0,
                static_cast<Scalar>(spikes.size()) + 1.0);
  for (size_t i = 0; i < spikes.size(); ++i) {
    for (const Scalar t : spikes[i]) {
      plot.add_circle(t, static_cast<Scalar>(i) + 1.0, 3.0, "#d62728");
    }
  }
  plot.set_labels("t", "neuron", "spike raster");
  write_file(dir / "raster.svg", plot.render());
}

void plot_phase_plane(const std::filesystem::path& dir, const Trajectory& traj,
                      const TwoNeuronParams& params,
                      const std::vector<Vector>& switch_points) {
  SvgPlot plot(480.0, 480.0);
  plot.fit_view(traj.states.col(0), traj.states.col(1));
  // Shade the region where k1 > 0 (a switch there goes from the low to the
  // high field) on a coarse grid.
  const int cells = 48;
  const Scalar x0 = traj.states.col(0).minCoeff(), x1 = traj.states.col(0).maxCoeff();
  const Scalar y0 = traj.states.col(1).minCoeff(), y1 = traj.states.col(1).maxCoeff();
  for (int a = 0; a < cells; ++a) {
    for (int b = 0; b < cells; ++b) {
      Vector p(2);
      p << x0 + (a + 0.5) / cells * (x1 - x0), y0 + (b + 0.5) / cells * (y1 - y0);
      const auto cls = classify_switch(p, params);
      if (cls.direction == SwitchClassification::Direction::XtoY) {
        plot.add_rect(x0 + Scalar(a) / cells * (x1 - x0),
                      y0 + Scalar(b) / cells * (y1 - y0),
                      x0 + Scalar(a + 1) / cells * (x1 - x0),
                      y0 + Scalar(b + 1) / cells * (y1 - y0), "#ffd28a", 0.5);
      }
    }
  }
  plot.add_polyline(traj.states.col(0), traj.states.col(1), "#1f77b4", 2.0);
  for (const auto& p : switch_points) plot.add_circle(p[0], p[1], 4.0, "#d62728");
  plot.set_labels("theta_1", "theta_2", "phase plane (shaded: k1 > 0)");
  write_file(dir / "phase_plane.svg", plot.render());
}

int cmd_simulate(const json& sc, const std::filesystem::path& dir, const RunOptions& opts) {
  require_keys(sc, {"schema_version", "models", "T", "control", "theta0", "step"},
               {"models", "T", "control"}, "scenario");
  const auto models = parse_models(sc, "scenario");
  const Scalar T = get_num(sc, "T", "scenario");
  if (T <= 0.0) throw ScenarioError("scenario: 'T' must be positive");
  const ControlSignal u = parse_control(sc.at("control"), "scenario.control");
  Vector theta0 = Vector::Zero(static_cast<Eigen::Index>(models.size()));
  if (sc.contains("theta0")) {
    theta0 = get_vector(sc, "theta0", "scenario");
    if (theta0.size() != static_cast<Eigen::Index>(models.size())) {
      throw ScenarioError("scenario: 'theta0' length must match 'models'");
    }
  }
  const Scalar step = get_num_or(sc, "step", T / 4096.0, "scenario");
  if (step <= 0.0) throw ScenarioError("scenario: 'step' must be positive");

  const Trajectory traj = integrate(models, u, T, theta0, step);
  write_trajectory(dir, traj);
  write_control_csv(dir, traj);

  json report;
  report["command"] = "simulate";
  report["T"] = json_num(T);
  report["terminal_state"] = json_vec(traj.terminal_state());
  report["spike_times"] = spikes_json(traj);
  report["control"] = control_spec_json(u);
  write_file(dir / "report.json", report.dump(2));

  if (opts.svg) {
    plot_phases(dir, traj);
    plot_control(dir, traj);
    plot_raster(dir, traj);
  }
  return 0;
}

int cmd_controllability(const json& sc, const std::filesystem::path& dir,
                        const RunOptions&) {
  require_keys(sc, {"schema_version", "models", "theta", "tol"}, {"models", "theta"},
               "scenario");
  const auto models = parse_models(sc, "scenario");
  const Vector theta = get_vector(sc, "theta", "scenario");
  if (theta.size() != static_cast<Eigen::Index>(models.size())) {
    throw ScenarioError("scenario: 'theta' length must match 'models'");
  }
  const Scalar tol = get_num_or(sc, "tol", 1e-10, "scenario");
  const RankReport report = rank_test(models, theta, tol);
  write_file(dir / "report.json", rank_report_json(report));
  return 0;
}

int cmd_spike_single(const json& sc, const std::filesystem::path& dir,
                     const RunOptions& opts) {
  require_keys(sc, {"schema_version", "model", "T", "M"}, {"model", "T"}, "scenario");
  const PhaseModel model = parse_model(sc.at("model"), "scenario.model");
  if (model.kind != ModelKind::Theta) {
    throw ScenarioError("scenario.model: spike-single requires a theta model");
  }
  const Scalar T = get_num(sc, "T", "scenario");
  const Scalar M = get_num_or(sc, "M", kInf, "scenario");
  if (T <= 0.0) throw ScenarioError("scenario: 'T' must be positive");
  if (sc.contains("M") && M <= 0.0) throw ScenarioError("scenario: 'M' must be positive");

  MinPowerSolution sol;
  try {
    sol = solve_min_power(model, T, M);
  } catch (const InfeasibleSpikeTime& e) {
    throw Infeasible(e.what());
  }
  const Trajectory traj = integrate({model}, sol.control(), T, Vector::Zero(1), T / 8192.0);
  write_trajectory(dir, traj);
  write_control_csv(dir, traj);
  write_file(dir / "report.json",
             min_power_report_json(sol, traj.terminal_state()[0]));
  if (opts.svg) {
    plot_phases(dir, traj);
    plot_control(dir, traj);
  }
  return 0;
}

int cmd_time_optimal_single(const json& sc, const std::filesystem::path& dir,
                            const RunOptions& opts) {
  require_keys(sc, {"schema_version", "model", "M"}, {"model", "M"}, "scenario");
  const PhaseModel model = parse_model(sc.at("model"), "scenario.model");
  const Scalar M = get_num(sc, "M", "scenario");
  if (M <= 0.0) throw ScenarioError("scenario: 'M' must be positive");

  TimeOptimalSingle sol;
  try {
    sol = time_optimal_single(model, M);
  } catch (const std::runtime_error& e) {
    throw Infeasible(e.what());
  }
  const Trajectory traj =
      integrate({model}, sol.control, sol.T_min, Vector::Zero(1), sol.T_min / 8192.0);
  write_trajectory(dir, traj);
  write_control_csv(dir, traj);

  json report;
  report["command"] = "time-optimal-single";
  report["model"] = {{"kind", to_string(model.kind)},
                     {"omega", json_num(model.omega)},
                     {"I", json_num(model.I)},
                     {"z", json_num(model.z)}};
  report["M"] = json_num(M);
  report["T_min"] = json_num(sol.T_min);
  report["oracle_terminal"] = json_num(traj.terminal_state()[0]);
  write_file(dir / "report.json", report.dump(2));
  if (opts.svg) {
    plot_phases(dir, traj);
    plot_control(dir, traj);
  }
  return 0;
}

int cmd_spike_two(const json& sc, const std::filesystem::path& dir,
                  const RunOptions& opts) {
  require_keys(sc, {"schema_version", "I1", "I2", "M", "m1", "m2", "max_switches"},
               {"I1", "I2", "M", "m1", "m2"}, "scenario");
  const Scalar I1 = get_num(sc, "I1", "scenario");
  const Scalar I2 = get_num(sc, "I2", "scenario");
  const Scalar M = get_num(sc, "M", "scenario");
  const int m1 = get_int(sc, "m1", "scenario");
  const int m2 = get_int(sc, "m2", "scenario");
  if (I1 <= 0.0 || I2 <= 0.0) throw ScenarioError("scenario: 'I1'/'I2' must be positive");
  if (M <= 0.0) throw ScenarioError("scenario: 'M' must be positive");
  if (m1 < 1 || m2 < 1) throw ScenarioError("scenario: 'm1'/'m2' must be >= 1");
  SynthesisOptions synth;
  if (sc.contains("max_switches")) {
    synth.max_switches = get_int(sc, "max_switches", "scenario");
    if (synth.max_switches < 0) throw ScenarioError("scenario: 'max_switches' must be >= 0");
  }

  TwoNeuronSolution sol;
  try {
    sol = synthesize(I1, I2, M, m1, m2, synth);
  } catch (const std::runtime_error& e) {
    throw Infeasible(e.what());
  }
  const std::vector<PhaseModel> models = {PhaseModel::theta_from_current(I1),
                                          PhaseModel::theta_from_current(I2)};
  const ControlSignal u = ControlSignal::piecewise(sol.schedule);
  const Trajectory traj =
      integrate(models, u, sol.schedule.T, Vector::Zero(2), sol.schedule.T / 16384.0);
  write_trajectory(dir, traj);
  write_control_csv(dir, traj);
  write_file(dir / "report.json", two_neuron_report_json(sol));
  if (opts.svg) {
    plot_phases(dir, traj);
    plot_control(dir, traj);
    plot_phase_plane(dir, traj, TwoNeuronParams::from_currents(I1, I2, M),
                     sol.switch_points);
  }
  return 0;
}

int cmd_spike_ensemble(const json& sc, const std::filesystem::path& dir,
                       const RunOptions& opts) {
  require_keys(sc,
               {"schema_version", "models", "T", "targets", "N", "amplitude", "w_term",
                "w_energy", "hard_terminal", "multistarts", "seed"},
               {"models", "T", "targets", "N"}, "scenario");
  const auto models = parse_models(sc, "scenario");
  const Scalar T = get_num(sc, "T", "scenario");
  if (T <= 0.0) throw ScenarioError("scenario: 'T' must be positive");
  const json& tj = sc.at("targets");
  if (!tj.is_array() || tj.size() != models.size()) {
    throw ScenarioError("scenario: 'targets' must be an integer array matching 'models'");
  }
  std::vector<int> windings;
  for (const auto& t : tj) {
    if (!t.is_number_integer() || t.get<int>() < 1) {
      throw ScenarioError("scenario: 'targets' entries must be integers >= 1");
    }
    windings.push_back(t.get<int>());
  }
  const int N = get_int(sc, "N", "scenario");
  if (N < 2) throw ScenarioError("scenario: 'N' must be >= 2");
  const Scalar amplitude = get_num_or(sc, "amplitude", kInf, "scenario");
  if (sc.contains("amplitude") && amplitude <= 0.0) {
    throw ScenarioError("scenario: 'amplitude' must be positive");
  }
  const Scalar w_term = get_num_or(sc, "w_term", 0.0, "scenario");
  const Scalar w_energy = get_num_or(sc, "w_energy", 1.0, "scenario");
  bool hard_terminal = true;
  if (sc.contains("hard_terminal")) {
    if (!sc.at("hard_terminal").is_boolean()) {
      throw ScenarioError("scenario: 'hard_terminal' must be a boolean");
    }
    hard_terminal = sc.at("hard_terminal").get<bool>();
  }
  if (!hard_terminal && w_term <= 0.0) {
    throw ScenarioError("scenario: 'w_term' must be positive when 'hard_terminal' is false");
  }

  EnsembleOptions eopts;
  if (sc.contains("multistarts")) {
    eopts.multistarts = get_int(sc, "multistarts", "scenario");
    if (eopts.multistarts < 0) throw ScenarioError("scenario: 'multistarts' must be >= 0");
  }
  if (sc.contains("seed")) {
    if (!sc.at("seed").is_number_unsigned()) {
      throw ScenarioError("scenario: 'seed' must be a nonnegative integer");
    }
    eopts.seed = sc.at("seed").get<std::uint64_t>();
  }
  if (opts.seed) eopts.seed = *opts.seed;

  const CollocationProblem prob =
      make_collocation(models, T, windings, N, w_term, w_energy, amplitude, hard_terminal);
  const EnsembleReport result = solve_ensemble(prob, eopts);
  if (!result.nlp.converged) {
    write_file(dir / "report.json", ensemble_report_json(prob, result));
    throw Infeasible("ensemble solve did not converge (constraint violation " +
                     std::to_string(result.nlp.constraint_violation) + ")");
  }

  const Trajectory traj =
      integrate(models, result.control, T, Vector::Zero(prob.n()), T / 16384.0);
  write_trajectory(dir, traj);
  write_control_csv(dir, traj);

  json report = json::parse(ensemble_report_json(prob, result));
  report["command"] = "spike-ensemble";
  report["seed"] = eopts.seed;
  report["control"] = control_spec_json(result.control);
  write_file(dir / "report.json", report.dump(2));

  if (opts.svg) {
    plot_phases(dir, traj);
    plot_control(dir, traj);
    plot_raster(dir, traj);
  }
  return 0;
}

}  // namespace

bool is_known_command(const std::string& command) {
  return command == "simulate" || command == "controllability" ||
         command == "spike-single" || command == "time-optimal-single" ||
         command == "spike-two-timeopt" || command == "spike-ensemble";
}

int run_scenario(const std::string& command, const std::string& scenario_path,
                 const RunOptions& opts) {
  try {
    if (!is_known_command(command)) throw ScenarioError("unknown command '" + command + "'");

    std::ifstream is(scenario_path);
    if (!is) throw ScenarioError("cannot read scenario file '" + scenario_path + "'");
    json sc;
    try {
      sc = json::parse(is);
    } catch (const json::parse_error& e) {
      throw ScenarioError(std::string("scenario parse error: ") + e.what());
    }
    if (!sc.is_object()) throw ScenarioError("scenario: expected a JSON object");
    if (!sc.contains("schema_version")) {
      throw ScenarioError("scenario: missing field 'schema_version'");
    }
    if (!sc.at("schema_version").is_number_integer() ||
        sc.at("schema_version").get<int>() != 1) {
      throw ScenarioError("scenario: unsupported 'schema_version' (expected 1)");
    }

    const std::filesystem::path dir(opts.out_dir);
    std::filesystem::create_directories(dir);

    if (command == "simulate") return cmd_simulate(sc, dir, opts);
    if (command == "controllability") return cmd_controllability(sc, dir, opts);
    if (command == "spike-single") return cmd_spike_single(sc, dir, opts);
    if (command == "time-optimal-single") return cmd_time_optimal_single(sc, dir, opts);
    if (command == "spike-two-timeopt") return cmd_spike_two(sc, dir, opts);
    return cmd_spike_ensemble(sc, dir, opts);
  } catch (const ScenarioError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const Infeasible& e) {
    std::cerr << "infeasible: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace phasectl
