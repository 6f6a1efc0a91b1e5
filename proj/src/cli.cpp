#include "crk/cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <ostream>

#include <CLI11.hpp>

#include "crk/discretize.hpp"
#include "crk/errors.hpp"

namespace crk {

namespace {

// Row time offset within a macro step, by the phase the row is in.
double phase_offset(int phase, double h) {
  switch (phase) {
    case 2:
    case 3:
      return h / 2;
    case 4:
      return h;
    default:
      return 0.0;
  }
}

std::string csv_header(std::size_t out_dim, std::size_t state_dim) {
  std::string line = "t,phase";
  for (std::size_t j = 0; j < out_dim; ++j) line += ",y" + std::to_string(j);
  for (std::size_t i = 0; i < state_dim; ++i) line += ",s" + std::to_string(i);
  return line + "\n";
}

void append_row(std::string& csv, double t, int phase, const Vec& output, const Vec* state) {
  csv += format_real(t);
  csv += ',';
  csv += std::to_string(phase);
  for (const double y : output) {
    csv += ',';
    csv += format_real(y);
  }
  if (state) {
    for (const double s : *state) {
      csv += ',';
      csv += format_real(s);
    }
  }
  csv += '\n';
}

FourStepSystem rk4_network(const Network& net, Mode mode, StepSize h) {
  if (mode == Mode::PostCompose) return rk4_discretize(apply_wiring(net.wiring, net.inner), h);
  FourStepSystem product = rk4_discretize(net.boxes.front(), h);
  for (std::size_t i = 1; i < net.boxes.size(); ++i) product = fs_tensor(product, rk4_discretize(net.boxes[i], h));
  return apply_wiring(net.wiring, product);
}

DiscreteSystem euler_network(const Network& net, Mode mode, StepSize h) {
  if (mode == Mode::PostCompose) return euler_discretize(apply_wiring(net.wiring, net.inner), h);
  DiscreteSystem product = euler_discretize(net.boxes.front(), h);
  for (std::size_t i = 1; i < net.boxes.size(); ++i) product = ds_tensor(product, euler_discretize(net.boxes[i], h));
  return apply_wiring(net.wiring, product);
}

// Stage point of every box, read off the payload layout of either mode.
Vec rk4_stage_state(const Network& net, Mode mode, const PhasedState& state, StepSize h) {
  if (mode == Mode::PostCompose) return rk4_stage_point(state, net.inner.state_dim(), h);
  const auto blocks = static_cast<std::size_t>(state.phase);
  std::vector<Vec> parts;
  std::size_t offset = 0;
  for (const auto& box : net.boxes) {
    const std::size_t width = blocks * box.state_dim();
    parts.push_back(rk4_stage_point(PhasedState{state.phase, slice(state.payload, offset, width)}, box.state_dim(), h));
    offset += width;
  }
  return concat(parts);
}

std::size_t whole_steps(double t_final, double h) {
  const double ratio = t_final / h;
  const double n = std::round(ratio);
  if (n < 1.0 || std::abs(ratio - n) > 1e-9 * std::max(1.0, ratio)) {
    throw SpecError("t-final " + format_real(t_final) + " is not a whole number of steps of h = " + format_real(h));
  }
  return static_cast<std::size_t>(n);
}

Vec final_output(const Network& net, Method method, double h, double t_final) {
  const std::size_t n = whole_steps(t_final, h);
  const InputSignal zero = constant_signal(Vec::zeros(net.wiring.outer().in_dim()));
  if (method == Method::Rk4) {
    return simulate(rk4_network(net, Mode::PostCompose, StepSize(h)), zero, net.init, n, false).records.back().output;
  }
  return simulate(euler_network(net, Mode::PostCompose, StepSize(h)), zero, net.init, n, false).records.back().output;
}

}  // namespace

std::string simulate_csv(const NetworkSpec& spec, const SimulateOptions& opts) {
  const StepSize h(opts.h);
  const Network net = build_network(spec);
  const InputSignal zero = constant_signal(Vec::zeros(spec.outer.in_dim()));
  std::string csv = csv_header(spec.outer.out_dim(), opts.dump_state ? spec.state_dim() : 0);
  if (opts.method == Method::Rk4) {
    const Trajectory traj = simulate(rk4_network(net, opts.mode, h), zero, net.init, opts.steps, opts.dump_state);
    for (const auto& rec : traj.records) {
      const double t = static_cast<double>(rec.macro_step) * opts.h + phase_offset(rec.phase, opts.h);
      if (opts.dump_state) {
        const Vec s = rk4_stage_state(net, opts.mode, *rec.state, h);
        append_row(csv, t, rec.phase, rec.output, &s);
      } else {
        append_row(csv, t, rec.phase, rec.output, nullptr);
      }
    }
  } else {
    const Trajectory traj = simulate(euler_network(net, opts.mode, h), zero, net.init, opts.steps, opts.dump_state);
    for (const auto& rec : traj.records) {
      const double t = static_cast<double>(rec.macro_step) * opts.h;
      append_row(csv, t, rec.phase, rec.output, opts.dump_state ? &rec.state->payload : nullptr);
    }
  }
  return csv;
}

ConvergenceResult convergence(const NetworkSpec& spec, Method method, const std::vector<double>& step_sizes,
                              double t_final) {
  if (step_sizes.size() < 2) throw SpecError("convergence needs at least two step sizes");
  if (!(t_final > 0.0) || !std::isfinite(t_final)) throw SpecError("t-final must be positive");
  if (spec.outer.out_dim() == 0) throw SpecError("convergence needs a network with at least one output");
  for (const double h : step_sizes) StepSize{h};

  const Network net = build_network(spec);
  ConvergenceResult result;
  result.step_sizes = step_sizes;
  result.reference_h = *std::min_element(step_sizes.begin(), step_sizes.end()) / 16.0;
  const Vec reference = final_output(net, Method::Rk4, result.reference_h, t_final);
  for (const double h : step_sizes) {
    const Vec y = final_output(net, method, h, t_final);
    double err = 0.0;
    for (std::size_t j = 0; j < y.dim(); ++j) err = std::max(err, std::abs(y[j] - reference[j]));
    result.errors.push_back(err);
  }
  result.slope = loglog_slope(result.step_sizes, result.errors);
  return result;
}

std::string format_convergence(const ConvergenceResult& result) {
  std::string text = "h,error\n";
  for (std::size_t i = 0; i < result.errors.size(); ++i) {
    text += format_real(result.step_sizes[i]) + "," + format_real(result.errors[i]) + "\n";
  }
  text += "slope," + (std::isnan(result.slope) ? std::string("undefined") : format_real(result.slope)) + "\n";
  return text;
}

SampleConfig check_laws_config(const CheckLawsOptions& opts) {
  SampleConfig cfg;
  cfg.seed = opts.seed;
  cfg.trials = opts.trials;
  cfg.tolerance = opts.tol;
  cfg.step_sizes = {StepSize(0.2), StepSize(0.1), StepSize(0.01)};
  return cfg;
}

int cmd_check_laws(const CheckLawsOptions& opts, std::ostream& out) {
  bool all_pass = true;
  for (const auto& report : run_suite(check_laws_config(opts))) {
    out << format_report(report) << '\n';
    all_pass = all_pass && report.pass;
  }
  return all_pass ? kExitOk : kExitCheckFailed;
}

int cmd_simulate(const std::filesystem::path& network, const SimulateOptions& opts,
                 const std::filesystem::path& out_path, std::ostream& out) {
  const std::string csv = simulate_csv(load_network(network), opts);
  if (out_path == "-") {
    out << csv;
    return kExitOk;
  }
  std::ofstream file(out_path, std::ios::binary);
  if (!file) throw IoError("cannot open output file '" + out_path.string() + "'");
  file << csv;
  file.close();
  if (!file) throw IoError("cannot write output file '" + out_path.string() + "'");
  return kExitOk;
}

int cmd_convergence(const std::filesystem::path& network, Method method, const std::vector<double>& step_sizes,
                    double t_final, std::ostream& out) {
  out << format_convergence(convergence(load_network(network), method, step_sizes, t_final));
  return kExitOk;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Compositional RK4 simulation of wired dynamical systems", "crk"};
  app.require_subcommand(1);

  const std::map<std::string, Method> methods{{"rk4", Method::Rk4}, {"euler", Method::Euler}};
  const std::map<std::string, Mode> modes{{"pre-compose", Mode::PreCompose}, {"post-compose", Mode::PostCompose}};

  std::string network;
  SimulateOptions sim;
  std::string out_path;
  auto* simulate_cmd = app.add_subcommand("simulate", "Simulate a network file and write a trajectory CSV");
  simulate_cmd->set_help_flag("--help", "Print this help message and exit");
  simulate_cmd->add_option("--network", network, "Network description file")->required();
  simulate_cmd->add_option("--method", sim.method, "rk4 or euler")
      ->required()
      ->transform(CLI::CheckedTransformer(methods, CLI::ignore_case));
  simulate_cmd->add_option("--mode", sim.mode, "pre-compose or post-compose")
      ->required()
      ->transform(CLI::CheckedTransformer(modes, CLI::ignore_case));
  simulate_cmd->add_option("--h", sim.h, "Step size")->required()->check(CLI::PositiveNumber);
  simulate_cmd->add_option("--steps", sim.steps, "Macro steps")->required();
  simulate_cmd->add_flag("--dump-state", sim.dump_state, "Append state columns");
  simulate_cmd->add_option("--out", out_path, "Output CSV path, - for stdout")->required();

  CheckLawsOptions laws;
  auto* laws_cmd = app.add_subcommand("check-laws", "Run the law suite over the built-in catalog");
  laws_cmd->add_option("--seed", laws.seed, "Master seed")->capture_default_str();
  laws_cmd->add_option("--trials", laws.trials, "Trials per law")->check(CLI::PositiveNumber)->capture_default_str();
  laws_cmd->add_option("--tol", laws.tol, "Deviation tolerance")->check(CLI::NonNegativeNumber)->capture_default_str();

  Method conv_method = Method::Rk4;
  std::vector<double> h_list;
  double t_final = 1.0;
  auto* conv_cmd = app.add_subcommand("convergence", "Estimate the order of accuracy on a network file");
  conv_cmd->add_option("--network", network, "Network description file")->required();
  conv_cmd->add_option("--method", conv_method, "rk4 or euler")
      ->required()
      ->transform(CLI::CheckedTransformer(methods, CLI::ignore_case));
  conv_cmd->add_option("--h-list", h_list, "Comma-separated step sizes")
      ->required()
      ->delimiter(',')
      ->check(CLI::PositiveNumber);
  conv_cmd->add_option("--t-final", t_final, "Final time")->required()->check(CLI::PositiveNumber);

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*simulate_cmd) return cmd_simulate(network, sim, out_path, out);
    if (*laws_cmd) return cmd_check_laws(laws, out);
    return cmd_convergence(network, conv_method, h_list, t_final, out);
  } catch (const SpecError& e) {
    err << "crk: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ParseError& e) {
    err << "crk: " << e.what() << '\n';
    return kExitUsage;
  } catch (const RoutingError& e) {
    err << "crk: " << e.what() << '\n';
    return kExitUsage;
  } catch (const InterfaceMismatch& e) {
    err << "crk: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "crk: " << e.what() << '\n';
    return kExitRuntime;
  }
}

}  // namespace crk
