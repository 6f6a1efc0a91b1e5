#pragma once

// Command implementations behind the `crk` executable.
//
//   crk simulate --network <path> --method rk4|euler --mode pre-compose|post-compose
//                --h <real> --steps <int> [--dump-state] --out <path|->
//   crk check-laws [--seed <int>] [--trials <int>] [--tol <real>]
//   crk convergence --network <path> --method rk4|euler --h-list <reals> --t-final <real>
//
// Exit codes: 0 success, 1 law failure, 2 usage or network-file error,
// 3 runtime error (blow-up, I/O, evaluation).

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "crk/laws.hpp"
#include "crk/network.hpp"

namespace crk {

enum ExitCode : int { kExitOk = 0, kExitCheckFailed = 1, kExitUsage = 2, kExitRuntime = 3 };

// post-compose: rk4/euler of the wired network. pre-compose: the wiring
// applied to the tensor of per-box discretizations.
enum class Mode { PreCompose, PostCompose };

struct SimulateOptions {
  Method method = Method::Rk4;
  Mode mode = Mode::PostCompose;
  double h = 0.01;
  std::size_t steps = 100;
  bool dump_state = false;
};

// CSV with header `t,phase,y0..[,s0..]`, one row per recorded micro-step,
// numbers with 17 significant digits. Outer inputs are held at zero. The
// state columns are the point each row's readout is evaluated at.
std::string simulate_csv(const NetworkSpec& spec, const SimulateOptions& opts);

struct ConvergenceResult {
  std::vector<double> step_sizes;
  std::vector<double> errors;
  double reference_h = 0.0;
  double slope = 0.0;  // NaN when undefined
};

// Max-abs output error at t_final of each step size against an RK4 run at
// min(step_sizes) / 16. Throws SpecError when t_final is not a whole number
// of steps of some h.
ConvergenceResult convergence(const NetworkSpec& spec, Method method, const std::vector<double>& step_sizes,
                              double t_final);
std::string format_convergence(const ConvergenceResult& result);

struct CheckLawsOptions {
  std::uint64_t seed = SampleConfig{}.seed;
  std::size_t trials = SampleConfig{}.trials;
  double tol = SampleConfig{}.tolerance;
};

SampleConfig check_laws_config(const CheckLawsOptions& opts);
int cmd_check_laws(const CheckLawsOptions& opts, std::ostream& out);
int cmd_simulate(const std::filesystem::path& network, const SimulateOptions& opts,
                 const std::filesystem::path& out_path, std::ostream& out);
int cmd_convergence(const std::filesystem::path& network, Method method, const std::vector<double>& step_sizes,
                    double t_final, std::ostream& out);

// Full command line including argv[0]. Never throws.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace crk
