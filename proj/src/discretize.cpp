#include "crk/discretize.hpp"

#include <string>

#include "crk/errors.hpp"

namespace crk {

namespace {

// Final-combination weights are h divided by these. CRK_MUTATE_RK_WEIGHT is
// only defined by the mutation-test build.
struct Rk4WeightDivisors {
#ifdef CRK_MUTATE_RK_WEIGHT
  static constexpr double k1 = 5.0;
#else
  static constexpr double k1 = 6.0;
#endif
  static constexpr double k2 = 3.0;
  static constexpr double k3 = 3.0;
  static constexpr double k4 = 6.0;
};

Vec rk4_combine(const Vec& payload, const Vec& k4, std::size_t d, double h) {
  const double w1 = h / Rk4WeightDivisors::k1;
  const double w2 = h / Rk4WeightDivisors::k2;
  const double w3 = h / Rk4WeightDivisors::k3;
  const double w4 = h / Rk4WeightDivisors::k4;
  std::vector<double> next(d);
  for (std::size_t i = 0; i < d; ++i) {
    next[i] = payload[i] + w1 * payload[d + i] + w2 * payload[2 * d + i] + w3 * payload[3 * d + i] + w4 * k4[i];
  }
  return Vec(std::move(next));
}

}  // namespace

Vec rk4_stage_point(const PhasedState& state, std::size_t d, StepSize h) {
  const Vec& p = state.payload;
  if (p.dim() != d * static_cast<std::size_t>(state.phase)) {
    throw DimensionError("RK4 payload in phase " + std::to_string(state.phase),
                         d * static_cast<std::size_t>(state.phase), p.dim());
  }
  if (state.phase == 1) return p;
  // Phase i steps from s along k_{i-1}, which sits in the last block.
  const double scale = state.phase == 4 ? h.value() : h.value() / 2;
  const std::size_t slope = d * static_cast<std::size_t>(state.phase - 1);
  std::vector<double> point(d);
  for (std::size_t i = 0; i < d; ++i) point[i] = p[i] + scale * p[slope + i];
  return Vec(std::move(point));
}

FourStepSystem rk4_discretize(const ContinuousSystem& x, StepSize h) {
  const std::size_t d = x.state_dim();
  return FourStepSystem(
      x.iface(), Carriers{d, 2 * d, 3 * d, 4 * d},
      [x, d, h](const Vec& a, const PhasedState& state) {
        const Vec k = x.update(a, rk4_stage_point(state, d, h));
        if (state.phase == 4) return PhasedState{1, rk4_combine(state.payload, k, d, h.value())};
        return PhasedState{next_phase(state.phase), concat(state.payload, k)};
      },
      [x, d, h](const PhasedState& state) { return x.readout(rk4_stage_point(state, d, h)); },
      "rk4(" + x.name() + ")");
}

DiscreteSystem euler_discretize(const ContinuousSystem& x, StepSize h) {
  return DiscreteSystem(
      x.iface(), x.state_dim(),
      [x, h](const Vec& a, const Vec& s) { return add_scaled(s, h.value(), x.update(a, s)); },
      [x](const Vec& s) { return x.readout(s); }, "euler(" + x.name() + ")");
}

FsWitness rk4_lift_morphism(const CsWitness& w, StepSize h) {
  const LinearMap& m = w.state_map();
  PhaseMaps maps{block_diagonal_power(m, 1), block_diagonal_power(m, 2), block_diagonal_power(m, 3),
                 block_diagonal_power(m, 4)};
  return FsWitness(rk4_discretize(w.src(), h), rk4_discretize(w.dst(), h), w.input_map(), w.output_map(),
                   std::move(maps));
}

InputSignal constant_signal(Vec value) {
  return [value = std::move(value)](std::size_t, int) { return value; };
}

namespace {

std::string step_label(std::size_t micro, std::size_t macro, int phase) {
  return "micro-step " + std::to_string(micro) + " (macro step " + std::to_string(macro) + ", phase " +
         std::to_string(phase) + ")";
}

}  // namespace

Trajectory simulate(const FourStepSystem& sys, const InputSignal& signal, const Vec& init, std::size_t n_macro,
                    bool keep_states) {
  if (init.dim() != sys.carrier(1)) throw DimensionError("simulate: initial state", sys.carrier(1), init.dim());
  Trajectory traj;
  traj.has_states = keep_states;
  traj.records.reserve(4 * n_macro + 1);
  PhasedState state{1, init};
  auto record = [&](std::size_t macro) {
    TrajectoryRecord r{macro, state.phase, sys.readout(state), std::nullopt};
    if (keep_states) r.state = state;
    traj.records.push_back(std::move(r));
  };
  record(0);
  std::size_t micro = 0;
  for (std::size_t macro = 0; macro < n_macro; ++macro) {
    for (int phase = 1; phase <= 4; ++phase, ++micro) {
      try {
        state = sys.update(signal(macro, phase), state);
        record(state.phase == 1 ? macro + 1 : macro);
      } catch (const NonFiniteError&) {
        throw BlowUpError("simulate: non-finite state at " + step_label(micro, macro, phase), micro);
      }
    }
  }
  return traj;
}

Trajectory simulate(const DiscreteSystem& sys, const InputSignal& signal, const Vec& init, std::size_t n_macro,
                    bool keep_states) {
  if (init.dim() != sys.state_dim()) throw DimensionError("simulate: initial state", sys.state_dim(), init.dim());
  Trajectory traj;
  traj.has_states = keep_states;
  traj.records.reserve(n_macro + 1);
  Vec state = init;
  auto record = [&](std::size_t step) {
    TrajectoryRecord r{step, 1, sys.readout(state), std::nullopt};
    if (keep_states) r.state = PhasedState{1, state};
    traj.records.push_back(std::move(r));
  };
  record(0);
  for (std::size_t step = 0; step < n_macro; ++step) {
    try {
      state = sys.update(signal(step, 1), state);
      record(step + 1);
    } catch (const NonFiniteError&) {
      throw BlowUpError("simulate: non-finite state at " + step_label(step, step, 1), step);
    }
  }
  return traj;
}

Vec macro_state(const FourStepSystem& sys, const Trajectory& trajectory, std::size_t k) {
  if (!trajectory.has_states) throw Error("macro_state: trajectory was recorded without state snapshots");
  // Records: index 0 is the initial state, then four per macro step.
  const std::size_t index = 4 * k;
  if (index >= trajectory.records.size()) {
    throw Error("macro_state: trajectory has fewer than " + std::to_string(k) + " macro steps");
  }
  const auto& rec = trajectory.records[index];
  if (rec.phase != 1 || rec.macro_step != k || !rec.state) {
    throw InvariantError("macro_state: record " + std::to_string(index) + " is not a phase-1 snapshot");
  }
  if (rec.state->payload.dim() != sys.carrier(1)) {
    throw DimensionError("macro_state: snapshot vs system carrier", sys.carrier(1), rec.state->payload.dim());
  }
  return rec.state->payload;
}

}  // namespace crk
