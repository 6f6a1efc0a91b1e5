#pragma once

// Runge-Kutta and Euler discretization of continuous systems, the lift of
// continuous morphism witnesses to four-step ones, and the simulation driver.

#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

#include "crk/core.hpp"
#include "crk/systems.hpp"

namespace crk {

// Classical RK4 as a four-step system. With d = dim S the carriers are
// (d, 2d, 3d, 4d) holding (s), (s,k1), (s,k1,k2), (s,k1,k2,k3). Each micro-step
// evaluates the vector field, with the input supplied at that micro-step, at
// the phase's stage point
//   phase 1: s   phase 2: s + h/2 k1   phase 3: s + h/2 k2   phase 4: s + h k3
// and the readout of every phase is the original readout at that stage point.
// The phase-4 update returns s + h/6 k1 + h/3 k2 + h/3 k3 + h/6 k4.
FourStepSystem rk4_discretize(const ContinuousSystem& x, StepSize h);

// Forward Euler: s' = s + h f(a, s), same readout.
DiscreteSystem euler_discretize(const ContinuousSystem& x, StepSize h);

// Stage point of an RK4 payload; d is the continuous state dimension.
Vec rk4_stage_point(const PhasedState& state, std::size_t d, StepSize h);

// Phase i state map is the i-fold block diagonal of w.state_map(); port maps
// are kept. The endpoints are the RK4 discretizations of w's endpoints.
FsWitness rk4_lift_morphism(const CsWitness& w, StepSize h);

// Input fed at (macro step, phase of the state being updated). Discrete
// systems are always fed with phase 1.
using InputSignal = std::function<Vec(std::size_t macro_step, int phase)>;

InputSignal constant_signal(Vec value);

struct TrajectoryRecord {
  std::size_t macro_step = 0;
  int phase = 1;
  Vec output;
  std::optional<PhasedState> state;
};

struct Trajectory {
  std::vector<TrajectoryRecord> records;
  bool has_states = false;
};

// Runs 4 * n_macro micro-steps from the phase-1 payload `init`, recording the
// initial readout and the readout after every micro-step. Throws BlowUpError
// naming the micro-step if the state or readout stops being finite.
Trajectory simulate(const FourStepSystem& sys, const InputSignal& signal, const Vec& init, std::size_t n_macro,
                    bool keep_states = true);
// n_macro steps of a one-step system; records are all phase 1.
Trajectory simulate(const DiscreteSystem& sys, const InputSignal& signal, const Vec& init, std::size_t n_macro,
                    bool keep_states = true);

// Phase-1 payload after k macro steps (the RK iterate s_k).
Vec macro_state(const FourStepSystem& sys, const Trajectory& trajectory, std::size_t k);

}  // namespace crk
