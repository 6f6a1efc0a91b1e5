#pragma once

// Sampled checks of the algebraic laws relating wiring, tensor products and
// RK4 discretization. Every check returns a LawReport; a failing law is a
// report, not an exception. Exceptions are reserved for malformed arguments
// (mismatched interfaces).
//
// Each trial draws its inputs from a generator seeded by
// trial_seed(cfg.seed, law name, trial index), so reports are reproducible
// bit for bit and independent of evaluation order.

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "crk/core.hpp"
#include "crk/discretize.hpp"
#include "crk/sampling.hpp"
#include "crk/systems.hpp"
#include "crk/wiring.hpp"

namespace crk {

// A square in the double category of wiring diagrams:
//
//   (A1,B1)  --(f,g)-->  (A2,B2)
//      | left              | right
//   (A1',B1') --(f',g')--> (A2',B2')
//
// commuting when
//   g'(left_out(b1))       = right_out(g(b1))
//   f(left_in(a1', b1))    = right_in(f'(a1'), g(b1))
class TwoCell {
 public:
  // Throws InterfaceMismatch when the four sides do not share corners.
  TwoCell(PortMap top_in, PortMap top_out, PortMap bottom_in, PortMap bottom_out, WiringDiagram left,
          WiringDiagram right);

  // Both port maps identities, left == right == phi.
  static TwoCell identity(const WiringDiagram& phi);

  const PortMap& top_in() const noexcept { return top_in_; }
  const PortMap& top_out() const noexcept { return top_out_; }
  const PortMap& bottom_in() const noexcept { return bottom_in_; }
  const PortMap& bottom_out() const noexcept { return bottom_out_; }
  const WiringDiagram& left() const noexcept { return left_; }
  const WiringDiagram& right() const noexcept { return right_; }

 private:
  PortMap top_in_;
  PortMap top_out_;
  PortMap bottom_in_;
  PortMap bottom_out_;
  WiringDiagram left_;
  WiringDiagram right_;
};

// Stacks `lower` under `upper`. Throws InterfaceMismatch unless upper's bottom
// port maps equal lower's top ones.
TwoCell vertical_compose(const TwoCell& lower, const TwoCell& upper);

// rk4(apply(phi, x)) against apply(phi, rk4(x)) for every step size in cfg:
// update and readout at sampled (input, phased state) pairs in every phase,
// plus a cfg.trajectory_steps macro-step run of both sides under a shared
// random input signal.
LawReport check_compositionality(const ContinuousSystem& x, const WiringDiagram& phi, const SampleConfig& cfg,
                                 std::string_view label = {});

// Samples both commuting squares of the two-cell.
LawReport check_two_cell(const TwoCell& tc, const SampleConfig& cfg, std::string_view label = {});

// Naturality of the RK4 transformation on the witness w : x -> y (over tc's
// top port maps). For every step size, checks that
//   * rk4_lift_morphism(w) verifies between rk4(x) and rk4(y);
//   * the same state maps verify between apply(left, rk4(x)) and
//     apply(right, rk4(y)) over tc's bottom port maps;
//   * the lift of the transported witness apply(left, x) -> apply(right, y)
//     verifies between the discretizations;
// and that tc itself commutes.
LawReport check_rk_naturality(const TwoCell& tc, const ContinuousSystem& x, const ContinuousSystem& y,
                              const CsWitness& w, const SampleConfig& cfg, std::string_view label = {});

// Permutation taking the phase-`phase` carrier of rk4(x * y) (blocks
// interleaved: s_x s_y k1_x k1_y ...) to that of rk4(x) * rk4(y)
// (s_x k1_x ... s_y k1_y ...). dx, dy are the state dimensions.
LinearMap rk4_tensor_shuffle(std::size_t dx, std::size_t dy, int phase);

// rk4(x * y) is isomorphic to rk4(x) * rk4(y) via the shuffle: checks the
// shuffles are permutations and that they and their inverses verify as
// four-step witnesses.
LawReport check_rk_monoidality(const ContinuousSystem& x, const ContinuousSystem& y, const SampleConfig& cfg,
                               std::string_view label = {});

// apply(psi o phi, x) against apply(psi, apply(phi, x)), continuous and on
// rk4(x) for each step size.
LawReport check_functor_laws(const ContinuousSystem& x, const WiringDiagram& phi, const WiringDiagram& psi,
                             const SampleConfig& cfg, std::string_view label = {});

// (phi2 * psi2) o (phi1 * psi1) against (phi2 o phi1) * (psi2 o psi1). When all
// four are routing diagrams the composed tables must also be equal.
LawReport check_interchange(const WiringDiagram& phi1, const WiringDiagram& phi2, const WiringDiagram& psi1,
                            const WiringDiagram& psi2, const SampleConfig& cfg, std::string_view label = {});

// Associativity chi o (psi o phi) = (chi o psi) o phi and both unit laws.
LawReport check_wiring_category(const WiringDiagram& phi, const WiringDiagram& psi, const WiringDiagram& chi,
                                const SampleConfig& cfg, std::string_view label = {});

// Pointwise comparison of two diagrams with the same interfaces.
LawReport compare_diagrams(const WiringDiagram& lhs, const WiringDiagram& rhs, const SampleConfig& cfg,
                           std::string_view label);

struct OrderEstimate {
  std::vector<double> step_sizes;
  std::vector<double> errors;
  double slope = 0.0;  // NaN when any error is zero
};

// Least-squares slope of log(error) against log(h).
double loglog_slope(const std::vector<double>& step_sizes, const std::vector<double>& errors);

enum class Method { Rk4, Euler };

// Global error at t = 1 of ds/dt = s from s(0) = 1 against e, for
// h in {0.2, 0.1, 0.05, 0.025}.
OrderEstimate estimate_growth_order(Method method);

// Order-of-accuracy law: RK4 slope within 4 +- 0.3, Euler within 1 +- 0.2.
// Deviation is |slope - expected|.
LawReport check_order_of_accuracy(Method method);

// A witness w : x -> y over the top of `cell`, used by the naturality law.
struct NaturalityFixture {
  std::string name;
  TwoCell cell;
  ContinuousSystem x;
  ContinuousSystem y;
  CsWitness witness;
};

// Identity cells on catalog systems, exact conjugations of catalog systems by
// scaled signed permutations, and projections out of tensor products.
std::vector<NaturalityFixture> naturality_fixtures(std::uint64_t seed);

// Runs every check over the built-in catalog. Deterministic given cfg.
std::vector<LawReport> run_suite(const SampleConfig& cfg);

}  // namespace crk
