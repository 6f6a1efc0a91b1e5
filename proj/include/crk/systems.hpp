#pragma once

// Continuous, one-step discrete and four-step dynamical systems, their
// monoidal products, and morphism witnesses between them.
//
// A system with input space A, output space B and state space S is a pair
//   update  : A x S -> S   (a derivative for continuous systems,
//                           the next state for discrete ones)
//   readout : S -> B
// Systems are immutable values; copying one shares its (pure) functions.

#include <array>
#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <utility>

#include "crk/core.hpp"
#include "crk/errors.hpp"
#include "crk/sampling.hpp"

namespace crk {

using UpdateFn = std::function<Vec(const Vec& input, const Vec& state)>;
using ReadoutFn = std::function<Vec(const Vec& state)>;

struct Continuous {
  static constexpr const char* kind = "continuous";
};
struct Discrete {
  static constexpr const char* kind = "discrete";
};

// Shared representation of continuous and one-step discrete systems; the
// Semantics tag says whether `update` returns a derivative or a next state.
template <typename Semantics>
class System {
 public:
  System(Interface iface, std::size_t state_dim, UpdateFn update, ReadoutFn readout,
         std::string name = {})
      : impl_(std::make_shared<const Impl>(
            Impl{iface, state_dim, std::move(update), std::move(readout), std::move(name)})) {}

  // The system on the unit interface (0,0) with a zero-dimensional state.
  static System trivial() {
    return System(
        Interface{}, 0, [](const Vec&, const Vec&) { return Vec{}; }, [](const Vec&) { return Vec{}; },
        "unit");
  }

  const Interface& iface() const noexcept { return impl_->iface; }
  std::size_t state_dim() const noexcept { return impl_->state_dim; }
  const std::string& name() const noexcept { return impl_->name; }

  // Dimension-checked evaluation. Throws DimensionError on mismatched
  // arguments or on a user function returning the wrong dimension.
  Vec update(const Vec& input, const Vec& state) const {
    check(input.dim(), impl_->iface.in_dim(), "input");
    check(state.dim(), impl_->state_dim, "state");
    Vec out = impl_->update(input, state);
    check(out.dim(), impl_->state_dim, "update result");
    return out;
  }

  Vec readout(const Vec& state) const {
    check(state.dim(), impl_->state_dim, "state");
    Vec out = impl_->readout(state);
    check(out.dim(), impl_->iface.out_dim(), "readout result");
    return out;
  }

  // Same underlying functions (not merely pointwise equal).
  bool same_as(const System& other) const noexcept { return impl_ == other.impl_; }

 private:
  struct Impl {
    Interface iface;
    std::size_t state_dim;
    UpdateFn update;
    ReadoutFn readout;
    std::string name;
  };

  void check(std::size_t actual, std::size_t expected, const char* what) const {
    if (actual != expected) {
      throw DimensionError(std::string(Semantics::kind) + " system '" + impl_->name + "' " + what,
                           expected, actual);
    }
  }

  std::shared_ptr<const Impl> impl_;
};

using ContinuousSystem = System<Continuous>;
using DiscreteSystem = System<Discrete>;

// State of a four-step system: a phase in {1,2,3,4} and a payload living in
// that phase's carrier.
struct PhasedState {
  int phase = 1;
  Vec payload;

  friend bool operator==(const PhasedState&, const PhasedState&) = default;
};

// Phase reached after one micro-step: 1 -> 2 -> 3 -> 4 -> 1.
constexpr int next_phase(int phase) { return phase % 4 + 1; }

using Carriers = std::array<std::size_t, 4>;
using PhasedUpdateFn = std::function<PhasedState(const Vec& input, const PhasedState& state)>;
using PhasedReadoutFn = std::function<Vec(const PhasedState& state)>;

// Discrete system whose state space is a disjoint union of four carriers,
// stepping through them cyclically.
class FourStepSystem {
 public:
  FourStepSystem(Interface iface, Carriers carriers, PhasedUpdateFn update, PhasedReadoutFn readout,
                 std::string name = {});

  static FourStepSystem trivial();

  const Interface& iface() const noexcept { return impl_->iface; }
  const Carriers& carriers() const noexcept { return impl_->carriers; }
  std::size_t carrier(int phase) const;
  const std::string& name() const noexcept { return impl_->name; }

  // Checks argument dimensions and that the result sits in the next phase
  // with the right carrier dimension (InvariantError otherwise).
  PhasedState update(const Vec& input, const PhasedState& state) const;
  Vec readout(const PhasedState& state) const;

 private:
  struct Impl {
    Interface iface;
    Carriers carriers;
    PhasedUpdateFn update;
    PhasedReadoutFn readout;
    std::string name;
  };

  void check_state(const PhasedState& state, const char* what) const;

  std::shared_ptr<const Impl> impl_;
};

ContinuousSystem cs_tensor(const ContinuousSystem& first, const ContinuousSystem& second);
DiscreteSystem ds_tensor(const DiscreteSystem& first, const DiscreteSystem& second);
// Both factors advance their phase in lockstep.
FourStepSystem fs_tensor(const FourStepSystem& first, const FourStepSystem& second);

// A map on ports: either the identity on a space of given dimension or a
// linear map.
class PortMap {
 public:
  static PortMap identity(std::size_t dim);
  explicit PortMap(LinearMap map);

  std::size_t src_dim() const noexcept;
  std::size_t dst_dim() const noexcept;
  bool is_identity() const noexcept { return !linear_.has_value(); }
  Vec apply(const Vec& v) const;
  LinearMap matrix() const;

  friend bool operator==(const PortMap&, const PortMap&) = default;

 private:
  PortMap(std::size_t dim, std::optional<LinearMap> linear) : dim_(dim), linear_(std::move(linear)) {}

  std::size_t dim_ = 0;  // only meaningful for the identity
  std::optional<LinearMap> linear_;
};

// Apply `first`, then `second`.
PortMap compose(const PortMap& second, const PortMap& first);
PortMap tensor(const PortMap& first, const PortMap& second);

// A linear state map m asserted to make the update and readout squares
//   m(src.update(a, s)) = dst.update(f(a), m(s))
//   g(src.readout(s))   = dst.readout(m(s))
// commute, where f is the input map and g the output map.
class CsWitness {
 public:
  // Throws DimensionError if any map disagrees with the endpoint dimensions.
  CsWitness(ContinuousSystem src, ContinuousSystem dst, PortMap input_map, PortMap output_map,
            LinearMap state_map);

  static CsWitness identity(const ContinuousSystem& system);

  const ContinuousSystem& src() const noexcept { return src_; }
  const ContinuousSystem& dst() const noexcept { return dst_; }
  const PortMap& input_map() const noexcept { return input_map_; }
  const PortMap& output_map() const noexcept { return output_map_; }
  const LinearMap& state_map() const noexcept { return state_map_; }

 private:
  ContinuousSystem src_;
  ContinuousSystem dst_;
  PortMap input_map_;
  PortMap output_map_;
  LinearMap state_map_;
};

using PhaseMaps = std::array<LinearMap, 4>;
using PhaseTargets = std::array<int, 4>;

// Morphism witness between four-step systems: one linear map per phase.
// phase_targets[i-1] is the phase of dst that phase i of src is sent to; a
// morphism must preserve phases, so anything but {1,2,3,4} fails verification.
class FsWitness {
 public:
  FsWitness(FourStepSystem src, FourStepSystem dst, PortMap input_map, PortMap output_map,
            PhaseMaps state_maps, PhaseTargets phase_targets = {1, 2, 3, 4});

  static FsWitness identity(const FourStepSystem& system);

  const FourStepSystem& src() const noexcept { return src_; }
  const FourStepSystem& dst() const noexcept { return dst_; }
  const PortMap& input_map() const noexcept { return input_map_; }
  const PortMap& output_map() const noexcept { return output_map_; }
  const PhaseMaps& state_maps() const noexcept { return state_maps_; }
  const LinearMap& state_map(int phase) const;
  const PhaseTargets& phase_targets() const noexcept { return phase_targets_; }

 private:
  FourStepSystem src_;
  FourStepSystem dst_;
  PortMap input_map_;
  PortMap output_map_;
  PhaseMaps state_maps_;
  PhaseTargets phase_targets_;
};

// Sampled check of both commuting squares. Inputs and states are drawn
// uniformly from cfg's coordinate range; deviation as in crk::deviation.
LawReport verify_cs_morphism(const CsWitness& w, const SampleConfig& cfg);
LawReport verify_fs_morphism(const FsWitness& w, const SampleConfig& cfg);

// w2 after w1. Throws InterfaceMismatch unless w1.dst and w2.src have the same
// interface and state dimensions.
CsWitness compose_witnesses(const CsWitness& w2, const CsWitness& w1);
FsWitness compose_witnesses(const FsWitness& w2, const FsWitness& w1);

// Block-diagonal witness between the tensor products of the endpoints.
CsWitness witness_tensor(const CsWitness& w1, const CsWitness& w2);
FsWitness witness_tensor(const FsWitness& w1, const FsWitness& w2);

}  // namespace crk
