#include "crk/systems.hpp"

#include <vector>

#include "crk/errors.hpp"

namespace crk {

namespace {

void check_phase(int phase) {
  if (phase < 1 || phase > 4) throw InvariantError("phase out of range: " + std::to_string(phase));
}

template <typename S>
S one_step_tensor(const S& x, const S& y) {
  const std::size_t ax = x.iface().in_dim();
  const std::size_t sx = x.state_dim();
  return S(
      interface_tensor(x.iface(), y.iface()), sx + y.state_dim(),
      [x, y, ax, sx](const Vec& a, const Vec& s) {
        auto [a1, a2] = split(a, ax);
        auto [s1, s2] = split(s, sx);
        return concat(x.update(a1, s1), y.update(a2, s2));
      },
      [x, y, sx](const Vec& s) {
        auto [s1, s2] = split(s, sx);
        return concat(x.readout(s1), y.readout(s2));
      },
      "(" + x.name() + "*" + y.name() + ")");
}

}  // namespace

FourStepSystem::FourStepSystem(Interface iface, Carriers carriers, PhasedUpdateFn update,
                               PhasedReadoutFn readout, std::string name)
    : impl_(std::make_shared<const Impl>(
          Impl{iface, carriers, std::move(update), std::move(readout), std::move(name)})) {}

FourStepSystem FourStepSystem::trivial() {
  return FourStepSystem(
      Interface{}, Carriers{0, 0, 0, 0},
      [](const Vec&, const PhasedState& s) { return PhasedState{next_phase(s.phase), Vec{}}; },
      [](const PhasedState&) { return Vec{}; }, "unit");
}

std::size_t FourStepSystem::carrier(int phase) const {
  check_phase(phase);
  return impl_->carriers[static_cast<std::size_t>(phase - 1)];
}

void FourStepSystem::check_state(const PhasedState& state, const char* what) const {
  check_phase(state.phase);
  const std::size_t expected = carrier(state.phase);
  if (state.payload.dim() != expected) {
    throw DimensionError("four-step system '" + impl_->name + "' " + what + " payload in phase " +
                             std::to_string(state.phase),
                         expected, state.payload.dim());
  }
}

PhasedState FourStepSystem::update(const Vec& input, const PhasedState& state) const {
  if (input.dim() != impl_->iface.in_dim()) {
    throw DimensionError("four-step system '" + impl_->name + "' input", impl_->iface.in_dim(), input.dim());
  }
  check_state(state, "state");
  PhasedState out = impl_->update(input, state);
  if (out.phase != next_phase(state.phase)) {
    throw InvariantError("four-step system '" + impl_->name + "' moved from phase " +
                         std::to_string(state.phase) + " to phase " + std::to_string(out.phase));
  }
  check_state(out, "update result");
  return out;
}

Vec FourStepSystem::readout(const PhasedState& state) const {
  check_state(state, "state");
  Vec out = impl_->readout(state);
  if (out.dim() != impl_->iface.out_dim()) {
    throw DimensionError("four-step system '" + impl_->name + "' readout", impl_->iface.out_dim(), out.dim());
  }
  return out;
}

ContinuousSystem cs_tensor(const ContinuousSystem& first, const ContinuousSystem& second) {
  return one_step_tensor(first, second);
}

DiscreteSystem ds_tensor(const DiscreteSystem& first, const DiscreteSystem& second) {
  return one_step_tensor(first, second);
}

FourStepSystem fs_tensor(const FourStepSystem& x, const FourStepSystem& y) {
  Carriers carriers{};
  for (std::size_t i = 0; i < 4; ++i) carriers[i] = x.carriers()[i] + y.carriers()[i];
  const std::size_t ax = x.iface().in_dim();
  return FourStepSystem(
      interface_tensor(x.iface(), y.iface()), carriers,
      [x, y, ax](const Vec& a, const PhasedState& s) {
        auto [a1, a2] = split(a, ax);
        auto [p1, p2] = split(s.payload, x.carrier(s.phase));
        PhasedState n1 = x.update(a1, {s.phase, std::move(p1)});
        PhasedState n2 = y.update(a2, {s.phase, std::move(p2)});
        return PhasedState{n1.phase, concat(n1.payload, n2.payload)};
      },
      [x, y](const PhasedState& s) {
        auto [p1, p2] = split(s.payload, x.carrier(s.phase));
        return concat(x.readout({s.phase, std::move(p1)}), y.readout({s.phase, std::move(p2)}));
      },
      "(" + x.name() + "*" + y.name() + ")");
}

// ---------------------------------------------------------------------------
// Port maps

PortMap PortMap::identity(std::size_t dim) { return PortMap(dim, std::nullopt); }

PortMap::PortMap(LinearMap map) : dim_(0), linear_(std::move(map)) {}

std::size_t PortMap::src_dim() const noexcept { return linear_ ? linear_->cols() : dim_; }
std::size_t PortMap::dst_dim() const noexcept { return linear_ ? linear_->rows() : dim_; }

Vec PortMap::apply(const Vec& v) const {
  if (linear_) return linear_apply(*linear_, v);
  if (v.dim() != dim_) throw DimensionError("identity port map", dim_, v.dim());
  return v;
}

LinearMap PortMap::matrix() const { return linear_ ? *linear_ : LinearMap::identity(dim_); }

PortMap compose(const PortMap& second, const PortMap& first) {
  if (second.src_dim() != first.dst_dim()) {
    throw DimensionError("port map composition", second.src_dim(), first.dst_dim());
  }
  if (first.is_identity()) return second;
  if (second.is_identity()) return first;
  return PortMap(linear_compose(second.matrix(), first.matrix()));
}

PortMap tensor(const PortMap& first, const PortMap& second) {
  if (first.is_identity() && second.is_identity()) {
    return PortMap::identity(first.src_dim() + second.src_dim());
  }
  return PortMap(block_diagonal(first.matrix(), second.matrix()));
}

// ---------------------------------------------------------------------------
// Witnesses

CsWitness::CsWitness(ContinuousSystem src, ContinuousSystem dst, PortMap input_map, PortMap output_map,
                     LinearMap state_map)
    : src_(std::move(src)),
      dst_(std::move(dst)),
      input_map_(std::move(input_map)),
      output_map_(std::move(output_map)),
      state_map_(std::move(state_map)) {
  if (input_map_.src_dim() != src_.iface().in_dim())
    throw DimensionError("witness input map domain", src_.iface().in_dim(), input_map_.src_dim());
  if (input_map_.dst_dim() != dst_.iface().in_dim())
    throw DimensionError("witness input map codomain", dst_.iface().in_dim(), input_map_.dst_dim());
  if (output_map_.src_dim() != src_.iface().out_dim())
    throw DimensionError("witness output map domain", src_.iface().out_dim(), output_map_.src_dim());
  if (output_map_.dst_dim() != dst_.iface().out_dim())
    throw DimensionError("witness output map codomain", dst_.iface().out_dim(), output_map_.dst_dim());
  if (state_map_.cols() != src_.state_dim())
    throw DimensionError("witness state map domain", src_.state_dim(), state_map_.cols());
  if (state_map_.rows() != dst_.state_dim())
    throw DimensionError("witness state map codomain", dst_.state_dim(), state_map_.rows());
}

CsWitness CsWitness::identity(const ContinuousSystem& system) {
  return CsWitness(system, system, PortMap::identity(system.iface().in_dim()),
                   PortMap::identity(system.iface().out_dim()), LinearMap::identity(system.state_dim()));
}

FsWitness::FsWitness(FourStepSystem src, FourStepSystem dst, PortMap input_map, PortMap output_map,
                     PhaseMaps state_maps, PhaseTargets phase_targets)
    : src_(std::move(src)),
      dst_(std::move(dst)),
      input_map_(std::move(input_map)),
      output_map_(std::move(output_map)),
      state_maps_(std::move(state_maps)),
      phase_targets_(phase_targets) {
  if (input_map_.src_dim() != src_.iface().in_dim())
    throw DimensionError("witness input map domain", src_.iface().in_dim(), input_map_.src_dim());
  if (input_map_.dst_dim() != dst_.iface().in_dim())
    throw DimensionError("witness input map codomain", dst_.iface().in_dim(), input_map_.dst_dim());
  if (output_map_.src_dim() != src_.iface().out_dim())
    throw DimensionError("witness output map domain", src_.iface().out_dim(), output_map_.src_dim());
  if (output_map_.dst_dim() != dst_.iface().out_dim())
    throw DimensionError("witness output map codomain", dst_.iface().out_dim(), output_map_.dst_dim());
  for (int phase = 1; phase <= 4; ++phase) {
    const int target = phase_targets_[static_cast<std::size_t>(phase - 1)];
    check_phase(target);
    const LinearMap& m = state_map(phase);
    if (m.cols() != src_.carrier(phase))
      throw DimensionError("witness phase-" + std::to_string(phase) + " map domain", src_.carrier(phase), m.cols());
    if (m.rows() != dst_.carrier(target))
      throw DimensionError("witness phase-" + std::to_string(phase) + " map codomain", dst_.carrier(target),
                           m.rows());
  }
}

FsWitness FsWitness::identity(const FourStepSystem& system) {
  PhaseMaps maps{LinearMap::identity(system.carrier(1)), LinearMap::identity(system.carrier(2)),
                 LinearMap::identity(system.carrier(3)), LinearMap::identity(system.carrier(4))};
  return FsWitness(system, system, PortMap::identity(system.iface().in_dim()),
                   PortMap::identity(system.iface().out_dim()), std::move(maps));
}

const LinearMap& FsWitness::state_map(int phase) const {
  check_phase(phase);
  return state_maps_[static_cast<std::size_t>(phase - 1)];
}

LawReport verify_cs_morphism(const CsWitness& w, const SampleConfig& cfg) {
  cfg.validate();
  const std::string name = "cs_morphism[" + w.src().name() + "->" + w.dst().name() + "]";
  DeviationTracker tracker(name);
  const auto& src = w.src();
  const auto& dst = w.dst();
  for (std::size_t t = 0; t < cfg.trials; ++t) {
    Sampler rng(trial_seed(cfg.seed, name, t));
    const Vec a = rng.vec(src.iface().in_dim(), cfg.range_lo, cfg.range_hi);
    const Vec s = rng.vec(src.state_dim(), cfg.range_lo, cfg.range_hi);
    const Vec ms = linear_apply(w.state_map(), s);
    const double upd_dev =
        deviation(linear_apply(w.state_map(), src.update(a, s)), dst.update(w.input_map().apply(a), ms));
    const double rdt_dev = deviation(w.output_map().apply(src.readout(s)), dst.readout(ms));
    tracker.record(std::max(upd_dev, rdt_dev), [&] {
      return "trial=" + std::to_string(t) + " square=" + (upd_dev >= rdt_dev ? "update" : "readout") +
             " a=" + to_string(a) + " s=" + to_string(s);
    });
    tracker.count_trial();
  }
  return tracker.finish(cfg.tolerance);
}

LawReport verify_fs_morphism(const FsWitness& w, const SampleConfig& cfg) {
  cfg.validate();
  const std::string name = "fs_morphism[" + w.src().name() + "->" + w.dst().name() + "]";
  DeviationTracker tracker(name);
  for (int phase = 1; phase <= 4; ++phase) {
    const int target = w.phase_targets()[static_cast<std::size_t>(phase - 1)];
    if (target != phase) {
      tracker.fail("phase " + std::to_string(phase) + " is sent to phase " + std::to_string(target));
      return tracker.finish(cfg.tolerance);
    }
  }
  const auto& src = w.src();
  const auto& dst = w.dst();
  for (std::size_t t = 0; t < cfg.trials; ++t) {
    Sampler rng(trial_seed(cfg.seed, name, t));
    const Vec a = rng.vec(src.iface().in_dim(), cfg.range_lo, cfg.range_hi);
    for (int phase = 1; phase <= 4; ++phase) {
      const PhasedState sigma{phase, rng.vec(src.carrier(phase), cfg.range_lo, cfg.range_hi)};
      const PhasedState mapped{phase, linear_apply(w.state_map(phase), sigma.payload)};
      const PhasedState next = src.update(a, sigma);
      const Vec lhs = linear_apply(w.state_map(next.phase), next.payload);
      const PhasedState rhs = dst.update(w.input_map().apply(a), mapped);
      const double upd_dev = deviation(lhs, rhs.payload);
      const double rdt_dev = deviation(w.output_map().apply(src.readout(sigma)), dst.readout(mapped));
      tracker.record(std::max(upd_dev, rdt_dev), [&] {
        return "trial=" + std::to_string(t) + " phase=" + std::to_string(phase) +
               " square=" + (upd_dev >= rdt_dev ? "update" : "readout") + " a=" + to_string(a) +
               " payload=" + to_string(sigma.payload);
      });
    }
    tracker.count_trial();
  }
  return tracker.finish(cfg.tolerance);
}

namespace {

template <typename S>
void require_same_shape(const S& upper, const S& lower) {
  if (!(upper.iface() == lower.iface())) {
    throw InterfaceMismatch("witness endpoints: interface " + to_string(lower.iface()) + " vs " +
                            to_string(upper.iface()));
  }
}

}  // namespace

CsWitness compose_witnesses(const CsWitness& w2, const CsWitness& w1) {
  require_same_shape(w2.src(), w1.dst());
  if (w2.src().state_dim() != w1.dst().state_dim()) {
    throw InterfaceMismatch("witness endpoints: state dimension " + std::to_string(w1.dst().state_dim()) +
                            " vs " + std::to_string(w2.src().state_dim()));
  }
  return CsWitness(w1.src(), w2.dst(), compose(w2.input_map(), w1.input_map()),
                   compose(w2.output_map(), w1.output_map()), linear_compose(w2.state_map(), w1.state_map()));
}

FsWitness compose_witnesses(const FsWitness& w2, const FsWitness& w1) {
  require_same_shape(w2.src(), w1.dst());
  if (w2.src().carriers() != w1.dst().carriers()) {
    throw InterfaceMismatch("witness endpoints: four-step carriers differ");
  }
  PhaseMaps maps{LinearMap::zero(0, 0), LinearMap::zero(0, 0), LinearMap::zero(0, 0), LinearMap::zero(0, 0)};
  PhaseTargets targets{};
  for (int phase = 1; phase <= 4; ++phase) {
    const auto i = static_cast<std::size_t>(phase - 1);
    const int mid = w1.phase_targets()[i];
    targets[i] = w2.phase_targets()[static_cast<std::size_t>(mid - 1)];
    maps[i] = linear_compose(w2.state_map(mid), w1.state_map(phase));
  }
  return FsWitness(w1.src(), w2.dst(), compose(w2.input_map(), w1.input_map()),
                   compose(w2.output_map(), w1.output_map()), std::move(maps), targets);
}

CsWitness witness_tensor(const CsWitness& w1, const CsWitness& w2) {
  return CsWitness(cs_tensor(w1.src(), w2.src()), cs_tensor(w1.dst(), w2.dst()),
                   tensor(w1.input_map(), w2.input_map()), tensor(w1.output_map(), w2.output_map()),
                   block_diagonal(w1.state_map(), w2.state_map()));
}

FsWitness witness_tensor(const FsWitness& w1, const FsWitness& w2) {
  if (w1.phase_targets() != w2.phase_targets()) {
    throw InterfaceMismatch("cannot tensor four-step witnesses with different phase assignments");
  }
  PhaseMaps maps{LinearMap::zero(0, 0), LinearMap::zero(0, 0), LinearMap::zero(0, 0), LinearMap::zero(0, 0)};
  for (int phase = 1; phase <= 4; ++phase) {
    maps[static_cast<std::size_t>(phase - 1)] = block_diagonal(w1.state_map(phase), w2.state_map(phase));
  }
  return FsWitness(fs_tensor(w1.src(), w2.src()), fs_tensor(w1.dst(), w2.dst()),
                   tensor(w1.input_map(), w2.input_map()), tensor(w1.output_map(), w2.output_map()),
                   std::move(maps), w1.phase_targets());
}

}  // namespace crk
