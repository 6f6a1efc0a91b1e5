#include "crk/laws.hpp"

#include <cmath>
#include <limits>
#include <numeric>

#include "crk/catalog.hpp"
#include "crk/errors.hpp"

namespace crk {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string law_name(std::string_view law, std::string_view label) {
  std::string name(law);
  if (!label.empty()) name += "[" + std::string(label) + "]";
  return name;
}

std::string at_step(const std::string& name, StepSize h) { return name + "@h=" + format_real(h.value()); }

void require_iface(Interface actual, Interface expected, const std::string& what) {
  if (!(actual == expected)) {
    throw InterfaceMismatch(what + ": interface " + to_string(actual) + " vs " + to_string(expected));
  }
}

LawReport compare_continuous(const ContinuousSystem& lhs, const ContinuousSystem& rhs, const SampleConfig& cfg,
                             const std::string& name) {
  require_iface(lhs.iface(), rhs.iface(), name);
  if (lhs.state_dim() != rhs.state_dim()) throw DimensionError(name + ": state", lhs.state_dim(), rhs.state_dim());
  DeviationTracker tracker(name);
  for (std::size_t t = 0; t < cfg.trials; ++t) {
    Sampler rng(trial_seed(cfg.seed, name, t));
    const Vec a = rng.vec(lhs.iface().in_dim(), cfg.range_lo, cfg.range_hi);
    const Vec s = rng.vec(lhs.state_dim(), cfg.range_lo, cfg.range_hi);
    const double dev =
        std::max(deviation(lhs.update(a, s), rhs.update(a, s)), deviation(lhs.readout(s), rhs.readout(s)));
    tracker.record(dev, [&] { return "trial=" + std::to_string(t) + " a=" + to_string(a) + " s=" + to_string(s); });
    tracker.count_trial();
  }
  return tracker.finish(cfg.tolerance);
}

LawReport compare_fourstep(const FourStepSystem& lhs, const FourStepSystem& rhs, const SampleConfig& cfg,
                           const std::string& name) {
  require_iface(lhs.iface(), rhs.iface(), name);
  if (lhs.carriers() != rhs.carriers()) throw InterfaceMismatch(name + ": four-step carriers differ");
  DeviationTracker tracker(name);
  for (std::size_t t = 0; t < cfg.trials; ++t) {
    Sampler rng(trial_seed(cfg.seed, name, t));
    const Vec a = rng.vec(lhs.iface().in_dim(), cfg.range_lo, cfg.range_hi);
    for (int phase = 1; phase <= 4; ++phase) {
      const PhasedState sigma{phase, rng.vec(lhs.carrier(phase), cfg.range_lo, cfg.range_hi)};
      const PhasedState l = lhs.update(a, sigma);
      const PhasedState r = rhs.update(a, sigma);
      const double dev = std::max(l.phase == r.phase ? deviation(l.payload, r.payload) : kInf,
                                  deviation(lhs.readout(sigma), rhs.readout(sigma)));
      tracker.record(dev, [&] {
        return "trial=" + std::to_string(t) + " phase=" + std::to_string(phase) + " a=" + to_string(a) +
               " payload=" + to_string(sigma.payload);
      });
    }
    tracker.count_trial();
  }
  return tracker.finish(cfg.tolerance);
}

// Steps both sides in lockstep under one input sequence. A non-finite state on
// exactly one side is a disagreement; on both sides the run simply stops.
void compare_trajectories(const FourStepSystem& lhs, const FourStepSystem& rhs, const SampleConfig& cfg,
                          Sampler& rng, std::size_t trial, DeviationTracker& tracker) {
  const double lo = cfg.range_lo / 10.0;
  const double hi = cfg.range_hi / 10.0;
  const Vec init = rng.vec(lhs.carrier(1), lo, hi);
  PhasedState l{1, init};
  PhasedState r{1, init};
  auto describe = [&](std::size_t micro) {
    return "trial=" + std::to_string(trial) + " trajectory micro-step=" + std::to_string(micro) +
           " init=" + to_string(init);
  };
  tracker.record(deviation(lhs.readout(l), rhs.readout(r)), [&] { return describe(0); });
  const std::size_t micro_steps = 4 * cfg.trajectory_steps;
  for (std::size_t micro = 1; micro <= micro_steps; ++micro) {
    const Vec c = rng.vec(lhs.iface().in_dim(), lo, hi);
    bool l_ok = true;
    bool r_ok = true;
    Vec l_out, r_out;
    try {
      l = lhs.update(c, l);
      l_out = lhs.readout(l);
    } catch (const NonFiniteError&) {
      l_ok = false;
    }
    try {
      r = rhs.update(c, r);
      r_out = rhs.readout(r);
    } catch (const NonFiniteError&) {
      r_ok = false;
    }
    if (!l_ok && !r_ok) return;
    if (l_ok != r_ok) {
      tracker.record(kInf, [&] { return describe(micro) + " (only one side blew up)"; });
      return;
    }
    const double dev = std::max(l.phase == r.phase ? deviation(l.payload, r.payload) : kInf, deviation(l_out, r_out));
    tracker.record(dev, [&] { return describe(micro); });
  }
}

}  // namespace

// ---------------------------------------------------------------------------
// Two-cells

TwoCell::TwoCell(PortMap top_in, PortMap top_out, PortMap bottom_in, PortMap bottom_out, WiringDiagram left,
                 WiringDiagram right)
    : top_in_(std::move(top_in)),
      top_out_(std::move(top_out)),
      bottom_in_(std::move(bottom_in)),
      bottom_out_(std::move(bottom_out)),
      left_(std::move(left)),
      right_(std::move(right)) {
  require_iface(left_.inner(), Interface{top_in_.src_dim(), top_out_.src_dim()}, "two-cell top-left corner");
  require_iface(right_.inner(), Interface{top_in_.dst_dim(), top_out_.dst_dim()}, "two-cell top-right corner");
  require_iface(left_.outer(), Interface{bottom_in_.src_dim(), bottom_out_.src_dim()},
                "two-cell bottom-left corner");
  require_iface(right_.outer(), Interface{bottom_in_.dst_dim(), bottom_out_.dst_dim()},
                "two-cell bottom-right corner");
}

TwoCell TwoCell::identity(const WiringDiagram& phi) {
  return TwoCell(PortMap::identity(phi.inner().in_dim()), PortMap::identity(phi.inner().out_dim()),
                 PortMap::identity(phi.outer().in_dim()), PortMap::identity(phi.outer().out_dim()), phi, phi);
}

TwoCell vertical_compose(const TwoCell& lower, const TwoCell& upper) {
  if (!(upper.bottom_in() == lower.top_in()) || !(upper.bottom_out() == lower.top_out())) {
    throw InterfaceMismatch("vertical_compose: bottom port maps of the upper cell differ from the lower cell's top");
  }
  return TwoCell(upper.top_in(), upper.top_out(), lower.bottom_in(), lower.bottom_out(),
                 wiring_compose(lower.left(), upper.left()), wiring_compose(lower.right(), upper.right()));
}

LawReport check_two_cell(const TwoCell& tc, const SampleConfig& cfg, std::string_view label) {
  cfg.validate();
  const std::string name = law_name("two_cell", label);
  DeviationTracker tracker(name);
  const auto& left = tc.left();
  const auto& right = tc.right();
  for (std::size_t t = 0; t < cfg.trials; ++t) {
    Sampler rng(trial_seed(cfg.seed, name, t));
    const Vec a = rng.vec(left.outer().in_dim(), cfg.range_lo, cfg.range_hi);
    const Vec b = rng.vec(left.inner().out_dim(), cfg.range_lo, cfg.range_hi);
    const Vec gb = tc.top_out().apply(b);
    const double out_dev = deviation(tc.bottom_out().apply(left.out_map(b)), right.out_map(gb));
    const double in_dev =
        deviation(tc.top_in().apply(left.in_map(a, b)), right.in_map(tc.bottom_in().apply(a), gb));
    tracker.record(std::max(out_dev, in_dev), [&] {
      return "trial=" + std::to_string(t) + " square=" + (out_dev >= in_dev ? "out" : "in") +
             " a'=" + to_string(a) + " b=" + to_string(b);
    });
    tracker.count_trial();
  }
  return tracker.finish(cfg.tolerance);
}

// ---------------------------------------------------------------------------
// Compositionality

LawReport check_compositionality(const ContinuousSystem& x, const WiringDiagram& phi, const SampleConfig& cfg,
                                 std::string_view label) {
  cfg.validate();
  require_iface(x.iface(), phi.inner(), "check_compositionality");
  const std::string name = law_name("compositionality", label.empty() ? std::string_view(x.name()) : label);
  std::vector<LawReport> parts;
  const ContinuousSystem wired = apply_wiring(phi, x);
  for (const StepSize h : cfg.step_sizes) {
    const std::string part = at_step(name, h);
    const FourStepSystem post = rk4_discretize(wired, h);
    const FourStepSystem pre = apply_wiring(phi, rk4_discretize(x, h));
    DeviationTracker tracker(part);
    for (std::size_t t = 0; t < cfg.trials; ++t) {
      Sampler rng(trial_seed(cfg.seed, part, t));
      const Vec c = rng.vec(phi.outer().in_dim(), cfg.range_lo, cfg.range_hi);
      for (int phase = 1; phase <= 4; ++phase) {
        const PhasedState sigma{phase, rng.vec(post.carrier(phase), cfg.range_lo, cfg.range_hi)};
        const PhasedState l = post.update(c, sigma);
        const PhasedState r = pre.update(c, sigma);
        const double dev = std::max(l.phase == r.phase ? deviation(l.payload, r.payload) : kInf,
                                    deviation(post.readout(sigma), pre.readout(sigma)));
        tracker.record(dev, [&] {
          return "trial=" + std::to_string(t) + " phase=" + std::to_string(phase) + " c=" + to_string(c) +
                 " payload=" + to_string(sigma.payload);
        });
      }
      compare_trajectories(post, pre, cfg, rng, t, tracker);
      tracker.count_trial();
    }
    parts.push_back(tracker.finish(cfg.tolerance));
  }
  return merge_reports(name, parts, cfg.tolerance);
}

// ---------------------------------------------------------------------------
// Naturality and monoidality of RK4

LawReport check_rk_naturality(const TwoCell& tc, const ContinuousSystem& x, const ContinuousSystem& y,
                              const CsWitness& w, const SampleConfig& cfg, std::string_view label) {
  cfg.validate();
  require_iface(x.iface(), tc.left().inner(), "check_rk_naturality: source system vs left diagram");
  require_iface(y.iface(), tc.right().inner(), "check_rk_naturality: target system vs right diagram");
  if (!(w.input_map() == tc.top_in()) || !(w.output_map() == tc.top_out())) {
    throw InterfaceMismatch("check_rk_naturality: witness port maps differ from the two-cell's top");
  }
  const std::string name = law_name("rk_naturality", label);
  const CsWitness top(x, y, w.input_map(), w.output_map(), w.state_map());
  const CsWitness transported(apply_wiring(tc.left(), x), apply_wiring(tc.right(), y), tc.bottom_in(),
                              tc.bottom_out(), w.state_map());

  std::vector<LawReport> parts;
  parts.push_back(check_two_cell(tc, cfg, name));
  for (const StepSize h : cfg.step_sizes) {
    const FsWitness lifted = rk4_lift_morphism(top, h);
    parts.push_back(verify_fs_morphism(lifted, cfg));
    parts.back().law_name = at_step(name + ".lift", h);

    const FsWitness wired_lift(apply_wiring(tc.left(), lifted.src()), apply_wiring(tc.right(), lifted.dst()),
                               tc.bottom_in(), tc.bottom_out(), lifted.state_maps());
    parts.push_back(verify_fs_morphism(wired_lift, cfg));
    parts.back().law_name = at_step(name + ".wire_after_rk4", h);

    parts.push_back(verify_fs_morphism(rk4_lift_morphism(transported, h), cfg));
    parts.back().law_name = at_step(name + ".rk4_after_wire", h);
  }
  return merge_reports(name, parts, cfg.tolerance);
}

LinearMap rk4_tensor_shuffle(std::size_t dx, std::size_t dy, int phase) {
  if (phase < 1 || phase > 4) throw InvariantError("phase out of range: " + std::to_string(phase));
  const auto blocks = static_cast<std::size_t>(phase);
  const std::size_t width = dx + dy;
  std::vector<std::size_t> source_of_row;
  source_of_row.reserve(blocks * width);
  for (std::size_t j = 0; j < blocks; ++j)
    for (std::size_t c = 0; c < dx; ++c) source_of_row.push_back(j * width + c);
  for (std::size_t j = 0; j < blocks; ++j)
    for (std::size_t c = 0; c < dy; ++c) source_of_row.push_back(j * width + dx + c);
  return LinearMap::selection(blocks * width, source_of_row);
}

LawReport check_rk_monoidality(const ContinuousSystem& x, const ContinuousSystem& y, const SampleConfig& cfg,
                               std::string_view label) {
  cfg.validate();
  const std::string name =
      law_name("rk_monoidality", label.empty() ? std::string_view(x.name() + "," + y.name()) : label);
  PhaseMaps shuffle{rk4_tensor_shuffle(x.state_dim(), y.state_dim(), 1),
                    rk4_tensor_shuffle(x.state_dim(), y.state_dim(), 2),
                    rk4_tensor_shuffle(x.state_dim(), y.state_dim(), 3),
                    rk4_tensor_shuffle(x.state_dim(), y.state_dim(), 4)};
  for (int phase = 1; phase <= 4; ++phase) {
    if (!shuffle[static_cast<std::size_t>(phase - 1)].is_permutation()) {
      DeviationTracker tracker(name);
      tracker.fail("phase-" + std::to_string(phase) + " shuffle is not a permutation");
      return tracker.finish(cfg.tolerance);
    }
  }
  PhaseMaps inverse{shuffle[0].transpose(), shuffle[1].transpose(), shuffle[2].transpose(), shuffle[3].transpose()};
  const ContinuousSystem product = cs_tensor(x, y);
  const PortMap in_id = PortMap::identity(product.iface().in_dim());
  const PortMap out_id = PortMap::identity(product.iface().out_dim());
  std::vector<LawReport> parts;
  for (const StepSize h : cfg.step_sizes) {
    const FourStepSystem rk_of_product = rk4_discretize(product, h);
    const FourStepSystem product_of_rk = fs_tensor(rk4_discretize(x, h), rk4_discretize(y, h));
    parts.push_back(verify_fs_morphism(FsWitness(rk_of_product, product_of_rk, in_id, out_id, shuffle), cfg));
    parts.back().law_name = at_step(name + ".shuffle", h);
    parts.push_back(verify_fs_morphism(FsWitness(product_of_rk, rk_of_product, in_id, out_id, inverse), cfg));
    parts.back().law_name = at_step(name + ".unshuffle", h);
  }
  return merge_reports(name, parts, cfg.tolerance);
}

// ---------------------------------------------------------------------------
// Category laws

LawReport check_functor_laws(const ContinuousSystem& x, const WiringDiagram& phi, const WiringDiagram& psi,
                             const SampleConfig& cfg, std::string_view label) {
  cfg.validate();
  require_iface(x.iface(), phi.inner(), "check_functor_laws");
  const std::string name = law_name("functor", label.empty() ? std::string_view(x.name()) : label);
  const WiringDiagram composite = wiring_compose(psi, phi);
  std::vector<LawReport> parts;
  parts.push_back(
      compare_continuous(apply_wiring(composite, x), apply_wiring(psi, apply_wiring(phi, x)), cfg, name + ".cs"));
  for (const StepSize h : cfg.step_sizes) {
    const FourStepSystem rk = rk4_discretize(x, h);
    parts.push_back(compare_fourstep(apply_wiring(composite, rk), apply_wiring(psi, apply_wiring(phi, rk)), cfg,
                                     at_step(name + ".fs", h)));
  }
  return merge_reports(name, parts, cfg.tolerance);
}

LawReport compare_diagrams(const WiringDiagram& lhs, const WiringDiagram& rhs, const SampleConfig& cfg,
                           std::string_view label) {
  cfg.validate();
  const std::string name(label);
  require_iface(lhs.inner(), rhs.inner(), name + " inner");
  require_iface(lhs.outer(), rhs.outer(), name + " outer");
  DeviationTracker tracker(name);
  if (lhs.routing() && rhs.routing() && !(*lhs.routing() == *rhs.routing())) {
    tracker.fail("routing tables differ: " + to_string(*lhs.routing()) + " vs " + to_string(*rhs.routing()));
  }
  for (std::size_t t = 0; t < cfg.trials; ++t) {
    Sampler rng(trial_seed(cfg.seed, name, t));
    const Vec c = rng.vec(lhs.outer().in_dim(), cfg.range_lo, cfg.range_hi);
    const Vec b = rng.vec(lhs.inner().out_dim(), cfg.range_lo, cfg.range_hi);
    const double dev = std::max(deviation(lhs.in_map(c, b), rhs.in_map(c, b)), deviation(lhs.out_map(b), rhs.out_map(b)));
    tracker.record(dev, [&] { return "trial=" + std::to_string(t) + " c=" + to_string(c) + " b=" + to_string(b); });
    tracker.count_trial();
  }
  return tracker.finish(cfg.tolerance);
}

LawReport check_interchange(const WiringDiagram& phi1, const WiringDiagram& phi2, const WiringDiagram& psi1,
                            const WiringDiagram& psi2, const SampleConfig& cfg, std::string_view label) {
  const std::string name = law_name("interchange", label);
  const WiringDiagram tensor_then_compose = wiring_compose(wiring_tensor(phi2, psi2), wiring_tensor(phi1, psi1));
  const WiringDiagram compose_then_tensor = wiring_tensor(wiring_compose(phi2, phi1), wiring_compose(psi2, psi1));
  return compare_diagrams(tensor_then_compose, compose_then_tensor, cfg, name);
}

LawReport check_wiring_category(const WiringDiagram& phi, const WiringDiagram& psi, const WiringDiagram& chi,
                                const SampleConfig& cfg, std::string_view label) {
  const std::string name = law_name("wiring_category", label);
  std::vector<LawReport> parts;
  parts.push_back(compare_diagrams(wiring_compose(chi, wiring_compose(psi, phi)),
                                   wiring_compose(wiring_compose(chi, psi), phi), cfg, name + ".assoc"));
  parts.push_back(compare_diagrams(wiring_compose(wiring_identity(phi.outer()), phi), phi, cfg, name + ".left_unit"));
  parts.push_back(compare_diagrams(wiring_compose(phi, wiring_identity(phi.inner())), phi, cfg, name + ".right_unit"));
  return merge_reports(name, parts, cfg.tolerance);
}

// ---------------------------------------------------------------------------
// Order of accuracy

double loglog_slope(const std::vector<double>& step_sizes, const std::vector<double>& errors) {
  if (step_sizes.size() != errors.size() || step_sizes.size() < 2) {
    throw Error("loglog_slope needs at least two (h, error) pairs");
  }
  const auto n = static_cast<double>(step_sizes.size());
  double sx = 0.0, sy = 0.0;
  for (std::size_t i = 0; i < errors.size(); ++i) {
    if (!(errors[i] > 0.0) || !(step_sizes[i] > 0.0)) return std::numeric_limits<double>::quiet_NaN();
    sx += std::log(step_sizes[i]);
    sy += std::log(errors[i]);
  }
  const double mx = sx / n;
  const double my = sy / n;
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < errors.size(); ++i) {
    const double dx = std::log(step_sizes[i]) - mx;
    sxy += dx * (std::log(errors[i]) - my);
    sxx += dx * dx;
  }
  return sxy / sxx;
}

OrderEstimate estimate_growth_order(Method method) {
  OrderEstimate est;
  est.step_sizes = {0.2, 0.1, 0.05, 0.025};
  const ContinuousSystem growth = catalog::growth();
  const Vec init{1.0};
  const InputSignal no_input = constant_signal(Vec{});
  for (const double h : est.step_sizes) {
    const auto steps = static_cast<std::size_t>(std::lround(1.0 / h));
    double final_state = 0.0;
    if (method == Method::Rk4) {
      const FourStepSystem sys = rk4_discretize(growth, StepSize(h));
      final_state = macro_state(sys, simulate(sys, no_input, init, steps), steps)[0];
    } else {
      const DiscreteSystem sys = euler_discretize(growth, StepSize(h));
      final_state = simulate(sys, no_input, init, steps).records.back().state->payload[0];
    }
    est.errors.push_back(std::abs(final_state - std::exp(1.0)));
  }
  est.slope = loglog_slope(est.step_sizes, est.errors);
  return est;
}

LawReport check_order_of_accuracy(Method method) {
  const OrderEstimate est = estimate_growth_order(method);
  const double expected = method == Method::Rk4 ? 4.0 : 1.0;
  LawReport r;
  r.law_name = method == Method::Rk4 ? "order_of_accuracy[rk4]" : "order_of_accuracy[euler]";
  r.trials_run = est.step_sizes.size();
  r.tolerance = method == Method::Rk4 ? 0.3 : 0.2;
  r.max_deviation = std::isnan(est.slope) ? kInf : std::abs(est.slope - expected);
  r.pass = r.max_deviation <= r.tolerance;
  r.worst_sample = "slope=" + format_real(est.slope);
  for (std::size_t i = 0; i < est.errors.size(); ++i) {
    r.worst_sample += " err(h=" + format_real(est.step_sizes[i]) + ")=" + format_real(est.errors[i]);
  }
  return r;
}

// ---------------------------------------------------------------------------
// Fixtures and suite

namespace {

// A signed permutation scaled by powers of two, and its exact inverse.
std::pair<LinearMap, LinearMap> scaled_permutation(std::size_t n, Sampler& rng) {
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  for (std::size_t i = n; i > 1; --i) std::swap(perm[i - 1], perm[rng.index(i)]);
  std::vector<double> forward(n * n, 0.0);
  std::vector<double> backward(n * n, 0.0);
  static constexpr double kScales[] = {0.5, 1.0, 2.0, -0.5, -1.0, -2.0};
  for (std::size_t r = 0; r < n; ++r) {
    const double scale = kScales[rng.index(6)];
    forward[r * n + perm[r]] = scale;
    backward[perm[r] * n + r] = 1.0 / scale;
  }
  return {LinearMap(n, n, std::move(forward)), LinearMap(n, n, std::move(backward))};
}

NaturalityFixture conjugation_fixture(const ContinuousSystem& x, const catalog::NamedWiring& left, Sampler& rng) {
  const Interface inner = x.iface();
  const Interface outer = left.diagram.outer();
  auto [f, f_inv] = scaled_permutation(inner.in_dim(), rng);
  auto [g, g_inv] = scaled_permutation(inner.out_dim(), rng);
  auto [m, m_inv] = scaled_permutation(x.state_dim(), rng);
  auto [f2, f2_inv] = scaled_permutation(outer.in_dim(), rng);
  auto [g2, g2_inv] = scaled_permutation(outer.out_dim(), rng);

  const ContinuousSystem y(
      inner, x.state_dim(),
      [x, m = m, f_inv = f_inv, m_inv = m_inv](const Vec& c, const Vec& t) {
        return linear_apply(m, x.update(linear_apply(f_inv, c), linear_apply(m_inv, t)));
      },
      [x, g = g, m_inv = m_inv](const Vec& t) { return linear_apply(g, x.readout(linear_apply(m_inv, t))); },
      "conj(" + x.name() + ")");

  const WiringDiagram phi = left.diagram;
  const WiringDiagram right(
      inner, outer,
      [phi, f = f, f2_inv = f2_inv, g_inv = g_inv](const Vec& a, const Vec& b) {
        return linear_apply(f, phi.in_map(linear_apply(f2_inv, a), linear_apply(g_inv, b)));
      },
      [phi, g2 = g2, g_inv = g_inv](const Vec& b) { return linear_apply(g2, phi.out_map(linear_apply(g_inv, b))); });

  TwoCell cell(PortMap(f), PortMap(g), PortMap(f2), PortMap(g2), phi, right);
  CsWitness w(x, y, PortMap(f), PortMap(g), m);
  return {"conjugate:" + x.name() + ":" + left.name, std::move(cell), x, y, std::move(w)};
}

std::vector<std::size_t> leading(std::size_t n) {
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  return idx;
}

NaturalityFixture projection_fixture(const ContinuousSystem& x, const ContinuousSystem& other,
                                     const WiringDiagram& phi, const WiringDiagram& psi, const std::string& name) {
  const ContinuousSystem product = cs_tensor(x, other);
  const WiringDiagram left = wiring_tensor(phi, psi);
  auto project = [](std::size_t total, std::size_t keep) {
    return PortMap(LinearMap::selection(total, leading(keep)));
  };
  TwoCell cell(project(product.iface().in_dim(), x.iface().in_dim()),
               project(product.iface().out_dim(), x.iface().out_dim()),
               project(left.outer().in_dim(), phi.outer().in_dim()),
               project(left.outer().out_dim(), phi.outer().out_dim()), left, phi);
  CsWitness w(product, x, cell.top_in(), cell.top_out(),
              LinearMap::selection(product.state_dim(), leading(x.state_dim())));
  return {"projection:" + name, std::move(cell), product, x, std::move(w)};
}

}  // namespace

std::vector<NaturalityFixture> naturality_fixtures(std::uint64_t seed) {
  std::vector<NaturalityFixture> out;
  Sampler rng(seed);
  for (const auto& x : catalog::systems()) {
    out.push_back({"identity:" + x.name(), TwoCell::identity(wiring_identity(x.iface())), x, x, CsWitness::identity(x)});
    const auto wirings = catalog::wirings(x.iface(), rng.bits());
    out.push_back(conjugation_fixture(x, wirings[1], rng));  // feedback
    out.push_back(conjugation_fixture(x, wirings[2], rng));  // mixed
  }
  const auto systems = catalog::systems();
  const auto& lin1 = systems[0];
  const auto& harmonic = systems[2];
  const auto& vdp = systems[4];
  out.push_back(projection_fixture(harmonic, lin1, catalog::wirings(harmonic.iface(), rng.bits())[1].diagram,
                                   catalog::wirings(lin1.iface(), rng.bits())[2].diagram, "harmonic*linear1d"));
  out.push_back(projection_fixture(vdp, harmonic, catalog::wirings(vdp.iface(), rng.bits())[4].diagram,
                                   catalog::wirings(harmonic.iface(), rng.bits())[3].diagram, "van_der_pol*harmonic"));
  return out;
}

std::vector<LawReport> run_suite(const SampleConfig& cfg) {
  cfg.validate();
  std::vector<LawReport> reports;
  const auto systems = catalog::systems();
  Sampler rng(trial_seed(cfg.seed, "suite", 0));

  for (const auto& x : systems) {
    for (const auto& phi : catalog::wirings(x.iface(), rng.bits())) {
      reports.push_back(check_compositionality(x, phi.diagram, cfg, x.name() + "|" + phi.name));
    }
  }

  for (const auto& x : systems) {
    const auto first = catalog::wirings(x.iface(), rng.bits());
    for (std::size_t k = 0; k < first.size(); ++k) {
      const auto second = catalog::wirings(first[k].diagram.outer(), rng.bits());
      const auto& psi = second[(k + 1) % second.size()];
      reports.push_back(check_functor_laws(x, first[k].diagram, psi.diagram, cfg,
                                           x.name() + "|" + first[k].name + ">" + psi.name));
    }
  }

  for (const auto& x : systems) {
    const auto first = catalog::wirings(x.iface(), rng.bits());
    for (std::size_t k = 0; k < first.size(); ++k) {
      const auto& phi = first[k];
      const auto second = catalog::wirings(phi.diagram.outer(), rng.bits());
      const auto& psi = second[(k + 2) % second.size()];
      const auto third = catalog::wirings(psi.diagram.outer(), rng.bits());
      const auto& chi = third[(k + 3) % third.size()];
      reports.push_back(check_wiring_category(phi.diagram, psi.diagram, chi.diagram, cfg,
                                              x.name() + "|" + phi.name + ">" + psi.name + ">" + chi.name));
    }
  }

  for (int k = 0; k < 12; ++k) {
    auto dims = [&] { return Interface{rng.index(5), rng.index(5)}; };
    const Interface i1 = dims(), j1 = dims(), k1 = dims();
    const Interface i2 = dims(), j2 = dims(), k2 = dims();
    WiringDiagram phi1 = catalog::random_routing(i1, j1, rng.bits());
    WiringDiagram phi2 = catalog::random_routing(j1, k1, rng.bits());
    WiringDiagram psi1 = catalog::random_routing(i2, j2, rng.bits());
    WiringDiagram psi2 = catalog::random_routing(j2, k2, rng.bits());
    std::string label = "routing#" + std::to_string(k);
    if (k >= 8) {
      phi1 = catalog::as_function(phi1);
      psi2 = catalog::smooth_function_wiring(j2, k2);
      label = "function#" + std::to_string(k);
    }
    reports.push_back(check_interchange(phi1, phi2, psi1, psi2, cfg, label));
  }

  for (const auto& x : systems) {
    reports.push_back(check_rk_monoidality(x, ContinuousSystem::trivial(), cfg));
    for (const auto& y : systems) reports.push_back(check_rk_monoidality(x, y, cfg));
  }

  for (const auto& fixture : naturality_fixtures(rng.bits())) {
    reports.push_back(check_rk_naturality(fixture.cell, fixture.x, fixture.y, fixture.witness, cfg, fixture.name));
  }

  reports.push_back(check_order_of_accuracy(Method::Rk4));
  reports.push_back(check_order_of_accuracy(Method::Euler));
  return reports;
}

}  // namespace crk
