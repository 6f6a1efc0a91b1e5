#include "crk/catalog.hpp"

#include <cmath>

#include "crk/sampling.hpp"

namespace crk::catalog {

namespace {

ContinuousSystem renamed(const ContinuousSystem& x, std::string name) {
  return ContinuousSystem(
      x.iface(), x.state_dim(), [x](const Vec& a, const Vec& s) { return x.update(a, s); },
      [x](const Vec& s) { return x.readout(s); }, std::move(name));
}

}  // namespace

ContinuousSystem growth() {
  return ContinuousSystem(
      Interface{0, 1}, 1, [](const Vec&, const Vec& s) { return s; }, [](const Vec& s) { return s; }, "growth");
}

ContinuousSystem linear_1d() {
  return ContinuousSystem(
      Interface{1, 1}, 1, [](const Vec& a, const Vec& s) { return Vec{-0.5 * s[0] + a[0]}; },
      [](const Vec& s) { return s; }, "linear1d");
}

ContinuousSystem linear_2d() {
  const LinearMap m = LinearMap::from_rows({{-0.1, 1.0}, {-1.0, -0.1}});
  const LinearMap n = LinearMap::from_rows({{1.0, 0.0}, {0.5, 1.0}});
  const LinearMap c = LinearMap::from_rows({{1.0, 0.5}, {0.0, 1.0}});
  return ContinuousSystem(
      Interface{2, 2}, 2,
      [m, n](const Vec& a, const Vec& s) {
        const Vec ms = linear_apply(m, s);
        const Vec na = linear_apply(n, a);
        return Vec{ms[0] + na[0], ms[1] + na[1]};
      },
      [c](const Vec& s) { return linear_apply(c, s); }, "linear2d");
}

ContinuousSystem harmonic_split() {
  const ContinuousSystem position(
      Interface{1, 1}, 1, [](const Vec& a, const Vec&) { return a; }, [](const Vec& s) { return s; }, "position");
  const ContinuousSystem velocity(
      Interface{1, 1}, 1, [](const Vec& a, const Vec&) { return Vec{-a[0]}; }, [](const Vec& s) { return s; },
      "velocity");
  return renamed(cs_tensor(position, velocity), "harmonic");
}

ContinuousSystem lotka_volterra_split() {
  const ContinuousSystem prey(
      Interface{1, 1}, 1, [](const Vec& a, const Vec& s) { return Vec{s[0] * (1.0 - 0.5 * a[0])}; },
      [](const Vec& s) { return s; }, "prey");
  const ContinuousSystem predator(
      Interface{1, 1}, 1, [](const Vec& a, const Vec& s) { return Vec{s[0] * (0.25 * a[0] - 0.75)}; },
      [](const Vec& s) { return s; }, "predator");
  return renamed(cs_tensor(prey, predator), "lotka_volterra");
}

ContinuousSystem van_der_pol_split() {
  const ContinuousSystem x_box(
      Interface{1, 1}, 1, [](const Vec& a, const Vec&) { return a; }, [](const Vec& s) { return s; }, "vdp_x");
  const ContinuousSystem y_box(
      Interface{1, 1}, 1,
      [](const Vec& a, const Vec& s) { return Vec{(1.0 - a[0] * a[0]) * s[0] - a[0]}; },
      [](const Vec& s) { return s; }, "vdp_y");
  return renamed(cs_tensor(x_box, y_box), "van_der_pol");
}

std::vector<ContinuousSystem> systems() {
  return {linear_1d(), linear_2d(), harmonic_split(), lotka_volterra_split(), van_der_pol_split()};
}

WiringDiagram random_routing(Interface inner, Interface outer, std::uint64_t seed) {
  Sampler rng(seed);
  auto constant = [&] { return RoutingSource::constant(std::round(rng.uniform(-2.0, 2.0) * 8.0) / 8.0); };
  RoutingTable table;
  for (std::size_t k = 0; k < inner.in_dim(); ++k) {
    switch (rng.index(3)) {
      case 0:
        table.in_sources.push_back(outer.in_dim() ? RoutingSource::outer_input(rng.index(outer.in_dim())) : constant());
        break;
      case 1:
        table.in_sources.push_back(inner.out_dim() ? RoutingSource::inner_output(rng.index(inner.out_dim()))
                                                   : constant());
        break;
      default:
        table.in_sources.push_back(constant());
    }
  }
  for (std::size_t k = 0; k < outer.out_dim(); ++k) {
    const bool wire = inner.out_dim() > 0 && rng.index(4) != 0;
    table.out_sources.push_back(wire ? RoutingSource::inner_output(rng.index(inner.out_dim())) : constant());
  }
  return WiringDiagram(inner, outer, std::move(table));
}

WiringDiagram smooth_function_wiring(Interface inner, Interface outer) {
  const std::size_t a_dim = inner.in_dim();
  const std::size_t b_dim = inner.out_dim();
  const std::size_t c_dim = outer.in_dim();
  const std::size_t d_dim = outer.out_dim();
  return WiringDiagram(
      inner, outer,
      [a_dim, b_dim, c_dim](const Vec& c, const Vec& b) {
        std::vector<double> a(a_dim);
        for (std::size_t k = 0; k < a_dim; ++k) {
          const double outer_part = c_dim ? c[k % c_dim] : 0.0;
          const double fed_back = b_dim ? b[k % b_dim] : 0.3;
          a[k] = outer_part + 0.5 * std::sin(fed_back);
        }
        return Vec(std::move(a));
      },
      [b_dim, d_dim](const Vec& b) {
        std::vector<double> d(d_dim);
        for (std::size_t j = 0; j < d_dim; ++j) {
          d[j] = (b_dim ? std::tanh(b[j % b_dim]) : 0.0) + 0.1 * static_cast<double>(j);
        }
        return Vec(std::move(d));
      });
}

WiringDiagram as_function(const WiringDiagram& d) {
  return WiringDiagram(
      d.inner(), d.outer(), [d](const Vec& c, const Vec& b) { return d.in_map(c, b); },
      [d](const Vec& b) { return d.out_map(b); });
}

std::vector<NamedWiring> wirings(Interface inner, std::uint64_t seed) {
  const std::size_t a_dim = inner.in_dim();
  const std::size_t b_dim = inner.out_dim();
  std::vector<NamedWiring> out;
  out.push_back({"identity", wiring_identity(inner)});

  RoutingTable feedback;
  for (std::size_t k = 0; k < a_dim; ++k) {
    feedback.in_sources.push_back(b_dim ? RoutingSource::inner_output((k + 1) % b_dim)
                                        : RoutingSource::constant(0.5));
  }
  for (std::size_t j = 0; j < b_dim; ++j) feedback.out_sources.push_back(RoutingSource::inner_output(j));
  out.push_back({"feedback", WiringDiagram(inner, Interface{0, b_dim}, std::move(feedback))});

  RoutingTable mixed;
  for (std::size_t k = 0; k < a_dim; ++k) {
    if (k % 2 == 0) {
      mixed.in_sources.push_back(RoutingSource::outer_input(k));
    } else {
      mixed.in_sources.push_back(b_dim ? RoutingSource::inner_output(k % b_dim) : RoutingSource::constant(-1.25));
    }
  }
  for (std::size_t j = b_dim; j-- > 0;) mixed.out_sources.push_back(RoutingSource::inner_output(j));
  mixed.out_sources.push_back(RoutingSource::constant(1.5));
  out.push_back({"mixed", WiringDiagram(inner, Interface{a_dim, b_dim + 1}, std::move(mixed))});

  Sampler rng(seed);
  const Interface random_outer{rng.index(4), rng.index(4)};
  out.push_back({"random", random_routing(inner, random_outer, rng.bits())});
  out.push_back({"smooth", smooth_function_wiring(inner, Interface{a_dim, b_dim})});
  return out;
}

}  // namespace crk::catalog
