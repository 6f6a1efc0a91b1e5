#include <gtest/gtest.h>

#include <cmath>

#include "crk/catalog.hpp"
#include "crk/errors.hpp"
#include "crk/laws.hpp"

using namespace crk;

namespace {

SampleConfig cfg_with(std::size_t trials, double tol = 1e-10) {
  SampleConfig cfg;
  cfg.trials = trials;
  cfg.tolerance = tol;
  cfg.trajectory_steps = 8;
  cfg.step_sizes = {StepSize(0.2), StepSize(0.01)};
  return cfg;
}

WiringDiagram swap_feedback() {
  return WiringDiagram(Interface{2, 2}, Interface{0, 2},
                       parse_routing_table("in=[inner:1, inner:0] out=[inner:0, inner:1]"));
}

}  // namespace

TEST(Compositionality, HoldsOnCatalog) {
  for (const auto& x : catalog::systems()) {
    for (const auto& phi : catalog::wirings(x.iface(), 99)) {
      const LawReport r = check_compositionality(x, phi.diagram, cfg_with(16));
      EXPECT_TRUE(r.pass) << format_report(r);
      EXPECT_EQ(r.trials_run, 32u);
    }
  }
}

TEST(Compositionality, RejectsMismatchedInterface) {
  EXPECT_THROW(check_compositionality(catalog::linear_1d(), swap_feedback(), cfg_with(4)), InterfaceMismatch);
}

TEST(Compositionality, DetectsStaleInputPolicy) {
  // A "pre-compose" side that feeds the phase-1 readout to every stage is not
  // the wired RK4 image; the same comparison machinery must see the gap.
  const ContinuousSystem x = catalog::harmonic_split();
  const WiringDiagram phi = swap_feedback();
  const StepSize h(0.2);
  const FourStepSystem post = rk4_discretize(apply_wiring(phi, x), h);
  const FourStepSystem inner = rk4_discretize(x, h);
  const FourStepSystem stale(
      Interface{0, 2}, inner.carriers(),
      [inner, phi, x](const Vec& c, const PhasedState& s) {
        return inner.update(phi.in_map(c, x.readout(slice(s.payload, 0, 2))), s);
      },
      [inner, phi](const PhasedState& s) { return phi.out_map(inner.readout(s)); });
  double worst = 0;
  for (int phase = 2; phase <= 4; ++phase) {
    std::vector<double> p(2 * static_cast<std::size_t>(phase), 0.0);
    p[0] = 1;
    p[1] = 2;
    p[p.size() - 2] = 3;
    p[p.size() - 1] = -4;
    const PhasedState probe{phase, Vec(p)};
    worst = std::max(worst, deviation(post.update(Vec{}, probe).payload, stale.update(Vec{}, probe).payload));
  }
  EXPECT_GT(worst, 1e-3);
}

TEST(TwoCell, IdentityCommutes) {
  for (const auto& x : catalog::systems()) {
    for (const auto& phi : catalog::wirings(x.iface(), 1)) {
      EXPECT_TRUE(check_two_cell(TwoCell::identity(phi.diagram), cfg_with(16)).pass);
    }
  }
}

TEST(TwoCell, ValidatesCorners) {
  const WiringDiagram phi = swap_feedback();
  EXPECT_THROW(TwoCell(PortMap::identity(1), PortMap::identity(2), PortMap::identity(0), PortMap::identity(2), phi,
                       phi),
               InterfaceMismatch);
}

TEST(TwoCell, NonCommutingSquareFails) {
  const WiringDiagram phi = swap_feedback();
  const PortMap negate(LinearMap::diagonal({-1, 1}));
  const TwoCell cell(PortMap::identity(2), negate, PortMap::identity(0), PortMap::identity(2), phi, phi);
  const LawReport r = check_two_cell(cell, cfg_with(16));
  EXPECT_FALSE(r.pass);
  EXPECT_NE(r.worst_sample.find("square="), std::string::npos);
}

TEST(TwoCell, VerticalCompositionOfIdentities) {
  const WiringDiagram phi = swap_feedback();
  const WiringDiagram psi = wiring_identity(Interface{0, 2});
  const TwoCell upper = TwoCell::identity(phi);
  const TwoCell lower = TwoCell::identity(psi);
  const TwoCell stacked = vertical_compose(lower, upper);
  EXPECT_EQ(stacked.left().outer(), (Interface{0, 2}));
  EXPECT_TRUE(check_two_cell(stacked, cfg_with(16)).pass);
  EXPECT_THROW(vertical_compose(upper, upper), InterfaceMismatch);
}

TEST(Naturality, FixturesPass) {
  const auto fixtures = naturality_fixtures(7);
  EXPECT_GE(fixtures.size(), 10u);
  for (const auto& f : fixtures) {
    const LawReport r = check_rk_naturality(f.cell, f.x, f.y, f.witness, cfg_with(8), f.name);
    EXPECT_TRUE(r.pass) << format_report(r);
  }
}

TEST(Naturality, WrongWitnessFails) {
  const auto fixtures = naturality_fixtures(7);
  const auto& f = fixtures.at(1);
  const std::size_t d = f.x.state_dim();
  const CsWitness wrong(f.x, f.y, f.witness.input_map(), f.witness.output_map(),
                        linear_compose(LinearMap::diagonal(std::vector<double>(d, 1.5)), f.witness.state_map()));
  EXPECT_FALSE(check_rk_naturality(f.cell, f.x, f.y, wrong, cfg_with(8), f.name).pass);
}

TEST(Monoidality, ShuffleIsPermutationWithExpectedLayout) {
  for (int phase = 1; phase <= 4; ++phase) {
    const LinearMap p = rk4_tensor_shuffle(1, 2, phase);
    EXPECT_TRUE(p.is_permutation());
    EXPECT_EQ(p.rows(), 3u * static_cast<std::size_t>(phase));
  }
  // (s_x s_y0 s_y1 | k_x k_y0 k_y1) -> (s_x k_x | s_y0 s_y1 k_y0 k_y1)
  EXPECT_EQ(linear_apply(rk4_tensor_shuffle(1, 2, 2), Vec{1, 2, 3, 4, 5, 6}), (Vec{1, 4, 2, 3, 5, 6}));
  EXPECT_THROW(rk4_tensor_shuffle(1, 1, 5), InvariantError);
}

TEST(Monoidality, HoldsOnCatalogPairs) {
  const auto systems = catalog::systems();
  for (const auto& x : systems) {
    for (const auto& y : systems) {
      const LawReport r = check_rk_monoidality(x, y, cfg_with(8, 1e-12));
      EXPECT_TRUE(r.pass) << format_report(r);
    }
  }
  EXPECT_TRUE(check_rk_monoidality(ContinuousSystem::trivial(), systems[0], cfg_with(8, 1e-12)).pass);
}

TEST(Functor, HoldsForCatalogDiagrams) {
  const ContinuousSystem x = catalog::lotka_volterra_split();
  const auto first = catalog::wirings(x.iface(), 3);
  for (const auto& phi : first) {
    for (const auto& psi : catalog::wirings(phi.diagram.outer(), 4)) {
      const LawReport r = check_functor_laws(x, phi.diagram, psi.diagram, cfg_with(8, 0.0));
      EXPECT_TRUE(r.pass) << format_report(r);
    }
  }
}

TEST(Interchange, RoutingTablesAgreeExactly) {
  Sampler rng(21);
  for (int k = 0; k < 20; ++k) {
    auto dims = [&] { return Interface{rng.index(4), rng.index(4)}; };
    const Interface a = dims(), b = dims(), c = dims(), d = dims(), e = dims(), f = dims();
    const LawReport r =
        check_interchange(catalog::random_routing(a, b, rng.bits()), catalog::random_routing(b, c, rng.bits()),
                          catalog::random_routing(d, e, rng.bits()), catalog::random_routing(e, f, rng.bits()),
                          cfg_with(8, 0.0));
    EXPECT_TRUE(r.pass) << format_report(r);
    EXPECT_EQ(r.max_deviation, 0.0);
  }
}

TEST(WiringCategory, AssociativityAndUnits) {
  const Interface i{2, 2};
  const auto phis = catalog::wirings(i, 5);
  for (const auto& phi : phis) {
    const auto psis = catalog::wirings(phi.diagram.outer(), 6);
    for (const auto& psi : psis) {
      const auto chi = catalog::wirings(psi.diagram.outer(), 7).back();
      const LawReport r = check_wiring_category(phi.diagram, psi.diagram, chi.diagram, cfg_with(8, 0.0));
      EXPECT_TRUE(r.pass) << format_report(r);
    }
  }
}

TEST(CompareDiagrams, DetectsDifferentTables) {
  const WiringDiagram a(Interface{1, 1}, Interface{0, 1}, parse_routing_table("in=[const:1] out=[inner:0]"));
  const WiringDiagram b(Interface{1, 1}, Interface{0, 1}, parse_routing_table("in=[const:2] out=[inner:0]"));
  EXPECT_FALSE(compare_diagrams(a, b, cfg_with(4), "ab").pass);
  EXPECT_TRUE(compare_diagrams(a, catalog::as_function(a), cfg_with(4, 0.0), "aa").pass);
}

TEST(Order, LogLogSlope) {
  EXPECT_NEAR(loglog_slope({1, 0.5, 0.25}, {3, 0.75, 0.1875}), 2.0, 1e-12);
  EXPECT_TRUE(std::isnan(loglog_slope({1, 0.5}, {0, 0})));
  EXPECT_THROW(loglog_slope({1}, {1}), Error);
}

TEST(Order, GrowthSlopes) {
  const OrderEstimate rk = estimate_growth_order(Method::Rk4);
  EXPECT_NEAR(rk.slope, 4.0, 0.3);
  const OrderEstimate eu = estimate_growth_order(Method::Euler);
  EXPECT_NEAR(eu.slope, 1.0, 0.2);
  for (std::size_t i = 0; i < rk.errors.size(); ++i) EXPECT_LT(rk.errors[i], eu.errors[i]);
  EXPECT_TRUE(check_order_of_accuracy(Method::Rk4).pass);
  EXPECT_TRUE(check_order_of_accuracy(Method::Euler).pass);
}

TEST(Suite, DeterministicAndPassing) {
  SampleConfig cfg = cfg_with(4);
  cfg.step_sizes = {StepSize(0.1)};
  const auto a = run_suite(cfg);
  const auto b = run_suite(cfg);
  EXPECT_EQ(a, b);
  for (const auto& r : a) EXPECT_TRUE(r.pass) << format_report(r);
}
