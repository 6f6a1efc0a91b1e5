#pragma once

// Built-in systems and wiring diagrams exercised by the law suite.

#include <cstdint>
#include <string>
#include <vector>

#include "crk/systems.hpp"
#include "crk/wiring.hpp"

namespace crk::catalog {

struct NamedWiring {
  std::string name;
  WiringDiagram diagram;
};

// ds/dt = s, readout s; interface (0,1).
ContinuousSystem growth();
// ds/dt = -s/2 + a, readout s; interface (1,1).
ContinuousSystem linear_1d();
// ds/dt = M s + N a with a rotation-damping M, readout C s; interface (2,2).
ContinuousSystem linear_2d();
// Position box ds/dt = a and velocity box dv/dt = -a, tensored; interface (2,2).
ContinuousSystem harmonic_split();
// Prey dx/dt = x (1 - y/2) and predator dy/dt = y (x/4 - 3/4), each reading the
// other through its input port; interface (2,2).
ContinuousSystem lotka_volterra_split();
// x box dx/dt = a, y box dy/dt = (1 - a^2) y - a; interface (2,2).
ContinuousSystem van_der_pol_split();

std::vector<ContinuousSystem> systems();

// Diagrams with the given inner interface: identity, closed feedback loop,
// mixed outer/feedback/constant routing, a seeded random routing and a
// nonlinear function-valued diagram.
std::vector<NamedWiring> wirings(Interface inner, std::uint64_t seed);

// Random routing table diagram with the given inner and outer interfaces.
WiringDiagram random_routing(Interface inner, Interface outer, std::uint64_t seed);
// Nonlinear function-valued diagram with the given interfaces.
WiringDiagram smooth_function_wiring(Interface inner, Interface outer);
// Same maps as `d`, with the routing table dropped.
WiringDiagram as_function(const WiringDiagram& d);

}  // namespace crk::catalog
