#pragma once

// Wiring diagrams phi : (A,B) -> (C,D) between box interfaces.
//
// A diagram is a pair of maps
//   phi_in  : C x B -> A    (feeds the inner box from outer inputs and the
//                            inner box's own outputs; the latter is feedback)
//   phi_out : B -> D
// Diagrams are either opaque functions or routing tables. A routing table
// copies each target coordinate from an outer input, an inner output or a
// constant; routing diagrams compose and tensor symbolically and have a
// canonical text form.

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "crk/core.hpp"
#include "crk/systems.hpp"

namespace crk {

struct RoutingSource {
  enum class Kind { OuterInput, InnerOutput, Constant };

  Kind kind = Kind::Constant;
  std::size_t index = 0;  // unused for constants
  double value = 0.0;     // used only by constants

  static RoutingSource outer_input(std::size_t i) { return {Kind::OuterInput, i, 0.0}; }
  static RoutingSource inner_output(std::size_t j) { return {Kind::InnerOutput, j, 0.0}; }
  static RoutingSource constant(double c) { return {Kind::Constant, 0, c}; }

  friend bool operator==(const RoutingSource&, const RoutingSource&) = default;
};

struct RoutingTable {
  std::vector<RoutingSource> in_sources;   // one per coordinate of A
  std::vector<RoutingSource> out_sources;  // one per coordinate of D; no OuterInput

  friend bool operator==(const RoutingTable&, const RoutingTable&) = default;
};

// Canonical text forms: `outer:3`, `inner:0`, `const:0.5`; a table is
// `in=[src, ...] out=[src, ...]`.
std::string to_string(const RoutingSource& source);
std::string to_string(const RoutingTable& table);
// Throws ParseError (with character offset) on malformed text.
RoutingSource parse_routing_source(std::string_view text);
RoutingTable parse_routing_table(std::string_view text);

// Throws RoutingError naming the offending coordinate when the table's
// lengths or indices do not fit the interfaces.
void validate_routing(const RoutingTable& table, Interface inner, Interface outer);

using WiringInFn = std::function<Vec(const Vec& outer_input, const Vec& inner_output)>;
using WiringOutFn = std::function<Vec(const Vec& inner_output)>;

struct CompiledRouting {
  WiringInFn in;
  WiringOutFn out;
};

CompiledRouting compile_routing(const RoutingTable& table, Interface inner, Interface outer);

class WiringDiagram {
 public:
  // Function-valued diagram.
  WiringDiagram(Interface inner, Interface outer, WiringInFn in, WiringOutFn out);
  // Routing diagram; validates the table.
  WiringDiagram(Interface inner, Interface outer, RoutingTable table);

  const Interface& inner() const noexcept { return inner_; }
  const Interface& outer() const noexcept { return outer_; }
  const std::optional<RoutingTable>& routing() const noexcept { return routing_; }

  // Dimension-checked evaluation of phi_in and phi_out.
  Vec in_map(const Vec& outer_input, const Vec& inner_output) const;
  Vec out_map(const Vec& inner_output) const;

 private:
  Interface inner_;
  Interface outer_;
  WiringInFn in_;
  WiringOutFn out_;
  std::optional<RoutingTable> routing_;
};

// phi_in(c, b) = c, phi_out(b) = b, as a routing diagram.
WiringDiagram wiring_identity(Interface iface);

// psi after phi:
//   (psi o phi)_in(e, b) = phi_in(psi_in(e, phi_out(b)), b)
//   (psi o phi)_out      = psi_out o phi_out
// Throws InterfaceMismatch unless phi.outer == psi.inner.
WiringDiagram wiring_compose(const WiringDiagram& psi, const WiringDiagram& phi);

WiringDiagram wiring_tensor(const WiringDiagram& first, const WiringDiagram& second);

// Wires a box into the outer interface:
//   update'(c, s) = update(phi_in(c, readout(s)), s)
//   readout'(s)   = phi_out(readout(s))
// Throws InterfaceMismatch unless x.iface() == phi.inner(). For four-step
// systems the phase is left untouched.
ContinuousSystem apply_wiring(const WiringDiagram& phi, const ContinuousSystem& x);
DiscreteSystem apply_wiring(const WiringDiagram& phi, const DiscreteSystem& x);
FourStepSystem apply_wiring(const WiringDiagram& phi, const FourStepSystem& x);

}  // namespace crk
