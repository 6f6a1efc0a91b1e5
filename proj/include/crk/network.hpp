#pragma once

// Network description files: a list of expression-defined boxes, tensored in
// order, followed by one routing diagram onto an outer interface.
//
//   {
//     "boxes": [
//       {"name": "pos", "in_dim": 1, "upd": ["a0"], "rdt": ["s0"], "init": [1]},
//       {"name": "vel", "in_dim": 1, "upd": ["-a0"], "init": [0]}
//     ],
//     "outer": {"in_dim": 0, "out_dim": 2},
//     "routing": {"in": ["inner:1", "inner:0"], "out": ["inner:0", "inner:1"]}
//   }
//
// state_dim and out_dim may be given explicitly; they default to the lengths
// of `upd` and `rdt`. A missing `rdt` reads out the whole state. `routing` may
// also be a single string in the table text form.

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "crk/core.hpp"
#include "crk/expr.hpp"
#include "crk/systems.hpp"
#include "crk/wiring.hpp"

namespace crk {

struct BoxSpec {
  std::string name;
  std::size_t in_dim = 0;
  std::size_t out_dim = 0;
  std::size_t state_dim = 0;
  std::vector<Expr> upd_exprs;
  std::vector<Expr> rdt_exprs;
  Vec init;

  bool operator==(const BoxSpec&) const = default;
};

struct NetworkSpec {
  std::vector<BoxSpec> boxes;
  Interface outer;
  RoutingTable routing;

  // Boxes concatenated in listed order.
  Interface inner() const;
  std::size_t state_dim() const;
  Vec init() const;

  bool operator==(const NetworkSpec&) const = default;
};

// Throws SpecError naming the offending field.
NetworkSpec parse_network(std::string_view json_text);
// Throws IoError if the file cannot be read, otherwise as parse_network.
NetworkSpec load_network(const std::filesystem::path& path);

ContinuousSystem build_box(const BoxSpec& box);

struct Network {
  std::vector<ContinuousSystem> boxes;
  ContinuousSystem inner;  // left fold of cs_tensor over boxes
  WiringDiagram wiring;
  Vec init;
};

Network build_network(const NetworkSpec& spec);

}  // namespace crk
