#include "crk/network.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "crk/errors.hpp"

namespace crk {

using json = nlohmann::json;

Interface NetworkSpec::inner() const {
  std::size_t in = 0, out = 0;
  for (const auto& b : boxes) {
    in += b.in_dim;
    out += b.out_dim;
  }
  return Interface{in, out};
}

std::size_t NetworkSpec::state_dim() const {
  std::size_t n = 0;
  for (const auto& b : boxes) n += b.state_dim;
  return n;
}

Vec NetworkSpec::init() const {
  std::vector<Vec> parts;
  for (const auto& b : boxes) parts.push_back(b.init);
  return concat(parts);
}

namespace {

[[noreturn]] void schema(const std::string& field, const std::string& what) { throw SpecError(field + ": " + what); }

const json& member(const json& obj, const std::string& key, const std::string& field) {
  auto it = obj.find(key);
  if (it == obj.end()) schema(field + "." + key, "missing");
  return *it;
}

std::size_t as_size(const json& v, const std::string& field) {
  if (!v.is_number_integer() || v.get<long long>() < 0) schema(field, "expected a non-negative integer");
  return v.get<std::size_t>();
}

const json& as_array(const json& v, const std::string& field) {
  if (!v.is_array()) schema(field, "expected a list");
  return v;
}

std::vector<Expr> expressions(const json& list, const std::string& field, std::size_t in_dim, std::size_t state_dim) {
  std::vector<Expr> out;
  for (std::size_t k = 0; k < as_array(list, field).size(); ++k) {
    const std::string item = field + "[" + std::to_string(k) + "]";
    if (!list[k].is_string()) schema(item, "expected an expression string");
    try {
      out.push_back(parse_expression(list[k].get<std::string>(), in_dim, state_dim));
    } catch (const ParseError& e) {
      schema(item, e.what());
    }
  }
  return out;
}

BoxSpec parse_box(const json& j, const std::string& field) {
  if (!j.is_object()) schema(field, "expected an object");
  BoxSpec box;
  const json& name = member(j, "name", field);
  if (!name.is_string() || name.get<std::string>().empty()) schema(field + ".name", "expected a non-empty string");
  box.name = name.get<std::string>();
  box.in_dim = as_size(member(j, "in_dim", field), field + ".in_dim");

  const json& upd = as_array(member(j, "upd", field), field + ".upd");
  box.state_dim = upd.size();
  if (j.contains("state_dim") && as_size(j["state_dim"], field + ".state_dim") != box.state_dim) {
    schema(field + ".state_dim", "does not match the " + std::to_string(box.state_dim) + " upd expressions");
  }
  box.upd_exprs = expressions(upd, field + ".upd", box.in_dim, box.state_dim);

  if (j.contains("rdt")) {
    box.rdt_exprs = expressions(j["rdt"], field + ".rdt", 0, box.state_dim);
  } else {
    for (std::size_t i = 0; i < box.state_dim; ++i) box.rdt_exprs.push_back(state_var(i));
  }
  box.out_dim = box.rdt_exprs.size();
  if (j.contains("out_dim") && as_size(j["out_dim"], field + ".out_dim") != box.out_dim) {
    schema(field + ".out_dim", "does not match the " + std::to_string(box.out_dim) + " rdt expressions");
  }

  const json& init = as_array(member(j, "init", field), field + ".init");
  if (init.size() != box.state_dim) {
    schema(field + ".init", "expected " + std::to_string(box.state_dim) + " values, got " + std::to_string(init.size()));
  }
  std::vector<double> values;
  for (std::size_t k = 0; k < init.size(); ++k) {
    if (!init[k].is_number()) schema(field + ".init[" + std::to_string(k) + "]", "expected a number");
    values.push_back(init[k].get<double>());
  }
  try {
    box.init = Vec(std::move(values));
  } catch (const NonFiniteError& e) {
    schema(field + ".init", e.what());
  }
  return box;
}

std::vector<RoutingSource> sources(const json& list, const std::string& field) {
  std::vector<RoutingSource> out;
  for (std::size_t k = 0; k < as_array(list, field).size(); ++k) {
    const std::string item = field + "[" + std::to_string(k) + "]";
    if (!list[k].is_string()) schema(item, "expected a routing source string");
    try {
      out.push_back(parse_routing_source(list[k].get<std::string>()));
    } catch (const ParseError& e) {
      schema(item, e.what());
    }
  }
  return out;
}

RoutingTable parse_routing(const json& j) {
  if (j.is_string()) {
    try {
      return parse_routing_table(j.get<std::string>());
    } catch (const ParseError& e) {
      schema("routing", e.what());
    }
  }
  if (!j.is_object()) schema("routing", "expected an object or a table string");
  RoutingTable table;
  table.in_sources = sources(member(j, "in", "routing"), "routing.in");
  table.out_sources = sources(member(j, "out", "routing"), "routing.out");
  return table;
}

}  // namespace

NetworkSpec parse_network(std::string_view json_text) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw SpecError(std::string("network file is not valid JSON: ") + e.what());
  }
  if (!root.is_object()) schema("network", "expected an object");

  NetworkSpec spec;
  const json& boxes = as_array(member(root, "boxes", "network"), "boxes");
  if (boxes.empty()) schema("boxes", "at least one box is required");
  std::set<std::string> names;
  for (std::size_t i = 0; i < boxes.size(); ++i) {
    const std::string field = "boxes[" + std::to_string(i) + "]";
    BoxSpec box = parse_box(boxes[i], field);
    if (!names.insert(box.name).second) schema(field + ".name", "duplicate box name '" + box.name + "'");
    spec.boxes.push_back(std::move(box));
  }

  const json& outer = member(root, "outer", "network");
  if (!outer.is_object()) schema("outer", "expected an object");
  spec.outer = Interface{as_size(member(outer, "in_dim", "outer"), "outer.in_dim"),
                         as_size(member(outer, "out_dim", "outer"), "outer.out_dim")};

  spec.routing = parse_routing(member(root, "routing", "network"));
  try {
    validate_routing(spec.routing, spec.inner(), spec.outer);
  } catch (const RoutingError& e) {
    schema("routing", e.what());
  }
  return spec;
}

NetworkSpec load_network(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open network file '" + path.string() + "'");
  std::ostringstream text;
  text << in.rdbuf();
  if (in.bad()) throw IoError("cannot read network file '" + path.string() + "'");
  return parse_network(text.str());
}

ContinuousSystem build_box(const BoxSpec& box) {
  auto eval_all = [](const std::vector<Expr>& exprs, const Vec& a, const Vec& s) {
    std::vector<double> out;
    out.reserve(exprs.size());
    for (const auto& e : exprs) out.push_back(eval_expression(e, a, s));
    return Vec(std::move(out));
  };
  return ContinuousSystem(
      Interface{box.in_dim, box.out_dim}, box.state_dim,
      [upd = box.upd_exprs, eval_all](const Vec& a, const Vec& s) { return eval_all(upd, a, s); },
      [rdt = box.rdt_exprs, eval_all](const Vec& s) { return eval_all(rdt, Vec{}, s); }, box.name);
}

Network build_network(const NetworkSpec& spec) {
  std::vector<ContinuousSystem> boxes;
  for (const auto& b : spec.boxes) boxes.push_back(build_box(b));
  ContinuousSystem inner = boxes.front();
  for (std::size_t i = 1; i < boxes.size(); ++i) inner = cs_tensor(inner, boxes[i]);
  WiringDiagram wiring(spec.inner(), spec.outer, spec.routing);
  return Network{std::move(boxes), std::move(inner), std::move(wiring), spec.init()};
}

}  // namespace crk
