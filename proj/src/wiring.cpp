#include "crk/wiring.hpp"

#include <cctype>
#include <charconv>
#include <cmath>

#include "crk/errors.hpp"

namespace crk {

namespace {

RoutingSource source_from_text(std::string_view text, std::size_t offset) {
  const auto colon = text.find(':');
  if (colon == std::string_view::npos) throw ParseError("routing source needs 'kind:value'", offset);
  const std::string_view kind = text.substr(0, colon);
  const std::string_view arg = text.substr(colon + 1);
  const std::size_t arg_offset = offset + colon + 1;
  if (arg.empty()) throw ParseError("missing routing source argument", arg_offset);
  if (kind == "const") {
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(arg.data(), arg.data() + arg.size(), value);
    if (ec != std::errc{} || ptr != arg.data() + arg.size() || !std::isfinite(value)) {
      throw ParseError("bad constant '" + std::string(arg) + "'", arg_offset);
    }
    return RoutingSource::constant(value);
  }
  std::size_t index = 0;
  auto [ptr, ec] = std::from_chars(arg.data(), arg.data() + arg.size(), index);
  if (ec != std::errc{} || ptr != arg.data() + arg.size()) {
    throw ParseError("bad port index '" + std::string(arg) + "'", arg_offset);
  }
  if (kind == "outer") return RoutingSource::outer_input(index);
  if (kind == "inner") return RoutingSource::inner_output(index);
  throw ParseError("unknown routing source kind '" + std::string(kind) + "'", offset);
}

class TableParser {
 public:
  explicit TableParser(std::string_view text) : text_(text) {}

  RoutingTable parse() {
    RoutingTable table;
    expect_word("in");
    table.in_sources = parse_list();
    expect_word("out");
    table.out_sources = parse_list();
    skip_space();
    if (pos_ != text_.size()) throw ParseError("trailing characters in routing table", pos_);
    return table;
  }

 private:
  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  void expect(char c) {
    skip_space();
    if (pos_ >= text_.size() || text_[pos_] != c) throw ParseError(std::string("expected '") + c + "'", pos_);
    ++pos_;
  }

  void expect_word(std::string_view word) {
    skip_space();
    if (text_.substr(pos_, word.size()) != word) {
      throw ParseError("expected '" + std::string(word) + "'", pos_);
    }
    pos_ += word.size();
    expect('=');
  }

  std::vector<RoutingSource> parse_list() {
    expect('[');
    std::vector<RoutingSource> out;
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == ']') {
      ++pos_;
      return out;
    }
    while (true) {
      skip_space();
      const std::size_t start = pos_;
      while (pos_ < text_.size() && text_[pos_] != ',' && text_[pos_] != ']' &&
             !std::isspace(static_cast<unsigned char>(text_[pos_]))) {
        ++pos_;
      }
      out.push_back(source_from_text(text_.substr(start, pos_ - start), start));
      skip_space();
      if (pos_ >= text_.size()) throw ParseError("unterminated source list", pos_);
      if (text_[pos_] == ']') {
        ++pos_;
        return out;
      }
      expect(',');
    }
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

std::string list_to_string(const std::vector<RoutingSource>& sources) {
  std::string out = "[";
  for (std::size_t i = 0; i < sources.size(); ++i) {
    if (i) out += ", ";
    out += to_string(sources[i]);
  }
  return out + "]";
}

void require_dim(const Vec& v, std::size_t expected, const char* what) {
  if (v.dim() != expected) throw DimensionError(what, expected, v.dim());
}

}  // namespace

std::string to_string(const RoutingSource& source) {
  switch (source.kind) {
    case RoutingSource::Kind::OuterInput:
      return "outer:" + std::to_string(source.index);
    case RoutingSource::Kind::InnerOutput:
      return "inner:" + std::to_string(source.index);
    case RoutingSource::Kind::Constant:
      return "const:" + format_real(source.value);
  }
  return {};
}

std::string to_string(const RoutingTable& table) {
  return "in=" + list_to_string(table.in_sources) + " out=" + list_to_string(table.out_sources);
}

RoutingSource parse_routing_source(std::string_view text) { return source_from_text(text, 0); }

RoutingTable parse_routing_table(std::string_view text) { return TableParser(text).parse(); }

void validate_routing(const RoutingTable& table, Interface inner, Interface outer) {
  if (table.in_sources.size() != inner.in_dim()) {
    throw RoutingError("routing in-list has " + std::to_string(table.in_sources.size()) +
                           " entries, inner input dimension is " + std::to_string(inner.in_dim()),
                       table.in_sources.size());
  }
  if (table.out_sources.size() != outer.out_dim()) {
    throw RoutingError("routing out-list has " + std::to_string(table.out_sources.size()) +
                           " entries, outer output dimension is " + std::to_string(outer.out_dim()),
                       table.out_sources.size());
  }
  for (std::size_t k = 0; k < table.in_sources.size(); ++k) {
    const auto& src = table.in_sources[k];
    if (src.kind == RoutingSource::Kind::OuterInput && src.index >= outer.in_dim()) {
      throw RoutingError("in-coordinate " + std::to_string(k) + ": outer input index " +
                             std::to_string(src.index) + " out of range (outer input dimension " +
                             std::to_string(outer.in_dim()) + ")",
                         k);
    }
    if (src.kind == RoutingSource::Kind::InnerOutput && src.index >= inner.out_dim()) {
      throw RoutingError("in-coordinate " + std::to_string(k) + ": inner output index " +
                             std::to_string(src.index) + " out of range (inner output dimension " +
                             std::to_string(inner.out_dim()) + ")",
                         k);
    }
  }
  for (std::size_t k = 0; k < table.out_sources.size(); ++k) {
    const auto& src = table.out_sources[k];
    if (src.kind == RoutingSource::Kind::OuterInput) {
      throw RoutingError("out-coordinate " + std::to_string(k) + ": outputs cannot read outer inputs", k);
    }
    if (src.kind == RoutingSource::Kind::InnerOutput && src.index >= inner.out_dim()) {
      throw RoutingError("out-coordinate " + std::to_string(k) + ": inner output index " +
                             std::to_string(src.index) + " out of range (inner output dimension " +
                             std::to_string(inner.out_dim()) + ")",
                         k);
    }
  }
}

CompiledRouting compile_routing(const RoutingTable& table, Interface inner, Interface outer) {
  validate_routing(table, inner, outer);
  auto in_sources = table.in_sources;
  auto out_sources = table.out_sources;
  WiringInFn in = [in_sources](const Vec& c, const Vec& b) {
    std::vector<double> a(in_sources.size());
    for (std::size_t k = 0; k < a.size(); ++k) {
      const auto& src = in_sources[k];
      switch (src.kind) {
        case RoutingSource::Kind::OuterInput: a[k] = c[src.index]; break;
        case RoutingSource::Kind::InnerOutput: a[k] = b[src.index]; break;
        case RoutingSource::Kind::Constant: a[k] = src.value; break;
      }
    }
    return Vec(std::move(a));
  };
  WiringOutFn out = [out_sources](const Vec& b) {
    std::vector<double> d(out_sources.size());
    for (std::size_t k = 0; k < d.size(); ++k) {
      const auto& src = out_sources[k];
      d[k] = src.kind == RoutingSource::Kind::InnerOutput ? b[src.index] : src.value;
    }
    return Vec(std::move(d));
  };
  return {std::move(in), std::move(out)};
}

WiringDiagram::WiringDiagram(Interface inner, Interface outer, WiringInFn in, WiringOutFn out)
    : inner_(inner), outer_(outer), in_(std::move(in)), out_(std::move(out)) {}

WiringDiagram::WiringDiagram(Interface inner, Interface outer, RoutingTable table)
    : inner_(inner), outer_(outer) {
  auto compiled = compile_routing(table, inner, outer);
  in_ = std::move(compiled.in);
  out_ = std::move(compiled.out);
  routing_ = std::move(table);
}

Vec WiringDiagram::in_map(const Vec& outer_input, const Vec& inner_output) const {
  require_dim(outer_input, outer_.in_dim(), "wiring in-map outer input");
  require_dim(inner_output, inner_.out_dim(), "wiring in-map inner output");
  Vec a = in_(outer_input, inner_output);
  require_dim(a, inner_.in_dim(), "wiring in-map result");
  return a;
}

Vec WiringDiagram::out_map(const Vec& inner_output) const {
  require_dim(inner_output, inner_.out_dim(), "wiring out-map inner output");
  Vec d = out_(inner_output);
  require_dim(d, outer_.out_dim(), "wiring out-map result");
  return d;
}

WiringDiagram wiring_identity(Interface iface) {
  RoutingTable table;
  for (std::size_t i = 0; i < iface.in_dim(); ++i) table.in_sources.push_back(RoutingSource::outer_input(i));
  for (std::size_t j = 0; j < iface.out_dim(); ++j) table.out_sources.push_back(RoutingSource::inner_output(j));
  return WiringDiagram(iface, iface, std::move(table));
}

WiringDiagram wiring_compose(const WiringDiagram& psi, const WiringDiagram& phi) {
  if (!(phi.outer() == psi.inner())) {
    throw InterfaceMismatch("wiring_compose: outer interface " + to_string(phi.outer()) +
                            " of the first diagram differs from inner interface " + to_string(psi.inner()) +
                            " of the second");
  }
  if (phi.routing() && psi.routing()) {
    const auto& p = *phi.routing();
    const auto& q = *psi.routing();
    RoutingTable table;
    for (const auto& src : p.in_sources) {
      if (src.kind != RoutingSource::Kind::OuterInput) {
        table.in_sources.push_back(src);
        continue;
      }
      // Coordinate of C, produced by psi_in from E and D = phi_out(B).
      const auto& via = q.in_sources[src.index];
      if (via.kind == RoutingSource::Kind::InnerOutput) {
        table.in_sources.push_back(p.out_sources[via.index]);
      } else {
        table.in_sources.push_back(via);
      }
    }
    for (const auto& src : q.out_sources) {
      table.out_sources.push_back(src.kind == RoutingSource::Kind::InnerOutput ? p.out_sources[src.index] : src);
    }
    return WiringDiagram(phi.inner(), psi.outer(), std::move(table));
  }
  return WiringDiagram(
      phi.inner(), psi.outer(),
      [phi, psi](const Vec& e, const Vec& b) { return phi.in_map(psi.in_map(e, phi.out_map(b)), b); },
      [phi, psi](const Vec& b) { return psi.out_map(phi.out_map(b)); });
}

WiringDiagram wiring_tensor(const WiringDiagram& first, const WiringDiagram& second) {
  const Interface inner = interface_tensor(first.inner(), second.inner());
  const Interface outer = interface_tensor(first.outer(), second.outer());
  if (first.routing() && second.routing()) {
    const std::size_t c_shift = first.outer().in_dim();
    const std::size_t b_shift = first.inner().out_dim();
    auto shifted = [&](RoutingSource src) {
      if (src.kind == RoutingSource::Kind::OuterInput) src.index += c_shift;
      if (src.kind == RoutingSource::Kind::InnerOutput) src.index += b_shift;
      return src;
    };
    RoutingTable table = *first.routing();
    for (const auto& src : second.routing()->in_sources) table.in_sources.push_back(shifted(src));
    for (const auto& src : second.routing()->out_sources) table.out_sources.push_back(shifted(src));
    return WiringDiagram(inner, outer, std::move(table));
  }
  const std::size_t c1 = first.outer().in_dim();
  const std::size_t b1 = first.inner().out_dim();
  return WiringDiagram(
      inner, outer,
      [first, second, c1, b1](const Vec& c, const Vec& b) {
        auto [cx, cy] = split(c, c1);
        auto [bx, by] = split(b, b1);
        return concat(first.in_map(cx, bx), second.in_map(cy, by));
      },
      [first, second, b1](const Vec& b) {
        auto [bx, by] = split(b, b1);
        return concat(first.out_map(bx), second.out_map(by));
      });
}

namespace {

template <typename S>
S apply_one_step(const WiringDiagram& phi, const S& x) {
  if (!(x.iface() == phi.inner())) {
    throw InterfaceMismatch("apply_wiring: system '" + x.name() + "' has interface " + to_string(x.iface()) +
                            ", diagram expects " + to_string(phi.inner()));
  }
  return S(
      phi.outer(), x.state_dim(),
      [phi, x](const Vec& c, const Vec& s) { return x.update(phi.in_map(c, x.readout(s)), s); },
      [phi, x](const Vec& s) { return phi.out_map(x.readout(s)); }, "wired(" + x.name() + ")");
}

}  // namespace

ContinuousSystem apply_wiring(const WiringDiagram& phi, const ContinuousSystem& x) {
  return apply_one_step(phi, x);
}

DiscreteSystem apply_wiring(const WiringDiagram& phi, const DiscreteSystem& x) { return apply_one_step(phi, x); }

FourStepSystem apply_wiring(const WiringDiagram& phi, const FourStepSystem& x) {
  if (!(x.iface() == phi.inner())) {
    throw InterfaceMismatch("apply_wiring: system '" + x.name() + "' has interface " + to_string(x.iface()) +
                            ", diagram expects " + to_string(phi.inner()));
  }
  return FourStepSystem(
      phi.outer(), x.carriers(),
      [phi, x](const Vec& c, const PhasedState& s) { return x.update(phi.in_map(c, x.readout(s)), s); },
      [phi, x](const PhasedState& s) { return phi.out_map(x.readout(s)); }, "wired(" + x.name() + ")");
}

}  // namespace crk
