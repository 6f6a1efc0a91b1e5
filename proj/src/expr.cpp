#include "crk/expr.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>

#include "crk/errors.hpp"

namespace crk {

Expr number(double v) {
  Expr e;
  e.value = v;
  return e;
}

Expr state_var(std::size_t i) {
  Expr e;
  e.kind = Expr::Kind::State;
  e.index = i;
  return e;
}

Expr input_var(std::size_t i) {
  Expr e;
  e.kind = Expr::Kind::Input;
  e.index = i;
  return e;
}

namespace {

Expr node(Expr::Kind kind, std::vector<Expr> args) {
  Expr e;
  e.kind = kind;
  e.args = std::move(args);
  return e;
}

struct FuncName {
  std::string_view name;
  Func func;
};

constexpr FuncName kFuncs[] = {
    {"sin", Func::Sin}, {"cos", Func::Cos}, {"exp", Func::Exp}, {"tanh", Func::Tanh}};

std::string_view func_name(Func f) {
  for (const auto& entry : kFuncs) {
    if (entry.func == f) return entry.name;
  }
  return "?";
}

class Parser {
 public:
  Parser(std::string_view text, std::size_t in_dim, std::size_t state_dim)
      : text_(text), in_dim_(in_dim), state_dim_(state_dim) {}

  Expr parse() {
    Expr e = expr();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, pos_); }
  [[noreturn]] void fail_at(const std::string& what, std::size_t at) const { throw ParseError(what, at); }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) {
      fail(pos_ < text_.size() ? "expected '" + std::string(1, c) + "'"
                               : "expected '" + std::string(1, c) + "' before end of input");
    }
  }

  Expr expr() {
    Expr lhs = term();
    for (;;) {
      if (accept('+')) {
        lhs = node(Expr::Kind::Add, {std::move(lhs), term()});
      } else if (accept('-')) {
        lhs = node(Expr::Kind::Sub, {std::move(lhs), term()});
      } else {
        return lhs;
      }
    }
  }

  Expr term() {
    Expr lhs = unary();
    for (;;) {
      if (accept('*')) {
        lhs = node(Expr::Kind::Mul, {std::move(lhs), unary()});
      } else if (accept('/')) {
        lhs = node(Expr::Kind::Div, {std::move(lhs), unary()});
      } else {
        return lhs;
      }
    }
  }

  Expr unary() {
    if (accept('-')) return node(Expr::Kind::Neg, {unary()});
    return primary();
  }

  Expr primary() {
    skip_ws();
    if (pos_ == text_.size()) fail("unexpected end of input");
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      Expr inner = expr();
      expect(')');
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return literal();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return identifier();
    fail("unexpected '" + std::string(1, c) + "'");
  }

  Expr literal() {
    const std::size_t start = pos_;
    double v = 0.0;
    const char* first = text_.data() + pos_;
    const char* last = text_.data() + text_.size();
    auto [ptr, ec] = std::from_chars(first, last, v, std::chars_format::general);
    if (ec == std::errc::result_out_of_range) fail_at("number out of range", start);
    if (ec != std::errc()) fail_at("malformed number", start);
    pos_ += static_cast<std::size_t>(ptr - first);
    if (!std::isfinite(v)) fail_at("number out of range", start);
    return number(v);
  }

  Expr identifier() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
      ++pos_;
    }
    const std::string_view word = text_.substr(start, pos_ - start);
    for (const auto& entry : kFuncs) {
      if (word == entry.name) {
        expect('(');
        Expr arg = expr();
        expect(')');
        Expr call = node(Expr::Kind::Call, {std::move(arg)});
        call.func = entry.func;
        return call;
      }
    }
    if (word.size() >= 2 && (word[0] == 's' || word[0] == 'a') &&
        std::all_of(word.begin() + 1, word.end(), [](char d) { return std::isdigit(static_cast<unsigned char>(d)); })) {
      std::size_t index = 0;
      auto [ptr, ec] = std::from_chars(word.data() + 1, word.data() + word.size(), index);
      const bool is_state = word[0] == 's';
      const std::size_t bound = is_state ? state_dim_ : in_dim_;
      if (ec != std::errc() || ptr != word.data() + word.size() || index >= bound) {
        fail_at("variable '" + std::string(word) + "' out of range (" + (is_state ? "state" : "input") +
                    " dimension " + std::to_string(bound) + ")",
                start);
      }
      return is_state ? state_var(index) : input_var(index);
    }
    fail_at("unknown identifier '" + std::string(word) + "'", start);
  }

  std::string_view text_;
  std::size_t in_dim_;
  std::size_t state_dim_;
  std::size_t pos_ = 0;
};

double apply_func(Func f, double x) {
  switch (f) {
    case Func::Sin:
      return std::sin(x);
    case Func::Cos:
      return std::cos(x);
    case Func::Exp:
      return std::exp(x);
    case Func::Tanh:
      return std::tanh(x);
  }
  return x;
}

std::size_t extent(const Expr& e, Expr::Kind kind) {
  std::size_t n = e.kind == kind ? e.index + 1 : 0;
  for (const auto& arg : e.args) n = std::max(n, extent(arg, kind));
  return n;
}

}  // namespace

Expr parse_expression(std::string_view text, std::size_t in_dim, std::size_t state_dim) {
  return Parser(text, in_dim, state_dim).parse();
}

double eval_expression(const Expr& e, const Vec& inputs, const Vec& state) {
  switch (e.kind) {
    case Expr::Kind::Number:
      return e.value;
    case Expr::Kind::State:
      if (e.index >= state.dim()) throw DimensionError("expression state variable", e.index + 1, state.dim());
      return state[e.index];
    case Expr::Kind::Input:
      if (e.index >= inputs.dim()) throw DimensionError("expression input variable", e.index + 1, inputs.dim());
      return inputs[e.index];
    case Expr::Kind::Neg:
      return -eval_expression(e.args[0], inputs, state);
    case Expr::Kind::Add:
      return eval_expression(e.args[0], inputs, state) + eval_expression(e.args[1], inputs, state);
    case Expr::Kind::Sub:
      return eval_expression(e.args[0], inputs, state) - eval_expression(e.args[1], inputs, state);
    case Expr::Kind::Mul:
      return eval_expression(e.args[0], inputs, state) * eval_expression(e.args[1], inputs, state);
    case Expr::Kind::Div: {
      const double num = eval_expression(e.args[0], inputs, state);
      const double den = eval_expression(e.args[1], inputs, state);
      if (den == 0.0) throw EvalError("division by zero in " + to_string(e));
      return num / den;
    }
    case Expr::Kind::Call:
      return apply_func(e.func, eval_expression(e.args[0], inputs, state));
  }
  throw EvalError("malformed expression node");
}

std::string to_string(const Expr& e) {
  switch (e.kind) {
    case Expr::Kind::Number:
      return format_real(e.value);
    case Expr::Kind::State:
      return "s" + std::to_string(e.index);
    case Expr::Kind::Input:
      return "a" + std::to_string(e.index);
    case Expr::Kind::Neg:
      return "(-" + to_string(e.args[0]) + ")";
    case Expr::Kind::Add:
      return "(" + to_string(e.args[0]) + " + " + to_string(e.args[1]) + ")";
    case Expr::Kind::Sub:
      return "(" + to_string(e.args[0]) + " - " + to_string(e.args[1]) + ")";
    case Expr::Kind::Mul:
      return "(" + to_string(e.args[0]) + " * " + to_string(e.args[1]) + ")";
    case Expr::Kind::Div:
      return "(" + to_string(e.args[0]) + " / " + to_string(e.args[1]) + ")";
    case Expr::Kind::Call:
      return std::string(func_name(e.func)) + "(" + to_string(e.args[0]) + ")";
  }
  return "?";
}

std::size_t state_extent(const Expr& e) { return extent(e, Expr::Kind::State); }
std::size_t input_extent(const Expr& e) { return extent(e, Expr::Kind::Input); }

}  // namespace crk
