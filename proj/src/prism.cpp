// Restricted PRISM: constants, a single module with bounded integer (or
// bool) variables, guarded probabilistic commands and label definitions.

#include <algorithm>
#include <cctype>
#include <cmath>
#include <map>
#include <memory>
#include <optional>

#include "omegarl/error.hpp"
#include "omegarl/mdp.hpp"
#include "text_util.hpp"

namespace omegarl {
namespace {

enum class Tok { Ident, Number, String, Sym, End };

struct Token {
  Tok kind;
  std::string text;
  std::size_t line;
  std::size_t col;
};

std::vector<Token> lex(std::string_view src) {
  std::vector<Token> out;
  std::size_t i = 0, line = 1, col = 1;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n && i < src.size(); ++k, ++i) {
      if (src[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };
  static const char* two_char[] = {"->", "=>", "<=", ">=", "!=", "..", "<>"};
  while (i < src.size()) {
    char c = src[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    if (c == '/' && i + 1 < src.size() && src[i + 1] == '/') {
      while (i < src.size() && src[i] != '\n') advance(1);
      continue;
    }
    std::size_t l = line, cl = col;
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < src.size() && (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_')) ++j;
      out.push_back({Tok::Ident, std::string(src.substr(i, j - i)), l, cl});
      advance(j - i);
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) ||
        (c == '.' && i + 1 < src.size() && std::isdigit(static_cast<unsigned char>(src[i + 1])))) {
      std::size_t j = i;
      while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
      // "0..3" is a range, not a decimal point
      if (j < src.size() && src[j] == '.' && !(j + 1 < src.size() && src[j + 1] == '.')) {
        ++j;
        while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
      }
      if (j < src.size() && (src[j] == 'e' || src[j] == 'E')) {
        std::size_t k = j + 1;
        if (k < src.size() && (src[k] == '+' || src[k] == '-')) ++k;
        if (k < src.size() && std::isdigit(static_cast<unsigned char>(src[k]))) {
          j = k;
          while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
        }
      }
      out.push_back({Tok::Number, std::string(src.substr(i, j - i)), l, cl});
      advance(j - i);
      continue;
    }
    if (c == '"') {
      std::size_t j = i + 1;
      while (j < src.size() && src[j] != '"' && src[j] != '\n') ++j;
      if (j >= src.size() || src[j] != '"') throw ParseError("unterminated string", l, cl);
      out.push_back({Tok::String, std::string(src.substr(i + 1, j - i - 1)), l, cl});
      advance(j - i + 1);
      continue;
    }
    bool matched = false;
    for (const char* op : two_char) {
      if (src.substr(i, 2) == op) {
        out.push_back({Tok::Sym, op, l, cl});
        advance(2);
        matched = true;
        break;
      }
    }
    if (matched) continue;
    if (std::string_view("[](){}:;=<>+-*/&|!?',").find(c) != std::string_view::npos) {
      out.push_back({Tok::Sym, std::string(1, c), l, cl});
      advance(1);
      continue;
    }
    throw ParseError(std::string("unexpected character '") + c + "'", l, cl);
  }
  out.push_back({Tok::End, "", line, col});
  return out;
}

struct Expr {
  enum class Op { Lit, Var, Neg, Not, Add, Sub, Mul, Div, Eq, Ne, Lt, Le, Gt, Ge, And, Or, Implies, Ite, Min, Max, Floor, Ceil, Pow, Mod };
  Op op = Op::Lit;
  double value = 0.0;
  std::size_t var = 0;
  std::vector<Expr> args;
};

using Valuation = std::vector<long long>;

double eval(const Expr& e, const Valuation& v) {
  using Op = Expr::Op;
  auto a = [&](std::size_t i) { return eval(e.args[i], v); };
  switch (e.op) {
    case Op::Lit: return e.value;
    case Op::Var: return static_cast<double>(v[e.var]);
    case Op::Neg: return -a(0);
    case Op::Not: return a(0) != 0.0 ? 0.0 : 1.0;
    case Op::Add: return a(0) + a(1);
    case Op::Sub: return a(0) - a(1);
    case Op::Mul: return a(0) * a(1);
    case Op::Div: return a(0) / a(1);
    case Op::Eq: return a(0) == a(1) ? 1.0 : 0.0;
    case Op::Ne: return a(0) != a(1) ? 1.0 : 0.0;
    case Op::Lt: return a(0) < a(1) ? 1.0 : 0.0;
    case Op::Le: return a(0) <= a(1) ? 1.0 : 0.0;
    case Op::Gt: return a(0) > a(1) ? 1.0 : 0.0;
    case Op::Ge: return a(0) >= a(1) ? 1.0 : 0.0;
    case Op::And: return (a(0) != 0.0 && a(1) != 0.0) ? 1.0 : 0.0;
    case Op::Or: return (a(0) != 0.0 || a(1) != 0.0) ? 1.0 : 0.0;
    case Op::Implies: return (a(0) == 0.0 || a(1) != 0.0) ? 1.0 : 0.0;
    case Op::Ite: return a(0) != 0.0 ? a(1) : a(2);
    case Op::Min: return std::min(a(0), a(1));
    case Op::Max: return std::max(a(0), a(1));
    case Op::Floor: return std::floor(a(0));
    case Op::Ceil: return std::ceil(a(0));
    case Op::Pow: return std::pow(a(0), a(1));
    case Op::Mod: {
      double x = a(0), y = a(1);
      if (y == 0.0) return std::nan("");
      return x - y * std::floor(x / y);
    }
  }
  return 0.0;
}

struct Variable {
  std::string name;
  long long lo, hi, init;
};

struct Assignment {
  std::size_t var;
  Expr value;
};

struct Alternative {
  Expr prob;
  std::vector<Assignment> assigns;
};

struct Command {
  std::string action;
  Expr guard;
  std::vector<Alternative> alts;
  std::size_t line;
};

struct Label {
  std::string name;
  Expr expr;
};

class Parser {
 public:
  Parser(std::string_view src, const ConstantOverrides& overrides) : toks_(lex(src)), overrides_(overrides) {}

  void parse() {
    if (is_ident("mdp")) next();
    bool have_module = false;
    while (peek().kind != Tok::End) {
      if (is_ident("const")) {
        parse_const();
      } else if (is_ident("module")) {
        if (have_module) fail("only one module is supported");
        parse_module();
        have_module = true;
      } else if (is_ident("label")) {
        parse_label();
      } else if (is_ident("dtmc") || is_ident("ctmc") || is_ident("pta") || is_ident("rewards") || is_ident("system")) {
        fail("unsupported PRISM construct '" + peek().text + "'");
      } else {
        fail("unexpected '" + peek().text + "'");
      }
    }
    if (!have_module) fail("missing module");
  }

  std::vector<Variable> vars;
  std::vector<Command> commands;
  std::vector<Label> labels;

 private:
  const Token& peek(std::size_t k = 0) const { return toks_[std::min(pos_ + k, toks_.size() - 1)]; }
  const Token& next() { return toks_[std::min(pos_++, toks_.size() - 1)]; }
  bool is_sym(std::string_view s, std::size_t k = 0) const { return peek(k).kind == Tok::Sym && peek(k).text == s; }
  bool is_ident(std::string_view s) const { return peek().kind == Tok::Ident && peek().text == s; }
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, peek().line, peek().col); }
  void expect_sym(std::string_view s) {
    if (!is_sym(s)) fail("expected '" + std::string(s) + "', got '" + peek().text + "'");
    next();
  }
  std::string expect_ident() {
    if (peek().kind != Tok::Ident) fail("expected identifier, got '" + peek().text + "'");
    return next().text;
  }

  double const_eval(const Expr& e) const {
    if (mentions_variable(e)) fail("expected a constant expression");
    return eval(e, {});
  }

  static bool mentions_variable(const Expr& e) {
    if (e.op == Expr::Op::Var) return true;
    return std::any_of(e.args.begin(), e.args.end(), mentions_variable);
  }

  long long integral(double v, const std::string& what) const {
    if (std::isnan(v) || std::floor(v) != v) fail(what + " must be an integer");
    return static_cast<long long>(v);
  }

  void parse_const() {
    next();
    if (is_ident("int") || is_ident("double") || is_ident("bool")) next();
    std::string name = expect_ident();
    std::optional<double> value;
    if (is_sym("=")) {
      next();
      value = const_eval(parse_expr());
    }
    expect_sym(";");
    if (auto it = overrides_.find(name); it != overrides_.end()) value = it->second;
    if (!value) fail("constant '" + name + "' has no value");
    constants_[name] = *value;
  }

  void parse_module() {
    next();
    expect_ident();
    while (!is_ident("endmodule")) {
      if (peek().kind == Tok::End) fail("missing endmodule");
      if (is_sym("["))
        parse_command();
      else
        parse_var();
    }
    next();
  }

  void parse_var() {
    Variable v;
    v.name = expect_ident();
    if (constants_.count(v.name) || find_var(v.name)) fail("duplicate identifier '" + v.name + "'");
    expect_sym(":");
    if (is_ident("bool")) {
      next();
      v.lo = 0;
      v.hi = 1;
    } else {
      expect_sym("[");
      v.lo = integral(const_eval(parse_expr()), "lower bound");
      expect_sym("..");
      v.hi = integral(const_eval(parse_expr()), "upper bound");
      expect_sym("]");
      if (v.lo > v.hi) fail("empty range for '" + v.name + "'");
    }
    v.init = v.lo;
    if (is_ident("init")) {
      next();
      v.init = integral(const_eval(parse_expr()), "initial value");
    }
    if (v.init < v.lo || v.init > v.hi) fail("initial value of '" + v.name + "' out of bounds");
    expect_sym(";");
    vars.push_back(v);
  }

  void parse_command() {
    Command c;
    c.line = peek().line;
    expect_sym("[");
    c.action = peek().kind == Tok::Ident ? next().text : "tau";
    expect_sym("]");
    c.guard = parse_expr();
    expect_sym("->");
    while (true) {
      Alternative alt;
      if (starts_update()) {
        alt.prob.value = 1.0;
      } else {
        alt.prob = parse_expr();
        expect_sym(":");
      }
      parse_update(alt);
      c.alts.push_back(std::move(alt));
      if (!is_sym("+")) break;
      next();
    }
    expect_sym(";");
    commands.push_back(std::move(c));
  }

  bool starts_update() const {
    if (is_ident("true") && (is_sym(";", 1) || is_sym("+", 1))) return true;
    return is_sym("(") && peek(1).kind == Tok::Ident && is_sym("'", 2);
  }

  void parse_update(Alternative& alt) {
    if (is_ident("true")) {
      next();
      return;
    }
    while (true) {
      expect_sym("(");
      std::string name = expect_ident();
      auto idx = find_var(name);
      if (!idx) fail("unknown variable '" + name + "'");
      expect_sym("'");
      expect_sym("=");
      for (const auto& a : alt.assigns)
        if (a.var == *idx) fail("variable '" + name + "' assigned twice");
      alt.assigns.push_back({*idx, parse_expr()});
      expect_sym(")");
      if (!is_sym("&")) break;
      next();
    }
  }

  void parse_label() {
    next();
    if (peek().kind != Tok::String) fail("expected label name string");
    std::string name = next().text;
    expect_sym("=");
    Expr e = parse_expr();
    expect_sym(";");
    for (const auto& l : labels)
      if (l.name == name) fail("duplicate label '" + name + "'");
    labels.push_back({name, std::move(e)});
  }

  std::optional<std::size_t> find_var(const std::string& name) const {
    for (std::size_t i = 0; i < vars.size(); ++i)
      if (vars[i].name == name) return i;
    return std::nullopt;
  }

  static Expr make(Expr::Op op, std::vector<Expr> args) {
    Expr e;
    e.op = op;
    e.args = std::move(args);
    return e;
  }

  Expr parse_expr() {
    Expr c = parse_implies();
    if (is_sym("?")) {
      next();
      Expr t = parse_expr();
      expect_sym(":");
      Expr f = parse_expr();
      return make(Expr::Op::Ite, {std::move(c), std::move(t), std::move(f)});
    }
    return c;
  }

  Expr parse_implies() {
    Expr l = parse_or();
    if (is_sym("=>")) {
      next();
      return make(Expr::Op::Implies, {std::move(l), parse_implies()});
    }
    return l;
  }

  Expr parse_or() {
    Expr l = parse_and();
    while (is_sym("|")) {
      next();
      l = make(Expr::Op::Or, {std::move(l), parse_and()});
    }
    return l;
  }

  Expr parse_and() {
    Expr l = parse_not();
    while (is_sym("&")) {
      next();
      l = make(Expr::Op::And, {std::move(l), parse_not()});
    }
    return l;
  }

  Expr parse_not() {
    if (is_sym("!")) {
      next();
      return make(Expr::Op::Not, {parse_not()});
    }
    return parse_rel();
  }

  Expr parse_rel() {
    Expr l = parse_add();
    static const std::pair<const char*, Expr::Op> ops[] = {{"=", Expr::Op::Eq},  {"!=", Expr::Op::Ne}, {"<", Expr::Op::Lt},
                                                         {"<=", Expr::Op::Le}, {">", Expr::Op::Gt},  {">=", Expr::Op::Ge}};
    for (auto [s, op] : ops)
      if (is_sym(s)) {
        next();
        return make(op, {std::move(l), parse_add()});
      }
    return l;
  }

  Expr parse_add() {
    Expr l = parse_mul();
    while (is_sym("+") || is_sym("-")) {
      auto op = next().text == "+" ? Expr::Op::Add : Expr::Op::Sub;
      l = make(op, {std::move(l), parse_mul()});
    }
    return l;
  }

  Expr parse_mul() {
    Expr l = parse_unary();
    while (is_sym("*") || is_sym("/")) {
      auto op = next().text == "*" ? Expr::Op::Mul : Expr::Op::Div;
      l = make(op, {std::move(l), parse_unary()});
    }
    return l;
  }

  Expr parse_unary() {
    if (is_sym("-")) {
      next();
      return make(Expr::Op::Neg, {parse_unary()});
    }
    return parse_primary();
  }

  Expr parse_primary() {
    const Token& t = peek();
    if (t.kind == Tok::Number) {
      next();
      Expr e;
      e.value = parse_double(t.text, t.line);
      return e;
    }
    if (is_sym("(")) {
      next();
      Expr e = parse_expr();
      expect_sym(")");
      return e;
    }
    if (t.kind == Tok::Ident) {
      std::string name = next().text;
      if (name == "true" || name == "false") {
        Expr e;
        e.value = name == "true" ? 1.0 : 0.0;
        return e;
      }
      static const std::map<std::string, Expr::Op> funcs = {{"min", Expr::Op::Min},     {"max", Expr::Op::Max},
                                                           {"floor", Expr::Op::Floor}, {"ceil", Expr::Op::Ceil},
                                                           {"pow", Expr::Op::Pow},     {"mod", Expr::Op::Mod}};
      if (auto f = funcs.find(name); f != funcs.end() && is_sym("(")) {
        next();
        std::vector<Expr> args{parse_expr()};
        while (is_sym(",")) {
          next();
          args.push_back(parse_expr());
        }
        expect_sym(")");
        std::size_t arity = (f->second == Expr::Op::Floor || f->second == Expr::Op::Ceil) ? 1 : 2;
        if (args.size() != arity) fail("wrong number of arguments to " + name);
        return make(f->second, std::move(args));
      }
      if (auto c = constants_.find(name); c != constants_.end()) {
        Expr e;
        e.value = c->second;
        return e;
      }
      if (auto v = find_var(name)) {
        Expr e;
        e.op = Expr::Op::Var;
        e.var = *v;
        return e;
      }
      throw ParseError("unknown identifier '" + name + "'", t.line, t.col);
    }
    fail("unexpected '" + t.text + "' in expression");
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  const ConstantOverrides& overrides_;
  std::map<std::string, double> constants_;
};

std::string valuation_name(const Valuation& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(v[i]);
  }
  return s + ")";
}

}  // namespace

Mdp parse_prism(std::string_view text, const ConstantOverrides& constants) {
  Parser p(text, constants);
  p.parse();

  Mdp m;
  for (const auto& l : p.labels) m.ap.push_back(l.name);
  if (m.ap.size() > 64) throw ModelError("more than 64 labels");

  std::map<Valuation, StateId> index;
  std::vector<Valuation> states;
  auto intern = [&](const Valuation& v) {
    auto [it, fresh] = index.emplace(v, static_cast<StateId>(states.size()));
    if (fresh) {
      states.push_back(v);
      m.add_state(valuation_name(v));
    }
    return it->second;
  };

  Valuation init;
  for (const auto& v : p.vars) init.push_back(v.init);
  m.initial = intern(init);

  for (std::size_t cur = 0; cur < states.size(); ++cur) {
    const Valuation val = states[cur];
    const StateId s = static_cast<StateId>(cur);
    for (const Command& c : p.commands) {
      if (eval(c.guard, val) == 0.0) continue;
      ActionId a = m.intern_action(c.action);
      if (m.find_choice(s, a) >= 0)
        throw ModelError("line " + std::to_string(c.line) + ": action '" + c.action + "' enabled twice in state " +
                         valuation_name(val));
      Choice choice{a, {}};
      for (const Alternative& alt : c.alts) {
        double prob = eval(alt.prob, val);
        if (prob == 0.0) continue;
        if (!(prob > 0.0 && prob <= 1.0))
          throw ModelError("line " + std::to_string(c.line) + ": probability " + format_double(prob) +
                           " out of range in state " + valuation_name(val));
        Valuation nv = val;
        for (const Assignment& as : alt.assigns) {
          double x = eval(as.value, val);
          const Variable& var = p.vars[as.var];
          if (std::isnan(x) || std::floor(x) != x || x < static_cast<double>(var.lo) || x > static_cast<double>(var.hi))
            throw ModelError("line " + std::to_string(c.line) + ": update " + var.name + "'=" + format_double(x) +
                             " out of bounds [" + std::to_string(var.lo) + ".." + std::to_string(var.hi) + "] in state " +
                             valuation_name(val));
          nv[as.var] = static_cast<long long>(x);
        }
        StateId d = intern(nv);
        auto it = std::find_if(choice.succ.begin(), choice.succ.end(), [&](const Transition& t) { return t.target == d; });
        if (it != choice.succ.end())
          it->prob += prob;
        else
          choice.succ.push_back({d, prob, 0});
      }
      m.choices[s].push_back(std::move(choice));
    }
  }

  for (StateId s = 0; s < m.num_states(); ++s)
    for (std::size_t i = 0; i < p.labels.size(); ++i)
      if (eval(p.labels[i].expr, states[s]) != 0.0) m.labels[s] |= Letter{1} << i;
  return m;
}

}  // namespace omegarl
