#include <cctype>
#include <map>
#include <set>

#include "omegarl/automaton.hpp"
#include "omegarl/error.hpp"

namespace omegarl {

namespace {

struct Token {
  enum class Kind { Header, Ident, Int, String, Alias, Symbol, Body, End, Eof };
  Kind kind;
  std::string text;
  std::size_t line, col;
};

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    while (true) {
      skip();
      if (pos_ >= src_.size()) {
        out.push_back({Token::Kind::Eof, "", line_, col_});
        return out;
      }
      const std::size_t l = line_, c = col_;
      char ch = src_[pos_];
      if (src_.substr(pos_, 8) == "--BODY--") {
        advance(8);
        out.push_back({Token::Kind::Body, "--BODY--", l, c});
      } else if (src_.substr(pos_, 7) == "--END--") {
        advance(7);
        out.push_back({Token::Kind::End, "--END--", l, c});
      } else if (ch == '"') {
        advance(1);
        std::string s;
        while (pos_ < src_.size() && src_[pos_] != '"') {
          if (src_[pos_] == '\\' && pos_ + 1 < src_.size()) advance(1);
          s += src_[pos_];
          advance(1);
        }
        if (pos_ >= src_.size()) throw ParseError("unterminated string", l, c);
        advance(1);
        out.push_back({Token::Kind::String, s, l, c});
      } else if (std::isdigit(static_cast<unsigned char>(ch))) {
        std::size_t b = pos_;
        while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) advance(1);
        out.push_back({Token::Kind::Int, std::string(src_.substr(b, pos_ - b)), l, c});
      } else if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_' || ch == '@') {
        std::size_t b = pos_;
        advance(1);
        while (pos_ < src_.size() &&
               (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_' || src_[pos_] == '-'))
          advance(1);
        std::string word(src_.substr(b, pos_ - b));
        if (ch == '@') {
          out.push_back({Token::Kind::Alias, word, l, c});
        } else if (pos_ < src_.size() && src_[pos_] == ':') {
          advance(1);
          out.push_back({Token::Kind::Header, word, l, c});
        } else {
          out.push_back({Token::Kind::Ident, word, l, c});
        }
      } else if (std::string_view("[]{}()!&|").find(ch) != std::string_view::npos) {
        advance(1);
        out.push_back({Token::Kind::Symbol, std::string(1, ch), l, c});
      } else {
        throw ParseError(std::string("unexpected character '") + ch + "'", l, c);
      }
    }
  }

 private:
  void advance(std::size_t n) {
    for (std::size_t i = 0; i < n && pos_ < src_.size(); ++i, ++pos_) {
      if (src_[pos_] == '\n') {
        ++line_;
        col_ = 1;
      } else {
        ++col_;
      }
    }
  }

  void skip() {
    while (pos_ < src_.size()) {
      if (std::isspace(static_cast<unsigned char>(src_[pos_]))) {
        advance(1);
      } else if (src_.substr(pos_, 2) == "/*") {
        std::size_t e = src_.find("*/", pos_ + 2);
        if (e == std::string_view::npos) throw ParseError("unterminated comment", line_, col_);
        advance(e + 2 - pos_);
      } else {
        return;
      }
    }
  }

  std::string_view src_;
  std::size_t pos_ = 0, line_ = 1, col_ = 1;
};

struct AccAtom {
  bool fin;
  int set;
};
using Dnf = std::vector<std::vector<AccAtom>>;

class Parser {
 public:
  explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

  Automaton run() {
    expect_header("HOA");
    const Token& v = next();
    if (v.text != "v1") throw error("unsupported HOA version '" + v.text + "'", v);
    parse_headers();
    parse_body();
    return finish();
  }

 private:
  const Token& peek() const { return toks_[i_]; }
  const Token& next() { return toks_[i_ < toks_.size() - 1 ? i_++ : i_]; }
  bool at_symbol(const char* s) const { return peek().kind == Token::Kind::Symbol && peek().text == s; }

  ParseError error(const std::string& msg, const Token& t) const { return ParseError(msg, t.line, t.col); }

  void expect_symbol(const char* s) {
    const Token& t = next();
    if (t.kind != Token::Kind::Symbol || t.text != s) throw error(std::string("expected '") + s + "'", t);
  }

  void expect_header(const char* name) {
    const Token& t = next();
    if (t.kind != Token::Kind::Header || t.text != name) throw error(std::string("expected '") + name + ":'", t);
  }

  long expect_int() {
    const Token& t = next();
    if (t.kind != Token::Kind::Int) throw error("expected integer", t);
    return std::stol(t.text);
  }

  void parse_headers() {
    while (peek().kind == Token::Kind::Header) {
      const Token h = next();
      if (h.text == "States") {
        num_states_ = expect_int();
      } else if (h.text == "Start") {
        if (start_ >= 0) throw error("multiple initial states are not supported", h);
        start_ = expect_int();
        if (at_symbol("&")) throw error("alternating automata are not supported", peek());
      } else if (h.text == "AP") {
        long n = expect_int();
        for (long k = 0; k < n; ++k) {
          const Token& s = next();
          if (s.kind != Token::Kind::String) throw error("expected AP name", s);
          out_.ap.push_back(s.text);
        }
      } else if (h.text == "Acceptance") {
        num_sets_ = expect_int();
        acc_token_ = h;
        acc_ = parse_acc_or();
      } else if (h.text == "name") {
        const Token& s = next();
        if (s.kind != Token::Kind::String) throw error("expected name string", s);
        out_.name = s.text;
      } else if (h.text == "Alias") {
        const Token& a = next();
        if (a.kind != Token::Kind::Alias) throw error("expected alias name", a);
        aliases_.insert_or_assign(a.text, parse_guard_or());
      } else {
        // acc-name, tool, properties and unknown headers carry nothing we need.
        while (peek().kind != Token::Kind::Header && peek().kind != Token::Kind::Body &&
               peek().kind != Token::Kind::Eof)
          next();
      }
    }
    if (peek().kind != Token::Kind::Body) throw error("expected '--BODY--'", peek());
    next();
    if (!have_acc()) throw error("missing Acceptance header", peek());
  }

  bool have_acc() const { return acc_token_.has_value(); }

  Dnf parse_acc_or() {
    Dnf d = parse_acc_and();
    while (at_symbol("|")) {
      next();
      Dnf r = parse_acc_and();
      d.insert(d.end(), r.begin(), r.end());
    }
    return d;
  }

  Dnf parse_acc_and() {
    Dnf d = parse_acc_atom();
    while (at_symbol("&")) {
      next();
      Dnf r = parse_acc_atom();
      Dnf prod;
      for (const auto& x : d)
        for (const auto& y : r) {
          auto c = x;
          c.insert(c.end(), y.begin(), y.end());
          prod.push_back(std::move(c));
        }
      d = std::move(prod);
    }
    return d;
  }

  Dnf parse_acc_atom() {
    const Token t = next();
    if (t.kind == Token::Kind::Symbol && t.text == "(") {
      Dnf d = parse_acc_or();
      expect_symbol(")");
      return d;
    }
    if (t.kind == Token::Kind::Ident && t.text == "t") return Dnf{{}};
    if (t.kind == Token::Kind::Ident && t.text == "f") return Dnf{};
    if (t.kind == Token::Kind::Ident && (t.text == "Inf" || t.text == "Fin")) {
      expect_symbol("(");
      if (at_symbol("!")) throw error("complemented acceptance sets are not supported", peek());
      long s = expect_int();
      if (s < 0 || s >= num_sets_) throw error("acceptance set out of range", t);
      expect_symbol(")");
      return Dnf{{AccAtom{t.text == "Fin", static_cast<int>(s)}}};
    }
    throw error("malformed acceptance condition", t);
  }

  Guard parse_guard_or() {
    std::vector<Guard> gs{parse_guard_and()};
    while (at_symbol("|")) {
      next();
      gs.push_back(parse_guard_and());
    }
    return gs.size() == 1 ? std::move(gs[0]) : Guard::disj(std::move(gs));
  }

  Guard parse_guard_and() {
    std::vector<Guard> gs{parse_guard_not()};
    while (at_symbol("&")) {
      next();
      gs.push_back(parse_guard_not());
    }
    return gs.size() == 1 ? std::move(gs[0]) : Guard::conj(std::move(gs));
  }

  Guard parse_guard_not() {
    const Token t = next();
    if (t.kind == Token::Kind::Symbol && t.text == "!") return Guard::negate(parse_guard_not());
    if (t.kind == Token::Kind::Symbol && t.text == "(") {
      Guard g = parse_guard_or();
      expect_symbol(")");
      return g;
    }
    if (t.kind == Token::Kind::Ident && t.text == "t") return Guard::top();
    if (t.kind == Token::Kind::Ident && t.text == "f") return Guard::bottom();
    if (t.kind == Token::Kind::Int) {
      unsigned long k = std::stoul(t.text);
      if (k >= out_.ap.size()) throw error("undeclared atomic proposition " + t.text, t);
      return Guard::ap(static_cast<unsigned>(k));
    }
    if (t.kind == Token::Kind::Alias) {
      auto it = aliases_.find(t.text);
      if (it == aliases_.end()) throw error("unknown alias " + t.text, t);
      return it->second;
    }
    throw error("malformed label expression", t);
  }

  AccSet parse_marks() {
    AccSet m = 0;
    if (!at_symbol("{")) return m;
    next();
    while (!at_symbol("}")) {
      const Token& t = peek();
      long s = expect_int();
      if (s < 0 || s >= num_sets_) throw error("acceptance set out of range", t);
      m |= AccSet{1} << s;
    }
    next();
    return m;
  }

  void parse_body() {
    while (peek().kind == Token::Kind::Header) {
      const Token h = next();
      if (h.text != "State") throw error("expected 'State:'", h);
      std::optional<Guard> state_label;
      if (at_symbol("[")) {
        next();
        state_label = parse_guard_or();
        expect_symbol("]");
      }
      long id = expect_int();
      if (id < 0 || (num_states_ >= 0 && id >= num_states_)) throw error("state id out of range", h);
      std::string name = std::to_string(id);
      if (peek().kind == Token::Kind::String) name = next().text;
      AccSet state_marks = parse_marks();
      auto idx = static_cast<std::size_t>(id);
      if (idx >= body_.size()) {
        body_.resize(idx + 1);
        names_.resize(idx + 1);
        seen_.resize(idx + 1, false);
      }
      if (seen_[idx]) throw error("state " + std::to_string(id) + " declared twice", h);
      seen_[idx] = true;
      names_[idx] = name;
      while (peek().kind != Token::Kind::Header && peek().kind != Token::Kind::End) {
        const Token& start = peek();
        std::optional<Guard> label;
        if (at_symbol("[")) {
          next();
          label = parse_guard_or();
          expect_symbol("]");
        }
        if (!label) label = state_label;
        if (!label) throw error("implicit edge labels are not supported", start);
        if (peek().kind != Token::Kind::Int) throw error("expected successor state", peek());
        long dst = expect_int();
        if (at_symbol("&")) throw error("alternating automata are not supported", peek());
        if (dst < 0 || (num_states_ >= 0 && dst >= num_states_)) throw error("successor out of range", start);
        AccSet m = parse_marks() | state_marks;
        body_[idx].push_back(Edge{std::move(*label), static_cast<StateId>(dst), m});
      }
    }
    if (peek().kind != Token::Kind::End) throw error("expected '--END--'", peek());
    next();
  }

  Automaton finish() {
    long n = num_states_ >= 0 ? num_states_ : static_cast<long>(body_.size());
    if (n == 0) throw ModelError("automaton has no states");
    for (const auto& es : body_)
      for (const auto& e : es) n = std::max(n, static_cast<long>(e.target) + 1);
    body_.resize(static_cast<std::size_t>(n));
    names_.resize(static_cast<std::size_t>(n));
    for (std::size_t q = 0; q < names_.size(); ++q)
      if (names_[q].empty()) names_[q] = std::to_string(q);
    out_.edges = std::move(body_);
    out_.state_names = std::move(names_);
    out_.initial = static_cast<StateId>(start_ < 0 ? 0 : start_);
    if (out_.initial >= out_.num_states()) throw ModelError("initial state out of range");
    out_.acceptance = convert_acceptance();
    return std::move(out_);
  }

  Acceptance convert_acceptance() {
    const Token& at = *acc_token_;
    // Acceptance "t": every run accepts. Realize it with a fresh set on all edges.
    if (acc_.size() == 1 && acc_[0].empty()) {
      const int s = static_cast<int>(num_sets_);
      for (auto& es : out_.edges)
        for (auto& e : es) e.marks |= AccSet{1} << s;
      return Acceptance::buchi(s);
    }
    if (acc_.empty()) return Acceptance::buchi(static_cast<int>(num_sets_));
    if (acc_.size() == 1 && acc_[0].size() == 1 && !acc_[0][0].fin) return Acceptance::buchi(acc_[0][0].set);
    std::vector<RabinPair> pairs;
    for (const auto& conj : acc_) {
      RabinPair p{-1, -1};
      for (const auto& atom : conj) {
        int& slot = atom.fin ? p.fin : p.inf;
        if (slot >= 0) throw error("unsupported acceptance condition (not Buchi or Rabin)", at);
        slot = atom.set;
      }
      if (p.inf < 0) throw error("unsupported acceptance condition (not Buchi or Rabin)", at);
      pairs.push_back(p);
    }
    return Acceptance::rabin(std::move(pairs));
  }

  std::vector<Token> toks_;
  std::size_t i_ = 0;
  Automaton out_;
  long num_states_ = -1, start_ = -1, num_sets_ = 0;
  std::optional<Token> acc_token_;
  Dnf acc_;
  std::map<std::string, Guard> aliases_;
  std::vector<std::vector<Edge>> body_;
  std::vector<std::string> names_;
  std::vector<bool> seen_;
};

std::string quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

}  // namespace

Automaton parse_hoa(std::string_view text) { return Parser(Lexer(text).run()).run(); }

std::string print_hoa(const Automaton& a) {
  std::string out = "HOA: v1\n";
  if (!a.name.empty()) out += "name: " + quote(a.name) + "\n";
  out += "States: " + std::to_string(a.num_states()) + "\n";
  out += "Start: " + std::to_string(a.initial) + "\n";
  out += "AP: " + std::to_string(a.ap.size());
  for (const auto& p : a.ap) out += " " + quote(p);
  out += "\n";
  const Acceptance& acc = a.acceptance;
  if (acc.is_buchi() && acc.buchi_set == 0) {
    out += "acc-name: Buchi\n";
  } else if (!acc.is_buchi()) {
    bool standard = true;
    for (std::size_t i = 0; i < acc.pairs.size(); ++i)
      standard = standard && acc.pairs[i].fin == static_cast<int>(2 * i) && acc.pairs[i].inf == static_cast<int>(2 * i + 1);
    if (standard) out += "acc-name: Rabin " + std::to_string(acc.pairs.size()) + "\n";
  }
  out += "Acceptance: " + acc.to_hoa() + "\n";
  out += "properties: trans-labels explicit-labels trans-acc\n";
  out += "--BODY--\n";
  for (StateId q = 0; q < a.num_states(); ++q) {
    out += "State: " + std::to_string(q) + " " + quote(a.state_names[q]) + "\n";
    for (const Edge& e : a.edges[q]) {
      out += "[" + e.guard.to_hoa() + "] " + std::to_string(e.target);
      if (e.marks) {
        out += " {";
        bool first = true;
        for (unsigned s = 0; s < 32; ++s)
          if ((e.marks >> s) & 1U) {
            if (!first) out += " ";
            out += std::to_string(s);
            first = false;
          }
        out += "}";
      }
      out += "\n";
    }
  }
  out += "--END--\n";
  return out;
}

}  // namespace omegarl
