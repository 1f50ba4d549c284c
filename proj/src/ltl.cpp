#include "omegarl/ltl.hpp"

#include <algorithm>
#include <cctype>

#include "omegarl/error.hpp"

namespace omegarl {

int LtlFormula::push(Node n) {
  nodes_.push_back(n);
  return static_cast<int>(nodes_.size() - 1);
}

int LtlFormula::add_true() { return push({Op::True}); }

int LtlFormula::add_atom(std::string_view name) {
  auto it = std::find(atoms_.begin(), atoms_.end(), name);
  int idx = static_cast<int>(it - atoms_.begin());
  if (it == atoms_.end()) atoms_.emplace_back(name);
  return push({Op::Atom, idx});
}

int LtlFormula::add_not(int a) { return push({Op::Not, -1, a}); }
int LtlFormula::add_or(int a, int b) { return push({Op::Or, -1, a, b}); }
int LtlFormula::add_next(int a) { return push({Op::Next, -1, a}); }
int LtlFormula::add_until(int a, int b) { return push({Op::Until, -1, a, b}); }
int LtlFormula::add_and(int a, int b) { return add_not(add_or(add_not(a), add_not(b))); }
int LtlFormula::add_implies(int a, int b) { return add_or(add_not(a), b); }
int LtlFormula::add_eventually(int a) { return add_until(add_true(), a); }
int LtlFormula::add_globally(int a) { return add_not(add_eventually(add_not(a))); }

std::string LtlFormula::to_string() const { return root_ < 0 ? "" : to_string(root_); }

std::string LtlFormula::to_string(int node) const {
  const Node& n = nodes_[node];
  switch (n.op) {
    case Op::True: return "true";
    case Op::Atom: return atoms_[n.atom];
    case Op::Not: return "!" + to_string(n.lhs);
    case Op::Or: return "(" + to_string(n.lhs) + " | " + to_string(n.rhs) + ")";
    case Op::Next: return "X " + to_string(n.lhs);
    case Op::Until: return "(" + to_string(n.lhs) + " U " + to_string(n.rhs) + ")";
  }
  return "";
}

namespace {

class LtlParser {
 public:
  explicit LtlParser(std::string_view src) : src_(src) {}

  LtlFormula run() {
    f_.set_root(implication());
    skip();
    if (pos_ < src_.size()) fail("unexpected input");
    return std::move(f_);
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, 1, pos_ + 1); }

  void skip() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
  }

  bool accept(std::string_view tok) {
    skip();
    if (src_.substr(pos_, tok.size()) != tok) return false;
    // Single-letter operators must not be the start of a longer identifier.
    if (std::isalpha(static_cast<unsigned char>(tok[0])) && pos_ + tok.size() < src_.size()) {
      char c = src_[pos_ + tok.size()];
      if (std::isalnum(static_cast<unsigned char>(c)) || c == '_') return false;
    }
    pos_ += tok.size();
    return true;
  }

  int implication() {
    int lhs = disjunction();
    if (accept("->") || accept("=>")) return f_.add_implies(lhs, implication());
    return lhs;
  }

  int disjunction() {
    int lhs = conjunction();
    while (accept("||") || accept("|")) lhs = f_.add_or(lhs, conjunction());
    return lhs;
  }

  int conjunction() {
    int lhs = until();
    while (accept("&&") || accept("&")) lhs = f_.add_and(lhs, until());
    return lhs;
  }

  int until() {
    int lhs = unary();
    if (accept("U")) return f_.add_until(lhs, until());
    return lhs;
  }

  int unary() {
    if (accept("!") || accept("~")) return f_.add_not(unary());
    if (accept("X")) return f_.add_next(unary());
    if (accept("F")) return f_.add_eventually(unary());
    if (accept("G")) return f_.add_globally(unary());
    if (accept("(")) {
      int inner = implication();
      if (!accept(")")) fail("expected ')'");
      return inner;
    }
    skip();
    std::size_t b = pos_;
    while (pos_ < src_.size() && (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_')) ++pos_;
    if (b == pos_) fail(pos_ < src_.size() ? "unexpected character" : "unexpected end of formula");
    std::string_view word = src_.substr(b, pos_ - b);
    if (word == "true") return f_.add_true();
    if (word == "false") return f_.add_not(f_.add_true());
    if (word == "U") {
      pos_ = b;
      fail("missing left operand of U");
    }
    return f_.add_atom(word);
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  LtlFormula f_;
};

}  // namespace

LtlFormula parse_ltl(std::string_view text) { return LtlParser(text).run(); }

bool eval_ltl_lasso(const LtlFormula& f, const std::vector<std::string>& ap, const std::vector<Letter>& prefix,
                    const std::vector<Letter>& cycle) {
  if (cycle.empty()) throw ModelError("lasso cycle must be nonempty");
  std::vector<int> atom_bit;
  for (const auto& a : f.atoms()) {
    auto it = std::find(ap.begin(), ap.end(), a);
    if (it == ap.end()) throw ModelError("atom '" + a + "' is not an atomic proposition");
    atom_bit.push_back(static_cast<int>(it - ap.begin()));
  }
  const std::size_t n = prefix.size() + cycle.size();
  auto letter = [&](std::size_t i) { return i < prefix.size() ? prefix[i] : cycle[i - prefix.size()]; };
  auto succ = [&](std::size_t i) { return i + 1 < n ? i + 1 : prefix.size(); };

  using LtlOp = LtlFormula::Op;
  // Children always precede their parents in the node list.
  std::vector<std::vector<char>> val(f.nodes().size(), std::vector<char>(n, 0));
  for (std::size_t k = 0; k < f.nodes().size(); ++k) {
    const auto& node = f.nodes()[k];
    auto& v = val[k];
    switch (node.op) {
      case LtlOp::True: std::fill(v.begin(), v.end(), 1); break;
      case LtlOp::Atom:
        for (std::size_t i = 0; i < n; ++i) v[i] = (letter(i) >> atom_bit[node.atom]) & 1U;
        break;
      case LtlOp::Not:
        for (std::size_t i = 0; i < n; ++i) v[i] = !val[node.lhs][i];
        break;
      case LtlOp::Or:
        for (std::size_t i = 0; i < n; ++i) v[i] = val[node.lhs][i] || val[node.rhs][i];
        break;
      case LtlOp::Next:
        for (std::size_t i = 0; i < n; ++i) v[i] = val[node.lhs][succ(i)];
        break;
      case LtlOp::Until: {
        const auto& a = val[node.lhs];
        const auto& b = val[node.rhs];
        bool changed = true;
        while (changed) {
          changed = false;
          for (std::size_t i = n; i-- > 0;) {
            char nv = b[i] || (a[i] && v[succ(i)]);
            if (nv != v[i]) {
              v[i] = nv;
              changed = true;
            }
          }
        }
        break;
      }
    }
  }
  return val[static_cast<std::size_t>(f.root())][0];
}

}  // namespace omegarl
