#include <algorithm>

#include "omegarl/automaton.hpp"

namespace omegarl {

Guard Guard::ap(unsigned index) {
  Guard g(Kind::Ap);
  g.ap_ = index;
  return g;
}

Guard Guard::negate(Guard g) {
  if (g.kind_ == Kind::True) return bottom();
  if (g.kind_ == Kind::False) return top();
  if (g.kind_ == Kind::Not) return std::move(g.children_[0]);
  Guard n(Kind::Not);
  n.children_.push_back(std::move(g));
  return n;
}

Guard Guard::conj(std::vector<Guard> gs) {
  std::vector<Guard> kept;
  for (auto& g : gs) {
    if (g.kind_ == Kind::False) return bottom();
    if (g.kind_ == Kind::True) continue;
    kept.push_back(std::move(g));
  }
  if (kept.empty()) return top();
  if (kept.size() == 1) return std::move(kept[0]);
  Guard c(Kind::And);
  c.children_ = std::move(kept);
  return c;
}

Guard Guard::disj(std::vector<Guard> gs) {
  std::vector<Guard> kept;
  for (auto& g : gs) {
    if (g.kind_ == Kind::True) return top();
    if (g.kind_ == Kind::False) continue;
    kept.push_back(std::move(g));
  }
  if (kept.empty()) return bottom();
  if (kept.size() == 1) return std::move(kept[0]);
  Guard d(Kind::Or);
  d.children_ = std::move(kept);
  return d;
}

Guard Guard::minterm(Letter letter, unsigned num_ap) {
  std::vector<Guard> lits;
  for (unsigned i = 0; i < num_ap; ++i) lits.push_back((letter >> i) & 1U ? ap(i) : negate(ap(i)));
  return conj(std::move(lits));
}

bool Guard::eval(Letter letter) const {
  switch (kind_) {
    case Kind::True: return true;
    case Kind::False: return false;
    case Kind::Ap: return (letter >> ap_) & 1U;
    case Kind::Not: return !children_[0].eval(letter);
    case Kind::And:
      return std::all_of(children_.begin(), children_.end(), [&](const Guard& g) { return g.eval(letter); });
    case Kind::Or:
      return std::any_of(children_.begin(), children_.end(), [&](const Guard& g) { return g.eval(letter); });
  }
  return false;
}

unsigned Guard::ap_bound() const {
  unsigned b = kind_ == Kind::Ap ? ap_ + 1 : 0;
  for (const auto& c : children_) b = std::max(b, c.ap_bound());
  return b;
}

std::string Guard::to_hoa() const {
  switch (kind_) {
    case Kind::True: return "t";
    case Kind::False: return "f";
    case Kind::Ap: return std::to_string(ap_);
    case Kind::Not: {
      const Guard& c = children_[0];
      std::string inner = c.to_hoa();
      return (c.kind_ == Kind::And || c.kind_ == Kind::Or) ? "!(" + inner + ")" : "!" + inner;
    }
    case Kind::And:
    case Kind::Or: {
      std::string out;
      const char* op = kind_ == Kind::And ? " & " : " | ";
      for (std::size_t i = 0; i < children_.size(); ++i) {
        if (i) out += op;
        const Guard& c = children_[i];
        bool paren = c.kind_ == Kind::Or || (c.kind_ == Kind::And && kind_ == Kind::Or);
        out += paren ? "(" + c.to_hoa() + ")" : c.to_hoa();
      }
      return out;
    }
  }
  return "f";
}

}  // namespace omegarl
