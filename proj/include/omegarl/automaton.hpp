#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "omegarl/mdp.hpp"

namespace omegarl {

/// Boolean function over AP indices, kept as an expression tree.
class Guard {
 public:
  enum class Kind { True, False, Ap, Not, And, Or };

  static Guard top() { return Guard(Kind::True); }
  static Guard bottom() { return Guard(Kind::False); }
  static Guard ap(unsigned index);
  static Guard negate(Guard g);
  static Guard conj(std::vector<Guard> gs);
  static Guard disj(std::vector<Guard> gs);
  /// Conjunction of literals that holds exactly for `letter` over `num_ap` APs.
  static Guard minterm(Letter letter, unsigned num_ap);

  Kind kind() const { return kind_; }
  unsigned ap_index() const { return ap_; }
  const std::vector<Guard>& children() const { return children_; }

  bool eval(Letter letter) const;
  /// Highest AP index used plus one.
  unsigned ap_bound() const;
  /// HOA label syntax, e.g. "0 & !1".
  std::string to_hoa() const;

 private:
  explicit Guard(Kind k) : kind_(k) {}
  Kind kind_;
  unsigned ap_ = 0;
  std::vector<Guard> children_;
};

struct Edge {
  Guard guard;
  StateId target;
  AccSet marks = 0;
};

/// A Rabin pair Fin(fin) & Inf(inf); fin < 0 means the pair has no B set.
struct RabinPair {
  int fin = -1;
  int inf = 0;
};

struct Acceptance {
  enum class Kind { Buchi, Rabin };
  Kind kind = Kind::Buchi;
  /// Acceptance set whose edges must be seen infinitely often (Buchi).
  int buchi_set = 0;
  std::vector<RabinPair> pairs;

  static Acceptance buchi(int set = 0) { return {Kind::Buchi, set, {}}; }
  static Acceptance rabin(std::vector<RabinPair> pairs) { return {Kind::Rabin, 0, std::move(pairs)}; }

  bool is_buchi() const { return kind == Kind::Buchi; }
  std::size_t num_sets() const;
  /// Marks that make a transition "good" for some pair: the Buchi set, or every G_i.
  AccSet good_marks() const;
  /// Whether a set of marks seen infinitely often satisfies the condition.
  bool accepts(AccSet inf_marks) const;
  std::string to_hoa() const;
};

/// omega-automaton over 2^AP with transition-based acceptance.
struct Automaton {
  std::vector<std::string> ap;
  std::vector<std::string> state_names;
  StateId initial = 0;
  std::vector<std::vector<Edge>> edges;
  Acceptance acceptance;
  std::string name;

  std::size_t num_states() const { return edges.size(); }
  std::size_t num_edges() const;
  StateId add_state(std::string name);
  /// Indices of the edges of q enabled by `letter`.
  std::vector<std::size_t> enabled_edges(StateId q, Letter letter) const;
};

enum class AutomatonClass { Deterministic, LimitDeterministic, Nondeterministic };

const char* to_string(AutomatonClass c);

/// Limit-deterministic Buchi automaton: the automaton plus its (Q_i, Q_f)
/// partition and the guess edges (state, edge index) from Q_i into Q_f.
struct Ldbw {
  Automaton automaton;
  std::vector<bool> in_final;
  std::vector<std::pair<StateId, std::size_t>> guess_edges;
};

Automaton parse_hoa(std::string_view text);
/// HOA v1 with transition-based acceptance and explicit labels.
std::string print_hoa(const Automaton& a);

/// Strongest class that applies. Limit determinism is witnessed by
/// Q_f = states reachable from sources of accepting edges.
AutomatonClass classify(const Automaton& a);

/// The (Q_i, Q_f) partition if `a` is limit-deterministic Buchi, else nullopt.
std::optional<Ldbw> limit_deterministic_partition(const Automaton& a);

/// Subset construction for the initial part, breakpoint construction for the
/// final part, joined by guess edges. Throws ModelError for non-Buchi input.
Ldbw nbw_to_ldbw(const Automaton& a);

/// Complete deterministic automata have exactly one run per word.
bool is_complete(const Automaton& a);

/// Membership of lasso words prefix.cycle^omega (letters over a.ap), decided by
/// searching the automaton x lasso-position graph for an accepting cycle.
/// Successor tables are built once per automaton; the automaton must outlive this object.
class LassoMembership {
 public:
  explicit LassoMembership(const Automaton& a);
  bool accepts(const std::vector<Letter>& prefix, const std::vector<Letter>& cycle) const;

 private:
  struct Succ {
    StateId target;
    AccSet marks;
  };
  const Automaton* a_;
  std::vector<std::uint32_t> begin_;
  std::vector<Succ> succ_;
};

/// One-off LassoMembership query.
bool accepts_lasso(const Automaton& a, const std::vector<Letter>& prefix, const std::vector<Letter>& cycle);

/// Automaton states from which no good-marked edge is reachable.
std::vector<bool> dead_states(const Automaton& a);

/// Enumerate every lasso with 1 <= |prefix| + |cycle| <= max_total, |cycle| >= 1,
/// over `num_ap` propositions. The callback returns false to stop early.
template <class F>
bool for_each_lasso(unsigned num_ap, std::size_t max_total, F&& visit) {
  const Letter letters = Letter{1} << num_ap;
  for (std::size_t total = 1; total <= max_total; ++total) {
    std::vector<Letter> word(total, 0);
    while (true) {
      for (std::size_t split = 0; split < total; ++split) {
        std::vector<Letter> prefix(word.begin(), word.begin() + static_cast<long>(split));
        std::vector<Letter> cycle(word.begin() + static_cast<long>(split), word.end());
        if (!visit(prefix, cycle)) return false;
      }
      std::size_t i = 0;
      while (i < total && ++word[i] == letters) word[i++] = 0;
      if (i == total) break;
    }
  }
  return true;
}

}  // namespace omegarl
