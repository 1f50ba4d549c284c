#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "omegarl/mdp.hpp"

namespace omegarl {

/// LTL formula over the core connectives true, atoms, !, |, X and U.
/// Derived operators are expanded while parsing:
///   false = !true, a & b = !(!a | !b), a -> b = !a | b,
///   F a = true U a, G a = !(true U !a).
class LtlFormula {
 public:
  enum class Op { True, Atom, Not, Or, Next, Until };
  struct Node {
    Op op;
    int atom = -1;
    int lhs = -1;
    int rhs = -1;
  };

  int add_true();
  int add_atom(std::string_view name);
  int add_not(int a);
  int add_or(int a, int b);
  int add_next(int a);
  int add_until(int a, int b);
  int add_and(int a, int b);
  int add_implies(int a, int b);
  int add_eventually(int a);
  int add_globally(int a);

  const std::vector<Node>& nodes() const { return nodes_; }
  const std::vector<std::string>& atoms() const { return atoms_; }
  int root() const { return root_; }
  void set_root(int r) { root_ = r; }

  /// Fully parenthesized core syntax, e.g. "(true U !a)".
  std::string to_string() const;
  std::string to_string(int node) const;

 private:
  int push(Node n);
  std::vector<Node> nodes_;
  std::vector<std::string> atoms_;
  int root_ = -1;
};

/// Precedence: unary (!, X, F, G) > U > & > | > ->. U and -> associate to the right.
/// Accepts true/false, !/~, &/&&, |/||, ->/=>. Throws ParseError with a column.
LtlFormula parse_ltl(std::string_view text);

/// Whether prefix.cycle^omega satisfies f. Letters index into `ap`; every atom of
/// f must name an entry of `ap` (ModelError otherwise).
bool eval_ltl_lasso(const LtlFormula& f, const std::vector<std::string>& ap, const std::vector<Letter>& prefix,
                    const std::vector<Letter>& cycle);

}  // namespace omegarl
