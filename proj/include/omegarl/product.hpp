#pragma once

#include "omegarl/automaton.hpp"
#include "omegarl/mdp.hpp"

namespace omegarl {

struct ProductOptions {
  /// Send letters the automaton has no edge for to a rejecting sink instead of failing.
  bool complete_rejecting = false;
  /// Collapse every product state whose automaton state is dead into one trap.
  bool merge_dead = true;
};

/// Product M x A. The embedded Mdp carries the acceptance marks of the automaton
/// edge taken on each transition; guesses of a limit-deterministic automaton
/// appear as extra actions named "action@successor".
struct Product {
  Mdp mdp;
  Acceptance acceptance;
  /// Per product state: model / automaton component, kNoState for the trap.
  std::vector<StateId> model_state;
  std::vector<StateId> automaton_state;
  StateId trap = kNoState;
  AutomatonClass automaton_class = AutomatonClass::Deterministic;

  std::size_t num_states() const { return mdp.num_states(); }
};

/// Reachable product from (s0, q0). The automaton must be deterministic or
/// limit-deterministic Buchi; its APs must be a subset of the model's.
/// The transition from (s, q) reads L(s).
Product build_product(const Mdp& m, const Automaton& a, const ProductOptions& opts = {});

/// Augmentation: each accepting transition sends 1 - zeta of its
/// mass to the sink t and scales the rest by zeta. Marks are kept on the
/// scaled part so the augmentation can be undone.
struct AugmentedMdp {
  Mdp mdp;
  StateId sink = kNoState;
  double zeta = 0.0;
  AccSet accepting_marks = 0;
};

AugmentedMdp augment(const Product& p, double zeta);

/// Removes t and rescales accepting transitions by 1/zeta.
Mdp deaugment(const AugmentedMdp& a);

}  // namespace omegarl
