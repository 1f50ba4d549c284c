#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace omegarl {

using StateId = std::uint32_t;
using ActionId = std::uint32_t;
/// Set of atomic propositions, one bit per index into an AP list.
using Letter = std::uint64_t;
/// Set of acceptance-set indices (HOA style marks), one bit per set.
using AccSet = std::uint32_t;

inline constexpr StateId kNoState = static_cast<StateId>(-1);
inline constexpr double kMassTolerance = 1e-12;

struct Transition {
  StateId target;
  double prob;
  AccSet marks = 0;
};

/// One enabled action of a state together with its successor distribution.
struct Choice {
  ActionId action;
  std::vector<Transition> succ;
};

/// Finite labeled MDP (S, A, T, AP, L). Actions are global names; the choices
/// of a state list the enabled ones. Transitions may carry acceptance marks,
/// which is how products and augmented MDPs reuse this type.
struct Mdp {
  std::vector<std::string> state_names;
  std::vector<std::string> action_names;
  std::vector<std::string> ap;
  std::vector<Letter> labels;
  std::vector<std::vector<Choice>> choices;
  StateId initial = 0;

  std::size_t num_states() const { return choices.size(); }
  std::size_t num_choices() const;
  std::size_t num_transitions() const;

  StateId add_state(std::string name, Letter label = 0);
  ActionId intern_action(std::string_view name);
  /// Index of an AP name, or -1.
  int ap_index(std::string_view name) const;
  /// Index of a state-local choice with the given action, or -1.
  int find_choice(StateId s, ActionId a) const;
  const std::string& action_name(StateId s, std::size_t local) const {
    return action_names[choices[s][local].action];
  }
  bool has_label(StateId s, std::string_view ap_name) const;
};

struct Diagnostic {
  enum class Kind { BadInitial, Deadlock, MassNotOne, BadProbability, BadTarget, BadLabel, DuplicateAction };
  Kind kind;
  StateId state = kNoState;
  std::size_t choice = 0;
  std::string message;
};

/// Checks every Mdp invariant; empty result iff the MDP is well formed.
std::vector<Diagnostic> validate(const Mdp& m);

enum class ModelFormat { PrismSubset, Explicit };

/// Overrides for `const` declarations of a PRISM-subset model, by name.
using ConstantOverrides = std::map<std::string, double, std::less<>>;

/// Parses a model and validates it. Throws ParseError on syntax errors and
/// ModelError on semantic ones (bad mass, deadlock, out-of-bounds update).
Mdp parse_model(std::string_view text, ModelFormat format, const ConstantOverrides& constants = {});

Mdp parse_explicit(std::string_view text);
Mdp parse_prism(std::string_view text, const ConstantOverrides& constants = {});

/// Writes the explicit-state format; transitions with marks also emit
/// `accepting` lines so products survive a round trip.
std::string write_explicit(const Mdp& m);

/// States reachable from the initial state.
std::vector<bool> reachable_states(const Mdp& m);

}  // namespace omegarl
