#pragma once

#include <Eigen/Core>
#include <functional>
#include <optional>

#include "omegarl/automaton.hpp"
#include "omegarl/mdp.hpp"
#include "omegarl/product.hpp"

namespace omegarl {

/// Per state, one flag per local choice.
using ChoiceMask = std::vector<std::vector<char>>;

struct Mec {
  std::vector<StateId> states;
  /// Retained local choice indices, parallel to `states`.
  std::vector<std::vector<std::size_t>> actions;
};

struct MecDecomposition {
  std::vector<Mec> mecs;
  /// MEC index per state, -1 if the state is in none.
  std::vector<int> mec_of;
};

/// Maximal end components, by alternating SCC decomposition and pruning of
/// choices that leave their SCC. `allowed` restricts the usable choices.
MecDecomposition mec_decomposition(const Mdp& m, const ChoiceMask* allowed = nullptr);

/// MECs containing a retained transition in the Buchi set.
std::vector<std::size_t> accepting_mecs(const Mdp& m, const Acceptance& acc, const MecDecomposition& d);
std::vector<std::size_t> accepting_mecs(const Product& p, const MecDecomposition& d);

/// MECs that, for some pair i, contain an end component avoiding B_i with a G_i transition.
std::vector<std::size_t> rabin_accepting_mecs(const Mdp& m, const Acceptance& acc, const MecDecomposition& d);
std::vector<std::size_t> rabin_accepting_mecs(const Product& p, const MecDecomposition& d);

struct ReachOptions {
  double tol = 1e-9;
  std::size_t max_iter = 1'000'000;
  double tie_tol = 1e-6;
};

struct ReachResult {
  Eigen::VectorXd values;
  /// Per state, local choices whose one-step backup is within tie_tol of the optimum.
  std::vector<std::vector<std::size_t>> best_actions;
  /// An optimal positional strategy (local choice per state): argmax choices
  /// that also make progress towards the target.
  std::vector<std::size_t> strategy;
  std::vector<bool> prob0, prob1;
  std::size_t iterations = 0;
  double residual = 0.0;
  std::vector<double> residual_history;
};

/// Maximal probability of reaching `target`. Prob0A / Prob1E graph analysis
/// first, then Gauss-Seidel value iteration on the remaining states.
/// Throws NonConvergence when max_iter sweeps do not reach tol.
ReachResult max_reach_prob(const Mdp& m, const std::vector<bool>& target, const ReachOptions& opts = {});

/// End components in which some positional behavior is accepting: accepting
/// MECs for Buchi, the B_i-free sub-MECs with a G_i transition for Rabin.
std::vector<Mec> accepting_end_components(const Product& p);

/// States of accepting MECs (Buchi or Rabin).
std::vector<bool> accepting_mec_states(const Product& p);

/// Maximal probability of eventually dwelling in an accepting end component.
ReachResult max_satisfaction_prob(const Product& p, const ReachOptions& opts = {});

struct MixedStrategy;

/// Optimal strategy for the satisfaction objective: uniform over the retained
/// choices inside accepting end components, the reachability strategy elsewhere.
MixedStrategy satisfaction_strategy(const Product& p, const ReachOptions& opts = {});

/// Per-state distribution over local choices. An empty row means undefined.
struct MixedStrategy {
  std::vector<std::vector<double>> probs;

  static MixedStrategy pure(const Mdp& m, const std::vector<std::size_t>& choice);
  static MixedStrategy uniform(const Mdp& m);
  bool defined(StateId s) const { return s < probs.size() && !probs[s].empty(); }
};

struct Bscc {
  std::vector<StateId> states;
  bool accepting = false;
};

struct EvalReport {
  /// Probability of reaching t in the zeta-augmented chain (NaN without zeta or for Rabin).
  Eigen::VectorXd p;
  /// Probability of acceptance in the induced chain.
  Eigen::VectorXd a;
  /// Expected number of accepting transitions before a BSCC is reached.
  Eigen::VectorXd f;
  /// States covered by the strategy (closure of the initial state and every defined state).
  std::vector<bool> domain;
  std::vector<Bscc> bsccs;
  /// BSCC index per state, -1 for transient or out-of-domain states.
  std::vector<int> bscc_of;
};

/// Exact evaluation of a fixed strategy by linear solves on the induced chain.
/// Marks on transitions define acceptance. Throws ModelError if the strategy is
/// undefined somewhere in its own closure or is not a distribution.
EvalReport evaluate_strategy(const Mdp& m, const Acceptance& acc, const MixedStrategy& sigma,
                             std::optional<double> zeta = std::nullopt);
EvalReport evaluate_strategy(const Product& p, const MixedStrategy& sigma, std::optional<double> zeta = std::nullopt);

/// Reward of taking the transition at index `trans` of choice `choice` in `state`.
using TransitionReward = std::function<double(StateId state, std::size_t choice, std::size_t trans)>;

/// Long-run average reward per state under sigma (NaN outside the strategy's domain).
Eigen::VectorXd expected_average_reward(const Mdp& m, const TransitionReward& rho, const MixedStrategy& sigma);

/// Rabin reward of one pair: -r_minus on B transitions (checked first), r_plus on G, else 0.
TransitionReward rabin_reward(const Mdp& m, const RabinPair& pair, double r_plus, double r_minus);

}  // namespace omegarl
