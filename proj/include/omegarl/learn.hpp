#pragma once

#include <cstdint>
#include <functional>
#include <random>

#include "omegarl/analysis.hpp"
#include "omegarl/product.hpp"

namespace omegarl {

struct LearnConfig {
  std::size_t episodes = 20000;
  std::size_t episode_length = 80;
  double alpha = 0.1;
  double epsilon = 0.1;
  double gamma = 1.0;
  double zeta = 0.99;
  std::uint64_t seed = 0;
  std::size_t runs = 5;
  /// Q values within this distance of the best count as equally good.
  double tie_tol = 0.01;

  /// Throws ModelError when a field is out of range.
  void validate() const;
};

/// Seeding: run r uses splitmix64(seed + r); episode e of a run reseeds
/// std::mt19937_64 with splitmix64(run_seed + e). The learner's exploration
/// stream uses splitmix64 of the episode seed.
std::uint64_t splitmix64(std::uint64_t x);
std::uint64_t run_seed(std::uint64_t seed, std::size_t run);
std::uint64_t episode_seed(std::uint64_t run_seed, std::size_t episode);
/// Uniform double in [0, 1) from the top 53 bits of one draw.
double uniform01(std::mt19937_64& rng);

/// Sampling-only view of an MDP. The learner sees state ids, the number of
/// enabled actions, rewards, and episode ends, never the probabilities.
class Env {
 public:
  struct Step {
    StateId state;
    double reward;
    bool terminal;
    bool truncated;
  };

  /// `sink` (or kNoState) is terminal and entering it pays 1. `reward`, when
  /// set, adds a per-transition reward.
  Env(const Mdp& m, StateId sink, std::size_t episode_length, TransitionReward reward = {});

  StateId reset(std::uint64_t episode_seed);
  /// Throws ModelError if `action` is not a local action index of the current state.
  Step step(std::size_t action);

  std::size_t num_states() const { return m_->num_states(); }
  std::size_t num_actions(StateId s) const { return m_->choices[s].size(); }
  StateId state() const { return current_; }
  StateId initial() const { return m_->initial; }

 private:
  const Mdp* m_;
  StateId sink_;
  std::size_t episode_length_;
  TransitionReward reward_;
  StateId current_ = 0;
  std::size_t steps_ = 0;
  std::mt19937_64 rng_;
};

Env make_env(const AugmentedMdp& a, const LearnConfig& cfg);

/// Q values and visit counts. Rows are created the first time a state is seen.
struct QTable {
  std::vector<std::vector<double>> q;
  std::vector<std::vector<std::uint64_t>> visits;

  explicit QTable(std::size_t num_states = 0) : q(num_states), visits(num_states) {}
  bool has(StateId s) const { return s < q.size() && !q[s].empty(); }
  double max(StateId s) const;
  void ensure(StateId s, std::size_t num_actions);
};

struct TraceRow {
  std::size_t episode;
  double episode_return;
  double greedy_value;
};
using TraceFn = std::function<void(const TraceRow&)>;

/// Tabular Q-learning with epsilon-greedy exploration (random tie-breaking).
/// Truncated episodes bootstrap from the last state; entering the sink does not.
QTable q_learning(Env& env, const LearnConfig& cfg, std::uint64_t run_seed, const TraceFn& trace = {});

/// Uniform over actions within tie_tol of the best Q value; rows of unseen states stay empty.
MixedStrategy extract_strategy(const QTable& q, double tie_tol);

/// Fills undefined rows with the uniform distribution and drops rows beyond the MDP.
MixedStrategy complete_uniform(MixedStrategy s, const Mdp& m);

enum class RabinMode { Discounted, Average };

struct RabinRewardConfig {
  std::size_t pair = 0;
  double r_plus = 1.0;
  double r_minus = 1.0;
  RabinMode mode = RabinMode::Average;
  /// Discount factor of the discounted mode.
  double lambda = 0.99;
};

/// Q-learning on the product with the reward of one Rabin pair. Average mode is
/// differential Q-learning with a learned reward rate; each episode restart is
/// treated as a move back to the initial state.
QTable rabin_q_learning(const Product& p, const LearnConfig& cfg, const RabinRewardConfig& rcfg,
                        std::uint64_t run_seed);

}  // namespace omegarl
