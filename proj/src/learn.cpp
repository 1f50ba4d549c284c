#include "omegarl/learn.hpp"

#include <algorithm>
#include <cmath>

#include "omegarl/error.hpp"

namespace omegarl {

void LearnConfig::validate() const {
  if (episodes == 0) throw ModelError("episodes must be positive");
  if (episode_length == 0) throw ModelError("episode length must be positive");
  if (!(alpha > 0.0 && alpha <= 1.0)) throw ModelError("alpha must lie in (0, 1]");
  if (!(epsilon >= 0.0 && epsilon <= 1.0)) throw ModelError("epsilon must lie in [0, 1]");
  if (!(gamma > 0.0 && gamma <= 1.0)) throw ModelError("gamma must lie in (0, 1]");
  if (!(zeta > 0.0 && zeta < 1.0)) throw ModelError("zeta must lie strictly between 0 and 1");
  if (runs == 0) throw ModelError("runs must be positive");
  if (!(tie_tol >= 0.0)) throw ModelError("tie tolerance must be non-negative");
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

std::uint64_t run_seed(std::uint64_t seed, std::size_t run) { return splitmix64(seed + run); }

std::uint64_t episode_seed(std::uint64_t run_seed, std::size_t episode) { return splitmix64(run_seed + episode); }

double uniform01(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

Env::Env(const Mdp& m, StateId sink, std::size_t episode_length, TransitionReward reward)
    : m_(&m), sink_(sink), episode_length_(episode_length), reward_(std::move(reward)), current_(m.initial) {}

StateId Env::reset(std::uint64_t seed) {
  rng_.seed(seed);
  current_ = m_->initial;
  steps_ = 0;
  return current_;
}

Env::Step Env::step(std::size_t action) {
  const auto& choices = m_->choices[current_];
  if (action >= choices.size()) throw ModelError("action not enabled in state '" + m_->state_names[current_] + "'");
  const auto& succ = choices[action].succ;
  const double u = uniform01(rng_);
  std::size_t k = 0;
  double acc = 0.0;
  for (; k + 1 < succ.size(); ++k) {
    acc += succ[k].prob;
    if (u < acc) break;
  }
  Step out{succ[k].target, 0.0, false, false};
  if (reward_) out.reward += reward_(current_, action, k);
  if (out.state == sink_) {
    out.reward += 1.0;
    out.terminal = true;
  }
  current_ = out.state;
  ++steps_;
  out.truncated = !out.terminal && steps_ >= episode_length_;
  return out;
}

Env make_env(const AugmentedMdp& a, const LearnConfig& cfg) {
  cfg.validate();
  return Env(a.mdp, a.sink, cfg.episode_length);
}

double QTable::max(StateId s) const {
  if (!has(s)) return 0.0;
  return *std::max_element(q[s].begin(), q[s].end());
}

void QTable::ensure(StateId s, std::size_t num_actions) {
  if (s >= q.size()) {
    q.resize(s + 1);
    visits.resize(s + 1);
  }
  if (q[s].empty()) {
    q[s].assign(num_actions, 0.0);
    visits[s].assign(num_actions, 0);
  }
}

namespace {

std::size_t pick(std::mt19937_64& rng, std::size_t n) {
  return std::min(n - 1, static_cast<std::size_t>(uniform01(rng) * static_cast<double>(n)));
}

std::size_t epsilon_greedy(const std::vector<double>& row, double epsilon, std::mt19937_64& rng) {
  if (uniform01(rng) < epsilon) return pick(rng, row.size());
  const double best = *std::max_element(row.begin(), row.end());
  std::vector<std::size_t> ties;
  for (std::size_t i = 0; i < row.size(); ++i)
    if (row[i] == best) ties.push_back(i);
  return ties[pick(rng, ties.size())];
}

/// Shared episode loop. `target` maps the table, the step and the current estimate to the TD target.
template <class Target>
QTable run_q_learning(Env& env, const LearnConfig& cfg, std::uint64_t seed, const TraceFn& trace, Target target) {
  QTable qt(env.num_states());
  for (std::size_t ep = 0; ep < cfg.episodes; ++ep) {
    const std::uint64_t es = episode_seed(seed, ep);
    std::mt19937_64 agent(splitmix64(es));
    StateId s = env.reset(es);
    double ret = 0.0;
    for (std::size_t t = 0; t < cfg.episode_length; ++t) {
      qt.ensure(s, env.num_actions(s));
      const std::size_t a = epsilon_greedy(qt.q[s], cfg.epsilon, agent);
      const Env::Step st = env.step(a);
      if (!st.terminal) qt.ensure(st.state, env.num_actions(st.state));
      double& q = qt.q[s][a];
      q += cfg.alpha * (target(qt, st, q) - q);
      ++qt.visits[s][a];
      ret += st.reward;
      if (st.terminal || st.truncated) break;
      s = st.state;
    }
    if (trace) trace({ep, ret, qt.max(env.initial())});
  }
  return qt;
}

}  // namespace

QTable q_learning(Env& env, const LearnConfig& cfg, std::uint64_t seed, const TraceFn& trace) {
  cfg.validate();
  const double gamma = cfg.gamma;
  return run_q_learning(env, cfg, seed, trace, [gamma](const QTable& qt, const Env::Step& st, double) {
    return st.terminal ? st.reward : st.reward + gamma * qt.max(st.state);
  });
}

MixedStrategy extract_strategy(const QTable& q, double tie_tol) {
  MixedStrategy s;
  s.probs.resize(q.q.size());
  for (StateId x = 0; x < q.q.size(); ++x) {
    if (!q.has(x)) continue;
    const double best = q.max(x);
    std::vector<double> row(q.q[x].size(), 0.0);
    std::size_t ties = 0;
    for (std::size_t a = 0; a < row.size(); ++a)
      if (q.q[x][a] >= best - tie_tol) {
        row[a] = 1.0;
        ++ties;
      }
    for (double& v : row) v /= static_cast<double>(ties);
    s.probs[x] = std::move(row);
  }
  return s;
}

MixedStrategy complete_uniform(MixedStrategy s, const Mdp& m) {
  s.probs.resize(m.num_states());
  for (StateId x = 0; x < m.num_states(); ++x)
    if (s.probs[x].empty()) s.probs[x].assign(m.choices[x].size(), 1.0 / static_cast<double>(m.choices[x].size()));
  return s;
}

QTable rabin_q_learning(const Product& p, const LearnConfig& cfg, const RabinRewardConfig& rcfg,
                        std::uint64_t seed) {
  cfg.validate();
  if (p.acceptance.is_buchi()) throw ModelError("rabin_q_learning needs a Rabin product");
  if (rcfg.pair >= p.acceptance.pairs.size()) throw ModelError("Rabin pair index out of range");
  if (rcfg.r_plus < 0.0 || rcfg.r_minus < 0.0) throw ModelError("Rabin rewards must be non-negative");
  Env env(p.mdp, kNoState, cfg.episode_length,
          rabin_reward(p.mdp, p.acceptance.pairs[rcfg.pair], rcfg.r_plus, rcfg.r_minus));
  if (rcfg.mode == RabinMode::Discounted) {
    if (!(rcfg.lambda > 0.0 && rcfg.lambda < 1.0)) throw ModelError("lambda must lie strictly between 0 and 1");
    const double lambda = rcfg.lambda;
    return run_q_learning(env, cfg, seed, {}, [lambda](const QTable& qt, const Env::Step& st, double) {
      return st.reward + lambda * qt.max(st.state);
    });
  }
  // Differential Q-learning; the episode restart counts as a move back to the initial state.
  const StateId start = p.mdp.initial;
  const double alpha = cfg.alpha;
  double rate = 0.0;
  return run_q_learning(env, cfg, seed, {}, [start, alpha, &rate](const QTable& qt, const Env::Step& st, double q) {
    const double delta = st.reward - rate + qt.max(st.truncated ? start : st.state) - q;
    rate += alpha * delta;
    return q + delta;
  });
}

}  // namespace omegarl
