#include <algorithm>
#include <cmath>

#include "omegarl/analysis.hpp"
#include "omegarl/error.hpp"
#include "omegarl/graph.hpp"

namespace omegarl {

namespace {

Adjacency choice_graph(const Mdp& m) {
  Adjacency g(m.num_states());
  for (StateId s = 0; s < m.num_states(); ++s)
    for (const Choice& c : m.choices[s])
      for (const Transition& t : c.succ) g[s].push_back(t.target);
  return g;
}

/// States that can reach the target with probability 1 under some strategy.
std::vector<bool> prob1e(const Mdp& m, const std::vector<bool>& target, const std::vector<bool>& can_reach) {
  const std::size_t n = m.num_states();
  std::vector<bool> u = can_reach;
  while (true) {
    std::vector<bool> r = target;
    bool grew = true;
    while (grew) {
      grew = false;
      for (StateId s = 0; s < n; ++s) {
        if (r[s] || !u[s]) continue;
        for (const Choice& c : m.choices[s]) {
          bool stays = true, hits = false;
          for (const Transition& t : c.succ) {
            stays = stays && u[t.target];
            hits = hits || r[t.target];
          }
          if (stays && hits) {
            r[s] = true;
            grew = true;
            break;
          }
        }
      }
    }
    if (r == u) return u;
    u = std::move(r);
  }
}

double backup(const Choice& c, const Eigen::VectorXd& x) {
  double v = 0.0;
  for (const Transition& t : c.succ) v += t.prob * x[t.target];
  return v;
}

}  // namespace

ReachResult max_reach_prob(const Mdp& m, const std::vector<bool>& target, const ReachOptions& opts) {
  const std::size_t n = m.num_states();
  if (target.size() != n) throw ModelError("target mask has the wrong size");
  ReachResult r;
  const Adjacency g = choice_graph(m);
  const std::vector<bool> can_reach = backward_reachable(g, target);
  r.prob0.resize(n);
  for (StateId s = 0; s < n; ++s) r.prob0[s] = !can_reach[s];
  r.prob1 = prob1e(m, target, can_reach);

  r.values = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n));
  std::vector<StateId> unknown;
  for (StateId s = 0; s < n; ++s) {
    if (r.prob1[s])
      r.values[s] = 1.0;
    else if (!r.prob0[s])
      unknown.push_back(s);
  }

  while (!unknown.empty()) {
    if (r.iterations >= opts.max_iter)
      throw NonConvergence("value iteration did not converge in " + std::to_string(opts.max_iter) + " sweeps",
                           r.residual);
    ++r.iterations;
    double res = 0.0;
    for (StateId s : unknown) {
      double best = 0.0;
      for (const Choice& c : m.choices[s]) best = std::max(best, backup(c, r.values));
      res = std::max(res, std::abs(best - r.values[s]));
      r.values[s] = best;
    }
    r.residual = res;
    r.residual_history.push_back(res);
    if (res < opts.tol) break;
  }

  r.best_actions.resize(n);
  for (StateId s = 0; s < n; ++s) {
    double best = -1.0;
    for (const Choice& c : m.choices[s]) best = std::max(best, backup(c, r.values));
    for (std::size_t k = 0; k < m.choices[s].size(); ++k)
      if (backup(m.choices[s][k], r.values) >= best - opts.tie_tol) r.best_actions[s].push_back(k);
  }

  // Attractor over argmax choices: a choice is usable once one of its
  // successors is already known to make progress towards the target.
  r.strategy.assign(n, 0);
  std::vector<bool> done = target;
  bool grew = true;
  while (grew) {
    grew = false;
    for (StateId s = 0; s < n; ++s) {
      if (done[s] || r.prob0[s]) continue;
      for (std::size_t k : r.best_actions[s]) {
        bool progress = false;
        for (const Transition& t : m.choices[s][k].succ) progress = progress || done[t.target];
        if (progress) {
          r.strategy[s] = k;
          done[s] = true;
          grew = true;
          break;
        }
      }
    }
  }
  for (StateId s = 0; s < n; ++s)
    if (!done[s] && !r.best_actions[s].empty()) r.strategy[s] = r.best_actions[s].front();
  return r;
}

ReachResult max_satisfaction_prob(const Product& p, const ReachOptions& opts) {
  return max_reach_prob(p.mdp, accepting_mec_states(p), opts);
}

MixedStrategy MixedStrategy::pure(const Mdp& m, const std::vector<std::size_t>& choice) {
  MixedStrategy s;
  s.probs.resize(m.num_states());
  for (StateId x = 0; x < m.num_states() && x < choice.size(); ++x) {
    s.probs[x].assign(m.choices[x].size(), 0.0);
    s.probs[x][choice[x]] = 1.0;
  }
  return s;
}

MixedStrategy MixedStrategy::uniform(const Mdp& m) {
  MixedStrategy s;
  s.probs.resize(m.num_states());
  for (StateId x = 0; x < m.num_states(); ++x)
    s.probs[x].assign(m.choices[x].size(), 1.0 / static_cast<double>(m.choices[x].size()));
  return s;
}

MixedStrategy satisfaction_strategy(const Product& p, const ReachOptions& opts) {
  const std::vector<Mec> ecs = accepting_end_components(p);
  std::vector<bool> target(p.num_states(), false);
  for (const Mec& ec : ecs)
    for (StateId s : ec.states) target[s] = true;
  const ReachResult r = max_reach_prob(p.mdp, target, opts);
  MixedStrategy sigma = MixedStrategy::pure(p.mdp, r.strategy);
  for (const Mec& ec : ecs)
    for (std::size_t k = 0; k < ec.states.size(); ++k) {
      auto& row = sigma.probs[ec.states[k]];
      std::fill(row.begin(), row.end(), 0.0);
      for (std::size_t c : ec.actions[k]) row[c] = 1.0 / static_cast<double>(ec.actions[k].size());
    }
  return sigma;
}

}  // namespace omegarl
