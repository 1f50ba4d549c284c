#pragma once

// Independent oracles and random instance generators shared by the unit and
// acceptance tests. Nothing here calls the analysis module.

#include <Eigen/Dense>
#include <algorithm>
#include <cstdint>
#include <functional>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "omegarl/automaton.hpp"
#include "omegarl/mdp.hpp"

namespace testing {

using omegarl::AccSet;
using omegarl::Letter;
using omegarl::Mdp;
using omegarl::StateId;

/// Random distribution over `n` targets with probabilities k/den.
inline std::vector<std::pair<StateId, double>> random_distribution(std::mt19937_64& rng, std::size_t n,
                                                                   std::size_t max_support, int den = 8) {
  std::uniform_int_distribution<std::size_t> pick(0, n - 1);
  std::uniform_int_distribution<std::size_t> support(1, std::min(max_support, n));
  std::set<StateId> targets;
  const std::size_t k = support(rng);
  while (targets.size() < k) targets.insert(static_cast<StateId>(pick(rng)));
  std::vector<int> weights(k, 1);
  for (int left = den - static_cast<int>(k); left > 0; --left) ++weights[std::uniform_int_distribution<std::size_t>(0, k - 1)(rng)];
  std::vector<std::pair<StateId, double>> out;
  std::size_t i = 0;
  for (StateId t : targets) out.push_back({t, static_cast<double>(weights[i++]) / den});
  return out;
}

/// Random MDP over APs "p0".."p{num_ap-1}" with 1..max_actions actions per state.
inline Mdp random_mdp(std::mt19937_64& rng, std::size_t n, std::size_t max_actions, unsigned num_ap = 0,
                      std::size_t max_support = 3) {
  Mdp m;
  for (unsigned i = 0; i < num_ap; ++i) m.ap.push_back("p" + std::to_string(i));
  std::uniform_int_distribution<Letter> label(0, (Letter{1} << num_ap) - 1);
  std::uniform_int_distribution<std::size_t> actions(1, max_actions);
  for (std::size_t s = 0; s < n; ++s) m.add_state("s" + std::to_string(s), num_ap ? label(rng) : 0);
  for (std::size_t s = 0; s < n; ++s) {
    const std::size_t k = actions(rng);
    for (std::size_t a = 0; a < k; ++a) {
      omegarl::Choice c{m.intern_action("a" + std::to_string(a)), {}};
      for (auto [t, p] : random_distribution(rng, n, max_support)) c.succ.push_back({t, p, 0});
      m.choices[s].push_back(std::move(c));
    }
  }
  return m;
}

/// Complete deterministic Buchi automaton with one minterm edge per letter.
inline omegarl::Automaton random_dbw(std::mt19937_64& rng, std::size_t nq, unsigned num_ap, double accepting = 0.3) {
  omegarl::Automaton a;
  for (unsigned i = 0; i < num_ap; ++i) a.ap.push_back("p" + std::to_string(i));
  for (std::size_t q = 0; q < nq; ++q) a.add_state("q" + std::to_string(q));
  a.acceptance = omegarl::Acceptance::buchi(0);
  std::uniform_int_distribution<StateId> target(0, static_cast<StateId>(nq - 1));
  std::bernoulli_distribution acc(accepting);
  for (std::size_t q = 0; q < nq; ++q)
    for (Letter l = 0; l < (Letter{1} << num_ap); ++l)
      a.edges[q].push_back({omegarl::Guard::minterm(l, num_ap), target(rng), static_cast<AccSet>(acc(rng) ? 1 : 0)});
  return a;
}

/// Random Buchi automaton with 0..2 successors per (state, letter).
inline omegarl::Automaton random_nbw(std::mt19937_64& rng, std::size_t nq, unsigned num_ap) {
  omegarl::Automaton a;
  for (unsigned i = 0; i < num_ap; ++i) a.ap.push_back("p" + std::to_string(i));
  for (std::size_t q = 0; q < nq; ++q) a.add_state("q" + std::to_string(q));
  a.acceptance = omegarl::Acceptance::buchi(0);
  std::uniform_int_distribution<StateId> target(0, static_cast<StateId>(nq - 1));
  std::uniform_int_distribution<int> fanout(0, 2);
  std::bernoulli_distribution acc(0.3);
  for (std::size_t q = 0; q < nq; ++q)
    for (Letter l = 0; l < (Letter{1} << num_ap); ++l) {
      const int k = q == 0 ? std::max(1, fanout(rng)) : fanout(rng);
      for (int i = 0; i < k; ++i)
        a.edges[q].push_back({omegarl::Guard::minterm(l, num_ap), target(rng), static_cast<AccSet>(acc(rng) ? 1 : 0)});
    }
  return a;
}

/// Markov chain as a dense matrix with parallel "accepting mass" bookkeeping.
struct Chain {
  Eigen::MatrixXd P;
  /// Per state, probability of taking an accepting transition in one step.
  Eigen::VectorXd accepting_step;
  /// Accepting[s][t]: some transition s -> t carries a good mark.
  std::vector<std::vector<bool>> accepting_edge;
};

/// Chain induced by a positional strategy; `good` selects the accepting marks.
inline Chain induced_chain(const Mdp& m, const std::vector<std::size_t>& sigma, AccSet good) {
  const std::size_t n = m.num_states();
  Chain c{Eigen::MatrixXd::Zero(static_cast<long>(n), static_cast<long>(n)), Eigen::VectorXd::Zero(static_cast<long>(n)),
          std::vector<std::vector<bool>>(n, std::vector<bool>(n, false))};
  for (std::size_t s = 0; s < n; ++s)
    for (const auto& tr : m.choices[s][sigma[s]].succ) {
      c.P(static_cast<long>(s), static_cast<long>(tr.target)) += tr.prob;
      if (tr.marks & good) {
        c.accepting_step(static_cast<long>(s)) += tr.prob;
        c.accepting_edge[s][tr.target] = true;
      }
    }
  return c;
}

/// States from which some state in `target` is reachable in the chain.
inline std::vector<bool> can_reach(const Eigen::MatrixXd& P, const std::vector<bool>& target) {
  const std::size_t n = target.size();
  std::vector<bool> r = target;
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t s = 0; s < n; ++s) {
      if (r[s]) continue;
      for (std::size_t t = 0; t < n; ++t)
        if (P(static_cast<long>(s), static_cast<long>(t)) > 0 && r[t]) {
          r[s] = changed = true;
          break;
        }
    }
  }
  return r;
}

/// Probability of reaching `target` in the chain, by a dense solve on the
/// states that can reach it.
inline Eigen::VectorXd chain_reach(const Eigen::MatrixXd& P, const std::vector<bool>& target) {
  const std::size_t n = target.size();
  const std::vector<bool> live = can_reach(P, target);
  std::vector<long> idx(n, -1);
  long k = 0;
  for (std::size_t s = 0; s < n; ++s)
    if (live[s] && !target[s]) idx[s] = k++;
  Eigen::MatrixXd A = Eigen::MatrixXd::Identity(k, k);
  Eigen::VectorXd b = Eigen::VectorXd::Zero(k);
  for (std::size_t s = 0; s < n; ++s) {
    if (idx[s] < 0) continue;
    for (std::size_t t = 0; t < n; ++t) {
      const double p = P(static_cast<long>(s), static_cast<long>(t));
      if (p == 0) continue;
      if (target[t])
        b(idx[s]) += p;
      else if (idx[t] >= 0)
        A(idx[s], idx[t]) -= p;
    }
  }
  const Eigen::VectorXd x = k ? Eigen::VectorXd(A.fullPivLu().solve(b)) : Eigen::VectorXd();
  Eigen::VectorXd out = Eigen::VectorXd::Zero(static_cast<long>(n));
  for (std::size_t s = 0; s < n; ++s) out(static_cast<long>(s)) = target[s] ? 1.0 : (idx[s] >= 0 ? x(idx[s]) : 0.0);
  return out;
}

/// Bottom SCCs of a chain via mutual reachability (quadratic, fine for tests).
inline std::vector<std::vector<StateId>> chain_bsccs(const Eigen::MatrixXd& P) {
  const std::size_t n = static_cast<std::size_t>(P.rows());
  std::vector<std::vector<bool>> reach(n, std::vector<bool>(n, false));
  for (std::size_t s = 0; s < n; ++s) {
    reach[s][s] = true;
    std::vector<StateId> stack{static_cast<StateId>(s)};
    while (!stack.empty()) {
      const StateId u = stack.back();
      stack.pop_back();
      for (std::size_t t = 0; t < n; ++t)
        if (P(u, static_cast<long>(t)) > 0 && !reach[s][t]) {
          reach[s][t] = true;
          stack.push_back(static_cast<StateId>(t));
        }
    }
  }
  std::vector<std::vector<StateId>> out;
  std::vector<bool> done(n, false);
  for (std::size_t s = 0; s < n; ++s) {
    if (done[s]) continue;
    bool bottom = true;
    for (std::size_t t = 0; t < n; ++t)
      if (reach[s][t] && !reach[t][s]) bottom = false;
    if (!bottom) continue;
    std::vector<StateId> comp;
    for (std::size_t t = 0; t < n; ++t)
      if (reach[s][t]) {
        comp.push_back(static_cast<StateId>(t));
        done[t] = true;
      }
    out.push_back(std::move(comp));
  }
  return out;
}

/// Calls visit(sigma) for every positional strategy of m.
inline void for_each_positional(const Mdp& m, const std::function<void(const std::vector<std::size_t>&)>& visit) {
  const std::size_t n = m.num_states();
  std::vector<std::size_t> sigma(n, 0);
  while (true) {
    visit(sigma);
    std::size_t i = 0;
    while (i < n && ++sigma[i] == m.choices[i].size()) sigma[i++] = 0;
    if (i == n) return;
  }
}

/// Optimal reachability probabilities by enumerating positional strategies.
inline Eigen::VectorXd enumerate_max_reach(const Mdp& m, const std::vector<bool>& target) {
  Eigen::VectorXd best = Eigen::VectorXd::Zero(static_cast<long>(m.num_states()));
  for_each_positional(m, [&](const std::vector<std::size_t>& sigma) {
    best = best.cwiseMax(chain_reach(induced_chain(m, sigma, 0).P, target));
  });
  return best;
}

/// A state with its set of retained local choices.
using EcSignature = std::set<std::pair<StateId, std::vector<std::size_t>>>;

/// Maximal end components by brute force over all sub-MDPs: enumerate every
/// assignment of choice subsets, keep the end components, and return those not
/// contained in another one.
inline std::vector<EcSignature> brute_force_mecs(const Mdp& m) {
  const std::size_t n = m.num_states();
  std::vector<std::size_t> options(n);
  for (std::size_t s = 0; s < n; ++s) options[s] = std::size_t{1} << m.choices[s].size();
  std::vector<std::vector<std::pair<StateId, std::size_t>>> ecs;  // (state, choice bitmask)
  std::vector<std::size_t> mask(n, 0);
  while (true) {
    std::vector<StateId> states;
    for (std::size_t s = 0; s < n; ++s)
      if (mask[s]) states.push_back(static_cast<StateId>(s));
    bool ok = !states.empty();
    for (StateId s : states) {
      for (std::size_t c = 0; c < m.choices[s].size() && ok; ++c)
        if ((mask[s] >> c) & 1U)
          for (const auto& tr : m.choices[s][c].succ)
            if (!mask[tr.target]) ok = false;
      if (!ok) break;
    }
    if (ok) {
      // strong connectivity over retained choices
      for (StateId root : states) {
        std::vector<bool> seen(n, false);
        std::vector<StateId> stack{root};
        seen[root] = true;
        while (!stack.empty()) {
          const StateId u = stack.back();
          stack.pop_back();
          for (std::size_t c = 0; c < m.choices[u].size(); ++c)
            if ((mask[u] >> c) & 1U)
              for (const auto& tr : m.choices[u][c].succ)
                if (!seen[tr.target]) {
                  seen[tr.target] = true;
                  stack.push_back(tr.target);
                }
        }
        for (StateId s : states)
          if (!seen[s]) ok = false;
        if (!ok) break;
      }
    }
    if (ok) {
      std::vector<std::pair<StateId, std::size_t>> ec;
      for (StateId s : states) ec.push_back({s, mask[s]});
      ecs.push_back(std::move(ec));
    }
    std::size_t i = 0;
    while (i < n && ++mask[i] == options[i]) mask[i++] = 0;
    if (i == n) break;
  }
  auto contained = [&](const auto& a, const auto& b) {
    for (auto [s, ma] : a) {
      bool found = false;
      for (auto [t, mb] : b)
        if (s == t && (ma & ~mb) == 0) found = true;
      if (!found) return false;
    }
    return true;
  };
  std::vector<EcSignature> out;
  for (std::size_t i = 0; i < ecs.size(); ++i) {
    bool maximal = true;
    for (std::size_t j = 0; j < ecs.size() && maximal; ++j)
      if (i != j && contained(ecs[i], ecs[j]) && !contained(ecs[j], ecs[i])) maximal = false;
    if (!maximal) continue;
    EcSignature sig;
    for (auto [s, mk] : ecs[i]) {
      std::vector<std::size_t> acts;
      for (std::size_t c = 0; c < m.choices[s].size(); ++c)
        if ((mk >> c) & 1U) acts.push_back(c);
      sig.insert({s, acts});
    }
    out.push_back(std::move(sig));
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// Buchi membership of prefix.cycle^omega via the transition relation of the
/// cycle word: accepted iff some state reached after prefix.cycle^m lies on a
/// cycle^k loop through an accepting edge.
inline bool nbw_member(const omegarl::Automaton& a, const std::vector<Letter>& prefix, const std::vector<Letter>& cycle) {
  const std::size_t n = a.num_states();
  const AccSet good = AccSet{1} << a.acceptance.buchi_set;
  auto step = [&](const std::vector<bool>& from, Letter l) {
    std::vector<bool> to(n, false);
    for (std::size_t q = 0; q < n; ++q)
      if (from[q])
        for (const auto& e : a.edges[q])
          if (e.guard.eval(l)) to[e.target] = true;
    return to;
  };
  // rel[q][r] = 0 none, 1 reachable over one cycle word, 2 reachable with an accepting edge
  std::vector<std::vector<int>> rel(n, std::vector<int>(n, 0));
  for (std::size_t q = 0; q < n; ++q) {
    std::vector<int> cur(n, 0);
    cur[q] = 1;
    for (Letter l : cycle) {
      std::vector<int> next(n, 0);
      for (std::size_t r = 0; r < n; ++r)
        if (cur[r])
          for (const auto& e : a.edges[r])
            if (e.guard.eval(l)) next[e.target] = std::max(next[e.target], (e.marks & good) ? 2 : cur[r]);
      cur = std::move(next);
    }
    rel[q] = cur;
  }
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
          if (rel[i][k] && rel[k][j] && std::max(rel[i][k], rel[k][j]) > rel[i][j]) {
            rel[i][j] = std::max(rel[i][k], rel[k][j]);
            changed = true;
          }
  }
  std::vector<bool> cur(n, false);
  cur[a.initial] = true;
  for (Letter l : prefix) cur = step(cur, l);
  std::vector<bool> seen = cur;
  for (std::size_t rep = 0; rep <= n; ++rep) {
    for (Letter l : cycle) cur = step(cur, l);
    for (std::size_t q = 0; q < n; ++q) seen[q] = seen[q] || cur[q];
  }
  for (std::size_t q = 0; q < n; ++q)
    if (seen[q] && rel[q][q] == 2) return true;
  return false;
}

}  // namespace testing
