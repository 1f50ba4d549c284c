#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <Eigen/SparseLU>
#include <cmath>
#include <limits>

#include "omegarl/analysis.hpp"
#include "omegarl/error.hpp"
#include "omegarl/graph.hpp"

namespace omegarl {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

struct ChainEdge {
  StateId target;
  double prob;
  AccSet marks;
  double reward;
};

/// Markov chain induced by a strategy on its domain.
struct Chain {
  std::vector<bool> domain;
  std::vector<std::vector<ChainEdge>> out;
  Adjacency graph;
  std::vector<Bscc> bsccs;
  std::vector<int> bscc_of;
};

Chain induce(const Mdp& m, const MixedStrategy& sigma, const TransitionReward* rho) {
  const std::size_t n = m.num_states();
  for (StateId s = 0; s < n; ++s) {
    if (!sigma.defined(s)) continue;
    const auto& row = sigma.probs[s];
    if (row.size() != m.choices[s].size())
      throw ModelError("strategy row for state '" + m.state_names[s] + "' has the wrong number of actions");
    double sum = 0.0;
    for (double x : row) {
      if (!(x >= 0.0)) throw ModelError("negative strategy probability at state '" + m.state_names[s] + "'");
      sum += x;
    }
    if (std::abs(sum - 1.0) > 1e-9)
      throw ModelError("strategy at state '" + m.state_names[s] + "' does not sum to 1");
  }

  Chain ch;
  ch.domain.assign(n, false);
  ch.out.resize(n);
  ch.graph.resize(n);
  std::vector<StateId> stack;
  auto visit = [&](StateId s) {
    if (ch.domain[s]) return;
    ch.domain[s] = true;
    stack.push_back(s);
  };
  visit(m.initial);
  for (StateId s = 0; s < n; ++s)
    if (sigma.defined(s)) visit(s);
  while (!stack.empty()) {
    StateId s = stack.back();
    stack.pop_back();
    if (!sigma.defined(s)) throw ModelError("strategy is undefined at reachable state '" + m.state_names[s] + "'");
    for (std::size_t c = 0; c < m.choices[s].size(); ++c) {
      const double w = sigma.probs[s][c];
      if (w <= 0.0) continue;
      const auto& succ = m.choices[s][c].succ;
      for (std::size_t k = 0; k < succ.size(); ++k) {
        const Transition& t = succ[k];
        ch.out[s].push_back({t.target, w * t.prob, t.marks, rho ? (*rho)(s, c, k) : 0.0});
        ch.graph[s].push_back(t.target);
        visit(t.target);
      }
    }
  }

  const SccDecomposition scc = strongly_connected_components(ch.graph, ch.domain);
  ch.bscc_of.assign(n, -1);
  for (const auto& members : scc.members) {
    const int comp = scc.component[members.front()];
    bool bottom = true;
    for (StateId s : members)
      for (const ChainEdge& e : ch.out[s]) bottom = bottom && scc.component[e.target] == comp;
    if (!bottom) continue;
    for (StateId s : members) ch.bscc_of[s] = static_cast<int>(ch.bsccs.size());
    ch.bsccs.push_back({members, false});
  }
  return ch;
}

bool bscc_accepting(const Chain& ch, const Bscc& b, const Acceptance& acc) {
  AccSet seen = 0;
  for (StateId s : b.states)
    for (const ChainEdge& e : ch.out[s]) seen |= e.marks;
  return acc.accepts(seen);
}

/// Solves x_s = sum_e coeff(e) * x_target(e) + rhs(s) over `unknown`; values of
/// other states are taken from `x`.
template <class Coeff, class Rhs>
void solve_system(const Chain& ch, const std::vector<StateId>& unknown, Eigen::VectorXd& x, Coeff coeff, Rhs rhs) {
  if (unknown.empty()) return;
  std::vector<int> index(ch.domain.size(), -1);
  for (std::size_t i = 0; i < unknown.size(); ++i) index[unknown[i]] = static_cast<int>(i);
  const auto k = static_cast<Eigen::Index>(unknown.size());
  std::vector<Eigen::Triplet<double>> trip;
  Eigen::VectorXd b(k);
  for (Eigen::Index i = 0; i < k; ++i) {
    const StateId s = unknown[static_cast<std::size_t>(i)];
    trip.emplace_back(i, i, 1.0);
    double r = rhs(s);
    for (const ChainEdge& e : ch.out[s]) {
      const double w = coeff(e);
      if (w == 0.0) continue;
      if (index[e.target] >= 0)
        trip.emplace_back(i, index[e.target], -w);
      else
        r += w * x[e.target];
    }
    b[i] = r;
  }
  Eigen::SparseMatrix<double> a(k, k);
  a.setFromTriplets(trip.begin(), trip.end());
  Eigen::SparseLU<Eigen::SparseMatrix<double>> lu;
  lu.compute(a);
  if (lu.info() != Eigen::Success) throw Error("singular linear system in strategy evaluation");
  const Eigen::VectorXd sol = lu.solve(b);
  if (lu.info() != Eigen::Success) throw Error("linear solve failed in strategy evaluation");
  for (Eigen::Index i = 0; i < k; ++i) x[unknown[static_cast<std::size_t>(i)]] = sol[i];
}

}  // namespace

EvalReport evaluate_strategy(const Mdp& m, const Acceptance& acc, const MixedStrategy& sigma,
                             std::optional<double> zeta) {
  if (zeta && !(*zeta > 0.0 && *zeta < 1.0)) throw ModelError("zeta must lie strictly between 0 and 1");
  const std::size_t n = m.num_states();
  Chain ch = induce(m, sigma, nullptr);
  for (Bscc& b : ch.bsccs) b.accepting = bscc_accepting(ch, b, acc);

  EvalReport rep;
  const auto N = static_cast<Eigen::Index>(n);
  rep.a = Eigen::VectorXd::Constant(N, kNaN);
  rep.p = Eigen::VectorXd::Constant(N, kNaN);
  rep.f = Eigen::VectorXd::Constant(N, kNaN);

  // a: reach an accepting BSCC.
  std::vector<bool> acc_states(n, false);
  for (const Bscc& b : ch.bsccs)
    if (b.accepting)
      for (StateId s : b.states) acc_states[s] = true;
  const std::vector<bool> can_acc = backward_reachable(ch.graph, acc_states, ch.domain);
  std::vector<StateId> unknown;
  for (StateId s = 0; s < n; ++s) {
    if (!ch.domain[s]) continue;
    if (acc_states[s])
      rep.a[s] = 1.0;
    else if (!can_acc[s])
      rep.a[s] = 0.0;
    else
      unknown.push_back(s);
  }
  solve_system(ch, unknown, rep.a, [](const ChainEdge& e) { return e.prob; }, [](StateId) { return 0.0; });

  // f: expected good transitions while transient.
  const AccSet good = acc.good_marks();
  unknown.clear();
  for (StateId s = 0; s < n; ++s) {
    if (!ch.domain[s]) continue;
    if (ch.bscc_of[s] >= 0)
      rep.f[s] = 0.0;
    else
      unknown.push_back(s);
  }
  solve_system(
      ch, unknown, rep.f, [](const ChainEdge& e) { return e.prob; },
      [&](StateId s) {
        double r = 0.0;
        for (const ChainEdge& e : ch.out[s])
          if (e.marks & good) r += e.prob;
        return r;
      });

  // p: reach t in the augmented chain.
  if (zeta && acc.is_buchi()) {
    const double z = *zeta;
    std::vector<bool> sources(n, false);
    for (StateId s = 0; s < n; ++s)
      for (const ChainEdge& e : ch.out[s])
        if (e.marks & good) sources[s] = true;
    const std::vector<bool> can_t = backward_reachable(ch.graph, sources, ch.domain);
    unknown.clear();
    for (StateId s = 0; s < n; ++s) {
      if (!ch.domain[s]) continue;
      if (!can_t[s])
        rep.p[s] = 0.0;
      else
        unknown.push_back(s);
    }
    solve_system(
        ch, unknown, rep.p, [&](const ChainEdge& e) { return (e.marks & good) ? e.prob * z : e.prob; },
        [&](StateId s) {
          double r = 0.0;
          for (const ChainEdge& e : ch.out[s])
            if (e.marks & good) r += e.prob * (1.0 - z);
          return r;
        });
  }

  rep.domain = std::move(ch.domain);
  rep.bsccs = std::move(ch.bsccs);
  rep.bscc_of = std::move(ch.bscc_of);
  return rep;
}

EvalReport evaluate_strategy(const Product& p, const MixedStrategy& sigma, std::optional<double> zeta) {
  return evaluate_strategy(p.mdp, p.acceptance, sigma, zeta);
}

Eigen::VectorXd expected_average_reward(const Mdp& m, const TransitionReward& rho, const MixedStrategy& sigma) {
  const std::size_t n = m.num_states();
  const Chain ch = induce(m, sigma, &rho);
  Eigen::VectorXd v = Eigen::VectorXd::Constant(static_cast<Eigen::Index>(n), kNaN);

  for (const Bscc& b : ch.bsccs) {
    const auto k = static_cast<Eigen::Index>(b.states.size());
    std::vector<int> local(n, -1);
    for (Eigen::Index i = 0; i < k; ++i) local[b.states[static_cast<std::size_t>(i)]] = static_cast<int>(i);
    // Stationary distribution: (P^T - I) pi = 0 with one row replaced by sum(pi) = 1.
    Eigen::MatrixXd a = -Eigen::MatrixXd::Identity(k, k);
    Eigen::VectorXd r = Eigen::VectorXd::Zero(k);
    for (Eigen::Index i = 0; i < k; ++i)
      for (const ChainEdge& e : ch.out[b.states[static_cast<std::size_t>(i)]]) {
        a(local[e.target], i) += e.prob;
        r[i] += e.prob * e.reward;
      }
    a.row(k - 1).setOnes();
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(k);
    rhs[k - 1] = 1.0;
    const Eigen::VectorXd pi = a.fullPivLu().solve(rhs);
    const double gain = pi.dot(r);
    for (StateId s : b.states) v[s] = gain;
  }

  std::vector<StateId> transient;
  for (StateId s = 0; s < n; ++s)
    if (ch.domain[s] && ch.bscc_of[s] < 0) transient.push_back(s);
  solve_system(ch, transient, v, [](const ChainEdge& e) { return e.prob; }, [](StateId) { return 0.0; });
  return v;
}

TransitionReward rabin_reward(const Mdp& m, const RabinPair& pair, double r_plus, double r_minus) {
  return [&m, pair, r_plus, r_minus](StateId s, std::size_t c, std::size_t k) {
    const AccSet marks = m.choices[s][c].succ[k].marks;
    if (pair.fin >= 0 && ((marks >> pair.fin) & 1U)) return -r_minus;
    if ((marks >> pair.inf) & 1U) return r_plus;
    return 0.0;
  };
}

}  // namespace omegarl
