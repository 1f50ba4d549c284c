#include "omegarl/analysis.hpp"
#include "omegarl/error.hpp"
#include "omegarl/graph.hpp"

namespace omegarl {

MecDecomposition mec_decomposition(const Mdp& m, const ChoiceMask* allowed) {
  const std::size_t n = m.num_states();
  ChoiceMask mask(n);
  std::vector<bool> active(n, false);
  for (StateId s = 0; s < n; ++s) {
    mask[s].assign(m.choices[s].size(), 1);
    if (allowed)
      for (std::size_t c = 0; c < mask[s].size(); ++c) mask[s][c] = (*allowed)[s][c];
    for (char f : mask[s]) active[s] = active[s] || f;
  }

  SccDecomposition scc;
  bool changed = true;
  while (changed) {
    changed = false;
    Adjacency g(n);
    for (StateId s = 0; s < n; ++s) {
      if (!active[s]) continue;
      for (std::size_t c = 0; c < mask[s].size(); ++c)
        if (mask[s][c])
          for (const Transition& t : m.choices[s][c].succ) g[s].push_back(t.target);
    }
    scc = strongly_connected_components(g, active);
    for (StateId s = 0; s < n; ++s) {
      if (!active[s]) continue;
      bool any = false;
      for (std::size_t c = 0; c < mask[s].size(); ++c) {
        if (!mask[s][c]) continue;
        for (const Transition& t : m.choices[s][c].succ)
          if (!active[t.target] || scc.component[t.target] != scc.component[s]) {
            mask[s][c] = 0;
            changed = true;
            break;
          }
        any = any || mask[s][c];
      }
      if (!any) {
        active[s] = false;
        changed = true;
      }
    }
  }

  MecDecomposition out;
  out.mec_of.assign(n, -1);
  for (const auto& members : scc.members) {
    if (!active[members.front()]) continue;
    Mec mec;
    for (std::uint32_t s : members) {
      mec.states.push_back(s);
      std::vector<std::size_t> acts;
      for (std::size_t c = 0; c < mask[s].size(); ++c)
        if (mask[s][c]) acts.push_back(c);
      mec.actions.push_back(std::move(acts));
      out.mec_of[s] = static_cast<int>(out.mecs.size());
    }
    out.mecs.push_back(std::move(mec));
  }
  return out;
}

namespace {

bool mec_has_mark(const Mdp& m, const Mec& mec, int set) {
  for (std::size_t i = 0; i < mec.states.size(); ++i)
    for (std::size_t c : mec.actions[i])
      for (const Transition& t : m.choices[mec.states[i]][c].succ)
        if ((t.marks >> set) & 1U) return true;
  return false;
}

}  // namespace

std::vector<std::size_t> accepting_mecs(const Mdp& m, const Acceptance& acc, const MecDecomposition& d) {
  if (!acc.is_buchi()) throw ModelError("accepting_mecs expects Buchi acceptance");
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < d.mecs.size(); ++i)
    if (mec_has_mark(m, d.mecs[i], acc.buchi_set)) out.push_back(i);
  return out;
}

std::vector<std::size_t> accepting_mecs(const Product& p, const MecDecomposition& d) {
  return accepting_mecs(p.mdp, p.acceptance, d);
}

std::vector<std::size_t> rabin_accepting_mecs(const Mdp& m, const Acceptance& acc, const MecDecomposition& d) {
  std::vector<RabinPair> pairs = acc.is_buchi() ? std::vector<RabinPair>{{-1, acc.buchi_set}} : acc.pairs;
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < d.mecs.size(); ++i) {
    const Mec& mec = d.mecs[i];
    bool accepting = false;
    for (const RabinPair& pair : pairs) {
      ChoiceMask mask(m.num_states());
      for (StateId s = 0; s < m.num_states(); ++s) mask[s].assign(m.choices[s].size(), 0);
      for (std::size_t k = 0; k < mec.states.size(); ++k) {
        const StateId s = mec.states[k];
        for (std::size_t c : mec.actions[k]) {
          bool bad = false;
          if (pair.fin >= 0)
            for (const Transition& t : m.choices[s][c].succ) bad = bad || ((t.marks >> pair.fin) & 1U);
          mask[s][c] = !bad;
        }
      }
      const MecDecomposition sub = mec_decomposition(m, &mask);
      for (const Mec& inner : sub.mecs)
        if (mec_has_mark(m, inner, pair.inf)) accepting = true;
      if (accepting) break;
    }
    if (accepting) out.push_back(i);
  }
  return out;
}

std::vector<std::size_t> rabin_accepting_mecs(const Product& p, const MecDecomposition& d) {
  return rabin_accepting_mecs(p.mdp, p.acceptance, d);
}

std::vector<Mec> accepting_end_components(const Product& p) {
  const Mdp& m = p.mdp;
  const MecDecomposition d = mec_decomposition(m);
  std::vector<Mec> out;
  if (p.acceptance.is_buchi()) {
    for (std::size_t i : accepting_mecs(p, d)) out.push_back(d.mecs[i]);
    return out;
  }
  std::vector<bool> covered(m.num_states(), false);
  for (const Mec& mec : d.mecs)
    for (const RabinPair& pair : p.acceptance.pairs) {
      ChoiceMask mask(m.num_states());
      for (StateId s = 0; s < m.num_states(); ++s) mask[s].assign(m.choices[s].size(), 0);
      for (std::size_t k = 0; k < mec.states.size(); ++k)
        for (std::size_t c : mec.actions[k]) {
          bool bad = false;
          if (pair.fin >= 0)
            for (const Transition& t : m.choices[mec.states[k]][c].succ) bad = bad || ((t.marks >> pair.fin) & 1U);
          mask[mec.states[k]][c] = !bad;
        }
      for (const Mec& inner : mec_decomposition(m, &mask).mecs) {
        if (!mec_has_mark(m, inner, pair.inf) || covered[inner.states.front()]) continue;
        for (StateId s : inner.states) covered[s] = true;
        out.push_back(inner);
      }
    }
  return out;
}

std::vector<bool> accepting_mec_states(const Product& p) {
  const MecDecomposition d = mec_decomposition(p.mdp);
  const std::vector<std::size_t> acc =
      p.acceptance.is_buchi() ? accepting_mecs(p, d) : rabin_accepting_mecs(p, d);
  std::vector<bool> target(p.num_states(), false);
  for (std::size_t i : acc)
    for (StateId s : d.mecs[i].states) target[s] = true;
  return target;
}

}  // namespace omegarl
