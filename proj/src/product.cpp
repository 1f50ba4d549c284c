#include "omegarl/product.hpp"

#include <algorithm>
#include <deque>
#include <map>

#include "omegarl/error.hpp"

namespace omegarl {

namespace {

void add_mass(std::vector<Transition>& succ, StateId target, double prob, AccSet marks) {
  for (auto& t : succ)
    if (t.target == target && t.marks == marks) {
      t.prob += prob;
      return;
    }
  succ.push_back({target, prob, marks});
}

}  // namespace

Product build_product(const Mdp& m, const Automaton& a, const ProductOptions& opts) {
  const AutomatonClass cls = classify(a);
  if (cls == AutomatonClass::Nondeterministic)
    throw ModelError("automaton is neither deterministic nor limit-deterministic");
  if (!a.acceptance.is_buchi() && cls != AutomatonClass::Deterministic)
    throw ModelError("Rabin automata must be deterministic");

  std::vector<int> bit(a.ap.size());
  for (std::size_t i = 0; i < a.ap.size(); ++i) {
    bit[i] = m.ap_index(a.ap[i]);
    if (bit[i] < 0) throw ModelError("automaton proposition '" + a.ap[i] + "' is not a model label");
  }
  auto translate = [&](Letter label) {
    Letter out = 0;
    for (std::size_t i = 0; i < bit.size(); ++i)
      if ((label >> bit[i]) & 1U) out |= Letter{1} << i;
    return out;
  };
  const std::vector<bool> dead = opts.merge_dead ? dead_states(a) : std::vector<bool>(a.num_states(), false);

  Product p;
  p.acceptance = a.acceptance;
  p.automaton_class = cls;
  p.mdp.ap = m.ap;

  std::map<std::pair<StateId, StateId>, StateId> ids;
  std::deque<StateId> queue;
  auto trap = [&]() {
    if (p.trap == kNoState) {
      p.trap = p.mdp.add_state("trap", 0);
      p.model_state.push_back(kNoState);
      p.automaton_state.push_back(kNoState);
      ActionId loop = p.mdp.intern_action("loop");
      p.mdp.choices[p.trap].push_back({loop, {{p.trap, 1.0, 0}}});
    }
    return p.trap;
  };
  auto get = [&](StateId s, StateId q) {
    if (dead[q]) return trap();
    auto [it, fresh] = ids.try_emplace({s, q}, 0);
    if (fresh) {
      it->second = p.mdp.add_state("(" + m.state_names[s] + "," + a.state_names[q] + ")", m.labels[s]);
      p.model_state.push_back(s);
      p.automaton_state.push_back(q);
      queue.push_back(it->second);
    }
    return it->second;
  };

  p.mdp.initial = get(m.initial, a.initial);
  while (!queue.empty()) {
    const StateId x = queue.front();
    queue.pop_front();
    const StateId s = p.model_state[x];
    const StateId q = p.automaton_state[x];
    const Letter letter = translate(m.labels[s]);

    std::vector<std::pair<StateId, AccSet>> moves;
    for (std::size_t e : a.enabled_edges(q, letter)) {
      std::pair<StateId, AccSet> mv{a.edges[q][e].target, a.edges[q][e].marks};
      if (std::find(moves.begin(), moves.end(), mv) == moves.end()) moves.push_back(mv);
    }
    if (moves.empty() && !opts.complete_rejecting)
      throw ModelError("automaton state '" + a.state_names[q] + "' has no edge for the label of model state '" +
                       m.state_names[s] + "' (use complete-rejecting to add a sink)");

    for (const Choice& c : m.choices[s]) {
      const std::string& act = m.action_names[c.action];
      if (moves.empty()) {
        std::vector<Transition> succ;
        for (const Transition& t : c.succ) add_mass(succ, trap(), t.prob, 0);
        p.mdp.choices[x].push_back({p.mdp.intern_action(act), std::move(succ)});
        continue;
      }
      for (const auto& [target, marks] : moves) {
        std::string name = act;
        if (moves.size() > 1) {
          name += "@" + a.state_names[target];
          for (const Choice& prev : p.mdp.choices[x])
            if (p.mdp.action_names[prev.action] == name) name += "#" + std::to_string(marks);
        }
        std::vector<Transition> succ;
        for (const Transition& t : c.succ) add_mass(succ, get(t.target, target), t.prob, marks);
        p.mdp.choices[x].push_back({p.mdp.intern_action(name), std::move(succ)});
      }
    }
  }
  return p;
}

AugmentedMdp augment(const Product& p, double zeta) {
  if (!p.acceptance.is_buchi()) throw ModelError("augmentation is defined for Buchi products only");
  if (!(zeta > 0.0 && zeta < 1.0)) throw ModelError("zeta must lie strictly between 0 and 1");
  AugmentedMdp out;
  out.zeta = zeta;
  out.accepting_marks = p.acceptance.good_marks();
  out.mdp = p.mdp;
  out.sink = out.mdp.add_state("t", 0);
  const ActionId sink_action = out.mdp.intern_action("sink");
  for (StateId s = 0; s < p.num_states(); ++s)
    for (Choice& c : out.mdp.choices[s]) {
      std::vector<Transition> succ;
      double to_sink = 0.0;
      for (const Transition& t : c.succ) {
        if (t.marks & out.accepting_marks) {
          succ.push_back({t.target, t.prob * zeta, t.marks});
          to_sink += t.prob * (1.0 - zeta);
        } else {
          succ.push_back(t);
        }
      }
      if (to_sink > 0.0) succ.push_back({out.sink, to_sink, 0});
      c.succ = std::move(succ);
    }
  out.mdp.choices[out.sink].push_back({sink_action, {{out.sink, 1.0, 0}}});
  return out;
}

Mdp deaugment(const AugmentedMdp& a) {
  Mdp m = a.mdp;
  m.choices.erase(m.choices.begin() + a.sink);
  m.labels.erase(m.labels.begin() + a.sink);
  m.state_names.erase(m.state_names.begin() + a.sink);
  for (auto& cs : m.choices)
    for (Choice& c : cs) {
      std::vector<Transition> succ;
      for (const Transition& t : c.succ) {
        if (t.target == a.sink) continue;
        Transition u = t;
        if (u.target > a.sink) --u.target;
        if (u.marks & a.accepting_marks) u.prob /= a.zeta;
        succ.push_back(u);
      }
      c.succ = std::move(succ);
    }
  if (m.initial > a.sink) --m.initial;
  return m;
}

}  // namespace omegarl
