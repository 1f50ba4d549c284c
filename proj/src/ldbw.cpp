#include <map>

#include "omegarl/automaton.hpp"
#include "omegarl/error.hpp"

namespace omegarl {

namespace {

using Subset = std::uint64_t;

std::string subset_name(Subset s) {
  std::string out = "{";
  bool first = true;
  for (unsigned i = 0; i < 64; ++i)
    if ((s >> i) & 1U) {
      if (!first) out += ",";
      out += std::to_string(i);
      first = false;
    }
  return out + "}";
}

/// Collects (target, marks) -> letters for one source state, then emits one
/// edge per group with a disjunction of minterms as its guard.
class EdgeGrouper {
 public:
  void add(StateId target, AccSet marks, Letter letter) { groups_[{target, marks}].push_back(letter); }

  std::vector<Edge> edges(unsigned num_ap) const {
    const std::size_t all = std::size_t{1} << num_ap;
    std::vector<Edge> out;
    for (const auto& [key, letters] : groups_) {
      Guard g = Guard::top();
      if (letters.size() != all) {
        std::vector<Guard> terms;
        for (Letter l : letters) terms.push_back(Guard::minterm(l, num_ap));
        g = Guard::disj(std::move(terms));
      }
      out.push_back(Edge{std::move(g), key.first, key.second});
    }
    return out;
  }

 private:
  std::map<std::pair<StateId, AccSet>, std::vector<Letter>> groups_;
};

}  // namespace

Ldbw nbw_to_ldbw(const Automaton& a) {
  if (!a.acceptance.is_buchi()) throw ModelError("nbw_to_ldbw requires Buchi acceptance");
  if (a.num_states() > 64) throw ModelError("nbw_to_ldbw supports at most 64 states");
  if (a.ap.size() > 16) throw ModelError("nbw_to_ldbw supports at most 16 atomic propositions");
  const unsigned num_ap = static_cast<unsigned>(a.ap.size());
  const Letter letters = Letter{1} << num_ap;
  const AccSet acc = a.acceptance.good_marks();

  // step[q][l] = successors of q on l; acc_step[q][l] = successors via accepting edges.
  std::vector<std::vector<Subset>> step(a.num_states(), std::vector<Subset>(letters, 0));
  auto acc_step = step;
  for (StateId q = 0; q < a.num_states(); ++q)
    for (const Edge& e : a.edges[q])
      for (Letter l = 0; l < letters; ++l)
        if (e.guard.eval(l)) {
          step[q][l] |= Subset{1} << e.target;
          if (e.marks & acc) acc_step[q][l] |= Subset{1} << e.target;
        }
  auto post = [&](Subset s, Letter l, const std::vector<std::vector<Subset>>& table) {
    Subset r = 0;
    for (unsigned q = 0; q < a.num_states(); ++q)
      if ((s >> q) & 1U) r |= table[q][l];
    return r;
  };

  Automaton out;
  out.ap = a.ap;
  out.acceptance = Acceptance::buchi(0);
  out.name = a.name.empty() ? "ldbw" : a.name + " (ldbw)";
  std::vector<bool> in_final;

  std::map<Subset, StateId> init_ids;
  std::map<std::pair<Subset, Subset>, StateId> final_ids;
  std::vector<Subset> init_queue;
  std::vector<std::pair<Subset, Subset>> final_queue;
  StateId sink = kNoState;

  auto new_state = [&](std::string name, bool final) {
    StateId id = out.add_state(std::move(name));
    in_final.push_back(final);
    return id;
  };
  auto init_state = [&](Subset s) {
    auto [it, fresh] = init_ids.try_emplace(s, 0);
    if (fresh) {
      it->second = new_state(subset_name(s), false);
      init_queue.push_back(s);
    }
    return it->second;
  };
  auto final_state = [&](Subset r, Subset b) {
    if (r == 0) {
      if (sink == kNoState) sink = new_state("sink", true);
      return sink;
    }
    auto [it, fresh] = final_ids.try_emplace({r, b}, 0);
    if (fresh) {
      it->second = new_state("(" + subset_name(r) + "," + subset_name(b) + ")", true);
      final_queue.push_back({r, b});
    }
    return it->second;
  };

  out.initial = init_state(Subset{1} << a.initial);
  std::vector<std::vector<Edge>> edges;
  auto set_edges = [&](StateId q, std::vector<Edge> es) {
    if (edges.size() <= q) edges.resize(q + 1);
    edges[q] = std::move(es);
  };

  while (!init_queue.empty() || !final_queue.empty()) {
    if (!init_queue.empty()) {
      Subset s = init_queue.back();
      init_queue.pop_back();
      StateId from = init_ids.at(s);
      EdgeGrouper g;
      for (Letter l = 0; l < letters; ++l) {
        Subset d = post(s, l, step);
        g.add(init_state(d), 0, l);
        for (Subset r = d; r != 0; r = (r - 1) & d) g.add(final_state(r, 0), 0, l);
      }
      set_edges(from, g.edges(num_ap));
      continue;
    }
    auto [r, b] = final_queue.back();
    final_queue.pop_back();
    StateId from = final_ids.at({r, b});
    EdgeGrouper g;
    for (Letter l = 0; l < letters; ++l) {
      Subset r2 = post(r, l, step);
      if (r2 == 0) {
        g.add(final_state(0, 0), 0, l);
        continue;
      }
      Subset b2 = post(b, l, step) | post(r, l, acc_step);
      if (b2 == r2)
        g.add(final_state(r2, 0), AccSet{1}, l);
      else
        g.add(final_state(r2, b2), 0, l);
    }
    set_edges(from, g.edges(num_ap));
  }
  if (sink != kNoState) set_edges(sink, {Edge{Guard::top(), sink, 0}});
  edges.resize(out.num_states());
  out.edges = std::move(edges);

  Ldbw result{std::move(out), std::move(in_final), {}};
  const Automaton& res = result.automaton;
  for (StateId q = 0; q < res.num_states(); ++q) {
    if (result.in_final[q]) continue;
    for (std::size_t i = 0; i < res.edges[q].size(); ++i)
      if (result.in_final[res.edges[q][i].target]) result.guess_edges.emplace_back(q, i);
  }
  return result;
}

}  // namespace omegarl
