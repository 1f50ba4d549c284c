#include "omegarl/automaton.hpp"

#include <algorithm>
#include <set>

#include "omegarl/error.hpp"
#include "omegarl/graph.hpp"

namespace omegarl {

std::size_t Acceptance::num_sets() const {
  if (is_buchi()) return static_cast<std::size_t>(buchi_set) + 1;
  int top = -1;
  for (const auto& p : pairs) top = std::max({top, p.fin, p.inf});
  return static_cast<std::size_t>(top + 1);
}

AccSet Acceptance::good_marks() const {
  if (is_buchi()) return AccSet{1} << buchi_set;
  AccSet m = 0;
  for (const auto& p : pairs) m |= AccSet{1} << p.inf;
  return m;
}

bool Acceptance::accepts(AccSet inf_marks) const {
  if (is_buchi()) return (inf_marks >> buchi_set) & 1U;
  for (const auto& p : pairs) {
    bool fin_ok = p.fin < 0 || !((inf_marks >> p.fin) & 1U);
    if (fin_ok && ((inf_marks >> p.inf) & 1U)) return true;
  }
  return false;
}

std::string Acceptance::to_hoa() const {
  if (is_buchi()) return std::to_string(num_sets()) + " Inf(" + std::to_string(buchi_set) + ")";
  std::string out = std::to_string(num_sets()) + " ";
  if (pairs.empty()) return out + "f";
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    if (i) out += " | ";
    const auto& p = pairs[i];
    if (p.fin < 0)
      out += "Inf(" + std::to_string(p.inf) + ")";
    else
      out += "(Fin(" + std::to_string(p.fin) + ") & Inf(" + std::to_string(p.inf) + "))";
  }
  return out;
}

std::size_t Automaton::num_edges() const {
  std::size_t n = 0;
  for (const auto& es : edges) n += es.size();
  return n;
}

StateId Automaton::add_state(std::string name) {
  state_names.push_back(std::move(name));
  edges.emplace_back();
  return static_cast<StateId>(edges.size() - 1);
}

std::vector<std::size_t> Automaton::enabled_edges(StateId q, Letter letter) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < edges[q].size(); ++i)
    if (edges[q][i].guard.eval(letter)) out.push_back(i);
  return out;
}

const char* to_string(AutomatonClass c) {
  switch (c) {
    case AutomatonClass::Deterministic: return "deterministic";
    case AutomatonClass::LimitDeterministic: return "limit-deterministic";
    case AutomatonClass::Nondeterministic: return "nondeterministic";
  }
  return "?";
}

namespace {

Letter num_letters(const Automaton& a) {
  if (a.ap.size() > 20) throw ModelError("too many atomic propositions for letter enumeration");
  return Letter{1} << a.ap.size();
}

/// Number of distinct (target, marks) moves of q on a letter.
std::size_t branching(const Automaton& a, StateId q, Letter letter) {
  std::set<std::pair<StateId, AccSet>> moves;
  for (const Edge& e : a.edges[q])
    if (e.guard.eval(letter)) moves.insert({e.target, e.marks});
  return moves.size();
}

bool deterministic_on(const Automaton& a, const std::vector<bool>& states) {
  const Letter n = num_letters(a);
  for (StateId q = 0; q < a.num_states(); ++q) {
    if (!states[q]) continue;
    for (Letter l = 0; l < n; ++l)
      if (branching(a, q, l) > 1) return false;
  }
  return true;
}

Adjacency automaton_graph(const Automaton& a) {
  Adjacency g(a.num_states());
  for (StateId q = 0; q < a.num_states(); ++q)
    for (const Edge& e : a.edges[q]) g[q].push_back(e.target);
  return g;
}

}  // namespace

std::optional<Ldbw> limit_deterministic_partition(const Automaton& a) {
  if (!a.acceptance.is_buchi()) return std::nullopt;
  const AccSet acc = a.acceptance.good_marks();
  std::vector<std::uint32_t> sources;
  for (StateId q = 0; q < a.num_states(); ++q)
    for (const Edge& e : a.edges[q])
      if (e.marks & acc) {
        sources.push_back(q);
        break;
      }
  std::vector<bool> final_part = forward_reachable(automaton_graph(a), sources);
  if (!deterministic_on(a, final_part)) return std::nullopt;
  Ldbw out{a, final_part, {}};
  for (StateId q = 0; q < a.num_states(); ++q) {
    if (final_part[q]) continue;
    for (std::size_t i = 0; i < a.edges[q].size(); ++i)
      if (final_part[a.edges[q][i].target]) out.guess_edges.emplace_back(q, i);
  }
  return out;
}

AutomatonClass classify(const Automaton& a) {
  if (deterministic_on(a, std::vector<bool>(a.num_states(), true))) return AutomatonClass::Deterministic;
  if (limit_deterministic_partition(a)) return AutomatonClass::LimitDeterministic;
  return AutomatonClass::Nondeterministic;
}

bool is_complete(const Automaton& a) {
  const Letter n = num_letters(a);
  for (StateId q = 0; q < a.num_states(); ++q)
    for (Letter l = 0; l < n; ++l)
      if (a.enabled_edges(q, l).empty()) return false;
  return true;
}

std::vector<bool> dead_states(const Automaton& a) {
  const AccSet good = a.acceptance.good_marks();
  std::vector<bool> live_src(a.num_states(), false);
  for (StateId q = 0; q < a.num_states(); ++q)
    for (const Edge& e : a.edges[q])
      if (e.marks & good) live_src[q] = true;
  std::vector<bool> live = backward_reachable(automaton_graph(a), live_src);
  std::vector<bool> dead(a.num_states());
  for (StateId q = 0; q < a.num_states(); ++q) dead[q] = !live[q];
  return dead;
}

LassoMembership::LassoMembership(const Automaton& a) : a_(&a) {
  if (a.ap.size() > 16) throw ModelError("lasso membership supports at most 16 atomic propositions");
  const std::size_t nq = a.num_states();
  const Letter letters = Letter{1} << a.ap.size();
  begin_.assign(letters * nq + 1, 0);
  for (Letter l = 0; l < letters; ++l)
    for (StateId q = 0; q < nq; ++q) {
      for (const Edge& e : a.edges[q])
        if (e.guard.eval(l)) succ_.push_back({e.target, e.marks});
      begin_[l * nq + q + 1] = static_cast<std::uint32_t>(succ_.size());
    }
}

bool LassoMembership::accepts(const std::vector<Letter>& prefix, const std::vector<Letter>& cycle) const {
  if (cycle.empty()) throw ModelError("lasso cycle must be nonempty");
  const Automaton& a = *a_;
  const std::size_t len = prefix.size() + cycle.size();
  const std::size_t nq = a.num_states();
  const Letter mask = (Letter{1} << a.ap.size()) - 1;
  std::vector<std::size_t> row(len);
  for (std::size_t pos = 0; pos < len; ++pos)
    row[pos] = static_cast<std::size_t>((pos < prefix.size() ? prefix[pos] : cycle[pos - prefix.size()]) & mask) * nq;
  auto next_pos = [&](std::size_t pos) { return pos + 1 < len ? pos + 1 : prefix.size(); };
  auto node = [&](StateId q, std::size_t pos) { return static_cast<std::uint32_t>(pos * nq + q); };
  // successors of node v = (q, pos) are succ_[first(v) .. last(v))
  auto first = [&](std::uint32_t v) { return begin_[row[v / nq] + v % nq]; };
  auto last = [&](std::uint32_t v) { return begin_[row[v / nq] + v % nq + 1]; };
  auto target_of = [&](std::uint32_t v, std::uint32_t i) { return node(succ_[i].target, next_pos(v / nq)); };
  const std::size_t n = len * nq;
  const std::uint32_t start = node(a.initial, 0);

  if (a.acceptance.is_buchi()) {
    // Nested depth-first search: when the outer search leaves a node, an inner
    // search from each accepting successor looks for a way back to it.
    const AccSet good = AccSet{1} << a.acceptance.buchi_set;
    struct Frame {
      std::uint32_t v;
      std::uint32_t i;
    };
    std::vector<char> outer(n, 0), inner(n, 0);
    std::vector<Frame> stack, inner_stack;
    auto back_to = [&](std::uint32_t from, std::uint32_t seed) {
      if (from == seed) return true;
      if (inner[from]) return false;
      inner[from] = 1;
      inner_stack.assign(1, {from, first(from)});
      while (!inner_stack.empty()) {
        Frame& f = inner_stack.back();
        if (f.i == last(f.v)) {
          inner_stack.pop_back();
          continue;
        }
        const std::uint32_t w = target_of(f.v, f.i++);
        if (w == seed) return true;
        if (!inner[w]) {
          inner[w] = 1;
          inner_stack.push_back({w, first(w)});
        }
      }
      return false;
    };
    outer[start] = 1;
    stack.push_back({start, first(start)});
    while (!stack.empty()) {
      Frame& f = stack.back();
      const std::uint32_t v = f.v;
      if (f.i < last(v)) {
        const std::uint32_t w = target_of(v, f.i++);
        if (!outer[w]) {
          outer[w] = 1;
          stack.push_back({w, first(w)});
        }
        continue;
      }
      for (std::uint32_t i = first(v); i < last(v); ++i)
        if ((succ_[i].marks & good) && back_to(target_of(v, i), v)) return true;
      stack.pop_back();
    }
    return false;
  }

  Adjacency g(n);
  for (std::uint32_t v = 0; v < n; ++v)
    for (std::uint32_t i = first(v); i < last(v); ++i) g[v].push_back(target_of(v, i));
  const std::vector<bool> reach = forward_reachable(g, {start});
  for (const RabinPair& p : a.acceptance.pairs) {
    Adjacency pruned(n);
    for (std::uint32_t v = 0; v < n; ++v)
      for (std::uint32_t i = first(v); i < last(v); ++i)
        if (p.fin < 0 || !((succ_[i].marks >> p.fin) & 1U)) pruned[v].push_back(target_of(v, i));
    const SccDecomposition scc = strongly_connected_components(pruned, reach);
    for (std::uint32_t v = 0; v < n; ++v) {
      if (!reach[v]) continue;
      for (std::uint32_t i = first(v); i < last(v); ++i) {
        const AccSet m = succ_[i].marks;
        if (!((m >> p.inf) & 1U) || (p.fin >= 0 && ((m >> p.fin) & 1U))) continue;
        const std::uint32_t w = target_of(v, i);
        if (scc.component[v] >= 0 && scc.component[v] == scc.component[w]) return true;
      }
    }
  }
  return false;
}

bool accepts_lasso(const Automaton& a, const std::vector<Letter>& prefix, const std::vector<Letter>& cycle) {
  return LassoMembership(a).accepts(prefix, cycle);
}

}  // namespace omegarl
