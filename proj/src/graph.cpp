#include "omegarl/graph.hpp"

#include <algorithm>

namespace omegarl {

SccDecomposition strongly_connected_components(const Adjacency& graph, const std::vector<bool>& active) {
  const std::size_t n = graph.size();
  auto on = [&](std::uint32_t v) { return active.empty() || active[v]; };

  SccDecomposition out;
  out.component.assign(n, -1);
  std::vector<int> index(n, -1), low(n, 0);
  std::vector<bool> on_stack(n, false);
  std::vector<std::uint32_t> stack;
  int counter = 0;

  struct Frame {
    std::uint32_t v;
    std::size_t next;
  };
  std::vector<Frame> call;

  for (std::uint32_t root = 0; root < n; ++root) {
    if (!on(root) || index[root] >= 0) continue;
    call.push_back({root, 0});
    index[root] = low[root] = counter++;
    stack.push_back(root);
    on_stack[root] = true;
    while (!call.empty()) {
      Frame& f = call.back();
      const auto& succ = graph[f.v];
      if (f.next < succ.size()) {
        std::uint32_t w = succ[f.next++];
        if (!on(w)) continue;
        if (index[w] < 0) {
          index[w] = low[w] = counter++;
          stack.push_back(w);
          on_stack[w] = true;
          call.push_back({w, 0});
        } else if (on_stack[w]) {
          low[f.v] = std::min(low[f.v], index[w]);
        }
        continue;
      }
      std::uint32_t v = f.v;
      call.pop_back();
      if (!call.empty()) low[call.back().v] = std::min(low[call.back().v], low[v]);
      if (low[v] == index[v]) {
        std::vector<std::uint32_t> comp;
        std::uint32_t w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = false;
          out.component[w] = static_cast<int>(out.members.size());
          comp.push_back(w);
        } while (w != v);
        std::sort(comp.begin(), comp.end());
        out.members.push_back(std::move(comp));
      }
    }
  }
  return out;
}

Adjacency reverse(const Adjacency& graph) {
  Adjacency rev(graph.size());
  for (std::uint32_t v = 0; v < graph.size(); ++v)
    for (std::uint32_t w : graph[v]) rev[w].push_back(v);
  return rev;
}

std::vector<bool> backward_reachable(const Adjacency& graph, const std::vector<bool>& targets,
                                     const std::vector<bool>& allowed) {
  const Adjacency rev = reverse(graph);
  std::vector<bool> seen(graph.size(), false);
  std::vector<std::uint32_t> stack;
  for (std::uint32_t v = 0; v < graph.size(); ++v)
    if (targets[v]) {
      seen[v] = true;
      stack.push_back(v);
    }
  while (!stack.empty()) {
    std::uint32_t v = stack.back();
    stack.pop_back();
    for (std::uint32_t u : rev[v]) {
      if (seen[u] || (!allowed.empty() && !allowed[u])) continue;
      seen[u] = true;
      stack.push_back(u);
    }
  }
  return seen;
}

std::vector<bool> forward_reachable(const Adjacency& graph, const std::vector<std::uint32_t>& sources) {
  std::vector<bool> seen(graph.size(), false);
  std::vector<std::uint32_t> stack;
  for (auto s : sources)
    if (!seen[s]) {
      seen[s] = true;
      stack.push_back(s);
    }
  while (!stack.empty()) {
    std::uint32_t v = stack.back();
    stack.pop_back();
    for (std::uint32_t w : graph[v])
      if (!seen[w]) {
        seen[w] = true;
        stack.push_back(w);
      }
  }
  return seen;
}

}  // namespace omegarl
