#pragma once

#include <cstdint>
#include <vector>

namespace omegarl {

using Adjacency = std::vector<std::vector<std::uint32_t>>;

struct SccDecomposition {
  /// Component index per node, -1 for nodes outside the active set.
  std::vector<int> component;
  /// Members of each component, in reverse topological order (sinks first).
  std::vector<std::vector<std::uint32_t>> members;
};

/// Tarjan's algorithm (iterative). Nodes with `active[v] == false` are ignored
/// along with their edges; an empty mask means all nodes are active.
SccDecomposition strongly_connected_components(const Adjacency& graph, const std::vector<bool>& active = {});

/// Nodes that can reach some node in `targets`, moving only through `allowed`
/// nodes (empty mask = all). Targets are always included.
std::vector<bool> backward_reachable(const Adjacency& graph, const std::vector<bool>& targets,
                                     const std::vector<bool>& allowed = {});

/// Nodes reachable from `sources`.
std::vector<bool> forward_reachable(const Adjacency& graph, const std::vector<std::uint32_t>& sources);

Adjacency reverse(const Adjacency& graph);

}  // namespace omegarl
