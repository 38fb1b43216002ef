#pragma once

#include <cstddef>
#include <vector>

namespace psfwb::detail {

using Adjacency = std::vector<std::vector<std::size_t>>;

/// Strongly connected components (iterative Tarjan). component[v] is the
/// component id; ids are in reverse topological order of the condensation.
struct SccResult {
  std::vector<std::size_t> component;
  std::size_t count = 0;
};

inline SccResult strongly_connected_components(const Adjacency& adj) {
  const std::size_t n = adj.size();
  const std::size_t unset = static_cast<std::size_t>(-1);
  SccResult out;
  out.component.assign(n, unset);
  std::vector<std::size_t> index(n, unset), low(n, 0), stack;
  std::vector<bool> on_stack(n, false);
  std::size_t counter = 0;
  struct Frame {
    std::size_t v;
    std::size_t next_edge;
  };
  for (std::size_t root = 0; root < n; ++root) {
    if (index[root] != unset) continue;
    std::vector<Frame> frames{{root, 0}};
    index[root] = low[root] = counter++;
    stack.push_back(root);
    on_stack[root] = true;
    while (!frames.empty()) {
      Frame& f = frames.back();
      if (f.next_edge < adj[f.v].size()) {
        std::size_t w = adj[f.v][f.next_edge++];
        if (index[w] == unset) {
          index[w] = low[w] = counter++;
          stack.push_back(w);
          on_stack[w] = true;
          frames.push_back({w, 0});
        } else if (on_stack[w] && index[w] < low[f.v]) {
          low[f.v] = index[w];
        }
        continue;
      }
      const std::size_t v = f.v;
      if (low[v] == index[v]) {
        std::size_t w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = false;
          out.component[w] = out.count;
        } while (w != v);
        ++out.count;
      }
      frames.pop_back();
      if (!frames.empty() && low[v] < low[frames.back().v]) low[frames.back().v] = low[v];
    }
  }
  return out;
}

}  // namespace psfwb::detail
