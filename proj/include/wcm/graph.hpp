#pragma once

// Undirected simple graphs with stable edge ids, matchings, and the
// induced-connectivity queries used throughout the solver.

#include <span>
#include <string>
#include <utility>
#include <vector>

namespace wcm {

struct Graph {
    int n = 0;                                       // vertex count
    std::vector<std::pair<int, int>> edges;          // (u, v) with u < v, id = index
    std::vector<std::vector<std::pair<int, int>>> adj;  // per vertex: (neighbor, edge id)

    int m() const { return static_cast<int>(edges.size()); }
    int degree(int u) const { return static_cast<int>(adj[u].size()); }

    // Edge id of {u, v}, or -1 if the pair is not an edge.
    int edge_index(int u, int v) const;
};

// A matching is a set of edge ids; callers keep them sorted for determinism.
using Matching = std::vector<int>;

// Builds a graph, assigning edge ids in input order. Endpoints may come in
// either order. Throws std::invalid_argument on self-loops, duplicate edges,
// or out-of-range endpoints, naming the offending pair.
Graph build_graph(int n, const std::vector<std::pair<int, int>>& edge_list);

// True iff no vertex is covered by two of the given edges.
bool is_matching(const Graph& g, std::span<const int> edge_ids);

// Vertices covered by the matching, sorted ascending. Size is 2 * |matching|.
std::vector<int> covered_vertices(const Graph& g, const Matching& matching);

// True iff the subgraph induced by the covered vertices is connected.
// The empty matching counts as connected.
bool is_connected_matching(const Graph& g, const Matching& matching);

}  // namespace wcm
