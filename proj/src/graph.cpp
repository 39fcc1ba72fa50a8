#include "wcm/graph.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace wcm {

int Graph::edge_index(int u, int v) const {
    if (adj[u].size() > adj[v].size()) std::swap(u, v);
    for (const auto& [w, e] : adj[u])
        if (w == v) return e;
    return -1;
}

Graph build_graph(int n, const std::vector<std::pair<int, int>>& edge_list) {
    if (n < 0) throw std::invalid_argument("build_graph: negative vertex count");
    Graph g;
    g.n = n;
    g.adj.assign(n, {});
    g.edges.reserve(edge_list.size());
    std::set<std::pair<int, int>> seen;
    for (auto [u, v] : edge_list) {
        if (u > v) std::swap(u, v);
        if (u < 0 || v >= n)
            throw std::invalid_argument("build_graph: endpoint out of range in (" +
                                        std::to_string(u) + "," + std::to_string(v) + ")");
        if (u == v)
            throw std::invalid_argument("build_graph: self-loop at vertex " + std::to_string(u));
        if (!seen.insert({u, v}).second)
            throw std::invalid_argument("build_graph: duplicate edge (" + std::to_string(u) +
                                        "," + std::to_string(v) + ")");
        int id = static_cast<int>(g.edges.size());
        g.edges.emplace_back(u, v);
        g.adj[u].emplace_back(v, id);
        g.adj[v].emplace_back(u, id);
    }
    return g;
}

bool is_matching(const Graph& g, std::span<const int> edge_ids) {
    std::vector<char> covered(g.n, 0);
    for (int e : edge_ids) {
        if (e < 0 || e >= g.m())
            throw std::invalid_argument("is_matching: edge id out of range");
        auto [u, v] = g.edges[e];
        if (covered[u] || covered[v]) return false;
        covered[u] = covered[v] = 1;
    }
    return true;
}

std::vector<int> covered_vertices(const Graph& g, const Matching& matching) {
    std::vector<int> cov;
    cov.reserve(2 * matching.size());
    for (int e : matching) {
        if (e < 0 || e >= g.m())
            throw std::invalid_argument("covered_vertices: edge id out of range");
        cov.push_back(g.edges[e].first);
        cov.push_back(g.edges[e].second);
    }
    std::sort(cov.begin(), cov.end());
    return cov;
}

bool is_connected_matching(const Graph& g, const Matching& matching) {
    if (matching.empty()) return true;
    std::vector<char> in_cover(g.n, 0);
    std::vector<int> cov = covered_vertices(g, matching);
    for (int u : cov) in_cover[u] = 1;

    // DFS over the subgraph induced by covered vertices.
    std::vector<int> stack{cov.front()};
    std::vector<char> seen(g.n, 0);
    seen[cov.front()] = 1;
    size_t reached = 1;
    while (!stack.empty()) {
        int u = stack.back();
        stack.pop_back();
        for (const auto& [v, e] : g.adj[u]) {
            (void)e;
            if (in_cover[v] && !seen[v]) {
                seen[v] = 1;
                ++reached;
                stack.push_back(v);
            }
        }
    }
    return reached == cov.size();
}

}  // namespace wcm
