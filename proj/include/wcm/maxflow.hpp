#pragma once

// Maximum flow / minimum cut on capacitated digraphs, and Gomory-Hu cut
// trees over undirected capacitated graphs.

#include <vector>

#include "wcm/graph.hpp"

namespace wcm {

struct CapDigraph {
    struct Arc {
        int tail = 0;
        int head = 0;
        double cap = 0.0;
    };
    int n = 0;
    std::vector<Arc> arcs;

    int add_node() { return n++; }
    void add_arc(int tail, int head, double cap) { arcs.push_back({tail, head, cap}); }
};

struct MaxFlowResult {
    double value = 0.0;
    // Source side of a minimum cut: contains s, excludes t, and the total
    // capacity of arcs leaving it equals value.
    std::vector<char> source_side;
};

// Highest-label push-relabel (preflow) with the gap heuristic. Only the
// value/min-cut phase is run; the returned cut certifies the flow value.
MaxFlowResult max_flow(const CapDigraph& d, int s, int t);

// Gomory-Hu cut tree: parent[] / cut_value[] rooted at vertex 0. For every
// pair (u, v), the minimum edge value on the tree path equals the minimum
// cut between u and v, and each tree edge induces a minimum cut between its
// endpoints (fundamental-cut property).
struct CutTree {
    int n = 0;
    std::vector<int> parent;        // parent[0] == -1
    std::vector<double> cut_value;  // value of the tree edge (u, parent[u])
    int flow_calls = 0;             // number of max-flow computations used
};

// Builds the cut tree of an undirected capacitated graph with exactly n-1
// max-flow computations (on contracted graphs).
CutTree gomory_hu(const Graph& g, const std::vector<double>& cap);

struct CutTreeQuery {
    double value = 0.0;
    std::vector<int> side;  // component of u after removing the bottleneck edge
};

// Minimum tree edge on the u-v path and the u-side of the corresponding cut.
CutTreeQuery cut_tree_query(const CutTree& t, int u, int v);

}  // namespace wcm
