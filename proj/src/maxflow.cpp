#include "wcm/maxflow.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <stdexcept>
#include <unordered_map>

namespace wcm {

namespace {
constexpr double kEps = 1e-12;
}

MaxFlowResult max_flow(const CapDigraph& d, int s, int t) {
    if (s == t) throw std::invalid_argument("max_flow: s == t");
    const int n = d.n;

    struct Res {
        int to;
        int rev;
        double cap;
    };
    std::vector<std::vector<Res>> adj(n);
    for (const auto& a : d.arcs) {
        if (a.cap <= 0.0 || a.tail == a.head) continue;
        adj[a.tail].push_back({a.head, static_cast<int>(adj[a.head].size()), a.cap});
        adj[a.head].push_back({a.tail, static_cast<int>(adj[a.tail].size()) - 1, 0.0});
    }

    std::vector<double> excess(n, 0.0);
    std::vector<int> height(n, 0), cur(n, 0);
    std::vector<int> level_count(2 * n + 1, 0);
    height[s] = n;
    for (int v = 0; v < n; ++v) level_count[height[v]]++;

    std::vector<std::vector<int>> bucket(std::max(1, 2 * n));
    int hi = 0;

    auto activate = [&](int v) {
        if (v != s && v != t && excess[v] > kEps && height[v] < n) {
            bucket[height[v]].push_back(v);
            hi = std::max(hi, height[v]);
        }
    };

    for (auto& e : adj[s]) {
        if (e.cap > kEps) {
            double delta = e.cap;
            adj[e.to][e.rev].cap += delta;
            e.cap = 0.0;
            excess[e.to] += delta;
            activate(e.to);
        }
    }

    // First phase only: push excess toward t below height n; trapped excess
    // flows back implicitly and is irrelevant for the value and the cut.
    while (hi >= 0) {
        if (bucket[hi].empty()) {
            --hi;
            continue;
        }
        int v = bucket[hi].back();
        bucket[hi].pop_back();
        if (v == s || v == t || height[v] != hi || excess[v] <= kEps) continue;

        while (excess[v] > kEps && height[v] < n) {
            if (cur[v] == static_cast<int>(adj[v].size())) {
                // relabel
                int old_h = height[v];
                int min_h = 2 * n;
                for (const auto& e : adj[v])
                    if (e.cap > kEps) min_h = std::min(min_h, height[e.to]);
                int new_h = std::min(min_h + 1, 2 * n);
                level_count[old_h]--;
                height[v] = new_h;
                level_count[new_h]++;
                cur[v] = 0;
                if (level_count[old_h] == 0 && old_h < n) {
                    // gap heuristic: nothing above the hole can reach t
                    for (int w = 0; w < n; ++w) {
                        if (w != s && height[w] > old_h && height[w] < n) {
                            level_count[height[w]]--;
                            height[w] = n + 1;
                            level_count[n + 1]++;
                        }
                    }
                }
                continue;
            }
            Res& e = adj[v][cur[v]];
            if (e.cap > kEps && height[v] == height[e.to] + 1) {
                double delta = std::min(excess[v], e.cap);
                e.cap -= delta;
                adj[e.to][e.rev].cap += delta;
                excess[v] -= delta;
                bool was_active = excess[e.to] > kEps;
                excess[e.to] += delta;
                if (!was_active) activate(e.to);
            } else {
                ++cur[v];
            }
        }
        activate(v);
    }

    MaxFlowResult result;
    result.value = excess[t];

    // Minimum cut: complement of the set of nodes that reach t in the
    // residual network.
    std::vector<char> reaches_t(n, 0);
    reaches_t[t] = 1;
    std::deque<int> queue{t};
    while (!queue.empty()) {
        int w = queue.front();
        queue.pop_front();
        for (const auto& e : adj[w]) {
            int x = e.to;
            if (!reaches_t[x] && adj[x][e.rev].cap > kEps) {
                reaches_t[x] = 1;
                queue.push_back(x);
            }
        }
    }
    result.source_side.assign(n, 0);
    for (int v = 0; v < n; ++v) result.source_side[v] = reaches_t[v] ? 0 : 1;
    return result;
}

CutTree gomory_hu(const Graph& g, const std::vector<double>& cap) {
    const int n = g.n;
    CutTree tree;
    tree.n = n;
    tree.parent.assign(n, -1);
    tree.cut_value.assign(n, 0.0);
    if (n <= 1) return tree;

    // Tree nodes are groups of original vertices; groups are split until all
    // are singletons, contracting the rest of the current tree per flow.
    std::vector<std::vector<int>> group;
    std::vector<std::vector<std::pair<int, double>>> tnbr;  // (node, edge value)
    {
        std::vector<int> all(n);
        for (int v = 0; v < n; ++v) all[v] = v;
        group.push_back(std::move(all));
        tnbr.emplace_back();
    }

    std::deque<int> work{0};
    while (!work.empty()) {
        int xid = work.front();
        work.pop_front();
        if (group[xid].size() < 2) continue;

        // Branches: connected components of the tree after removing xid.
        // Every original vertex maps to a meta node: itself if in the group,
        // or its branch's contracted node.
        const int num_nodes = static_cast<int>(group.size());
        std::vector<int> branch_of(num_nodes, -1);
        branch_of[xid] = -2;
        std::vector<int> branch_roots;
        for (auto& [nb, val] : tnbr[xid]) {
            (void)val;
            if (branch_of[nb] != -1) continue;
            int b = static_cast<int>(branch_roots.size());
            branch_roots.push_back(nb);
            std::deque<int> q{nb};
            branch_of[nb] = b;
            while (!q.empty()) {
                int y = q.front();
                q.pop_front();
                for (auto& [z, v2] : tnbr[y]) {
                    (void)v2;
                    if (z != xid && branch_of[z] == -1) {
                        branch_of[z] = b;
                        q.push_back(z);
                    }
                }
            }
        }

        const int k = static_cast<int>(group[xid].size());
        const int num_branches = static_cast<int>(branch_roots.size());
        std::vector<int> meta(n, -1);
        for (int i = 0; i < k; ++i) meta[group[xid][i]] = i;
        for (int nid = 0; nid < num_nodes; ++nid) {
            if (branch_of[nid] >= 0)
                for (int v : group[nid]) meta[v] = k + branch_of[nid];
        }

        // Contracted flow network; parallel capacities are accumulated.
        std::unordered_map<long long, double> acc;
        for (int e = 0; e < g.m(); ++e) {
            int mu = meta[g.edges[e].first], mv = meta[g.edges[e].second];
            if (mu == mv) continue;
            if (mu > mv) std::swap(mu, mv);
            acc[static_cast<long long>(mu) * (k + num_branches) + mv] += cap[e];
        }
        CapDigraph d;
        d.n = k + num_branches;
        for (const auto& [key, c] : acc) {
            int mu = static_cast<int>(key / (k + num_branches));
            int mv = static_cast<int>(key % (k + num_branches));
            d.add_arc(mu, mv, c);
            d.add_arc(mv, mu, c);
        }

        int s_vert = group[xid][0], t_vert = group[xid][1];
        MaxFlowResult mf = max_flow(d, meta[s_vert], meta[t_vert]);
        tree.flow_calls++;

        // Split the group along the cut.
        std::vector<int> side_s, side_t;
        for (int v : group[xid]) (mf.source_side[meta[v]] ? side_s : side_t).push_back(v);
        int yid = static_cast<int>(group.size());
        group[xid] = std::move(side_s);
        group.push_back(std::move(side_t));
        tnbr.emplace_back();

        // Former neighbors stay with the side their branch fell on.
        std::vector<std::pair<int, double>> old_nbrs = std::move(tnbr[xid]);
        tnbr[xid].clear();
        for (auto& [nb, val] : old_nbrs) {
            int keep = mf.source_side[k + branch_of[nb]] ? xid : yid;
            tnbr[keep].emplace_back(nb, val);
            for (auto& [z, v2] : tnbr[nb]) {
                if (z == xid) {
                    z = keep;
                    (void)v2;
                    break;
                }
            }
        }
        tnbr[xid].emplace_back(yid, mf.value);
        tnbr[yid].emplace_back(xid, mf.value);

        work.push_back(xid);
        work.push_back(yid);
    }

    // All groups are singletons; root the tree at vertex 0.
    std::vector<int> vert_of(group.size());
    for (size_t nid = 0; nid < group.size(); ++nid) vert_of[nid] = group[nid][0];
    std::vector<char> seen(group.size(), 0);
    int root_nid = -1;
    for (size_t nid = 0; nid < group.size(); ++nid)
        if (vert_of[nid] == 0) root_nid = static_cast<int>(nid);
    std::deque<int> q{root_nid};
    seen[root_nid] = 1;
    while (!q.empty()) {
        int nid = q.front();
        q.pop_front();
        for (auto& [nb, val] : tnbr[nid]) {
            if (!seen[nb]) {
                seen[nb] = 1;
                tree.parent[vert_of[nb]] = vert_of[nid];
                tree.cut_value[vert_of[nb]] = val;
                q.push_back(nb);
            }
        }
    }
    return tree;
}

CutTreeQuery cut_tree_query(const CutTree& t, int u, int v) {
    if (u == v) throw std::invalid_argument("cut_tree_query: u == v");
    const int n = t.n;
    std::vector<std::vector<std::pair<int, double>>> adj(n);
    for (int w = 0; w < n; ++w) {
        if (t.parent[w] >= 0) {
            adj[w].emplace_back(t.parent[w], t.cut_value[w]);
            adj[t.parent[w]].emplace_back(w, t.cut_value[w]);
        }
    }

    // Path from u to v via BFS predecessors.
    std::vector<int> pred(n, -1);
    std::vector<double> pred_val(n, 0.0);
    std::deque<int> q{u};
    pred[u] = u;
    while (!q.empty()) {
        int w = q.front();
        q.pop_front();
        if (w == v) break;
        for (auto& [x, val] : adj[w]) {
            if (pred[x] == -1) {
                pred[x] = w;
                pred_val[x] = val;
                q.push_back(x);
            }
        }
    }
    if (pred[v] == -1) throw std::invalid_argument("cut_tree_query: vertices not connected in tree");

    // Bottleneck edge on the path.
    CutTreeQuery out;
    out.value = std::numeric_limits<double>::infinity();
    int cut_child = -1;  // endpoint of the bottleneck edge closer to v
    for (int w = v; w != u; w = pred[w]) {
        if (pred_val[w] < out.value) {
            out.value = pred_val[w];
            cut_child = w;
        }
    }

    // Component of u after removing the bottleneck edge (pred[cut_child], cut_child).
    std::vector<char> blocked(n, 0);
    std::deque<int> q2{u};
    blocked[u] = 1;
    out.side.push_back(u);
    while (!q2.empty()) {
        int w = q2.front();
        q2.pop_front();
        for (auto& [x, val] : adj[w]) {
            (void)val;
            bool is_cut_edge = (w == pred[cut_child] && x == cut_child) ||
                               (x == pred[cut_child] && w == cut_child);
            if (!blocked[x] && !is_cut_edge) {
                blocked[x] = 1;
                out.side.push_back(x);
                q2.push_back(x);
            }
        }
    }
    std::sort(out.side.begin(), out.side.end());
    return out;
}

}  // namespace wcm
