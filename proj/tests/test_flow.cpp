#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>

#include "wcm/maxflow.hpp"

using namespace wcm;

namespace {

// Brute-force minimum s-t cut by enumerating all vertex bipartitions.
double brute_min_cut(const CapDigraph& d, int s, int t) {
    int n = d.n;
    std::vector<int> others;
    for (int v = 0; v < n; ++v)
        if (v != s && v != t) others.push_back(v);
    double best = std::numeric_limits<double>::infinity();
    for (int mask = 0; mask < (1 << others.size()); ++mask) {
        std::vector<char> side(n, 0);
        side[s] = 1;
        for (size_t i = 0; i < others.size(); ++i)
            if (mask & (1 << i)) side[others[i]] = 1;
        double cap = 0;
        for (const auto& a : d.arcs)
            if (side[a.tail] && !side[a.head]) cap += a.cap;
        best = std::min(best, cap);
    }
    return best;
}

double cut_capacity(const CapDigraph& d, const std::vector<char>& side) {
    double cap = 0;
    for (const auto& a : d.arcs)
        if (side[a.tail] && !side[a.head]) cap += a.cap;
    return cap;
}

CapDigraph digraph_of(const Graph& g, const std::vector<double>& cap) {
    CapDigraph d;
    d.n = g.n;
    for (int e = 0; e < g.m(); ++e) {
        auto [u, v] = g.edges[e];
        d.add_arc(u, v, cap[e]);
        d.add_arc(v, u, cap[e]);
    }
    return d;
}

}  // namespace

TEST_CASE("max_flow on two parallel paths") {
    CapDigraph d;
    d.n = 4;  // s=0, a=1, b=2, t=3
    d.add_arc(0, 1, 1);
    d.add_arc(1, 3, 1);
    d.add_arc(0, 2, 1);
    d.add_arc(2, 3, 1);
    auto r = max_flow(d, 0, 3);
    CHECK(r.value == doctest::Approx(2.0));
    CHECK(cut_capacity(d, r.source_side) == doctest::Approx(r.value));
}

TEST_CASE("max_flow with no outgoing arcs from s") {
    CapDigraph d;
    d.n = 2;
    auto r = max_flow(d, 0, 1);
    CHECK(r.value == 0.0);
    CHECK(r.source_side[0] == 1);
    CHECK(r.source_side[1] == 0);
}

TEST_CASE("max_flow equals brute-force min cut on random digraphs") {
    std::mt19937_64 rng(555);
    for (int trial = 0; trial < 300; ++trial) {
        int n = 3 + static_cast<int>(rng() % 6);
        CapDigraph d;
        d.n = n;
        for (int u = 0; u < n; ++u)
            for (int v = 0; v < n; ++v)
                if (u != v && rng() % 100 < 35)
                    d.add_arc(u, v, static_cast<double>(rng() % 6));
        int s = 0, t = 1 + static_cast<int>(rng() % (n - 1));
        auto r = max_flow(d, s, t);
        double brute = brute_min_cut(d, s, t);
        REQUIRE(r.value == doctest::Approx(brute).epsilon(1e-12));
        // Certificate: returned cut capacity equals the value, s inside, t outside.
        REQUIRE(cut_capacity(d, r.source_side) == doctest::Approx(r.value).epsilon(1e-12));
        REQUIRE(r.source_side[s] == 1);
        REQUIRE(r.source_side[t] == 0);
    }
}

TEST_CASE("max_flow scales linearly with capacities") {
    std::mt19937_64 rng(99);
    CapDigraph d;
    d.n = 6;
    for (int u = 0; u < 6; ++u)
        for (int v = 0; v < 6; ++v)
            if (u != v && rng() % 100 < 40) d.add_arc(u, v, 1.0 + (rng() % 5));
    double base = max_flow(d, 0, 5).value;
    CapDigraph scaled = d;
    for (auto& a : scaled.arcs) a.cap *= 3.5;
    CHECK(max_flow(scaled, 0, 5).value == doctest::Approx(3.5 * base));
}

TEST_CASE("gomory_hu on the unit 4-cycle") {
    Graph c4 = build_graph(4, {{0, 1}, {1, 2}, {2, 3}, {0, 3}});
    std::vector<double> cap(4, 1.0);
    CutTree t = gomory_hu(c4, cap);
    CHECK(t.flow_calls == 3);
    for (int u = 0; u < 4; ++u)
        for (int v = u + 1; v < 4; ++v)
            CHECK(cut_tree_query(t, u, v).value == doctest::Approx(2.0));
}

TEST_CASE("gomory_hu on a star") {
    Graph star = build_graph(4, {{0, 1}, {0, 2}, {0, 3}});
    std::vector<double> cap(3, 1.0);
    CutTree t = gomory_hu(star, cap);
    for (int leaf = 1; leaf < 4; ++leaf) CHECK(cut_tree_query(t, 0, leaf).value == 1.0);
}

TEST_CASE("gomory_hu matches direct max-flow for all pairs") {
    std::mt19937_64 rng(1234);
    for (int trial = 0; trial < 60; ++trial) {
        int n = 3 + static_cast<int>(rng() % 6);
        std::vector<std::pair<int, int>> edges;
        std::vector<double> cap;
        for (int u = 0; u < n; ++u)
            for (int v = u + 1; v < n; ++v)
                if (rng() % 100 < 55) {
                    edges.emplace_back(u, v);
                    cap.push_back(static_cast<double>(rng() % 5 + 1));
                }
        Graph g = build_graph(n, edges);
        CapDigraph d = digraph_of(g, cap);
        CutTree t = gomory_hu(g, cap);
        REQUIRE(t.flow_calls == n - 1);
        for (int u = 0; u < n; ++u)
            for (int v = u + 1; v < n; ++v) {
                double direct = max_flow(d, u, v).value;
                auto q = cut_tree_query(t, u, v);
                REQUIRE(q.value == direct);  // small integer capacities: exact
            }
        // Fundamental cuts: each tree edge induces a cut of exactly its value.
        for (int w = 0; w < n; ++w) {
            if (t.parent[w] < 0) continue;
            auto q = cut_tree_query(t, w, t.parent[w]);
            std::vector<char> side(n, 0);
            for (int x : q.side) side[x] = 1;
            REQUIRE(cut_capacity(d, side) == q.value);
        }
    }
}

TEST_CASE("cut_tree_query structure") {
    // Hand-built path-shaped tree 0-1-2-3 with values 3,1,2.
    CutTree t;
    t.n = 4;
    t.parent = {-1, 0, 1, 2};
    t.cut_value = {0, 3, 1, 2};
    auto q = cut_tree_query(t, 0, 3);
    CHECK(q.value == 1.0);
    CHECK(q.side == std::vector<int>{0, 1});
    CHECK(cut_tree_query(t, 1, 2).value == 1.0);
    CHECK(cut_tree_query(t, 2, 3).value == 2.0);
    // Symmetry in value.
    CHECK(cut_tree_query(t, 3, 0).value == cut_tree_query(t, 0, 3).value);
}
