#include "wcm/instance.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <istream>
#include <limits>
#include <random>
#include <sstream>
#include <unordered_map>

namespace wcm {

std::string format_double(double value) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), value);
    return std::string(buf, res.ptr);
}

namespace {

std::string lower(std::string s) {
    for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return s;
}

std::vector<std::string> tokenize(const std::string& line) {
    std::vector<std::string> toks;
    std::istringstream ss(line);
    std::string t;
    while (ss >> t) toks.push_back(t);
    return toks;
}

bool parse_int(const std::string& s, long long& out) {
    auto res = std::from_chars(s.data(), s.data() + s.size(), out);
    return res.ec == std::errc() && res.ptr == s.data() + s.size();
}

bool parse_num(const std::string& s, double& out) {
    auto res = std::from_chars(s.data(), s.data() + s.size(), out);
    return res.ec == std::errc() && res.ptr == s.data() + s.size();
}

[[noreturn]] void fail_line(int lineno, const std::string& what) {
    throw ParseError("line " + std::to_string(lineno) + ": " + what);
}

}  // namespace

Instance parse_canonical(std::istream& in, const std::string& name) {
    std::string line;
    int lineno = 0;
    long long n = -1, m = -1;
    std::vector<std::pair<int, int>> edges;
    std::vector<double> weights;

    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        auto toks = tokenize(line);
        if (n < 0) {
            if (toks.size() != 3 || lower(toks[0]) != "wcm")
                fail_line(lineno, "expected header 'wcm <n> <m>'");
            if (!parse_int(toks[1], n) || !parse_int(toks[2], m) || n < 0 || m < 0)
                fail_line(lineno, "invalid counts in header");
            continue;
        }
        if (toks.size() != 4 || lower(toks[0]) != "e")
            fail_line(lineno, "expected edge line 'e <u> <v> <w>'");
        long long u, v;
        double w;
        if (!parse_int(toks[1], u) || !parse_int(toks[2], v) || !parse_num(toks[3], w))
            fail_line(lineno, "malformed edge line");
        if (u < 0 || v < 0 || u >= n || v >= n)
            fail_line(lineno, "edge endpoint out of range");
        if (!std::isfinite(w)) fail_line(lineno, "non-finite edge weight");
        edges.emplace_back(static_cast<int>(u), static_cast<int>(v));
        weights.push_back(w);
    }
    if (n < 0) throw ParseError("missing 'wcm' header");
    if (static_cast<long long>(edges.size()) != m)
        throw ParseError("header declares " + std::to_string(m) + " edges, found " +
                         std::to_string(edges.size()));

    Instance inst;
    try {
        inst.graph = build_graph(static_cast<int>(n), edges);
    } catch (const std::invalid_argument& e) {
        throw ParseError(e.what());
    }
    inst.weights = std::move(weights);
    inst.name = name;
    inst.origin = Origin::canonical;
    return inst;
}

Instance parse_canonical(const std::string& text, const std::string& name) {
    std::istringstream in(text);
    return parse_canonical(in, name);
}

std::string write_canonical(const Instance& inst) {
    std::string out = "wcm " + std::to_string(inst.graph.n) + " " +
                      std::to_string(inst.graph.m()) + "\n";
    for (int e = 0; e < inst.graph.m(); ++e) {
        auto [u, v] = inst.graph.edges[e];
        out += "e " + std::to_string(u) + " " + std::to_string(v) + " " +
               format_double(inst.weights[e]) + "\n";
    }
    return out;
}

Instance import_stp(std::istream& in, StpMode mode, const std::string& name) {
    std::string line;
    int lineno = 0;
    std::string section;  // lowercase name of the current section, "" outside
    bool saw_graph_section = false;
    long long declared_nodes = -1;

    std::vector<std::pair<long long, long long>> raw_edges;
    std::vector<double> raw_edge_weights;  // NaN when the record had no weight
    std::unordered_map<long long, double> node_weight;

    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        auto toks = tokenize(line);
        if (toks.empty()) continue;
        std::string key = lower(toks[0]);

        if (key == "section") {
            section = toks.size() > 1 ? lower(toks[1]) : "";
            if (section == "graph") saw_graph_section = true;
            continue;
        }
        if (key == "end") {
            section.clear();
            continue;
        }
        if (key == "eof") break;

        if (section == "graph") {
            if (key == "nodes" && toks.size() >= 2) {
                parse_int(toks[1], declared_nodes);
            } else if ((key == "e" || key == "a") && toks.size() >= 3) {
                long long u, v;
                if (!parse_int(toks[1], u) || !parse_int(toks[2], v))
                    fail_line(lineno, "malformed edge record");
                double w = std::numeric_limits<double>::quiet_NaN();
                if (toks.size() >= 4 && !parse_num(toks[3], w))
                    fail_line(lineno, "malformed edge weight");
                raw_edges.emplace_back(u, v);
                raw_edge_weights.push_back(w);
            }
            // "Edges <m>" and anything else in the section is ignored; the
            // edge records themselves are authoritative.
            continue;
        }

        // Node-weight records appear as "T <node> <w>" (terminal sections) or
        // with the variant tags below, depending on the benchmark family.
        if ((key == "t" || key == "tp" || key == "nw") && toks.size() >= 3) {
            long long u;
            double w;
            if (parse_int(toks[1], u) && parse_num(toks[2], w)) node_weight[u] = w;
        }
    }

    if (!saw_graph_section) throw ParseError("missing 'SECTION Graph'");
    if (declared_nodes < 0) throw ParseError("Graph section does not declare Nodes");

    // Benchmark files use dense 1-based node ids; remap to 0-based.
    auto map_node = [&](long long id) -> int {
        if (id < 1 || id > declared_nodes)
            throw ParseError("edge references unknown node " + std::to_string(id));
        return static_cast<int>(id - 1);
    };

    std::vector<std::pair<int, int>> edges;
    std::vector<double> weights;
    edges.reserve(raw_edges.size());
    for (size_t i = 0; i < raw_edges.size(); ++i) {
        auto [ru, rv] = raw_edges[i];
        int u = map_node(ru), v = map_node(rv);
        double w;
        if (mode == StpMode::gmwcs) {
            w = raw_edge_weights[i];
            if (std::isnan(w))
                throw ParseError("edge (" + std::to_string(ru) + "," + std::to_string(rv) +
                                 ") has no weight record required by gmwcs mode");
        } else {
            auto itu = node_weight.find(ru);
            if (itu == node_weight.end())
                throw ParseError("node " + std::to_string(ru) + " has no weight record");
            auto itv = node_weight.find(rv);
            if (itv == node_weight.end())
                throw ParseError("node " + std::to_string(rv) + " has no weight record");
            w = itu->second + itv->second;
        }
        if (!std::isfinite(w)) throw ParseError("non-finite derived edge weight");
        edges.emplace_back(u, v);
        weights.push_back(w);
    }

    Instance inst;
    try {
        inst.graph = build_graph(static_cast<int>(declared_nodes), edges);
    } catch (const std::invalid_argument& e) {
        throw ParseError(e.what());
    }
    inst.weights = std::move(weights);
    inst.name = name;
    inst.origin = mode == StpMode::mwcs ? Origin::mwcs : Origin::gmwcs;
    inst.source_ids.resize(inst.graph.n);
    for (int u = 0; u < inst.graph.n; ++u) inst.source_ids[u] = u + 1;
    return inst;
}

Instance import_stp(const std::string& text, StpMode mode, const std::string& name) {
    std::istringstream in(text);
    return import_stp(in, mode, name);
}

WeightDist WeightDist::parse(const std::string& spec) {
    auto colon = spec.find(':');
    std::string kind = lower(spec.substr(0, colon));
    std::string args = colon == std::string::npos ? "" : spec.substr(colon + 1);
    auto comma = args.find(',');
    double a = 0, b = 0;
    if (comma == std::string::npos || !parse_num(args.substr(0, comma), a) ||
        !parse_num(args.substr(comma + 1), b))
        throw std::invalid_argument("bad distribution spec '" + spec +
                                    "', expected kind:a,b");
    if (kind == "uniform") {
        if (a > b) throw std::invalid_argument("uniform distribution needs a <= b");
        return uniform(a, b);
    }
    if (kind == "gaussian" || kind == "normal") {
        if (b < 0) throw std::invalid_argument("gaussian distribution needs sigma >= 0");
        return gaussian(a, b);
    }
    throw std::invalid_argument("unknown distribution '" + kind + "'");
}

std::string WeightDist::to_string() const {
    const char* k = kind == Kind::uniform ? "uniform" : "gaussian";
    return std::string(k) + ":" + format_double(a) + "," + format_double(b);
}

namespace {

// mt19937_64 output is pinned by the standard; the transforms below keep the
// whole generator bit-reproducible across platforms.
double unit_open(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;  // [0, 1)
}

double draw_weight(const WeightDist& d, std::mt19937_64& rng) {
    if (d.kind == WeightDist::Kind::uniform) return d.a + (d.b - d.a) * unit_open(rng);
    // Box-Muller with u1 in (0, 1].
    constexpr double two_pi = 6.283185307179586;
    double u1 = static_cast<double>((rng() >> 11) + 1) * 0x1.0p-53;
    double u2 = unit_open(rng);
    double z = std::sqrt(-2.0 * std::log(u1)) * std::cos(two_pi * u2);
    return d.a + d.b * z;
}

}  // namespace

Instance generate_gnp(int n, double p, const WeightDist& dist, std::uint64_t seed) {
    if (n < 1) throw std::invalid_argument("generate_gnp: n must be >= 1");
    if (p < 0.0 || p > 1.0) throw std::invalid_argument("generate_gnp: p must be in [0,1]");
    if (dist.kind == WeightDist::Kind::uniform && dist.a > dist.b)
        throw std::invalid_argument("generate_gnp: uniform distribution needs a <= b");
    if (dist.kind == WeightDist::Kind::gaussian && dist.b < 0)
        throw std::invalid_argument("generate_gnp: gaussian distribution needs sigma >= 0");

    std::mt19937_64 rng(seed);
    std::vector<std::pair<int, int>> edges;
    std::vector<double> weights;

    if (p >= 1.0) {
        for (int u = 0; u < n; ++u)
            for (int v = u + 1; v < n; ++v) edges.emplace_back(u, v);
        weights.reserve(edges.size());
        for (size_t i = 0; i < edges.size(); ++i) weights.push_back(draw_weight(dist, rng));
    } else if (p > 0.0 && n >= 2) {
        // Geometric gap sampling over the flattened pair index, so the cost is
        // proportional to the number of edges generated rather than n^2.
        // Pairs are enumerated as (0,1), (0,2), ..., (n-2,n-1).
        const double log_q = std::log1p(-p);
        const long long total = static_cast<long long>(n) * (n - 1) / 2;
        long long idx = -1, cur = 0;
        int cu = 0, cv = 1;
        while (true) {
            double r = unit_open(rng);
            long long gap = static_cast<long long>(std::floor(std::log1p(-r) / log_q));
            idx += gap + 1;
            if (idx >= total) break;
            long long k = idx - cur;
            while (k > 0) {
                long long row_rest = (n - 1) - cv;
                if (k <= row_rest) {
                    cv += static_cast<int>(k);
                    k = 0;
                } else {
                    k -= row_rest + 1;
                    ++cu;
                    cv = cu + 1;
                }
            }
            cur = idx;
            edges.emplace_back(cu, cv);
            weights.push_back(draw_weight(dist, rng));
        }
    }

    Instance inst;
    inst.graph = build_graph(n, edges);
    inst.weights = std::move(weights);
    inst.origin = Origin::generated;
    inst.name = "gnp_n" + std::to_string(n) + "_p" + format_double(p) + "_" +
                dist.to_string() + "_s" + std::to_string(seed);
    return inst;
}

}  // namespace wcm
