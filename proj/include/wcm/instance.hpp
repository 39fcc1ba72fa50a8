#pragma once

// Problem instances: a graph plus per-edge weights, with parsers for the
// canonical "wcm" text format and STP-style benchmark files, a writer, and
// a seeded G(n,p) generator.

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "wcm/graph.hpp"

namespace wcm {

enum class Origin { canonical, mwcs, gmwcs, generated };

struct Instance {
    Graph graph;
    std::vector<double> weights;  // one per edge, finite
    std::string name;
    Origin origin = Origin::canonical;
    // For STP imports: source_ids[u] is the node id used in the input file.
    std::vector<int> source_ids;
};

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Canonical format: "wcm <n> <m>" header, then m lines "e <u> <v> <w>" with
// 0-based endpoints u < v and a decimal weight. Lines starting with '#' are
// comments and may appear anywhere. LF line endings.
Instance parse_canonical(std::istream& in, const std::string& name = "");
Instance parse_canonical(const std::string& text, const std::string& name = "");

// Inverse of parse_canonical; weights are printed in shortest round-trip form.
std::string write_canonical(const Instance& inst);

enum class StpMode { mwcs, gmwcs };

// Imports a sectioned STP-style file. mwcs mode derives each edge weight as
// the sum of its endpoints' node weights; gmwcs mode takes the weight from
// the edge record and ignores node weights. Node ids are remapped to dense
// 0-based ids (recorded in source_ids). Keywords are matched
// case-insensitively and unknown sections are skipped.
Instance import_stp(std::istream& in, StpMode mode, const std::string& name = "");
Instance import_stp(const std::string& text, StpMode mode, const std::string& name = "");

struct WeightDist {
    enum class Kind { uniform, gaussian } kind = Kind::uniform;
    double a = 0.0;  // uniform lower bound, or gaussian mean
    double b = 1.0;  // uniform upper bound, or gaussian stddev

    static WeightDist uniform(double lo, double hi) {
        return {Kind::uniform, lo, hi};
    }
    static WeightDist gaussian(double mean, double stddev) {
        return {Kind::gaussian, mean, stddev};
    }
    // Parses "uniform:a,b" or "gaussian:mu,sigma".
    static WeightDist parse(const std::string& spec);
    std::string to_string() const;
};

// Erdos-Renyi G(n,p): each unordered pair is an edge independently with
// probability p; weights drawn from dist. Deterministic for a fixed seed.
Instance generate_gnp(int n, double p, const WeightDist& dist, std::uint64_t seed);

// Shortest decimal string that parses back to exactly the same double.
std::string format_double(double value);

}  // namespace wcm
