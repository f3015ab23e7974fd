#pragma once

#include <cstdint>
#include <vector>

namespace spikecast {

/// Unweighted directed graph in adjacency-list form.
struct Digraph {
    int n = 0;
    std::vector<std::vector<int>> adj;  // adj[u] = successors of u

    explicit Digraph(int nodes = 0) : n(nodes), adj(nodes) {}
    void add_edge(int u, int v) { adj[u].push_back(v); }
};

enum class CentralityMethod { exact, sampled };

struct CentralityResult {
    std::vector<double> scores;
    CentralityMethod method = CentralityMethod::exact;
    int sources = 0;  // sample size used when method == sampled
};

// Betweenness over ordered node pairs (v, w), v != w, endpoints excluded.
// Brandes accumulation from every source.
CentralityResult betweenness(const Digraph& g);

// Brandes accumulation from a uniform source sample, scaled by n/|sources|.
// Unbiased estimate of the exact scores.
CentralityResult betweenness_sampled(const Digraph& g, int sources, std::uint64_t seed);

// k node ids with the highest scores, descending; ties broken by ascending id.
std::vector<int> top_k(const CentralityResult& result, int k);

}  // namespace spikecast
