#include "spikecast/centrality.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <random>
#include <stdexcept>

namespace spikecast {

namespace {

// Single-source shortest-path dependency accumulation (Brandes).
void accumulate_from(const Digraph& g, int s, std::vector<double>& scores) {
    const int n = g.n;
    std::vector<int> dist(n, -1);
    std::vector<double> sigma(n, 0.0);
    std::vector<std::vector<int>> preds(n);
    std::vector<int> order;
    order.reserve(n);

    std::deque<int> queue;
    dist[s] = 0;
    sigma[s] = 1.0;
    queue.push_back(s);
    while (!queue.empty()) {
        const int v = queue.front();
        queue.pop_front();
        order.push_back(v);
        for (int w : g.adj[v]) {
            if (dist[w] < 0) {
                dist[w] = dist[v] + 1;
                queue.push_back(w);
            }
            if (dist[w] == dist[v] + 1) {
                sigma[w] += sigma[v];
                preds[w].push_back(v);
            }
        }
    }

    std::vector<double> delta(n, 0.0);
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        const int w = *it;
        for (int v : preds[w])
            delta[v] += sigma[v] / sigma[w] * (1.0 + delta[w]);
        if (w != s) scores[w] += delta[w];
    }
}

}  // namespace

CentralityResult betweenness(const Digraph& g) {
    if (g.n < 3)
        throw std::invalid_argument("betweenness: graph needs at least 3 nodes");
    CentralityResult res;
    res.scores.assign(g.n, 0.0);
    res.method = CentralityMethod::exact;
    for (int s = 0; s < g.n; ++s) accumulate_from(g, s, res.scores);
    return res;
}

CentralityResult betweenness_sampled(const Digraph& g, int sources, std::uint64_t seed) {
    if (g.n < 3)
        throw std::invalid_argument("betweenness: graph needs at least 3 nodes");
    if (sources < 1 || sources > g.n)
        throw std::invalid_argument("betweenness_sampled: bad source count");

    std::vector<int> ids(g.n);
    std::iota(ids.begin(), ids.end(), 0);
    std::mt19937_64 rng(seed);
    std::shuffle(ids.begin(), ids.end(), rng);
    ids.resize(sources);

    CentralityResult res;
    res.scores.assign(g.n, 0.0);
    res.method = CentralityMethod::sampled;
    res.sources = sources;
    for (int s : ids) accumulate_from(g, s, res.scores);

    const double scale = static_cast<double>(g.n) / static_cast<double>(sources);
    for (double& v : res.scores) v *= scale;
    return res;
}

std::vector<int> top_k(const CentralityResult& result, int k) {
    const int n = static_cast<int>(result.scores.size());
    if (k < 1 || k > n)
        throw std::invalid_argument("top_k: k out of range");
    std::vector<int> ids(n);
    std::iota(ids.begin(), ids.end(), 0);
    std::sort(ids.begin(), ids.end(), [&](int a, int b) {
        if (result.scores[a] != result.scores[b]) return result.scores[a] > result.scores[b];
        return a < b;
    });
    ids.resize(k);
    return ids;
}

}  // namespace spikecast
