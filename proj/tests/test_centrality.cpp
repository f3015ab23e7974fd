#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <queue>
#include <random>
#include <vector>

#include "spikecast/centrality.hpp"

using namespace spikecast;

namespace {

// Definition-level oracle: for every ordered pair (v, w) enumerate every
// shortest path explicitly and tally interior-node visits.
std::vector<double> brute_betweenness(const Digraph& g) {
    const int n = g.n;
    std::vector<double> score(n, 0.0);

    for (int v = 0; v < n; ++v) {
        // BFS distances from v.
        std::vector<int> dist(n, -1);
        std::queue<int> q;
        dist[v] = 0;
        q.push(v);
        while (!q.empty()) {
            const int u = q.front();
            q.pop();
            for (int x : g.adj[u])
                if (dist[x] < 0) {
                    dist[x] = dist[u] + 1;
                    q.push(x);
                }
        }

        for (int w = 0; w < n; ++w) {
            if (w == v || dist[w] < 0) continue;
            // Depth-first enumeration of all shortest v->w paths.
            std::vector<std::vector<int>> paths;
            std::vector<int> stack = {v};
            std::vector<std::size_t> iter = {0};
            while (!stack.empty()) {
                const int u = stack.back();
                if (u == w) {
                    paths.push_back(stack);
                    stack.pop_back();
                    iter.pop_back();
                    continue;
                }
                bool descended = false;
                while (iter.back() < g.adj[u].size()) {
                    const int x = g.adj[u][iter.back()++];
                    if (dist[x] == dist[u] + 1 && dist[x] <= dist[w]) {
                        stack.push_back(x);
                        iter.push_back(0);
                        descended = true;
                        break;
                    }
                }
                if (!descended && !stack.empty() && stack.back() == u) {
                    stack.pop_back();
                    iter.pop_back();
                }
            }
            if (paths.empty()) continue;
            std::vector<int> through(n, 0);
            for (const auto& p : paths)
                for (std::size_t i = 1; i + 1 < p.size(); ++i) ++through[p[i]];
            for (int x = 0; x < n; ++x)
                if (through[x] > 0)
                    score[x] += static_cast<double>(through[x]) / static_cast<double>(paths.size());
        }
    }
    return score;
}

Digraph random_digraph(std::mt19937_64& rng, int max_n = 8) {
    std::uniform_int_distribution<int> size(2, max_n);
    std::uniform_real_distribution<double> prob(0.15, 0.85);
    const int n = size(rng);
    const double p = prob(rng);
    std::bernoulli_distribution edge(p);
    Digraph g(n);
    for (int u = 0; u < n; ++u)
        for (int v = 0; v < n; ++v)
            if (u != v && edge(rng)) g.add_edge(u, v);
    return g;
}

}  // namespace

TEST_CASE("betweenness matches explicit shortest-path enumeration on 100 random digraphs") {
    std::mt19937_64 rng(2024);
    for (int trial = 0; trial < 100; ++trial) {
        const Digraph g = random_digraph(rng);
        const auto fast = betweenness(g);
        const auto slow = brute_betweenness(g);
        REQUIRE(fast.scores.size() == slow.size());
        for (std::size_t i = 0; i < slow.size(); ++i)
            CHECK(fast.scores[i] == doctest::Approx(slow[i]).epsilon(1e-9));
    }
}

TEST_CASE("a directed path puts all load on its interior") {
    // 0 -> 1 -> 2 -> 3: node 1 carries pairs (0,2),(0,3); node 2 carries (0,3),(1,3).
    Digraph g(4);
    g.add_edge(0, 1);
    g.add_edge(1, 2);
    g.add_edge(2, 3);
    const auto r = betweenness(g);
    CHECK(r.scores[0] == doctest::Approx(0.0));
    CHECK(r.scores[1] == doctest::Approx(2.0));
    CHECK(r.scores[2] == doctest::Approx(2.0));
    CHECK(r.scores[3] == doctest::Approx(0.0));
    CHECK(r.method == CentralityMethod::exact);
}

TEST_CASE("parallel two-hop routes split the pair's credit") {
    // 0 -> {1,2} -> 3: each middle node carries half of pair (0,3).
    Digraph g(4);
    g.add_edge(0, 1);
    g.add_edge(0, 2);
    g.add_edge(1, 3);
    g.add_edge(2, 3);
    const auto r = betweenness(g);
    CHECK(r.scores[1] == doctest::Approx(0.5));
    CHECK(r.scores[2] == doctest::Approx(0.5));
}

TEST_CASE("top_k orders by score and breaks ties by ascending id") {
    CentralityResult r;
    r.scores = {1.0, 3.0, 3.0, 0.5, 2.0};
    const auto ids = top_k(r, 3);
    REQUIRE(ids.size() == 3);
    CHECK(ids[0] == 1);  // ties at 3.0: lower id first
    CHECK(ids[1] == 2);
    CHECK(ids[2] == 4);

    const auto all = top_k(r, 10);
    CHECK(all.size() == 5);  // clamped to node count
}

TEST_CASE("source-sampled betweenness is unbiased") {
    std::mt19937_64 rng(7);
    Digraph g(12);
    for (int u = 0; u < 12; ++u)
        for (int v = 0; v < 12; ++v)
            if (u != v && ((u * 7 + v * 3) % 5 == 0)) g.add_edge(u, v);

    const auto exact = betweenness(g);
    std::vector<double> avg(12, 0.0);
    const int reps = 400;
    for (int r = 0; r < reps; ++r) {
        const auto est = betweenness_sampled(g, 4, 1000 + r);
        CHECK(est.method == CentralityMethod::sampled);
        CHECK(est.sources == 4);
        for (int i = 0; i < 12; ++i) avg[i] += est.scores[i] / reps;
    }
    for (int i = 0; i < 12; ++i) {
        if (exact.scores[i] > 1.0)
            CHECK(avg[i] == doctest::Approx(exact.scores[i]).epsilon(0.15));
        else
            CHECK(std::abs(avg[i] - exact.scores[i]) < 0.5);
    }
}

TEST_CASE("an edgeless graph has all-zero scores") {
    Digraph g(5);
    const auto r = betweenness(g);
    for (double s : r.scores) CHECK(s == 0.0);
}
