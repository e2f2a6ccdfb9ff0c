#pragma once

// Small named graphs and independent brute-force oracles shared by the test
// binaries.  Oracles here are deliberately naive (bitmask/DFS) so they cannot
// share a bug with the library implementations they check.

#include <algorithm>
#include <cmath>
#include <vector>

#include "nodallab/graph.hpp"
#include "nodallab/rng.hpp"

namespace fixtures {

using nodallab::Edge;
using nodallab::Graph;

inline Graph complete(int n) {
    std::vector<Edge> e;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) e.emplace_back(u, v);
    return Graph::from_edge_list(n, std::move(e));
}

inline Graph cycle(int n) {
    std::vector<Edge> e;
    for (int v = 0; v < n; ++v) e.emplace_back(std::min(v, (v + 1) % n), std::max(v, (v + 1) % n));
    return Graph::from_edge_list(n, std::move(e));
}

inline Graph path(int n) {
    std::vector<Edge> e;
    for (int v = 0; v + 1 < n; ++v) e.emplace_back(v, v + 1);
    return Graph::from_edge_list(n, std::move(e));
}

inline Graph star(int leaves) {
    std::vector<Edge> e;
    for (int v = 1; v <= leaves; ++v) e.emplace_back(0, v);
    return Graph::from_edge_list(leaves + 1, std::move(e));
}

inline Graph complete_bipartite(int a, int b) {
    std::vector<Edge> e;
    for (int u = 0; u < a; ++u)
        for (int v = 0; v < b; ++v) e.emplace_back(u, a + v);
    return Graph::from_edge_list(a + b, std::move(e));
}

inline Graph petersen() {
    std::vector<Edge> e = {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {0, 4},   // outer C5
                           {0, 5}, {1, 6}, {2, 7}, {3, 8}, {4, 9},   // spokes
                           {5, 7}, {7, 9}, {6, 9}, {6, 8}, {5, 8}};  // pentagram
    return Graph::from_edge_list(10, std::move(e));
}

inline Graph hypercube3() {
    std::vector<Edge> e;
    for (int u = 0; u < 8; ++u)
        for (int b = 0; b < 3; ++b)
            if (u < (u ^ (1 << b))) e.emplace_back(u, u ^ (1 << b));
    return Graph::from_edge_list(8, std::move(e));
}

/// Erdos-Renyi-ish: each pair kept when a derived word falls below p.
inline Graph random_simple(int n, double p, std::uint64_t seed) {
    std::vector<Edge> e;
    nodallab::rng::SplitMix64 gen(nodallab::rng::derive(seed, 0xE2ull));
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (nodallab::rng::to_unit(gen.next()) < p) e.emplace_back(u, v);
    return Graph::from_edge_list(n, std::move(e));
}

/// Uniform-attachment random tree on n vertices.
inline Graph random_tree(int n, std::uint64_t seed) {
    std::vector<Edge> e;
    nodallab::rng::SplitMix64 gen(nodallab::rng::derive(seed, 0x7eeull));
    for (int v = 1; v < n; ++v)
        e.emplace_back(static_cast<int>(nodallab::rng::below(gen, v)), v);
    return Graph::from_edge_list(n, std::move(e));
}

/// A catalog of assorted small graphs (all n <= 12) for oracle sweeps.
inline std::vector<Graph> catalog() {
    std::vector<Graph> out;
    for (int n = 2; n <= 7; ++n) out.push_back(complete(n));
    for (int n = 3; n <= 12; ++n) out.push_back(cycle(n));
    for (int n = 2; n <= 12; ++n) out.push_back(path(n));
    for (int leaves = 2; leaves <= 9; ++leaves) out.push_back(star(leaves));
    out.push_back(complete_bipartite(3, 3));
    out.push_back(complete_bipartite(2, 3));
    out.push_back(complete_bipartite(4, 4));
    out.push_back(petersen());
    out.push_back(hypercube3());
    // K4 minus an edge; two triangles sharing a vertex; a triangle + pendant.
    out.push_back(Graph::from_edge_list(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}}));
    out.push_back(Graph::from_edge_list(5, {{0, 1}, {0, 2}, {1, 2}, {2, 3}, {2, 4}, {3, 4}}));
    out.push_back(Graph::from_edge_list(4, {{0, 1}, {0, 2}, {1, 2}, {2, 3}}));
    out.push_back(Graph::from_edge_list(3, {}));  // edgeless
    return out;
}

/// Naive component labelling by repeated DFS over an induced subgraph.
inline std::vector<std::vector<int>> dfs_components(const Graph& g, const std::vector<int>& keep) {
    std::vector<char> in(g.vertex_count(), 0), seen(g.vertex_count(), 0);
    for (int v : keep) in[v] = 1;
    std::vector<std::vector<int>> comps;
    for (int s : keep) {
        if (seen[s]) continue;
        std::vector<int> stack = {s}, comp;
        seen[s] = 1;
        while (!stack.empty()) {
            int u = stack.back();
            stack.pop_back();
            comp.push_back(u);
            for (int w : g.neighbors(u))
                if (in[w] && !seen[w]) {
                    seen[w] = 1;
                    stack.push_back(w);
                }
        }
        std::sort(comp.begin(), comp.end());
        comps.push_back(std::move(comp));
    }
    std::sort(comps.begin(), comps.end());
    return comps;
}

/// Exact girth by brute force: trial DFS for a cycle of each length.
inline int brute_girth(const Graph& g) {
    int best = nodallab::kInfiniteGirth;
    const int n = g.vertex_count();
    // For every start vertex, depth-first over simple paths, closing to start.
    std::vector<char> on(n, 0);
    std::vector<int> stack;
    auto dfs = [&](auto&& self, int start, int u, int len) -> void {
        if (len >= best) return;
        for (int w : g.neighbors(u)) {
            if (w == start && len >= 3) best = std::min(best, len);
            if (!on[w] && w > start) {
                on[w] = 1;
                self(self, start, w, len + 1);
                on[w] = 0;
            }
        }
    };
    for (int s = 0; s < n; ++s) {
        on[s] = 1;
        dfs(dfs, s, s, 1);
        on[s] = 0;
    }
    return best;
}

}  // namespace fixtures
