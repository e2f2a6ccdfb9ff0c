#include "nodallab/graph.hpp"

#include <algorithm>
#include <cstdint>
#include <deque>
#include <string>
#include <unordered_map>

#include "nodallab/rng.hpp"
#include "nodallab/union_find.hpp"

namespace nodallab {

Graph Graph::from_edge_list(int n, std::vector<Edge> edges) {
    if (n < 0) throw std::invalid_argument("vertex count must be non-negative");
    for (auto& [u, v] : edges) {
        if (u < 0 || u >= n || v < 0 || v >= n) {
            throw std::invalid_argument("edge endpoint out of range");
        }
        if (u == v) throw std::invalid_argument("self-loop not allowed");
        if (u > v) std::swap(u, v);
    }
    std::sort(edges.begin(), edges.end());
    if (std::adjacent_find(edges.begin(), edges.end()) != edges.end()) {
        throw std::invalid_argument("duplicate edge");
    }

    Graph g;
    g.n_ = n;
    g.edges_ = std::move(edges);

    std::vector<int> deg(n, 0);
    for (const auto& [u, v] : g.edges_) {
        ++deg[u];
        ++deg[v];
    }
    g.offsets_.assign(n + 1, 0);
    for (int v = 0; v < n; ++v) g.offsets_[v + 1] = g.offsets_[v] + deg[v];
    g.adj_.resize(g.offsets_[n]);
    std::vector<int> cursor(g.offsets_.begin(), g.offsets_.end() - 1);
    for (const auto& [u, v] : g.edges_) {
        g.adj_[cursor[u]++] = v;
        g.adj_[cursor[v]++] = u;
    }
    // Filling from the sorted edge list leaves each adjacency list sorted.

    g.max_degree_ = deg.empty() ? 0 : *std::max_element(deg.begin(), deg.end());
    if (n > 0 && std::all_of(deg.begin(), deg.end(), [&](int x) { return x == deg[0]; })) {
        g.regular_degree_ = deg[0];
    }
    return g;
}

bool Graph::has_edge(int u, int v) const {
    if (u == v) return false;
    if (degree(u) > degree(v)) std::swap(u, v);
    auto nb = neighbors(u);
    return std::binary_search(nb.begin(), nb.end(), v);
}

bool Graph::is_connected() const {
    if (n_ <= 1) return true;
    std::vector<char> seen(n_, 0);
    std::vector<int> stack = {0};
    seen[0] = 1;
    int found = 1;
    while (!stack.empty()) {
        const int u = stack.back();
        stack.pop_back();
        for (int v : neighbors(u)) {
            if (!seen[v]) {
                seen[v] = 1;
                ++found;
                stack.push_back(v);
            }
        }
    }
    return found == n_;
}

int Graph::diameter() const {
    int best = 0;
    std::vector<int> dist(n_);
    std::deque<int> queue;
    for (int r = 0; r < n_; ++r) {
        std::fill(dist.begin(), dist.end(), -1);
        dist[r] = 0;
        queue.clear();
        queue.push_back(r);
        while (!queue.empty()) {
            const int u = queue.front();
            queue.pop_front();
            best = std::max(best, dist[u]);
            for (int v : neighbors(u)) {
                if (dist[v] < 0) {
                    dist[v] = dist[u] + 1;
                    queue.push_back(v);
                }
            }
        }
    }
    return best;
}

std::uint64_t Graph::content_hash() const {
    std::uint64_t h = 0x9ae16a3b2f90404full;
    auto fold = [&h](std::uint64_t x) { h = rng::finalize(h ^ (x + rng::kGamma)); };
    fold(static_cast<std::uint64_t>(n_));
    fold(edges_.size());
    for (const auto& [u, v] : edges_) {
        fold((static_cast<std::uint64_t>(u) << 32) | static_cast<std::uint32_t>(v));
    }
    return h;
}

VertexSet VertexSet::of(std::vector<int> vertices, int host_n) {
    std::sort(vertices.begin(), vertices.end());
    vertices.erase(std::unique(vertices.begin(), vertices.end()), vertices.end());
    if (!vertices.empty() && (vertices.front() < 0 || vertices.back() >= host_n)) {
        throw std::invalid_argument("vertex outside host graph");
    }
    return VertexSet{std::move(vertices), host_n};
}

VertexSet VertexSet::full(int host_n) {
    std::vector<int> all(host_n);
    for (int v = 0; v < host_n; ++v) all[v] = v;
    return VertexSet{std::move(all), host_n};
}

bool VertexSet::contains(int v) const {
    return std::binary_search(members.begin(), members.end(), v);
}

namespace {

// Half-edge pairing with random double-swap repair.  Plain rejection (resample
// the whole pairing on any defect) dies for d beyond ~5: the expected defect
// count is (d-1)/2 + (d-1)^2/4, so the all-clean probability is e^{-O(d^2)}.
// Swapping a defective pair with a random partner keeps the run deterministic
// per seed and converges in O(defects) accepted swaps.
Graph pairing_with_repair(int n, int d, std::uint64_t seed) {
    const std::size_t m = static_cast<std::size_t>(n) * d / 2;
    rng::SplitMix64 gen(rng::derive(seed, 0x9a11ed5eedull));

    std::vector<int> points(static_cast<std::size_t>(n) * d);
    for (std::size_t p = 0; p < points.size(); ++p) points[p] = static_cast<int>(p / d);
    rng::shuffle(points, gen);

    std::vector<Edge> pairs(m);
    auto key = [n](int u, int v) {
        if (u > v) std::swap(u, v);
        return static_cast<std::uint64_t>(u) * n + v;
    };
    std::unordered_map<std::uint64_t, int> count;
    count.reserve(2 * m);
    for (std::size_t i = 0; i < m; ++i) {
        pairs[i] = {points[2 * i], points[2 * i + 1]};
        ++count[key(pairs[i].first, pairs[i].second)];
    }

    auto defective = [&](std::size_t i) {
        const auto [u, v] = pairs[i];
        return u == v || count[key(u, v)] > 1;
    };
    auto try_swap = [&](std::size_t i, std::size_t j, bool orient) {
        const auto [a, b] = pairs[i];
        const auto [c, e] = pairs[j];
        --count[key(a, b)];
        --count[key(c, e)];
        const Edge p = orient ? Edge{a, c} : Edge{a, e};
        const Edge q = orient ? Edge{b, e} : Edge{c, b};
        const bool ok = p.first != p.second && q.first != q.second &&
                        key(p.first, p.second) != key(q.first, q.second) &&
                        count[key(p.first, p.second)] == 0 && count[key(q.first, q.second)] == 0;
        if (ok) {
            ++count[key(p.first, p.second)];
            ++count[key(q.first, q.second)];
            pairs[i] = p;
            pairs[j] = q;
        } else {
            ++count[key(a, b)];
            ++count[key(c, e)];
        }
        return ok;
    };

    const std::uint64_t budget = 10'000 + 200 * static_cast<std::uint64_t>(m);
    std::uint64_t attempts = 0;
    for (;;) {
        bool any = false;
        for (std::size_t i = 0; i < m; ++i) {
            while (defective(i)) {
                any = true;
                if (++attempts > budget) {
                    throw GenerationError("regular graph repair stalled (n=" + std::to_string(n) +
                                          ", d=" + std::to_string(d) + ")");
                }
                const std::size_t j = rng::below(gen, m);
                if (j == i) continue;
                try_swap(i, j, rng::below(gen, 2) != 0);
            }
        }
        if (!any) break;
    }
    return Graph::from_edge_list(n, std::move(pairs));
}

}  // namespace

Graph random_regular(int n, int d, std::uint64_t seed) {
    if (n < 0) throw std::invalid_argument("vertex count must be non-negative");
    if (d < 0 || (n == 0 && d > 0) || (n > 0 && d > n - 1)) {
        throw std::invalid_argument("degree must lie in [0, n-1]");
    }
    if (static_cast<long long>(n) * d % 2 != 0) {
        throw std::invalid_argument("n*d must be even");
    }
    if (d == 0) return Graph::from_edge_list(n, {});
    return pairing_with_repair(n, d, seed);
}

int girth(const Graph& g) {
    const int n = g.vertex_count();
    int best = kInfiniteGirth;
    std::vector<int> dist(n), parent(n);
    std::deque<int> queue;
    // Min over all BFS roots of dist(u)+dist(v)+1 for non-tree edges (u,v):
    // never below the girth (a closed walk of length L contains a cycle of
    // length <= L), and tight for any root on a shortest cycle.
    for (int r = 0; r < n; ++r) {
        std::fill(dist.begin(), dist.end(), -1);
        dist[r] = 0;
        parent[r] = -1;
        queue.clear();
        queue.push_back(r);
        while (!queue.empty()) {
            const int u = queue.front();
            queue.pop_front();
            if (best != kInfiniteGirth && 2 * dist[u] >= best - 1) break;
            for (int v : g.neighbors(u)) {
                if (dist[v] < 0) {
                    dist[v] = dist[u] + 1;
                    parent[v] = u;
                    queue.push_back(v);
                } else if (v != parent[u]) {
                    best = std::min(best, dist[u] + dist[v] + 1);
                }
            }
        }
        if (best == 3) break;
    }
    return best;
}

namespace {

// Largest r such that B(v, r) has cycle rank <= 1, or the vertex's
// eccentricity when the ball exhausts its component first (reported as -1-ecc
// to keep the two cases distinguishable).
int bicycle_limit_from(const Graph& g, int v, int depth_cap, std::vector<int>& dist) {
    std::fill(dist.begin(), dist.end(), -1);
    dist[v] = 0;
    std::deque<int> queue{v};
    std::vector<int> order{v};
    int ecc = 0;
    while (!queue.empty()) {
        const int u = queue.front();
        queue.pop_front();
        if (dist[u] >= depth_cap) continue;
        for (int w : g.neighbors(u)) {
            if (dist[w] < 0) {
                dist[w] = dist[u] + 1;
                ecc = std::max(ecc, dist[w]);
                order.push_back(w);
                queue.push_back(w);
            }
        }
    }
    // Edges internal to B(v, r) are exactly those with max endpoint depth <= r.
    std::vector<int> verts_at(ecc + 1, 0), edges_at(ecc + 1, 0);
    for (int u : order) ++verts_at[dist[u]];
    for (int u : order) {
        for (int w : g.neighbors(u)) {
            if (w > u && dist[w] >= 0) ++edges_at[std::max(dist[u], dist[w])];
        }
    }
    long long nv = 0, ne = 0;
    for (int r = 0; r <= ecc; ++r) {
        nv += verts_at[r];
        ne += edges_at[r];
        if (ne - nv + 1 > 1) return r - 1;
    }
    return -1 - ecc;  // ball exhausted the component (up to depth_cap) cleanly
}

}  // namespace

BicycleFreeRadius bicycle_free_radius(const Graph& g) {
    const int n = g.vertex_count();
    std::vector<int> dist(n);
    int violation = kInfiniteGirth;
    for (int v = 0; v < n; ++v) {
        // A ball whose first rank-2 layer lies beyond violation+1 cannot
        // lower the minimum, so the search depth is capped.
        const int cap = violation == kInfiniteGirth ? n : violation + 1;
        const int lim = bicycle_limit_from(g, v, cap, dist);
        if (lim >= 0) violation = std::min(violation, lim);
    }
    if (violation != kInfiniteGirth) return {violation, false};
    return {g.diameter(), true};
}

VertexSet ball(const Graph& g, const VertexSet& s, int radius) {
    if (radius < 0) throw std::invalid_argument("radius must be non-negative");
    if (s.host_n != g.vertex_count()) throw std::invalid_argument("set/graph mismatch");
    std::vector<int> dist(g.vertex_count(), -1);
    std::deque<int> queue;
    for (int v : s.members) {
        dist[v] = 0;
        queue.push_back(v);
    }
    std::vector<int> out(s.members);
    while (!queue.empty()) {
        const int u = queue.front();
        queue.pop_front();
        if (dist[u] >= radius) continue;
        for (int w : g.neighbors(u)) {
            if (dist[w] < 0) {
                dist[w] = dist[u] + 1;
                out.push_back(w);
                queue.push_back(w);
            }
        }
    }
    return VertexSet::of(std::move(out), g.vertex_count());
}

ComponentPartition components(const Graph& g, const VertexSet& s) {
    if (s.host_n != g.vertex_count()) throw std::invalid_argument("set/graph mismatch");
    UnionFind uf(g.vertex_count());
    for (int u : s.members) {
        for (int v : g.neighbors(u)) {
            if (v > u && s.contains(v)) uf.unite(u, v);
        }
    }
    std::unordered_map<int, std::vector<int>> by_root;
    for (int u : s.members) by_root[uf.find(u)].push_back(u);
    ComponentPartition part;
    part.blocks.reserve(by_root.size());
    for (int u : s.members) {  // member order makes block order deterministic
        auto it = by_root.find(uf.find(u));
        if (it == by_root.end()) continue;
        part.blocks.push_back(VertexSet::of(std::move(it->second), g.vertex_count()));
        by_root.erase(it);
    }
    return part;
}

namespace {

struct CycleSearch {
    const Graph& g;
    int max_length;
    std::size_t budget;
    std::size_t steps = 0;
    bool complete = true;
    std::vector<std::vector<int>> found = {};
    std::vector<char> on_path = {};
    std::vector<int> path = {};

    // Canonical form: smallest vertex first, and of its two cycle-neighbors
    // the path starts with the smaller one.  Enumerating paths that only use
    // vertices larger than the anchor yields each cycle exactly twice (once
    // per direction); the first < last test keeps one.
    void dfs(int anchor, int u) {
        if (++steps > budget) {
            complete = false;
            return;
        }
        for (int w : g.neighbors(u)) {
            if (!complete) return;
            if (w == anchor && path.size() >= 3 && path[1] < path.back()) {
                found.push_back(path);
            }
            if (w <= anchor || on_path[w]) continue;
            if (static_cast<int>(path.size()) >= max_length) continue;
            on_path[w] = 1;
            path.push_back(w);
            dfs(anchor, w);
            path.pop_back();
            on_path[w] = 0;
        }
    }
};

}  // namespace

CycleList short_cycles(const Graph& g, int max_length, std::size_t budget) {
    CycleList out;
    if (max_length < 3) return out;
    CycleSearch search{g, max_length, budget};
    search.on_path.assign(g.vertex_count(), 0);
    for (int anchor = 0; anchor < g.vertex_count() && search.complete; ++anchor) {
        search.path = {anchor};
        search.on_path[anchor] = 1;
        search.dfs(anchor, anchor);
        search.on_path[anchor] = 0;
    }
    out.cycles = std::move(search.found);
    out.complete = search.complete;
    std::sort(out.cycles.begin(), out.cycles.end(),
              [](const std::vector<int>& a, const std::vector<int>& b) {
                  return a.size() != b.size() ? a.size() < b.size() : a < b;
              });
    return out;
}

}  // namespace nodallab
