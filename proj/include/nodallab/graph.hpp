#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

namespace nodallab {

/// Sentinel girth of an acyclic graph.
inline constexpr int kInfiniteGirth = std::numeric_limits<int>::max();

using Edge = std::pair<int, int>;  // canonical: first < second

/// Simple undirected graph, vertices 0..n-1.  Edges are stored sorted
/// lexicographically with u < v; adjacency lists are sorted.  Instances are
/// immutable after construction, all views are cheap.
class Graph {
  public:
    Graph() = default;

    /// Canonicalizes (orients u<v, sorts) and validates: rejects out-of-range
    /// endpoints, loops and duplicate edges.
    static Graph from_edge_list(int n, std::vector<Edge> edges);

    int vertex_count() const noexcept { return n_; }
    int edge_count() const noexcept { return static_cast<int>(edges_.size()); }
    const std::vector<Edge>& edges() const noexcept { return edges_; }

    std::span<const int> neighbors(int v) const {
        return {adj_.data() + offsets_[v], adj_.data() + offsets_[v + 1]};
    }
    int degree(int v) const { return offsets_[v + 1] - offsets_[v]; }
    int max_degree() const noexcept { return max_degree_; }
    /// d if the graph is d-regular, empty otherwise.
    std::optional<int> regular_degree() const noexcept { return regular_degree_; }
    bool has_edge(int u, int v) const;

    bool is_connected() const;
    /// Largest eccentricity over all vertices, per component (edgeless: 0).
    int diameter() const;

    /// Order-sensitive digest of (n, edge list); used to tie results and
    /// certificates back to their input graph.
    std::uint64_t content_hash() const;

  private:
    int n_ = 0;
    int max_degree_ = 0;
    std::vector<Edge> edges_;
    std::vector<int> offsets_ = {0};
    std::vector<int> adj_;
    std::optional<int> regular_degree_;
};

/// Sorted set of vertices of a host graph.
struct VertexSet {
    std::vector<int> members;  // sorted, unique
    int host_n = 0;

    static VertexSet of(std::vector<int> vertices, int host_n);
    static VertexSet full(int host_n);

    std::size_t size() const noexcept { return members.size(); }
    bool contains(int v) const;
};

struct ComponentPartition {
    std::vector<VertexSet> blocks;  // ordered by smallest member
};

struct GenerationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Uniform random d-regular simple graph on n vertices (configuration model:
/// uniform pairing of n*d half-edges, defective pairs resolved by random
/// double swaps).  Deterministic per seed.  Throws std::invalid_argument when
/// n*d is odd or d outside [0, n-1], GenerationError when repair stalls.
Graph random_regular(int n, int d, std::uint64_t seed);

/// Length of a shortest cycle, kInfiniteGirth for forests.
int girth(const Graph& g);

struct BicycleFreeRadius {
    int radius = 0;
    /// True when no ball ever collects two cycles and the radius is only
    /// bounded by the graph's diameter.
    bool diameter_capped = false;
};

/// Largest r such that every ball B(v, r) contains at most one cycle,
/// i.e. has cycle rank |E|-|V|+1 <= 1.
BicycleFreeRadius bicycle_free_radius(const Graph& g);

/// All vertices within the given distance of s (multi-source BFS).
VertexSet ball(const Graph& g, const VertexSet& s, int radius);

/// Connected components of the induced subgraph g[s].
ComponentPartition components(const Graph& g, const VertexSet& s);

struct CycleList {
    std::vector<std::vector<int>> cycles;  // each cycle as a closed vertex walk, canonical form
    bool complete = true;                  // false when the enumeration budget ran out
};

/// Every simple cycle of length <= max_length, deduplicated (rotation and
/// direction).  Cycles are listed with their smallest vertex first and the
/// smaller of its two cycle-neighbors second.
CycleList short_cycles(const Graph& g, int max_length, std::size_t budget = 50'000'000);

}  // namespace nodallab
