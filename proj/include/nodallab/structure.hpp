#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "nodallab/certificate.hpp"
#include "nodallab/graph.hpp"
#include "nodallab/spectral.hpp"

namespace nodallab {

struct MixingReport {
    /// Ordered-tuple edge count e(S,T) = |{(u,v) : u in S, v in T, uv edge}|;
    /// edges inside S∩T count twice.
    double e_st = 0.0;
    double center = 0.0;  // d |S| |T| / n
    double radius = 0.0;  // lambda(G) sqrt(|S||T|(1-|S|/n)(1-|T|/n))
    bool holds = false;
};

/// Expander mixing check |e(S,T) - center| <= radius for a d-regular graph.
MixingReport mixing_certificate(const Graph& g, const VertexSet& s, const VertexSet& t,
                                const SpectralSummary& summary);
MixingReport mixing_certificate(const Graph& g, const VertexSet& s, const VertexSet& t);

enum class ExpansionMethod { kExact, kHeuristic };

struct ExpansionReport {
    double epsilon = 0.0;
    double value = 0.0;  // min over nonempty |S| <= eps*n of |E(S, V\S)| / |S|
    VertexSet witness;
    bool exact = false;
};

/// Small-set edge expansion.  Exact enumerates all subsets (requires n <= 24);
/// the heuristic runs a seeded multi-restart local search and reports an upper
/// bound with exact=false.  Throws when eps*n < 1 (no admissible set).
ExpansionReport edge_expansion(const Graph& g, double eps, ExpansionMethod method,
                               std::uint64_t seed = 0);

/// 2 * max_{S nonempty} |E(S)| / |S|, i.e. the largest average degree over
/// all (vertex-induced) subgraphs; every subgraph of g then has a vertex of
/// degree <= this value.  Exact: parametric max-flow with the density binary
/// search carried out over a denominator fine enough to separate candidate
/// densities.
double hereditary_degree(const Graph& g);

/// Raised when a bounded enumeration (cycle listing) gives up before
/// finishing; the input is too dense for the requested work, not a bug.
struct BudgetError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct GirthRepairReport {
    Graph repaired;
    std::vector<Edge> removed;  // one edge per short cycle, lexicographically least
    int target_girth = 0;
    /// (max_degree-1) * n^(1 - c/2), where c is the measured bicycle-free
    /// constant radius/log_{d-1}(n); meaningful when target <= radius/2.
    double size_bound = 0.0;
};

/// Remove the lexicographically least edge of every cycle shorter than
/// target_girth.  Throws BudgetError when the cycle enumeration budget is
/// exhausted; the result always satisfies girth(repaired) >= target_girth.
GirthRepairReport girth_repair(const Graph& g, int target_girth,
                               std::size_t budget = 50'000'000);

struct SubgraphChecks {
    bool girth_ok = false;
    bool max_degree_ok = false;
    bool hereditary_ok = false;
    bool quad_form_ok = false;
    int girth = 0;          // of H (kInfiniteGirth when acyclic)
    int girth_target = 0;   // threshold used for girth_ok
    int max_degree = 0;
    double hereditary = 0.0;     // hereditary_degree(H) vs 2+delta
    double quad_form = 0.0;      // f_S^T A_H f_S / ||f_S||^2
    double quad_bound = 0.0;     // lambda + 4 d sqrt(eta)
    double eta = 0.0;            // mass of f outside S: 1 - ||f_S||^2/||f||^2
};

struct SubgraphReport {
    Graph h;
    VertexSet s;
    std::vector<Edge> removed_same_sign;   // f(u) f(v) >= 0 edges of g[S]
    std::vector<Edge> removed_singleton;   // one edge per full-degree singleton vertex
    std::vector<Edge> removed_girth;       // F ∩ E(g[S]), minus overlap above
    SubgraphChecks checks;
    double delta = 0.0;
    double lambda = 0.0;
};

/// The almost-treelike subgraph H: take g[S], drop every same-sign edge of f,
/// drop F there, and give each remaining full-degree singleton vertex one
/// edge of slack (its lexicographically least surviving edge).  The removed
/// sets are disjoint and together with E(H) partition E(g[S]).
SubgraphReport build_subgraph_h(const Graph& g, std::span<const double> f, const VertexSet& s,
                                const std::vector<Edge>& girth_edges, double delta = 0.1,
                                int girth_target = -1);

/// For H with hereditary degree <= 2(1+delta) and girth >= g_girth:
/// spectral_radius(H) <= 2 (1+delta) sqrt(max_degree-1) / (1 - 1/g_girth).
/// Inputs outside those hypotheses (hereditary degree too high, girth too
/// small, or max degree <= 1, where a single edge already beats the Kesten
/// bound) come back applicable=false rather than throwing.  Pass
/// g_girth = kInfiniteGirth for acyclic H.
Certificate spectral_radius_bound_certificate(const Graph& h, double delta, int g_girth);

}  // namespace nodallab
