#include "nodallab/structure.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <set>
#include <unordered_set>

#include "dinic.hpp"
#include "nodallab/kernels.hpp"
#include "nodallab/nodal.hpp"
#include "nodallab/rng.hpp"

namespace nodallab {

namespace {

int require_regular(const Graph& g) {
    const auto d = g.regular_degree();
    if (!d) throw PreconditionError("graph is not regular");
    return *d;
}

}  // namespace

MixingReport mixing_certificate(const Graph& g, const VertexSet& s, const VertexSet& t,
                                const SpectralSummary& summary) {
    const int d = require_regular(g);
    if (s.host_n != g.vertex_count() || t.host_n != g.vertex_count()) {
        throw std::invalid_argument("set/graph mismatch");
    }
    std::vector<char> in_t(g.vertex_count(), 0);
    for (int v : t.members) in_t[v] = 1;

    long long e_st = 0;
    for (int u : s.members) {
        for (int v : g.neighbors(u)) e_st += in_t[v];
    }

    const double n = g.vertex_count();
    const double ssz = static_cast<double>(s.size());
    const double tsz = static_cast<double>(t.size());
    MixingReport rep;
    rep.e_st = static_cast<double>(e_st);
    rep.center = d * ssz * tsz / n;
    rep.radius = summary.expansion * std::sqrt(ssz * tsz * (1.0 - ssz / n) * (1.0 - tsz / n));
    rep.holds = std::fabs(rep.e_st - rep.center) <= rep.radius + kCertificateSlack;
    return rep;
}

MixingReport mixing_certificate(const Graph& g, const VertexSet& s, const VertexSet& t) {
    return mixing_certificate(g, s, t, spectral_expansion(g));
}

namespace {

ExpansionReport expansion_exact(const Graph& g, double eps, int max_size) {
    const int n = g.vertex_count();
    std::vector<std::uint32_t> adj_mask(n, 0);
    for (const auto& [u, v] : g.edges()) {
        adj_mask[u] |= 1u << v;
        adj_mask[v] |= 1u << u;
    }
    double best = std::numeric_limits<double>::infinity();
    std::uint32_t best_mask = 0;
    for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
        const int size = std::popcount(mask);
        if (size > max_size) continue;
        long long deg_sum = 0, internal2 = 0;
        for (std::uint32_t rest = mask; rest != 0; rest &= rest - 1) {
            const int v = std::countr_zero(rest);
            deg_sum += g.degree(v);
            internal2 += std::popcount(adj_mask[v] & mask);
        }
        const double value = static_cast<double>(deg_sum - internal2) / size;
        if (value < best) {
            best = value;
            best_mask = mask;
        }
    }
    std::vector<int> witness;
    for (std::uint32_t rest = best_mask; rest != 0; rest &= rest - 1) {
        witness.push_back(std::countr_zero(rest));
    }
    return {eps, best, VertexSet::of(std::move(witness), n), true};
}

// Seeded multi-restart local search: grow from a random vertex, then do
// steepest add/remove/swap moves on the boundary ratio.  Upper bound only.
ExpansionReport expansion_heuristic(const Graph& g, double eps, int max_size,
                                    std::uint64_t seed) {
    const int n = g.vertex_count();
    rng::SplitMix64 gen(rng::derive(seed, 0xe49a));
    std::vector<char> in_s(n, 0);
    double best = std::numeric_limits<double>::infinity();
    std::vector<int> best_set;

    auto boundary_delta_add = [&](int v) {
        int cut = 0;
        for (int w : g.neighbors(v)) cut += in_s[w] ? -1 : 1;
        return cut;
    };

    const int restarts = std::min(40, n);
    for (int r = 0; r < restarts; ++r) {
        std::fill(in_s.begin(), in_s.end(), 0);
        std::vector<int> members;
        int boundary = 0;
        const int start = static_cast<int>(rng::below(gen, n));
        in_s[start] = 1;
        members.push_back(start);
        boundary = g.degree(start);

        auto ratio = [&]() { return static_cast<double>(boundary) / members.size(); };
        auto consider = [&]() {
            if (ratio() < best) {
                best = ratio();
                best_set = members;
            }
        };
        consider();

        for (int step = 0; step < 4 * max_size; ++step) {
            // steepest add within the size cap
            int pick = -1, pick_delta = std::numeric_limits<int>::max();
            if (static_cast<int>(members.size()) < max_size) {
                for (int v = 0; v < n; ++v) {
                    if (in_s[v]) continue;
                    const int delta = boundary_delta_add(v);
                    if (delta < pick_delta) {
                        pick_delta = delta;
                        pick = v;
                    }
                }
            }
            if (pick >= 0 &&
                (boundary + pick_delta) * static_cast<long long>(members.size()) <
                    static_cast<long long>(boundary) *
                        static_cast<long long>(members.size() + 1)) {
                in_s[pick] = 1;
                members.push_back(pick);
                boundary += pick_delta;
                consider();
                continue;
            }
            // otherwise try the best removal
            int drop = -1, drop_delta = std::numeric_limits<int>::max();
            for (int v : members) {
                in_s[v] = 0;
                const int delta = boundary_delta_add(v);
                in_s[v] = 1;
                if (-delta < drop_delta) {
                    drop_delta = -delta;
                    drop = v;
                }
            }
            if (members.size() > 1 && drop >= 0 &&
                (boundary + drop_delta) * static_cast<long long>(members.size()) <
                    static_cast<long long>(boundary) *
                        static_cast<long long>(members.size() - 1)) {
                in_s[drop] = 0;
                members.erase(std::find(members.begin(), members.end(), drop));
                boundary += drop_delta;
                consider();
                continue;
            }
            break;  // local optimum
        }
    }
    return {eps, best, VertexSet::of(std::move(best_set), n), false};
}

}  // namespace

ExpansionReport edge_expansion(const Graph& g, double eps, ExpansionMethod method,
                               std::uint64_t seed) {
    const int n = g.vertex_count();
    const int max_size = static_cast<int>(std::min<double>(n, eps * n));
    if (max_size < 1) throw std::invalid_argument("eps*n < 1 admits no set");
    if (method == ExpansionMethod::kExact) {
        if (n > 24) throw std::invalid_argument("exact expansion limited to n <= 24");
        return expansion_exact(g, eps, max_size);
    }
    return expansion_heuristic(g, eps, max_size, seed);
}

namespace {

// Does some nonempty S satisfy |E(S)| * scale > k * |S|?  Parametric min-cut:
// source->edge arcs carry `scale`, vertex->sink arcs carry k, so
// mincut = scale*m - max_S(scale*|E(S)| - k*|S|).
bool density_feasible(const Graph& g, std::int64_t scale, std::int64_t k,
                      std::vector<char>* witness) {
    const int n = g.vertex_count();
    const int m = g.edge_count();
    detail::Dinic net(1 + m + n + 1);
    const int source = 0, sink = 1 + m + n;
    const std::int64_t inf = scale * m + 1;
    for (int e = 0; e < m; ++e) {
        net.add_edge(source, 1 + e, scale);
        net.add_edge(1 + e, 1 + m + g.edges()[e].first, inf);
        net.add_edge(1 + e, 1 + m + g.edges()[e].second, inf);
    }
    for (int v = 0; v < n; ++v) net.add_edge(1 + m + v, sink, k);
    const std::int64_t flow = net.max_flow(source, sink);
    const bool feasible = flow < scale * m;
    if (feasible && witness) {
        const auto side = net.min_cut_side(source);
        witness->assign(n, 0);
        for (int v = 0; v < n; ++v) (*witness)[v] = side[1 + m + v];
    }
    return feasible;
}

}  // namespace

double hereditary_degree(const Graph& g) {
    const int n = g.vertex_count();
    const long long m = g.edge_count();
    if (m == 0) return 0.0;

    // Candidate densities |E(S)|/|S| have denominator <= n, so distinct ones
    // differ by more than 1/scale below; the binary search therefore isolates
    // the exact maximizer and the answer is computed exactly from the witness.
    const std::int64_t scale = static_cast<std::int64_t>(n) * n + 1;
    std::int64_t lo = 0, hi = m * scale + 1;  // lo feasible, hi not
    while (hi - lo > 1) {
        const std::int64_t mid = lo + (hi - lo) / 2;
        if (density_feasible(g, scale, mid, nullptr)) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    std::vector<char> witness;
    density_feasible(g, scale, lo, &witness);
    long long sz = 0, inside = 0;
    for (int v = 0; v < n; ++v) sz += witness[v];
    for (const auto& [u, v] : g.edges()) inside += witness[u] && witness[v];
    if (sz == 0) return 0.0;  // unreachable for m >= 1
    return 2.0 * static_cast<double>(inside) / static_cast<double>(sz);
}

GirthRepairReport girth_repair(const Graph& g, int target_girth, std::size_t budget) {
    GirthRepairReport rep;
    rep.target_girth = target_girth;

    std::set<Edge> removed;
    if (target_girth > 3) {
        const CycleList cycles = short_cycles(g, target_girth - 1, budget);
        if (!cycles.complete) {
            throw BudgetError("girth repair: cycle enumeration budget exhausted");
        }
        for (const auto& cyc : cycles.cycles) {
            Edge least{g.vertex_count(), g.vertex_count()};
            for (std::size_t i = 0; i < cyc.size(); ++i) {
                int u = cyc[i], v = cyc[(i + 1) % cyc.size()];
                if (u > v) std::swap(u, v);
                least = std::min(least, Edge{u, v});
            }
            removed.insert(least);
        }
    }

    std::vector<Edge> kept;
    kept.reserve(g.edges().size());
    for (const auto& e : g.edges()) {
        if (!removed.count(e)) kept.push_back(e);
    }
    rep.repaired = Graph::from_edge_list(g.vertex_count(), std::move(kept));
    rep.removed.assign(removed.begin(), removed.end());
    if (girth(rep.repaired) < target_girth) {
        throw std::logic_error("girth repair failed to reach its target");
    }

    const int d = g.max_degree();
    const double n = g.vertex_count();
    if (d >= 3 && n >= 2) {
        const double c = bicycle_free_radius(g).radius / (std::log(n) / std::log(d - 1.0));
        rep.size_bound = (d - 1.0) * std::pow(n, 1.0 - c / 2.0);
    } else {
        rep.size_bound = static_cast<double>(rep.removed.size());
    }
    return rep;
}

SubgraphReport build_subgraph_h(const Graph& g, std::span<const double> f, const VertexSet& s,
                                const std::vector<Edge>& girth_edges, double delta,
                                int girth_target) {
    const int n = g.vertex_count();
    if (static_cast<int>(f.size()) != n) throw std::invalid_argument("vector length mismatch");
    if (s.host_n != n) throw std::invalid_argument("set/graph mismatch");

    const SignVector sv = SignVector::classify(f);
    std::vector<char> in_s(n, 0);
    for (int v : s.members) in_s[v] = 1;

    std::set<Edge> fset;
    for (auto [u, v] : girth_edges) {
        if (u > v) std::swap(u, v);
        if (in_s[u] && in_s[v]) fset.insert({u, v});
    }

    SubgraphReport rep;
    rep.s = s;
    rep.delta = delta;

    std::set<Edge> dropped;  // all removed edges, for the final subtraction
    for (const auto& e : g.edges()) {
        const auto [u, v] = e;
        if (!in_s[u] || !in_s[v]) continue;
        if (sv.sign[u] * sv.sign[v] >= 0) {
            rep.removed_same_sign.push_back(e);
            dropped.insert(e);
        } else if (fset.count(e)) {
            rep.removed_girth.push_back(e);
            dropped.insert(e);
        }
    }

    // A full-degree singleton keeps all d opposite-sign edges, so drop its
    // lexicographically least surviving edge to restore the degree bound.
    for (int v : s.members) {
        if (sv.sign[v] == 0) continue;
        bool singleton_full_degree = true;
        for (int u : g.neighbors(v)) {
            if (!in_s[u] || sv.sign[u] != -sv.sign[v]) {
                singleton_full_degree = false;
                break;
            }
        }
        if (!singleton_full_degree || g.degree(v) == 0) continue;
        for (int u : g.neighbors(v)) {  // ascending, so first hit is least
            const Edge e{std::min(u, v), std::max(u, v)};
            if (!dropped.count(e)) {
                rep.removed_singleton.push_back(e);
                dropped.insert(e);
                break;
            }
        }
    }
    std::sort(rep.removed_singleton.begin(), rep.removed_singleton.end());

    std::vector<Edge> kept;
    for (const auto& e : g.edges()) {
        if (in_s[e.first] && in_s[e.second] && !dropped.count(e)) kept.push_back(e);
    }
    rep.h = Graph::from_edge_list(n, std::move(kept));

    const int d = g.regular_degree().value_or(g.max_degree());
    const double total = kernels::sumsq(f.data(), f.size());
    double inside = 0.0;
    for (int v : s.members) inside += f[v] * f[v];
    const double eta = total > 0.0 ? std::max(0.0, 1.0 - inside / total) : 0.0;

    double quad = 0.0;
    for (const auto& [u, v] : rep.h.edges()) quad += 2.0 * f[u] * f[v];
    quad = inside > 0.0 ? quad / inside : 0.0;

    rep.lambda = rayleigh(g, f);

    SubgraphChecks& ck = rep.checks;
    ck.girth = girth(rep.h);
    ck.girth_target =
        girth_target > 0 ? girth_target : std::max(3, bicycle_free_radius(g).radius / 2);
    ck.girth_ok = ck.girth >= ck.girth_target;
    ck.max_degree = rep.h.max_degree();
    ck.max_degree_ok = ck.max_degree <= d - 1;
    ck.hereditary = hereditary_degree(rep.h);
    ck.hereditary_ok = ck.hereditary <= 2.0 + delta + kCertificateSlack;
    ck.eta = eta;
    ck.quad_form = quad;
    ck.quad_bound = rep.lambda + 4.0 * d * std::sqrt(eta);
    ck.quad_form_ok = ck.quad_form <= ck.quad_bound + kCertificateSlack;
    return rep;
}

Certificate spectral_radius_bound_certificate(const Graph& h, double delta, int g_girth) {
    if (delta < 0.0) throw std::invalid_argument("delta must be non-negative");
    if (g_girth != kInfiniteGirth && g_girth < 3) {
        throw std::invalid_argument("girth must be >= 3 (or infinite)");
    }
    const double hd = hereditary_degree(h);

    Certificate cert;
    cert.name = "spectral-radius-bound";
    cert.inputs.graph_hash = h.content_hash();
    cert.inputs.params = {{"delta", delta},
                          {"girth", g_girth == kInfiniteGirth ? -1.0 : g_girth},
                          {"max_degree", static_cast<double>(h.max_degree())},
                          {"hereditary_degree", hd}};
    cert.achieved = spectral_radius(h);
    // Hypothesis violations are reported, not thrown: a graph outside the
    // statement is a result ("not applicable"), not a caller mistake.
    if (hd > 2.0 * (1.0 + delta) + kCertificateSlack || girth(h) < g_girth) {
        cert.applicable = false;
        cert.holds = true;
        cert.bound = 0.0;
        return cert;
    }
    const int max_deg = h.max_degree();
    if (max_deg < 2) {
        // A bare edge has spectral radius 1 but Kesten-style bounds collapse
        // to 0; the statement starts at max degree 2.
        cert.applicable = false;
        cert.holds = true;
        cert.bound = 0.0;
        return cert;
    }
    const double girth_factor = g_girth == kInfiniteGirth ? 1.0 : 1.0 / (1.0 - 1.0 / g_girth);
    cert.bound = 2.0 * (1.0 + delta) * std::sqrt(max_deg - 1.0) * girth_factor;
    cert.holds = cert.achieved <= cert.bound + kCertificateSlack;
    return cert;
}

}  // namespace nodallab
