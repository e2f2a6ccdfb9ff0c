#include "nodallab/nodal.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

#include "nodallab/kernels.hpp"
#include "nodallab/union_find.hpp"

namespace nodallab {

SignVector SignVector::classify(std::span<const double> f, double tol_factor) {
    double peak = 0.0;
    for (double x : f) peak = std::max(peak, std::fabs(x));
    SignVector s;
    s.zero_threshold = tol_factor * peak;
    s.sign.resize(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) {
        if (std::fabs(f[i]) <= s.zero_threshold) {
            s.sign[i] = 0;
            ++s.zeros;
        } else if (f[i] > 0.0) {
            s.sign[i] = 1;
            ++s.positives;
        } else {
            s.sign[i] = -1;
            ++s.negatives;
        }
    }
    return s;
}

int NodalPartition::two_largest_total() const {
    int best = 0, second = 0;
    for (const auto& d : domains) {
        const int sz = static_cast<int>(d.vertices.size());
        if (sz > best) {
            second = best;
            best = sz;
        } else if (sz > second) {
            second = sz;
        }
    }
    return best + second;
}

namespace {

enum class ZeroBlocks { kSkip, kKeepIsolated };

// Components of the induced subgraph on {v : pred(sign[v])}, emitted as
// domains.  An all-zero block is only a domain in its own right when nothing
// adjoins it (a larger set of the other weak sign would otherwise contain
// it, so it is not maximal); kKeepIsolated emits exactly those, kSkip none.
template <class Pred>
void collect_domains(const Graph& g, const std::vector<int>& sign, Pred pred,
                     std::vector<NodalDomain>& out, ZeroBlocks zero_policy) {
    const int n = g.vertex_count();
    UnionFind uf(n);
    for (int u = 0; u < n; ++u) {
        if (!pred(sign[u])) continue;
        for (int v : g.neighbors(u)) {
            if (v > u && pred(sign[v])) uf.unite(u, v);
        }
    }
    std::unordered_map<int, std::vector<int>> blocks;
    for (int u = 0; u < n; ++u) {
        if (pred(sign[u])) blocks[uf.find(u)].push_back(u);
    }
    for (int u = 0; u < n; ++u) {
        if (!pred(sign[u])) continue;
        auto it = blocks.find(uf.find(u));
        if (it == blocks.end()) continue;
        int block_sign = 0;
        for (int v : it->second) {
            if (sign[v] != 0) {
                block_sign = sign[v];
                break;
            }
        }
        if (block_sign == 0) {
            bool keep = zero_policy == ZeroBlocks::kKeepIsolated;
            if (keep) {
                // Blocks were filled in ascending vertex order, so membership
                // is a binary search away.
                const std::vector<int>& members = it->second;
                for (int v : members) {
                    for (int w : g.neighbors(v)) {
                        if (!std::binary_search(members.begin(), members.end(), w)) {
                            keep = false;
                            break;
                        }
                    }
                    if (!keep) break;
                }
            }
            if (!keep) {
                blocks.erase(it);
                continue;
            }
        }
        NodalDomain dom;
        dom.sign = block_sign;
        dom.singleton = it->second.size() == 1;
        dom.vertices = VertexSet::of(std::move(it->second), n);
        out.push_back(std::move(dom));
        blocks.erase(it);
    }
}

}  // namespace

NodalPartition nodal_domains(const Graph& g, std::span<const double> f, DomainMode mode,
                             double tol_factor) {
    if (static_cast<int>(f.size()) != g.vertex_count()) {
        throw std::invalid_argument("vector length mismatch");
    }
    const SignVector s = SignVector::classify(f, tol_factor);
    NodalPartition part;
    part.mode = mode;
    if (mode == DomainMode::kStrong) {
        collect_domains(g, s.sign, [](int x) { return x > 0; }, part.domains, ZeroBlocks::kSkip);
        collect_domains(g, s.sign, [](int x) { return x < 0; }, part.domains, ZeroBlocks::kSkip);
    } else {
        // Weak domains overlap on zeros: a domain is a maximal connected set
        // on which f keeps weak sign, i.e. a component of g[{f>=0}] holding a
        // positive vertex or a component of g[{f<=0}] holding a negative one.
        // All-zero components of g itself qualify on both sides; emit them
        // once, from the first pass, with sign 0.
        collect_domains(g, s.sign, [](int x) { return x >= 0; }, part.domains,
                        ZeroBlocks::kKeepIsolated);
        collect_domains(g, s.sign, [](int x) { return x <= 0; }, part.domains,
                        ZeroBlocks::kSkip);
    }
    std::sort(part.domains.begin(), part.domains.end(),
              [](const NodalDomain& a, const NodalDomain& b) {
                  if (a.vertices.members.front() != b.vertices.members.front()) {
                      return a.vertices.members.front() < b.vertices.members.front();
                  }
                  return a.sign > b.sign;
              });
    return part;
}

int singleton_count(const Graph& g, std::span<const double> f, double tol_factor) {
    if (static_cast<int>(f.size()) != g.vertex_count()) {
        throw std::invalid_argument("vector length mismatch");
    }
    const SignVector s = SignVector::classify(f, tol_factor);
    int count = 0;
    for (int v = 0; v < g.vertex_count(); ++v) {
        if (s.sign[v] == 0) continue;
        bool all_opposite = true;
        for (int u : g.neighbors(v)) {
            if (s.sign[u] != -s.sign[v]) {
                all_opposite = false;
                break;
            }
        }
        count += all_opposite;
    }
    return count;
}

namespace {

int require_regular(const Graph& g) {
    const auto d = g.regular_degree();
    if (!d) throw PreconditionError("graph is not regular");
    return *d;
}

double require_expanding(const SpectralSummary& summary, int d) {
    const double lambda = summary.expansion;
    if (lambda >= d - 1e-7 * std::max(1, d)) {
        throw PreconditionError("expansion lambda(G) is not separated from d");
    }
    return lambda;
}

}  // namespace

Certificate giant_component_certificate(const Graph& g, const VertexSet& s,
                                        const SpectralSummary& summary) {
    const int d = require_regular(g);
    const double lambda = require_expanding(summary, d);
    if (s.host_n != g.vertex_count()) throw std::invalid_argument("set/graph mismatch");

    const double n = g.vertex_count();
    const double c = s.size() / n;

    Certificate cert;
    cert.name = "giant-component";
    cert.bound = (c - 2.0 * (1.0 - c) * lambda / (d - lambda)) * n;
    int largest = 0;
    for (const auto& block : components(g, s).blocks) {
        largest = std::max(largest, static_cast<int>(block.size()));
    }
    cert.achieved = largest;
    cert.holds = cert.achieved >= cert.bound - kCertificateSlack;
    cert.inputs.graph_hash = g.content_hash();
    cert.inputs.params = {{"d", static_cast<double>(d)},
                          {"lambda", lambda},
                          {"subset_size", static_cast<double>(s.size())}};
    return cert;
}

Certificate giant_component_certificate(const Graph& g, const VertexSet& s) {
    return giant_component_certificate(g, s, spectral_expansion(g));
}

Certificate two_giant_domains_certificate(const Graph& g, std::span<const double> f,
                                          const SpectralSummary& summary) {
    const int d = require_regular(g);
    const double lambda = require_expanding(summary, d);

    Certificate cert;
    cert.name = "two-giant-domains";
    const double n = g.vertex_count();
    cert.bound = (1.0 - 2.0 * lambda / (d - lambda)) * n;
    cert.achieved = nodal_domains(g, f, DomainMode::kWeak).two_largest_total();
    cert.holds = cert.achieved >= cert.bound - kCertificateSlack;
    cert.inputs.graph_hash = g.content_hash();
    cert.inputs.params = {{"d", static_cast<double>(d)}, {"lambda", lambda}};
    return cert;
}

Certificate two_giant_domains_certificate(const Graph& g, std::span<const double> f) {
    return two_giant_domains_certificate(g, f, spectral_expansion(g));
}

Certificate negative_eigenvalue_domain_certificate(const Graph& g, std::span<const double> f,
                                                   double lambda, double alpha) {
    const int d = require_regular(g);
    if (d < 3) throw PreconditionError("needs degree >= 3");
    if (alpha <= 0.0) throw PreconditionError("alpha must be positive");
    if (static_cast<int>(f.size()) != g.vertex_count()) {
        throw std::invalid_argument("vector length mismatch");
    }
    if (std::fabs(rayleigh(g, f) - lambda) > 1e-6 * std::max(1, d)) {
        throw PreconditionError("f is not an eigenvector for the stated eigenvalue");
    }

    const double n = g.vertex_count();
    std::vector<double> unit(f.begin(), f.end());
    const double norm = std::sqrt(kernels::sumsq(unit.data(), unit.size()));
    for (double& x : unit) x /= norm;
    double peak = 0.0;
    for (double x : unit) peak = std::max(peak, std::fabs(x));
    const double eta = std::sqrt(n) * peak;

    Certificate cert;
    cert.name = "negative-eigenvalue-domain-count";
    cert.inputs.graph_hash = g.content_hash();
    cert.inputs.params = {{"d", static_cast<double>(d)},
                          {"lambda", lambda},
                          {"alpha", alpha},
                          {"eta", eta}};
    if (lambda > -(d - 1.0) - alpha + kCertificateSlack) {
        cert.applicable = false;
        cert.holds = true;  // nothing is claimed above the threshold
        return cert;
    }
    const double exponent = 2.0 + std::log(d - 1.0) / std::log1p(alpha / (d - 1.0));
    cert.bound = n / std::pow(2.0 * eta, exponent);
    cert.achieved = nodal_domains(g, unit, DomainMode::kWeak).domain_count();
    cert.holds = cert.achieved >= cert.bound - kCertificateSlack;
    return cert;
}

}  // namespace nodallab
