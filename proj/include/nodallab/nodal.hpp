#pragma once

#include <span>
#include <vector>

#include "nodallab/certificate.hpp"
#include "nodallab/graph.hpp"
#include "nodallab/spectral.hpp"

namespace nodallab {

/// Coordinates at most zero_tolerance in magnitude count as exact zeros when
/// signing a vector.  The default scales with the vector's largest entry.
inline constexpr double kZeroToleranceFactor = 1e-12;

struct SignVector {
    std::vector<int> sign;  // -1 / 0 / +1 per vertex
    double zero_threshold = 0.0;
    int positives = 0;
    int negatives = 0;
    int zeros = 0;

    static SignVector classify(std::span<const double> f,
                               double tol_factor = kZeroToleranceFactor);
};

enum class DomainMode { kWeak, kStrong };

struct NodalDomain {
    VertexSet vertices;
    int sign = 0;  // +1 / -1, or 0 for an all-zero component
    bool singleton = false;
};

struct NodalPartition {
    DomainMode mode = DomainMode::kWeak;
    std::vector<NodalDomain> domains;

    int domain_count() const { return static_cast<int>(domains.size()); }
    /// Sum of the two largest domain sizes (overlapping zeros counted in each
    /// domain that lists them).
    int two_largest_total() const;
};

/// Weak domains: components of g[{f >= 0}] holding a positive vertex and of
/// g[{f <= 0}] holding a negative one; zero vertices may therefore sit in one
/// domain of each sign.  All-zero graph components appear once, with sign 0.
/// Strong domains: components of g[{f > 0}] and g[{f < 0}].
NodalPartition nodal_domains(const Graph& g, std::span<const double> f, DomainMode mode,
                             double tol_factor = kZeroToleranceFactor);

/// Vertices v with f(v) != 0 whose neighbors all satisfy f(u) f(v) < 0.
int singleton_count(const Graph& g, std::span<const double> f,
                    double tol_factor = kZeroToleranceFactor);

/// For d-regular g with expansion lambda(G) < d and S of size c*n: the
/// largest component of g[S] has at least (c - 2(1-c) lambda/(d-lambda)) * n
/// vertices.  Holds unconditionally; the bound is often vacuous (negative).
Certificate giant_component_certificate(const Graph& g, const VertexSet& s,
                                        const SpectralSummary& summary);
Certificate giant_component_certificate(const Graph& g, const VertexSet& s);

/// The two largest weak domains of any signing together cover at least
/// (1 - 2 lambda/(d-lambda)) * n vertices.
Certificate two_giant_domains_certificate(const Graph& g, std::span<const double> f,
                                          const SpectralSummary& summary);
Certificate two_giant_domains_certificate(const Graph& g, std::span<const double> f);

/// Eigenvectors with eigenvalue <= -(d-1)-alpha have at least
/// n / (2 eta)^(2 + log(d-1)/log(1+alpha/(d-1))) weak domains, where
/// eta = sqrt(n) * max|f| for unit f.  Not applicable above the eigenvalue
/// threshold; requires d >= 3.
Certificate negative_eigenvalue_domain_certificate(const Graph& g, std::span<const double> f,
                                                   double lambda, double alpha);

}  // namespace nodallab
