#pragma once

#include <span>
#include <stdexcept>
#include <vector>

#include "nodallab/graph.hpp"

namespace nodallab {

struct SolverError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Full adjacency eigendecomposition.  Eigenvalues descending, each vector
/// unit-norm with its first nonzero coordinate positive, so results are
/// reproducible across runs.
struct EigenSystem {
    int n = 0;
    std::vector<double> values;   // descending
    std::vector<double> vectors;  // n*n, vector i contiguous at [i*n, (i+1)*n)
    double residual = 0.0;        // max_i ||A v_i - lambda_i v_i||_2

    std::span<const double> vec(int i) const {
        return {vectors.data() + static_cast<std::size_t>(i) * n, static_cast<std::size_t>(n)};
    }
};

/// Dense symmetric solve (LAPACK dsyevd, pinned to one BLAS thread).  Fails
/// with SolverError if the residual exceeds 1e-8 * n * max_degree.
EigenSystem eigendecompose(const Graph& g);

struct SpectralSummary {
    double lambda_max = 0.0;
    double lambda_2 = 0.0;
    double lambda_min = 0.0;
    /// max(lambda_2, -lambda_min): the expansion quality lambda(G).
    double expansion = 0.0;
};

/// Requires n >= 2.
SpectralSummary spectral_expansion(const Graph& g);

/// f^T A f / f^T f; throws on a zero vector or length mismatch.
double rayleigh(const Graph& g, std::span<const double> f);

/// Largest |eigenvalue| of the adjacency matrix (0 for edgeless graphs).
double spectral_radius(const Graph& g);

/// Eigendecomposition of an arbitrary dense symmetric matrix (row-major,
/// n*n), eigenvalues ascending, eigenvector j stored in column j of
/// `vectors` (row-major: entry (i,j) at i*n+j).
struct SymEigen {
    int n = 0;
    std::vector<double> values;
    std::vector<double> vectors;
};

SymEigen sym_eigen(std::vector<double> dense, int n);

}  // namespace nodallab
