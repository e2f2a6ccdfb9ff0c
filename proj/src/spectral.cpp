#include "nodallab/spectral.hpp"

#include <lapacke.h>

#include <algorithm>
#include <cmath>
#include <mutex>

#include "nodallab/kernels.hpp"

extern "C" void openblas_set_num_threads(int);

namespace nodallab {

namespace {

// One BLAS thread, always: threaded reductions reorder sums and break
// run-to-run reproducibility, and the experiment runner parallelizes across
// decompositions anyway.
void pin_blas_once() {
    static std::once_flag flag;
    std::call_once(flag, [] { openblas_set_num_threads(1); });
}

// y = A x via the adjacency lists (the matrix is too sparse for dense gemv).
void adjacency_apply(const Graph& g, const double* x, double* y) {
    const int n = g.vertex_count();
    std::fill(y, y + n, 0.0);
    for (int u = 0; u < n; ++u) {
        double acc = 0.0;
        for (int v : g.neighbors(u)) acc += x[v];
        y[u] = acc;
    }
}

void canonicalize_sign(double* v, int n) {
    for (int i = 0; i < n; ++i) {
        if (v[i] != 0.0) {
            if (v[i] < 0.0) {
                for (int j = i; j < n; ++j) v[j] = -v[j];
            }
            return;
        }
    }
}

}  // namespace

SymEigen sym_eigen(std::vector<double> dense, int n) {
    pin_blas_once();
    if (static_cast<std::size_t>(n) * n != dense.size()) {
        throw std::invalid_argument("matrix size mismatch");
    }
    SymEigen out;
    out.n = n;
    out.values.assign(n, 0.0);
    if (n == 0) return out;
    const lapack_int info = LAPACKE_dsyevd(LAPACK_ROW_MAJOR, 'V', 'U', n, dense.data(), n,
                                           out.values.data());
    if (info != 0) {
        throw SolverError("dsyevd failed with info=" + std::to_string(info));
    }
    out.vectors = std::move(dense);
    return out;
}

EigenSystem eigendecompose(const Graph& g) {
    const int n = g.vertex_count();
    std::vector<double> dense(static_cast<std::size_t>(n) * n, 0.0);
    for (const auto& [u, v] : g.edges()) {
        dense[static_cast<std::size_t>(u) * n + v] = 1.0;
        dense[static_cast<std::size_t>(v) * n + u] = 1.0;
    }
    SymEigen sym = sym_eigen(std::move(dense), n);

    EigenSystem out;
    out.n = n;
    out.values.resize(n);
    out.vectors.resize(static_cast<std::size_t>(n) * n);
    for (int i = 0; i < n; ++i) {
        out.values[i] = sym.values[n - 1 - i];  // descending
        double* dst = out.vectors.data() + static_cast<std::size_t>(i) * n;
        const double* src = sym.vectors.data();
        for (int r = 0; r < n; ++r) dst[r] = src[static_cast<std::size_t>(r) * n + (n - 1 - i)];
        canonicalize_sign(dst, n);
    }

    std::vector<double> scratch(n);
    double worst = 0.0;
    for (int i = 0; i < n; ++i) {
        const double* v = out.vectors.data() + static_cast<std::size_t>(i) * n;
        adjacency_apply(g, v, scratch.data());
        kernels::axpy(-out.values[i], v, scratch.data(), n);
        worst = std::max(worst, std::sqrt(kernels::sumsq(scratch.data(), n)));
    }
    out.residual = worst;
    const double tol = 1e-8 * std::max(1, n) * std::max(1, g.max_degree());
    if (worst > tol) {
        throw SolverError("eigendecomposition residual " + std::to_string(worst) +
                          " exceeds tolerance " + std::to_string(tol));
    }
    return out;
}

SpectralSummary spectral_expansion(const Graph& g) {
    if (g.vertex_count() < 2) {
        throw std::invalid_argument("spectral expansion needs at least two vertices");
    }
    EigenSystem eig = eigendecompose(g);
    SpectralSummary s;
    s.lambda_max = eig.values.front();
    s.lambda_2 = eig.values[1];
    s.lambda_min = eig.values.back();
    s.expansion = std::max(s.lambda_2, -s.lambda_min);
    return s;
}

double rayleigh(const Graph& g, std::span<const double> f) {
    if (static_cast<int>(f.size()) != g.vertex_count()) {
        throw std::invalid_argument("vector length mismatch");
    }
    const double denom = kernels::sumsq(f.data(), f.size());
    if (denom == 0.0) throw std::invalid_argument("rayleigh quotient of the zero vector");
    double num = 0.0;
    for (const auto& [u, v] : g.edges()) num += 2.0 * f[u] * f[v];
    return num / denom;
}

double spectral_radius(const Graph& g) {
    if (g.vertex_count() == 0 || g.edge_count() == 0) return 0.0;
    EigenSystem eig = eigendecompose(g);
    return std::max(std::fabs(eig.values.front()), std::fabs(eig.values.back()));
}

}  // namespace nodallab
