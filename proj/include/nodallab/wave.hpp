#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "nodallab/certificate.hpp"
#include "nodallab/graph.hpp"

namespace nodallab {

/// Spherical function of the d-regular tree at eigenvalue lambda: Phi(0)=1,
/// Phi(1)=lambda/d, lambda Phi(k) = Phi(k-1) + (d-1) Phi(k+1).  This is the
/// correlation E[X_o X_v] of the Gaussian wave at distance k.  Requires
/// d >= 2 and |lambda| <= d; |Phi| <= 1 for all k.
double spherical_function(int d, double lambda, int k);
std::vector<double> spherical_profile(int d, double lambda, int kmax);

/// Vertices of the radius-R tree ball: 1 + d((d-1)^R - 1)/(d-2) for d >= 3.
long long tree_ball_size(int d, int radius);

/// Gaussian wave restricted to a radius-R tree ball, in BFS order.
/// `covariance` is the exact model Sigma(u,v) = Phi(dist(u,v)); `factor` its
/// symmetric PSD square root after clamping eigenvalues in [-1e-10, 0) to 0
/// (the covariance is singular by construction: the eigenvector equation ties
/// each internal vertex to its neighbors).  More negative eigenvalues raise
/// SolverError.
struct WaveModel {
    int d = 0;
    double lambda = 0.0;
    int radius = 0;
    int size = 0;  // tree ball size
    std::vector<int> parent, depth;
    std::vector<double> covariance;           // size*size, row-major
    std::vector<double> factor;               // symmetric sqrt of covariance
    double min_eigenvalue = 0.0;              // before clamping
};

WaveModel wave_covariance(int d, double lambda, int radius);

/// Vectors of local statistics, stored column-major: coordinate k of all
/// samples is contiguous (`column(k)`), which is what the covariance and
/// distance routines consume.
struct LocalDistribution {
    int width = 0;          // entries per sample
    std::size_t count = 0;  // number of samples
    std::vector<double> data;
    std::string source;

    std::span<const double> column(int k) const {
        return {data.data() + static_cast<std::size_t>(k) * count, count};
    }
    double& at(int k, std::size_t i) { return data[static_cast<std::size_t>(k) * count + i]; }
};

/// m draws of sigma * (wave on the tree ball).  Sample i is a deterministic
/// function of (seed, i): shard-independent.  sigma = 0 yields exact zeros.
LocalDistribution sample_wave(const WaveModel& model, double sigma, std::size_t m,
                              std::uint64_t seed);

/// Entrywise empirical covariance (width x width, row-major).
std::vector<double> empirical_covariance(const LocalDistribution& dist);

/// Monte Carlo estimate of the radius-1 singleton event: the center of a
/// sigma=1 wave sample has all neighbor signs opposite and every entry of the
/// ball has modulus >= alpha/(5d).  The certificate compares against the
/// closed-form lower bound c = alpha^d / (3^(d+2) d^(d+1)) and holds iff
/// estimate + 3*stderr >= c.  Requires d >= 3, 0 < alpha <= d, lambda <= -alpha.
struct SingletonEstimate {
    double estimate = 0.0;
    double std_error = 0.0;
    std::size_t samples = 0;
    double lower_bound = 0.0;  // the closed-form c
    Certificate certificate;
};

SingletonEstimate singleton_probability(int d, double lambda, double alpha, std::size_t m,
                                        std::uint64_t seed);

/// Local statistics of a vector on a graph: for every vertex u, the ball
/// B(u, ell) read in BFS order with uniformly random tie-breaks (per-vertex
/// stream of `seed`), entries sqrt(n) * f, zero-padded up to the regular tree
/// ball size.  Exactly n samples, in vertex order.
LocalDistribution local_distribution(const Graph& g, std::span<const double> f, int ell,
                                     std::uint64_t seed);

/// Levy-Prokhorov distance between the empirical measure of `samples` and
/// N(0, sigma^2), computed to 1e-6 by bisection on epsilon; sigma = 0 compares
/// against the point mass at 0.
double lp_distance_1d(std::span<const double> samples, double sigma);

/// The sigma on a 200-point grid over [0,1] minimizing the distance between
/// coordinate 0 of `dist` and N(0, sigma^2); ties go to the smaller sigma.
double fit_sigma(const LocalDistribution& dist);

}  // namespace nodallab
