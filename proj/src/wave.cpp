#include "nodallab/wave.hpp"

#include <cblas.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "nodallab/kernels.hpp"
#include "nodallab/rng.hpp"
#include "nodallab/spectral.hpp"

namespace nodallab {

double spherical_function(int d, double lambda, int k) {
    return spherical_profile(d, lambda, k).back();
}

std::vector<double> spherical_profile(int d, double lambda, int kmax) {
    if (d < 2) throw std::invalid_argument("spherical function needs d >= 2");
    if (std::fabs(lambda) > d) throw std::invalid_argument("|lambda| must be <= d");
    if (kmax < 0) throw std::invalid_argument("negative distance");
    std::vector<double> phi(kmax + 1);
    phi[0] = 1.0;
    if (kmax >= 1) phi[1] = lambda / d;
    for (int k = 1; k < kmax; ++k) {
        phi[k + 1] = (lambda * phi[k] - phi[k - 1]) / (d - 1);
    }
    return phi;
}

long long tree_ball_size(int d, int radius) {
    if (radius < 0) throw std::invalid_argument("negative radius");
    if (d <= 0) return 1;
    if (d == 1) return radius == 0 ? 1 : 2;
    if (d == 2) return 1 + 2LL * radius;
    long long size = 1, layer = d;
    for (int r = 1; r <= radius; ++r) {
        size += layer;
        layer *= d - 1;
        if (size > 1'000'000) throw std::invalid_argument("tree ball too large");
    }
    return size;
}

namespace {

int tree_distance(const std::vector<int>& parent, const std::vector<int>& depth, int a, int b) {
    int dist = 0;
    while (depth[a] > depth[b]) {
        a = parent[a];
        ++dist;
    }
    while (depth[b] > depth[a]) {
        b = parent[b];
        ++dist;
    }
    while (a != b) {
        a = parent[a];
        b = parent[b];
        dist += 2;
    }
    return dist;
}

}  // namespace

WaveModel wave_covariance(int d, double lambda, int radius) {
    if (d < 3) throw std::invalid_argument("wave model needs d >= 3");
    if (std::fabs(lambda) > d) throw std::invalid_argument("|lambda| must be <= d");
    const long long size_ll = tree_ball_size(d, radius);
    if (size_ll > 5000) throw std::invalid_argument("tree ball too large for a dense model");
    const int size = static_cast<int>(size_ll);

    WaveModel model;
    model.d = d;
    model.lambda = lambda;
    model.radius = radius;
    model.size = size;
    model.parent = {-1};
    model.depth = {0};
    for (int v = 0; static_cast<int>(model.parent.size()) < size; ++v) {
        const int kids = v == 0 ? d : d - 1;
        if (model.depth[v] == radius) continue;
        for (int c = 0; c < kids; ++c) {
            model.parent.push_back(v);
            model.depth.push_back(model.depth[v] + 1);
        }
    }

    const std::vector<double> phi = spherical_profile(d, lambda, 2 * radius);
    model.covariance.assign(static_cast<std::size_t>(size) * size, 0.0);
    for (int i = 0; i < size; ++i) {
        for (int j = i; j < size; ++j) {
            const double value = phi[tree_distance(model.parent, model.depth, i, j)];
            model.covariance[static_cast<std::size_t>(i) * size + j] = value;
            model.covariance[static_cast<std::size_t>(j) * size + i] = value;
        }
    }

    // The covariance is singular by design (lambda X_o = sum of neighbors, one
    // linear constraint per internal vertex), so the solver returns small
    // negative eigenvalues.  Clamp them to zero; anything beyond round-off is
    // a real failure.
    SymEigen eig = sym_eigen(model.covariance, size);
    model.min_eigenvalue = eig.values.front();
    if (model.min_eigenvalue < -1e-10) {
        throw SolverError("wave covariance has eigenvalue " +
                          std::to_string(model.min_eigenvalue) + " below -1e-10");
    }
    std::vector<double> scaled = eig.vectors;  // column j scaled by sqrt(eig_j)
    for (int j = 0; j < size; ++j) {
        const double s = std::sqrt(std::max(eig.values[j], 0.0));
        for (int i = 0; i < size; ++i) scaled[static_cast<std::size_t>(i) * size + j] *= s;
    }
    model.factor.assign(static_cast<std::size_t>(size) * size, 0.0);
    cblas_dgemm(CblasRowMajor, CblasNoTrans, CblasTrans, size, size, size, 1.0, scaled.data(),
                size, eig.vectors.data(), size, 0.0, model.factor.data(), size);
    return model;
}

LocalDistribution sample_wave(const WaveModel& model, double sigma, std::size_t m,
                              std::uint64_t seed) {
    if (sigma < 0.0) throw std::invalid_argument("sigma must be non-negative");
    const int width = model.size;
    LocalDistribution out;
    out.width = width;
    out.count = m;
    out.data.assign(static_cast<std::size_t>(width) * m, 0.0);
    out.source = "wave(d=" + std::to_string(model.d) + ",lambda=" + std::to_string(model.lambda) +
                 ",R=" + std::to_string(model.radius) + ",sigma=" + std::to_string(sigma) + ")";
    if (sigma == 0.0) return out;

    const std::uint64_t key = rng::derive(seed, 0x3a4eull);
    std::vector<double> gauss(width);
    for (std::size_t i = 0; i < m; ++i) {
        const std::uint64_t base = i * static_cast<std::uint64_t>(width);
        for (int j = 0; j < width; ++j) gauss[j] = rng::normal_at(key, base + j);
        for (int c = 0; c < width; ++c) {
            const double* row = model.factor.data() + static_cast<std::size_t>(c) * width;
            out.at(c, i) = sigma * kernels::dot(row, gauss.data(), width);
        }
    }
    return out;
}

std::vector<double> empirical_covariance(const LocalDistribution& dist) {
    const int w = dist.width;
    std::vector<double> cov(static_cast<std::size_t>(w) * w, 0.0);
    if (dist.count == 0) return cov;
    for (int i = 0; i < w; ++i) {
        for (int j = i; j < w; ++j) {
            const double value =
                kernels::dot(dist.column(i).data(), dist.column(j).data(), dist.count) /
                static_cast<double>(dist.count);
            cov[static_cast<std::size_t>(i) * w + j] = value;
            cov[static_cast<std::size_t>(j) * w + i] = value;
        }
    }
    return cov;
}

SingletonEstimate singleton_probability(int d, double lambda, double alpha, std::size_t m,
                                        std::uint64_t seed) {
    if (d < 3) throw std::invalid_argument("needs d >= 3");
    if (alpha <= 0.0 || alpha > d) throw std::invalid_argument("alpha must lie in (0, d]");
    if (lambda > -alpha) throw std::invalid_argument("needs lambda <= -alpha");
    if (m == 0) throw std::invalid_argument("needs at least one sample");

    const WaveModel model = wave_covariance(d, lambda, 1);
    const int width = model.size;  // d + 1
    const double threshold = alpha / (5.0 * d);
    const std::uint64_t key = rng::derive(seed, 0x517eull);

    std::vector<double> gauss(width), y(width);
    std::size_t hits = 0;
    for (std::size_t i = 0; i < m; ++i) {
        const std::uint64_t base = i * static_cast<std::uint64_t>(width);
        for (int j = 0; j < width; ++j) gauss[j] = rng::normal_at(key, base + j);
        for (int c = 0; c < width; ++c) {
            const double* row = model.factor.data() + static_cast<std::size_t>(c) * width;
            y[c] = kernels::dot(row, gauss.data(), width);
        }
        if (kernels::min_abs(y.data(), width) < threshold) continue;
        bool all_opposite = true;
        for (int c = 1; c < width; ++c) {
            if (y[0] * y[c] >= 0.0) {
                all_opposite = false;
                break;
            }
        }
        hits += all_opposite;
    }

    SingletonEstimate est;
    est.samples = m;
    est.estimate = static_cast<double>(hits) / static_cast<double>(m);
    est.std_error = std::sqrt(est.estimate * (1.0 - est.estimate) / static_cast<double>(m));
    est.lower_bound =
        std::exp(d * std::log(alpha) - (d + 2) * std::log(3.0) - (d + 1) * std::log(d));
    est.certificate.name = "singleton-probability-lower-bound";
    est.certificate.bound = est.lower_bound;
    est.certificate.achieved = est.estimate;
    est.certificate.holds = est.estimate + 3.0 * est.std_error >= est.lower_bound;
    est.certificate.inputs.params = {{"d", static_cast<double>(d)},
                                     {"lambda", lambda},
                                     {"alpha", alpha},
                                     {"samples", static_cast<double>(m)}};
    return est;
}

LocalDistribution local_distribution(const Graph& g, std::span<const double> f, int ell,
                                     std::uint64_t seed) {
    const int n = g.vertex_count();
    if (static_cast<int>(f.size()) != n) throw std::invalid_argument("vector length mismatch");
    if (ell < 0) throw std::invalid_argument("negative radius");
    const int d = g.regular_degree().value_or(g.max_degree());
    const long long width_ll = tree_ball_size(d, ell);
    if (width_ll > 100'000) throw std::invalid_argument("ball width too large");
    const int width = static_cast<int>(width_ll);

    LocalDistribution out;
    out.width = width;
    out.count = static_cast<std::size_t>(n);
    out.data.assign(static_cast<std::size_t>(width) * n, 0.0);
    out.source = "graph(n=" + std::to_string(n) + ",ell=" + std::to_string(ell) + ")";

    const double scale = std::sqrt(static_cast<double>(n));
    std::vector<int> dist(n, -1), order, shuffled;
    std::vector<int> queue;
    for (int u = 0; u < n; ++u) {
        rng::SplitMix64 gen(rng::derive(seed, static_cast<std::uint64_t>(u)));
        order.clear();
        queue.clear();
        order.push_back(u);
        queue.push_back(u);
        dist[u] = 0;
        for (std::size_t head = 0; head < queue.size(); ++head) {
            const int v = queue[head];
            if (dist[v] == ell) continue;
            auto nb = g.neighbors(v);
            shuffled.assign(nb.begin(), nb.end());
            rng::shuffle(shuffled, gen);
            for (int w : shuffled) {
                if (dist[w] < 0 && static_cast<int>(order.size()) < width) {
                    dist[w] = dist[v] + 1;
                    order.push_back(w);
                    queue.push_back(w);
                }
            }
        }
        for (std::size_t k = 0; k < order.size(); ++k) {
            out.at(static_cast<int>(k), u) = scale * f[order[k]];
        }
        for (int v : queue) dist[v] = -1;  // reset only what was touched
    }
    return out;
}

namespace {

double normal_cdf(double x, double sigma) {
    if (sigma > 0.0) return 0.5 * std::erfc(-x / (sigma * std::numbers::sqrt2));
    return x >= 0.0 ? 1.0 : 0.0;  // point mass at 0
}

// One-dimensional Levy-Prokhorov feasibility: eps works iff for all x,
// G(x) <= F(x+eps)+eps and F(x-eps) <= G(x)+eps.  With F an empirical step
// function the suprema sit at the sample breakpoints (left/right limits); a
// sigma=0 target adds the step of G itself at x=0.
bool lp_feasible(std::span<const double> sorted, double sigma, double eps) {
    const double m = static_cast<double>(sorted.size());
    for (std::size_t j = 0; j < sorted.size(); ++j) {
        if (normal_cdf(sorted[j] - eps, sigma) > static_cast<double>(j) / m + eps) return false;
        if (static_cast<double>(j + 1) / m - normal_cdf(sorted[j] + eps, sigma) > eps) {
            return false;
        }
    }
    if (sigma == 0.0) {
        const auto le = std::upper_bound(sorted.begin(), sorted.end(), eps) - sorted.begin();
        if (1.0 - static_cast<double>(le) / m > eps) return false;  // G jumps to 1 at x=0
        const auto lt = std::lower_bound(sorted.begin(), sorted.end(), -eps) - sorted.begin();
        if (static_cast<double>(lt) / m > eps) return false;  // F mass escaping below -eps
    }
    return true;
}

double lp_distance_sorted(std::span<const double> sorted, double sigma) {
    if (lp_feasible(sorted, sigma, 0.0)) return 0.0;
    double lo = 0.0, hi = 1.0;  // distance between probability measures is <= 1
    while (hi - lo > 1e-6) {
        const double mid = 0.5 * (lo + hi);
        (lp_feasible(sorted, sigma, mid) ? hi : lo) = mid;
    }
    return hi;
}

}  // namespace

double lp_distance_1d(std::span<const double> samples, double sigma) {
    if (sigma < 0.0) throw std::invalid_argument("sigma must be non-negative");
    if (samples.empty()) throw std::invalid_argument("needs at least one sample");
    std::vector<double> sorted(samples.begin(), samples.end());
    std::sort(sorted.begin(), sorted.end());
    return lp_distance_sorted(sorted, sigma);
}

double fit_sigma(const LocalDistribution& dist) {
    if (dist.count == 0) throw std::invalid_argument("empty distribution");
    auto col = dist.column(0);
    std::vector<double> sorted(col.begin(), col.end());
    std::sort(sorted.begin(), sorted.end());
    double best_sigma = 0.0;
    double best = std::numeric_limits<double>::infinity();
    for (int i = 0; i < 200; ++i) {
        const double sigma = static_cast<double>(i) / 199.0;
        const double value = lp_distance_sorted(sorted, sigma);
        if (value < best) {  // strict: ties keep the smaller sigma
            best = value;
            best_sigma = sigma;
        }
    }
    return best_sigma;
}

}  // namespace nodallab
