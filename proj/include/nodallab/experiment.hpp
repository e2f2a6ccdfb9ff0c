#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "nodallab/graph.hpp"

namespace nodallab {

/// Sweep over random regular graphs: one ResultRow per (n, trial,
/// eigenvector).  Work fans out over a thread pool, but every row is a pure
/// function of (seed, n, trial), so the CSV text is byte-identical for any
/// worker count.  NODAL_LAB_THREADS caps the pool.
struct ExperimentConfig {
    int d = 3;
    std::vector<int> n_list;
    int trials = 20;
    std::uint64_t seed = 1;
    /// Offset in the tail cutoff lambda <= -2 sqrt(d-2) - tail_offset, and the
    /// alpha of the negative-eigenvalue domain certificate.
    double alpha = 0.3;
    /// Localization-mass fraction: mass of the top ceil(delta*n) coordinates.
    double delta = 0.1;
    int workers = 0;  // 0: hardware concurrency (still capped by env)

    enum class FitSigma { kNone, kTail, kAll };
    /// Fitting sigma costs ~0.5 s per eigenvector; kTail restricts it to the
    /// negative tail, kNone skips the column entirely.
    FitSigma fit_sigma = FitSigma::kTail;

    /// When set, results.csv / summary.csv / trend.svg are written here.
    std::filesystem::path out_dir;
};

struct ResultRow {
    int n = 0;
    int trial = 0;
    int eigen_index = 0;
    double lambda = 0.0;
    int singleton_count = 0;
    int weak_domains = 0;
    int strong_domains = 0;
    int two_largest_weak = 0;
    double eta = 0.0;                // sqrt(n) * max|f|
    double localization_mass = 0.0;  // mass of the top ceil(delta*n) coords
    double sigma_star = -1.0;        // fitted sigma; negative = not computed
    int cert_two_giant = -1;         // 1 holds / 0 fails / -1 not applicable
    int cert_negative_domains = -1;
};

struct TrendBin {
    double lambda_center = 0.0;
    int rows = 0;
    double median_singleton_fraction = 0.0;
};

struct TailSummary {
    int n = 0;
    int trials = 0;
    int tail_rows = 0;
    double tail_cut = 0.0;
    double median_singleton_fraction = 0.0;
    /// Spearman correlation of bin-median singleton count against -lambda.
    double spearman = 0.0;
    std::vector<TrendBin> bins;
};

struct ExperimentResult {
    std::vector<ResultRow> rows;
    std::vector<TailSummary> summaries;
    std::string results_csv;
    std::string summary_csv;
};

ExperimentResult run_experiment(const ExperimentConfig& config);

/// min(requested or hardware, NODAL_LAB_THREADS).
int effective_workers(int requested);

}  // namespace nodallab
