#include "nodallab/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <stdexcept>
#include <thread>

#include "nodallab/io.hpp"
#include "nodallab/kernels.hpp"
#include "nodallab/nodal.hpp"
#include "nodallab/rng.hpp"
#include "nodallab/spectral.hpp"
#include "nodallab/svg.hpp"
#include "nodallab/wave.hpp"

namespace nodallab {

int effective_workers(int requested) {
    int hw = static_cast<int>(std::thread::hardware_concurrency());
    if (hw <= 0) hw = 1;
    int workers = requested > 0 ? requested : hw;
    if (const char* cap = std::getenv("NODAL_LAB_THREADS")) {
        int limit = std::atoi(cap);
        if (limit > 0) workers = std::min(workers, limit);
    }
    return std::max(1, workers);
}

namespace {

struct Task {
    int n = 0;
    int trial = 0;
};

double tail_cut_for(int d, double alpha) {
    return -2.0 * std::sqrt(std::max(0.0, d - 2.0)) - alpha;
}

int tri_state(const Certificate& cert) {
    if (!cert.applicable) return -1;
    return cert.holds ? 1 : 0;
}

std::vector<ResultRow> run_task(const ExperimentConfig& config, Task task,
                                std::uint64_t task_seed) {
    const int n = task.n;
    Graph g = random_regular(n, config.d, task_seed);
    EigenSystem eig = eigendecompose(g);
    SpectralSummary summary;
    summary.lambda_max = eig.values.front();
    summary.lambda_2 = n > 1 ? eig.values[1] : eig.values[0];
    summary.lambda_min = eig.values.back();
    summary.expansion = std::max(summary.lambda_2, -summary.lambda_min);

    const double cut = tail_cut_for(config.d, config.alpha);
    const int top = std::max(1, static_cast<int>(std::ceil(config.delta * n)));
    const double root_n = std::sqrt(static_cast<double>(n));

    std::vector<ResultRow> rows;
    rows.reserve(n);
    std::vector<double> mass(n);
    for (int k = 0; k < n; ++k) {
        auto f = eig.vec(k);
        ResultRow row;
        row.n = n;
        row.trial = task.trial;
        row.eigen_index = k;
        row.lambda = eig.values[k];
        row.singleton_count = singleton_count(g, f);

        NodalPartition weak = nodal_domains(g, f, DomainMode::kWeak);
        NodalPartition strong = nodal_domains(g, f, DomainMode::kStrong);
        row.weak_domains = weak.domain_count();
        row.strong_domains = strong.domain_count();
        row.two_largest_weak = weak.two_largest_total();

        double peak = 0.0;
        for (double x : f) peak = std::max(peak, std::fabs(x));
        row.eta = root_n * peak;

        for (int v = 0; v < n; ++v) mass[v] = f[v] * f[v];
        std::nth_element(mass.begin(), mass.begin() + (top - 1), mass.end(),
                         std::greater<double>());
        double top_mass = 0.0;
        for (int i = 0; i < top; ++i) top_mass += mass[i];
        row.localization_mass = top_mass / kernels::sumsq(f);

        try {
            row.cert_two_giant = tri_state(two_giant_domains_certificate(g, f, summary));
        } catch (const PreconditionError&) {
            row.cert_two_giant = -1;
        }
        try {
            row.cert_negative_domains = tri_state(
                negative_eigenvalue_domain_certificate(g, f, row.lambda, config.alpha));
        } catch (const PreconditionError&) {
            row.cert_negative_domains = -1;
        }

        bool want_sigma = config.fit_sigma == ExperimentConfig::FitSigma::kAll ||
                          (config.fit_sigma == ExperimentConfig::FitSigma::kTail &&
                           row.lambda <= cut);
        if (want_sigma) {
            auto dist = local_distribution(g, f, 0, rng::derive(task_seed, 0x10000u + k));
            row.sigma_star = fit_sigma(dist);
        }
        rows.push_back(row);
    }
    return rows;
}

double median(std::vector<double> values) {
    if (values.empty()) return 0.0;
    std::sort(values.begin(), values.end());
    std::size_t mid = values.size() / 2;
    if (values.size() % 2 == 1) return values[mid];
    return 0.5 * (values[mid - 1] + values[mid]);
}

/// Tie-averaged ranks (1-based midranks).
std::vector<double> midranks(const std::vector<double>& values) {
    const std::size_t m = values.size();
    std::vector<std::size_t> order(m);
    for (std::size_t i = 0; i < m; ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
    std::vector<double> rank(m);
    std::size_t i = 0;
    while (i < m) {
        std::size_t j = i;
        while (j + 1 < m && values[order[j + 1]] == values[order[i]]) ++j;
        double r = 0.5 * static_cast<double>(i + j) + 1.0;
        for (std::size_t k = i; k <= j; ++k) rank[order[k]] = r;
        i = j + 1;
    }
    return rank;
}

double pearson(const std::vector<double>& x, const std::vector<double>& y) {
    const std::size_t m = x.size();
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= m;
    my /= m;
    double sxy = 0.0, sxx = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        sxy += (x[i] - mx) * (y[i] - my);
        sxx += (x[i] - mx) * (x[i] - mx);
        syy += (y[i] - my) * (y[i] - my);
    }
    if (sxx == 0.0 || syy == 0.0) return 0.0;
    return sxy / std::sqrt(sxx * syy);
}

constexpr int kTrendBins = 8;

TailSummary summarize(int n, const ExperimentConfig& config,
                      const std::vector<ResultRow>& rows) {
    TailSummary s;
    s.n = n;
    s.trials = config.trials;
    s.tail_cut = tail_cut_for(config.d, config.alpha);

    std::vector<const ResultRow*> tail;
    for (const auto& row : rows)
        if (row.n == n && row.lambda <= s.tail_cut) tail.push_back(&row);
    s.tail_rows = static_cast<int>(tail.size());
    if (tail.empty()) return s;

    std::vector<double> fractions;
    fractions.reserve(tail.size());
    double lo = s.tail_cut;
    for (const ResultRow* row : tail) {
        fractions.push_back(static_cast<double>(row->singleton_count) / n);
        lo = std::min(lo, row->lambda);
    }
    s.median_singleton_fraction = median(std::move(fractions));

    double span = s.tail_cut - lo;
    std::vector<std::vector<double>> by_bin(kTrendBins);
    for (const ResultRow* row : tail) {
        int b = span > 0.0
                    ? std::min(kTrendBins - 1,
                               static_cast<int>((row->lambda - lo) / span * kTrendBins))
                    : 0;
        by_bin[b].push_back(static_cast<double>(row->singleton_count) / n);
    }
    for (int b = 0; b < kTrendBins; ++b) {
        if (by_bin[b].empty()) continue;
        TrendBin bin;
        bin.lambda_center = lo + (b + 0.5) * span / kTrendBins;
        bin.rows = static_cast<int>(by_bin[b].size());
        bin.median_singleton_fraction = median(std::move(by_bin[b]));
        s.bins.push_back(bin);
    }

    // Monotonicity check: more negative eigenvalue, more singletons.
    if (s.bins.size() >= 2) {
        std::vector<double> x, y;
        for (const auto& bin : s.bins) {
            x.push_back(-bin.lambda_center);
            y.push_back(bin.median_singleton_fraction);
        }
        s.spearman = pearson(midranks(x), midranks(y));
    }
    return s;
}

void append_tri(std::string& out, int v) {
    if (v < 0)
        out += "na";
    else
        out += v ? '1' : '0';
}

std::string render_results_csv(const std::vector<ResultRow>& rows) {
    std::string out = "# nodal-lab results v1\n";
    out +=
        "n,trial,eigen_index,lambda,singleton_count,weak_domains,strong_domains,"
        "two_largest_weak,eta,localization_mass,sigma_star,cert_two_giant,"
        "cert_negative_domains\n";
    for (const auto& row : rows) {
        out += std::to_string(row.n);
        out += ',';
        out += std::to_string(row.trial);
        out += ',';
        out += std::to_string(row.eigen_index);
        out += ',';
        out += io::format_double(row.lambda);
        out += ',';
        out += std::to_string(row.singleton_count);
        out += ',';
        out += std::to_string(row.weak_domains);
        out += ',';
        out += std::to_string(row.strong_domains);
        out += ',';
        out += std::to_string(row.two_largest_weak);
        out += ',';
        out += io::format_double(row.eta);
        out += ',';
        out += io::format_double(row.localization_mass);
        out += ',';
        if (row.sigma_star >= 0.0) out += io::format_double(row.sigma_star);
        out += ',';
        append_tri(out, row.cert_two_giant);
        out += ',';
        append_tri(out, row.cert_negative_domains);
        out += '\n';
    }
    return out;
}

std::string render_summary_csv(const std::vector<TailSummary>& summaries) {
    std::string out = "# nodal-lab summary v1\n";
    out += "n,trials,tail_cut,tail_rows,median_singleton_fraction,spearman\n";
    for (const auto& s : summaries) {
        out += std::to_string(s.n);
        out += ',';
        out += std::to_string(s.trials);
        out += ',';
        out += io::format_double(s.tail_cut);
        out += ',';
        out += std::to_string(s.tail_rows);
        out += ',';
        out += io::format_double(s.median_singleton_fraction);
        out += ',';
        out += io::format_double(s.spearman);
        out += '\n';
    }
    return out;
}

}  // namespace

ExperimentResult run_experiment(const ExperimentConfig& config) {
    if (config.n_list.empty()) throw std::invalid_argument("experiment: n_list is empty");
    if (config.trials < 1) throw std::invalid_argument("experiment: trials < 1");
    if (config.alpha <= 0.0) throw std::invalid_argument("experiment: alpha must be positive");
    if (config.delta <= 0.0 || config.delta > 1.0)
        throw std::invalid_argument("experiment: delta outside (0, 1]");

    std::vector<Task> tasks;
    for (int n : config.n_list)
        for (int t = 0; t < config.trials; ++t) tasks.push_back({n, t});

    std::vector<std::vector<ResultRow>> per_task(tasks.size());
    std::vector<std::exception_ptr> failures(tasks.size());
    std::atomic<std::size_t> next{0};
    auto drain = [&] {
        for (;;) {
            std::size_t i = next.fetch_add(1);
            if (i >= tasks.size()) return;
            try {
                per_task[i] = run_task(config, tasks[i], rng::derive(config.seed, i));
            } catch (...) {
                failures[i] = std::current_exception();
            }
        }
    };

    int workers = std::min<int>(effective_workers(config.workers),
                                static_cast<int>(tasks.size()));
    if (workers <= 1) {
        drain();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (int w = 0; w < workers; ++w) pool.emplace_back(drain);
        for (auto& t : pool) t.join();
    }
    for (auto& failure : failures)
        if (failure) std::rethrow_exception(failure);

    ExperimentResult result;
    for (auto& rows : per_task)
        result.rows.insert(result.rows.end(), rows.begin(), rows.end());
    for (int n : config.n_list) result.summaries.push_back(summarize(n, config, result.rows));
    result.results_csv = render_results_csv(result.rows);
    result.summary_csv = render_summary_csv(result.summaries);

    if (!config.out_dir.empty()) {
        std::filesystem::create_directories(config.out_dir);
        io::atomic_write(config.out_dir / "results.csv", result.results_csv);
        io::atomic_write(config.out_dir / "summary.csv", result.summary_csv);
        std::vector<SvgSeries> series;
        for (const auto& s : result.summaries) {
            SvgSeries one;
            one.label = "n=" + std::to_string(s.n);
            for (const auto& bin : s.bins)
                one.points.emplace_back(-bin.lambda_center, bin.median_singleton_fraction);
            if (!one.points.empty()) series.push_back(std::move(one));
        }
        if (!series.empty())
            emit_svg(series, "-lambda (bin center)", "median singleton fraction",
                     config.out_dir / "trend.svg");
    }
    return result;
}

}  // namespace nodallab
