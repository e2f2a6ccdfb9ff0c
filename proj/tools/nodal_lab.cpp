// nodal-lab: generate regular graphs, decompose their spectra, enumerate
// nodal domains, and check the theorem certificates from the library.
//
// Exit codes: 0 ok, 1 a proven-theorem certificate failed (CI should treat
// this as a bug), 2 bad input, 3 internal error.

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "nodallab/experiment.hpp"
#include "nodallab/graph.hpp"
#include "nodallab/io.hpp"
#include "nodallab/nodal.hpp"
#include "nodallab/rng.hpp"
#include "nodallab/spectral.hpp"
#include "nodallab/structure.hpp"
#include "nodallab/wave.hpp"

namespace {

using namespace nodallab;

constexpr int kOk = 0;
constexpr int kTheoremViolated = 1;
constexpr int kInputError = 2;
constexpr int kInternalError = 3;

struct CommonOpts {
    std::string in_path;
    int n = 0;
    int d = 0;
    std::uint64_t seed = 1;
};

void add_graph_source(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("--in", o.in_path, "Edge-list file; omit to generate");
    cmd->add_option("--n", o.n, "Vertex count (generated input)");
    cmd->add_option("--d", o.d, "Degree (generated input)");
    cmd->add_option("--seed", o.seed, "Random seed");
}

Graph load_graph(const CommonOpts& o) {
    if (!o.in_path.empty()) return io::read_edge_list(o.in_path);
    if (o.n <= 0) throw std::invalid_argument("need --in, or --n and --d to generate");
    return random_regular(o.n, o.d, o.seed);
}

void deliver(const std::string& text, const std::string& out_path) {
    if (out_path.empty())
        std::cout << text;
    else
        io::atomic_write(out_path, text);
}

void deliver(const nlohmann::json& j, const std::string& out_path) {
    deliver(j.dump(2) + "\n", out_path);
}

/// -1 selects the most negative eigenvalue; otherwise a position in the
/// descending eigenvalue order.
int resolve_index(int index, int n) {
    if (index == -1) return n - 1;
    if (index < 0 || index >= n) throw std::invalid_argument("--index out of range");
    return index;
}

int cmd_generate(const CommonOpts& o, const std::string& out_path) {
    if (o.in_path.empty() && o.n <= 0)
        throw std::invalid_argument("generate needs --n and --d");
    Graph g = load_graph(o);
    deliver(io::format_edge_list(g), out_path);
    return kOk;
}

int cmd_spectrum(const CommonOpts& o, const std::string& format, const std::string& out_path) {
    Graph g = load_graph(o);
    EigenSystem eig = eigendecompose(g);
    if (format == "csv")
        deliver(io::format_vectors_csv(eig), out_path);
    else
        deliver(io::spectrum_json(eig), out_path);
    return kOk;
}

int cmd_nodal(const CommonOpts& o, int index, const std::string& mode_name, int ell,
              const std::string& out_path) {
    Graph g = load_graph(o);
    EigenSystem eig = eigendecompose(g);
    int k = resolve_index(index, g.vertex_count());
    DomainMode mode = mode_name == "strong" ? DomainMode::kStrong : DomainMode::kWeak;
    NodalPartition part = nodal_domains(g, eig.vec(k), mode);

    nlohmann::json domains = nlohmann::json::array();
    for (const auto& dom : part.domains) {
        domains.push_back({{"sign", dom.sign},
                           {"size", static_cast<int>(dom.vertices.members.size())},
                           {"singleton", dom.singleton}});
    }
    nlohmann::json j{{"graph_hash", io::hash_hex(g.content_hash())},
                     {"eigen_index", k},
                     {"lambda", eig.values[k]},
                     {"mode", mode_name},
                     {"domain_count", part.domain_count()},
                     {"two_largest_total", part.two_largest_total()},
                     {"singletons", singleton_count(g, eig.vec(k))},
                     {"domains", domains}};
    if (ell >= 0) {
        LocalDistribution dist = local_distribution(g, eig.vec(k), ell, o.seed);
        const double sigma_star = fit_sigma(dist);
        j["local"] = {{"ell", ell},
                      {"sigma_star", sigma_star},
                      {"lp_coord0", lp_distance_1d(dist.column(0), sigma_star)}};
    }
    deliver(j, out_path);
    return kOk;
}

int cmd_certify(const CommonOpts& o, std::optional<int> index, double alpha, int mixing_pairs,
                double epsilon, bool exact_expansion, const std::string& out_path) {
    Graph g = load_graph(o);
    EigenSystem eig = eigendecompose(g);
    SpectralSummary summary = spectral_expansion(g);

    std::vector<int> picks;
    if (index)
        picks.push_back(resolve_index(*index, g.vertex_count()));
    else
        for (int k = 0; k < g.vertex_count(); ++k) picks.push_back(k);

    bool violated = false;
    nlohmann::json certs = nlohmann::json::array();
    auto push = [&](Certificate cert) {
        if (cert.applicable && !cert.holds) violated = true;
        certs.push_back(io::to_json(cert));
    };

    for (int k : picks) {
        auto f = eig.vec(k);
        Certificate two = two_giant_domains_certificate(g, f, summary);
        two.inputs.vector_id = "eig[" + std::to_string(k) + "]";
        push(std::move(two));
        Certificate neg = negative_eigenvalue_domain_certificate(g, f, eig.values[k], alpha);
        neg.inputs.vector_id = "eig[" + std::to_string(k) + "]";
        push(std::move(neg));

        SignVector sv = SignVector::classify(f);
        std::vector<int> plus, minus;
        for (int v = 0; v < g.vertex_count(); ++v) {
            if (sv.sign[v] >= 0) plus.push_back(v);
            if (sv.sign[v] <= 0) minus.push_back(v);
        }
        for (auto* side : {&plus, &minus}) {
            if (side->empty()) continue;
            Certificate giant =
                giant_component_certificate(g, VertexSet::of(*side, g.vertex_count()), summary);
            giant.inputs.vector_id = "eig[" + std::to_string(k) + "]";
            push(std::move(giant));
        }
    }

    nlohmann::json mixing = nlohmann::json::array();
    if (mixing_pairs > 0) {
        rng::SplitMix64 gen(rng::derive(o.seed, 0x317eull));
        std::vector<int> pool(g.vertex_count());
        for (int v = 0; v < g.vertex_count(); ++v) pool[v] = v;
        for (int p = 0; p < mixing_pairs; ++p) {
            rng::shuffle(pool, gen);
            int ls = 1 + static_cast<int>(rng::below(gen, g.vertex_count()));
            std::vector<int> s(pool.begin(), pool.begin() + ls);
            rng::shuffle(pool, gen);
            int lt = 1 + static_cast<int>(rng::below(gen, g.vertex_count()));
            std::vector<int> t(pool.begin(), pool.begin() + lt);
            MixingReport rep = mixing_certificate(g, VertexSet::of(s, g.vertex_count()),
                                                  VertexSet::of(t, g.vertex_count()), summary);
            if (!rep.holds) violated = true;
            mixing.push_back(io::to_json(rep));
        }
    }

    nlohmann::json j{{"graph_hash", io::hash_hex(g.content_hash())},
                     {"lambda", summary.expansion},
                     {"certificates", certs}};
    if (mixing_pairs > 0) j["mixing"] = mixing;
    if (epsilon > 0.0) {
        // A measurement, not a theorem: never drives the exit code.
        ExpansionReport probe = edge_expansion(
            g, epsilon, exact_expansion ? ExpansionMethod::kExact : ExpansionMethod::kHeuristic,
            o.seed);
        j["expansion"] = io::to_json(probe);
    }
    deliver(j, out_path);
    return violated ? kTheoremViolated : kOk;
}

int cmd_wave(int d, double lambda, int radius, double sigma, std::size_t samples, double alpha,
             std::uint64_t seed, const std::string& format, const std::string& out_path) {
    if (alpha > 0.0) {
        SingletonEstimate est = singleton_probability(d, lambda, alpha, samples, seed);
        deliver(io::to_json(est), out_path);
        return est.certificate.holds ? kOk : kTheoremViolated;
    }
    WaveModel model = wave_covariance(d, lambda, radius);
    if (format == "csv") {
        LocalDistribution dist = sample_wave(model, sigma, samples, seed);
        deliver(io::format_distribution_csv(dist), out_path);
    } else {
        deliver(io::wave_model_json(model), out_path);
    }
    return kOk;
}

int cmd_repair(const CommonOpts& o, int target_girth, const std::string& out_path,
               const std::string& report_path) {
    Graph g = load_graph(o);
    GirthRepairReport rep = girth_repair(g, target_girth);
    if (!out_path.empty()) io::write_edge_list(rep.repaired, out_path);
    deliver(io::to_json(rep), report_path);
    return kOk;
}

int cmd_subgraph_h(const CommonOpts& o, int index, double delta, double fraction,
                   int girth_target, const std::string& out_path,
                   const std::string& report_path) {
    Graph g = load_graph(o);
    EigenSystem eig = eigendecompose(g);
    int k = resolve_index(index, g.vertex_count());
    auto f = eig.vec(k);

    VertexSet s = VertexSet::full(g.vertex_count());
    if (fraction < 1.0) {
        // Keep the ceil(fraction*n) heaviest coordinates.
        int keep = std::max(1, static_cast<int>(std::ceil(fraction * g.vertex_count())));
        std::vector<int> order(g.vertex_count());
        for (int v = 0; v < g.vertex_count(); ++v) order[v] = v;
        std::sort(order.begin(), order.end(), [&](int a, int b) {
            double fa = std::fabs(f[a]), fb = std::fabs(f[b]);
            if (fa != fb) return fa > fb;
            return a < b;
        });
        order.resize(keep);
        s = VertexSet::of(order, g.vertex_count());
    }

    if (girth_target < 0) {
        int rho = bicycle_free_radius(g).radius;
        girth_target = std::max(3, rho / 2);
    }
    std::vector<Edge> fset;
    if (girth_target > 3) fset = girth_repair(g, girth_target).removed;
    SubgraphReport rep = build_subgraph_h(g, f, s, fset, delta, girth_target);
    Certificate cert = spectral_radius_bound_certificate(rep.h, delta, rep.checks.girth);

    nlohmann::json j = io::to_json(rep);
    j["eigen_index"] = k;
    j["spectral_radius_certificate"] = io::to_json(cert);
    if (!out_path.empty()) io::write_edge_list(rep.h, out_path);
    deliver(j, report_path);
    return cert.applicable && !cert.holds ? kTheoremViolated : kOk;
}

int cmd_experiment(const ExperimentConfig& config) {
    ExperimentResult result = run_experiment(config);
    std::cout << result.summary_csv;
    for (const auto& row : result.rows) {
        if (row.cert_two_giant == 0 || row.cert_negative_domains == 0) return kTheoremViolated;
    }
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"nodal domains of regular-graph eigenvectors: generation, certificates, waves"};
    app.require_subcommand(1);

    CommonOpts common;
    std::string out_path, report_path, format = "json", mode = "weak";
    int index = -1, ell = -1;
    std::optional<int> certify_index;
    double alpha = 0.3, delta = 0.1, lambda = -2.0, sigma = 1.0, fraction = 1.0, epsilon = 0.0;
    int radius = 1, wave_d = 3, target_girth = 4, mixing_pairs = 0, girth_target = -1;
    bool exact_expansion = false, heuristic_expansion = false;
    std::size_t samples = 0;
    ExperimentConfig config;

    auto* generate = app.add_subcommand("generate", "Random d-regular graph, edge-list output");
    add_graph_source(generate, common);
    generate->add_option("--out", out_path, "Output file (default stdout)");

    auto* spectrum = app.add_subcommand("spectrum", "Eigenvalues (json) or eigenvectors (csv)");
    add_graph_source(spectrum, common);
    spectrum->add_option("--format", format)->check(CLI::IsMember({"json", "csv"}));
    spectrum->add_option("--out", out_path, "Output file (default stdout)");

    auto* nodal = app.add_subcommand("nodal", "Nodal domains of one eigenvector");
    add_graph_source(nodal, common);
    nodal->add_option("--index", index, "Eigenvector (descending order; -1 = most negative)");
    nodal->add_option("--mode", mode)->check(CLI::IsMember({"weak", "strong"}));
    nodal->add_option("--ell", ell, "Also fit sigma on radius-ell local statistics");
    nodal->add_option("--out", out_path, "Output file (default stdout)");

    auto* certify = app.add_subcommand("certify", "Domain-size certificates, exit 1 on failure");
    add_graph_source(certify, common);
    certify->add_option("--index", certify_index, "Only this eigenvector (default: all)");
    certify->add_option("--alpha", alpha, "Negative-eigenvalue threshold offset");
    certify->add_option("--mixing-pairs", mixing_pairs, "Also check random mixing pairs");
    certify->add_option("--epsilon", epsilon, "Also probe edge expansion at this fraction");
    auto* exact_flag = certify->add_flag("--exact", exact_expansion, "Exact expansion probe");
    certify->add_flag("--heuristic", heuristic_expansion, "Local-search expansion probe")
        ->excludes(exact_flag);
    certify->add_option("--out", out_path, "Output file (default stdout)");

    auto* wave = app.add_subcommand("wave", "Tree-ball Gaussian wave: model, samples, or the "
                                            "singleton-probability estimate (--alpha)");
    wave->add_option("--d", wave_d, "Tree degree")->required();
    wave->add_option("--lambda", lambda, "Eigenvalue")->required();
    wave->add_option("--radius", radius, "Ball radius");
    wave->add_option("--sigma", sigma, "Scale factor for samples");
    wave->add_option("--samples", samples, "Sample count (csv output / singleton estimate)");
    wave->add_option("--alpha", alpha, "Run the singleton-probability Monte Carlo instead");
    wave->add_option("--seed", common.seed, "Random seed");
    wave->add_option("--format", format)->check(CLI::IsMember({"json", "csv"}));
    wave->add_option("--out", out_path, "Output file (default stdout)");

    auto* repair = app.add_subcommand("repair", "Remove one edge per short cycle");
    add_graph_source(repair, common);
    repair->add_option("--girth", target_girth, "Target girth");
    repair->add_option("--out", out_path, "Repaired edge-list file");
    repair->add_option("--report", report_path, "Report file (default stdout)");

    auto* subgraph = app.add_subcommand(
        "subgraph-h", "Opposite-sign bounded-degree subgraph + spectral-radius certificate");
    add_graph_source(subgraph, common);
    subgraph->add_option("--index", index, "Eigenvector (-1 = most negative)");
    subgraph->add_option("--delta", delta, "Hereditary-degree slack");
    subgraph->add_option("--fraction", fraction, "Keep this fraction of heaviest coordinates");
    subgraph->add_option("--girth", girth_target, "Repair target (-1: derived, 0: no repair)");
    subgraph->add_option("--out", out_path, "Subgraph edge-list file");
    subgraph->add_option("--report", report_path, "Report file (default stdout)");

    auto* experiment = app.add_subcommand("experiment", "Sweep: one row per (n, trial, vector)");
    experiment->add_option("--d", config.d, "Degree");
    experiment->add_option("--n", config.n_list, "Vertex counts (repeatable)")->required();
    experiment->add_option("--trials", config.trials, "Trials per n");
    experiment->add_option("--seed", config.seed, "Master seed");
    experiment->add_option("--alpha", config.alpha, "Tail offset / certificate threshold");
    experiment->add_option("--delta", config.delta, "Localization-mass fraction");
    experiment->add_option("--workers", config.workers, "Thread count (0 = hardware)");
    std::string fit = "tail";
    experiment->add_option("--fit-sigma", fit)->check(CLI::IsMember({"none", "tail", "all"}));
    experiment->add_option("--out", config.out_dir, "Output directory")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kOk : kInputError;
    }

    try {
        if (generate->parsed()) return cmd_generate(common, out_path);
        if (spectrum->parsed()) return cmd_spectrum(common, format, out_path);
        if (nodal->parsed()) return cmd_nodal(common, index, mode, ell, out_path);
        if (certify->parsed())
            return cmd_certify(common, certify_index, alpha, mixing_pairs, epsilon,
                               exact_expansion, out_path);
        if (wave->parsed()) {
            double a = wave->count("--alpha") ? alpha : 0.0;
            std::size_t m = samples ? samples : 1'000'000;
            return cmd_wave(wave_d, lambda, radius, sigma, m, a, common.seed, format, out_path);
        }
        if (repair->parsed()) return cmd_repair(common, target_girth, out_path, report_path);
        if (subgraph->parsed())
            return cmd_subgraph_h(common, index, delta, fraction, girth_target, out_path,
                                  report_path);
        if (experiment->parsed()) {
            if (fit == "none") config.fit_sigma = ExperimentConfig::FitSigma::kNone;
            if (fit == "all") config.fit_sigma = ExperimentConfig::FitSigma::kAll;
            return cmd_experiment(config);
        }
        return kInputError;
    } catch (const io::ParseError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kInputError;
    } catch (const GenerationError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kInputError;
    } catch (const PreconditionError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kInputError;
    } catch (const BudgetError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kInputError;
    } catch (const std::invalid_argument& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kInputError;
    } catch (const std::filesystem::filesystem_error& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kInputError;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kInternalError;
    }
}
