#include "nodallab/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

namespace nodallab::io {

std::string format_double(double value) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof(buf), value);
    return std::string(buf, res.ptr);
}

void atomic_write(const std::filesystem::path& path, const std::string& content) {
    const std::filesystem::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
        out << content;
        if (!out.flush()) throw std::runtime_error("write failed: " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
}

std::string format_edge_list(const Graph& g) {
    std::string out = std::to_string(g.vertex_count()) + " " + std::to_string(g.edge_count());
    out += '\n';
    for (const auto& [u, v] : g.edges()) {
        out += std::to_string(u);
        out += ' ';
        out += std::to_string(v);
        out += '\n';
    }
    return out;
}

Graph parse_edge_list(std::istream& in) {
    long long n = -1, m = -1;
    if (!(in >> n >> m)) throw ParseError("edge list: missing 'n m' header");
    if (n < 0 || m < 0 || n > 10'000'000) throw ParseError("edge list: bad sizes");
    std::vector<Edge> edges;
    edges.reserve(static_cast<std::size_t>(m));
    for (long long i = 0; i < m; ++i) {
        long long u, v;
        if (!(in >> u >> v)) throw ParseError("edge list: truncated at edge " + std::to_string(i));
        if (u < 0 || v < 0 || u >= n || v >= n || u >= v) {
            throw ParseError("edge list: bad edge at line " + std::to_string(i + 2));
        }
        edges.emplace_back(static_cast<int>(u), static_cast<int>(v));
    }
    long long extra;
    if (in >> extra) throw ParseError("edge list: trailing data");
    try {
        return Graph::from_edge_list(static_cast<int>(n), std::move(edges));
    } catch (const std::invalid_argument& e) {
        throw ParseError(std::string("edge list: ") + e.what());
    }
}

Graph read_edge_list(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path.string());
    return parse_edge_list(in);
}

void write_edge_list(const Graph& g, const std::filesystem::path& path) {
    atomic_write(path, format_edge_list(g));
}

std::string hash_hex(std::uint64_t h) {
    std::string s = "0x";
    for (int shift = 60; shift >= 0; shift -= 4) s += "0123456789abcdef"[(h >> shift) & 0xf];
    return s;
}

namespace {

nlohmann::json edges_json(const std::vector<Edge>& edges) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& [u, v] : edges) arr.push_back({u, v});
    return arr;
}

}  // namespace

nlohmann::json to_json(const Provenance& p) {
    nlohmann::json params = nlohmann::json::object();
    for (const auto& [key, value] : p.params) params[key] = value;
    nlohmann::json j{{"graph_hash", hash_hex(p.graph_hash)}, {"params", params}};
    if (!p.vector_id.empty()) j["vector_id"] = p.vector_id;
    return j;
}

nlohmann::json to_json(const Certificate& c) {
    return {{"name", c.name},       {"bound", c.bound},
            {"achieved", c.achieved}, {"holds", c.holds},
            {"applicable", c.applicable}, {"inputs", to_json(c.inputs)}};
}

nlohmann::json to_json(const MixingReport& r) {
    return {{"e_st", r.e_st}, {"center", r.center}, {"radius", r.radius}, {"holds", r.holds}};
}

nlohmann::json to_json(const ExpansionReport& r) {
    return {{"epsilon", r.epsilon},
            {"value", r.value},
            {"witness", r.witness.members},
            {"exact", r.exact}};
}

nlohmann::json to_json(const GirthRepairReport& r) {
    return {{"target_girth", r.target_girth},
            {"removed", edges_json(r.removed)},
            {"removed_count", r.removed.size()},
            {"size_bound", r.size_bound},
            {"girth_after", girth(r.repaired) == kInfiniteGirth
                                ? nlohmann::json("inf")
                                : nlohmann::json(girth(r.repaired))}};
}

nlohmann::json to_json(const SubgraphReport& r) {
    const SubgraphChecks& ck = r.checks;
    return {{"subset_size", r.s.size()},
            {"h_edges", r.h.edge_count()},
            {"removed_same_sign", r.removed_same_sign.size()},
            {"removed_singleton", r.removed_singleton.size()},
            {"removed_girth", r.removed_girth.size()},
            {"delta", r.delta},
            {"lambda", r.lambda},
            {"checks",
             {{"girth", ck.girth == kInfiniteGirth ? nlohmann::json("inf") : nlohmann::json(ck.girth)},
              {"girth_target", ck.girth_target},
              {"girth_ok", ck.girth_ok},
              {"max_degree", ck.max_degree},
              {"max_degree_ok", ck.max_degree_ok},
              {"hereditary_degree", ck.hereditary},
              {"hereditary_ok", ck.hereditary_ok},
              {"quad_form", ck.quad_form},
              {"quad_bound", ck.quad_bound},
              {"quad_form_ok", ck.quad_form_ok},
              {"eta", ck.eta}}}};
}

nlohmann::json to_json(const SingletonEstimate& e) {
    return {{"estimate", e.estimate},
            {"std_error", e.std_error},
            {"samples", e.samples},
            {"lower_bound", e.lower_bound},
            {"certificate", to_json(e.certificate)}};
}

nlohmann::json spectrum_json(const EigenSystem& eig) {
    return {{"n", eig.n}, {"values", eig.values}, {"residual", eig.residual}};
}

nlohmann::json wave_model_json(const WaveModel& model) {
    return {{"d", model.d},
            {"lambda", model.lambda},
            {"radius", model.radius},
            {"size", model.size},
            {"min_eigenvalue", model.min_eigenvalue},
            {"covariance", model.covariance}};
}

std::string format_vectors_csv(const EigenSystem& eig) {
    std::string out = "# eigenvectors v1: row = vertex, column k = eigenvector k (descending)\n";
    for (int v = 0; v < eig.n; ++v) {
        for (int k = 0; k < eig.n; ++k) {
            if (k) out += ',';
            out += format_double(eig.vec(k)[v]);
        }
        out += '\n';
    }
    return out;
}

std::string format_distribution_csv(const LocalDistribution& dist) {
    std::string out = "# local samples v1: row = sample, width=" + std::to_string(dist.width) +
                      ", source=" + dist.source + "\n";
    for (std::size_t i = 0; i < dist.count; ++i) {
        for (int k = 0; k < dist.width; ++k) {
            if (k) out += ',';
            out += format_double(dist.column(k)[i]);
        }
        out += '\n';
    }
    return out;
}

}  // namespace nodallab::io
