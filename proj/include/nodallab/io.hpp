#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include <json.hpp>

#include "nodallab/certificate.hpp"
#include "nodallab/graph.hpp"
#include "nodallab/spectral.hpp"
#include "nodallab/structure.hpp"
#include "nodallab/wave.hpp"

namespace nodallab::io {

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Shortest round-trip decimal form (to_chars), the one numeric format used
/// in every text artifact so outputs are byte-stable.
std::string format_double(double value);

/// Write via a temp file + rename so readers never observe partial output.
void atomic_write(const std::filesystem::path& path, const std::string& content);

std::string hash_hex(std::uint64_t h);

// Edge-list format: "n m" then one "u v" line per edge, 0-based, u < v,
// sorted lexicographically.
std::string format_edge_list(const Graph& g);
Graph parse_edge_list(std::istream& in);
Graph read_edge_list(const std::filesystem::path& path);
void write_edge_list(const Graph& g, const std::filesystem::path& path);

nlohmann::json to_json(const Provenance& p);
nlohmann::json to_json(const Certificate& c);
nlohmann::json to_json(const MixingReport& r);
nlohmann::json to_json(const ExpansionReport& r);
nlohmann::json to_json(const GirthRepairReport& r);
nlohmann::json to_json(const SubgraphReport& r);
nlohmann::json to_json(const SingletonEstimate& e);
nlohmann::json spectrum_json(const EigenSystem& eig);
nlohmann::json wave_model_json(const WaveModel& model);

/// Row = vertex, column k = eigenvector k.
std::string format_vectors_csv(const EigenSystem& eig);
/// Row = sample.
std::string format_distribution_csv(const LocalDistribution& dist);

}  // namespace nodallab::io
