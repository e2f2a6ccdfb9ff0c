#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace nodallab {

/// Thrown when a theorem's hypotheses are not met, as opposed to the theorem
/// failing (which a certificate reports via holds=false).
struct PreconditionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// What went into a certificate check, enough to replay it.
struct Provenance {
    std::uint64_t graph_hash = 0;
    std::string vector_id;  // e.g. "eig[17]" or a file name; empty if no vector
    std::vector<std::pair<std::string, double>> params;
};

/// Numerical slack granted on top of a certified bound: inequalities are
/// theorem-exact, the slack only absorbs floating-point evaluation noise.
inline constexpr double kCertificateSlack = 1e-9;

struct Certificate {
    std::string name;
    double bound = 0.0;
    double achieved = 0.0;
    bool holds = false;
    /// False when the statement's hypotheses exclude the input (reported as a
    /// result, distinct from both failure and error).
    bool applicable = true;
    Provenance inputs;
};

}  // namespace nodallab
