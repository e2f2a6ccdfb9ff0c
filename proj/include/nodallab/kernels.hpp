#pragma once

#include <cstddef>
#include <span>

// Hot array primitives used by the samplers and the spectral residual checks.
// Each has a scalar reference implementation and (on x86-64) an AVX2+FMA
// variant; the active one is chosen once at startup from cpuid, overridable
// with NODAL_LAB_SIMD=scalar|avx2.  The variants are equivalence-tested, and
// callers may rely on results agreeing to floating-point reassociation noise
// but not bit-for-bit (reductions sum in a different order).

namespace nodallab::kernels {

enum class Isa { kScalar, kAvx2 };

/// ISA selected at startup (after env override).
Isa active_isa();
const char* isa_name();

double dot(const double* x, const double* y, std::size_t n);
double sumsq(const double* x, std::size_t n);
inline double dot(std::span<const double> x, std::span<const double> y) {
    return dot(x.data(), y.data(), x.size());
}
inline double sumsq(std::span<const double> x) { return sumsq(x.data(), x.size()); }
/// y += a*x
void axpy(double a, const double* x, double* y, std::size_t n);
/// min_i |x_i|; +inf when n == 0
double min_abs(const double* x, std::size_t n);

// Scalar reference implementations, always available (the test oracles).
namespace ref {
double dot(const double* x, const double* y, std::size_t n);
double sumsq(const double* x, std::size_t n);
void axpy(double a, const double* x, double* y, std::size_t n);
double min_abs(const double* x, std::size_t n);
}  // namespace ref

}  // namespace nodallab::kernels
