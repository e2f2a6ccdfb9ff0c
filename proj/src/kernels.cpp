#include "nodallab/kernels.hpp"

#include <cmath>
#include <cstdlib>
#include <cstring>
#include <limits>
#include <mutex>

namespace nodallab::kernels {

namespace ref {

double dot(const double* x, const double* y, std::size_t n) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += x[i] * y[i];
    return acc;
}

double sumsq(const double* x, std::size_t n) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += x[i] * x[i];
    return acc;
}

void axpy(double a, const double* x, double* y, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) y[i] += a * x[i];
}

double min_abs(const double* x, std::size_t n) {
    double m = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i) m = std::min(m, std::fabs(x[i]));
    return m;
}

}  // namespace ref

#ifdef NODALLAB_HAVE_AVX2_BUILD
namespace avx2 {
double dot(const double* x, const double* y, std::size_t n);
double sumsq(const double* x, std::size_t n);
void axpy(double a, const double* x, double* y, std::size_t n);
double min_abs(const double* x, std::size_t n);
bool supported();
}  // namespace avx2
#endif

namespace {

Isa pick_isa() {
#ifdef NODALLAB_HAVE_AVX2_BUILD
    bool want_avx2 = avx2::supported();
    if (const char* env = std::getenv("NODAL_LAB_SIMD")) {
        if (std::strcmp(env, "scalar") == 0) want_avx2 = false;
        // "avx2" keeps the cpuid answer: forcing it on unsupported hardware
        // would fault, so the request silently degrades to scalar there.
    }
    return want_avx2 ? Isa::kAvx2 : Isa::kScalar;
#else
    return Isa::kScalar;
#endif
}

Isa g_isa = Isa::kScalar;
std::once_flag g_once;

Isa isa() {
    std::call_once(g_once, [] { g_isa = pick_isa(); });
    return g_isa;
}

}  // namespace

Isa active_isa() { return isa(); }

const char* isa_name() { return isa() == Isa::kAvx2 ? "avx2" : "scalar"; }

double dot(const double* x, const double* y, std::size_t n) {
#ifdef NODALLAB_HAVE_AVX2_BUILD
    if (isa() == Isa::kAvx2) return avx2::dot(x, y, n);
#endif
    return ref::dot(x, y, n);
}

double sumsq(const double* x, std::size_t n) {
#ifdef NODALLAB_HAVE_AVX2_BUILD
    if (isa() == Isa::kAvx2) return avx2::sumsq(x, n);
#endif
    return ref::sumsq(x, n);
}

void axpy(double a, const double* x, double* y, std::size_t n) {
#ifdef NODALLAB_HAVE_AVX2_BUILD
    if (isa() == Isa::kAvx2) return avx2::axpy(a, x, y, n);
#endif
    return ref::axpy(a, x, y, n);
}

double min_abs(const double* x, std::size_t n) {
#ifdef NODALLAB_HAVE_AVX2_BUILD
    if (isa() == Isa::kAvx2) return avx2::min_abs(x, n);
#endif
    return ref::min_abs(x, n);
}

}  // namespace nodallab::kernels
