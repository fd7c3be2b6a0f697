#pragma once

#include <cstddef>
#include <span>
#include <string_view>

// Data-parallel inner loops used by the correlation estimator. Each kernel has a
// scalar reference and vectorized variants; one variant is selected at first use
// (overridable through the FNET_SIMD environment variable: scalar | avx2 | neon).

namespace fnet::simd {

enum class Isa { Scalar, Avx2, Neon };

[[nodiscard]] std::string_view to_string(Isa isa) noexcept;

struct KernelTable {
    Isa isa;
    double (*sum)(const double* x, std::size_t n);
    double (*dot)(const double* x, const double* y, std::size_t n);
    /// x[i] -= shift
    void (*subtract)(double* x, std::size_t n, double shift);
};

namespace scalar {
double sum(const double* x, std::size_t n);
double dot(const double* x, const double* y, std::size_t n);
void subtract(double* x, std::size_t n, double shift);
}  // namespace scalar

#if defined(FNET_HAVE_AVX2)
namespace avx2 {
double sum(const double* x, std::size_t n);
double dot(const double* x, const double* y, std::size_t n);
void subtract(double* x, std::size_t n, double shift);
}  // namespace avx2
#endif

#if defined(FNET_HAVE_NEON)
namespace neon {
double sum(const double* x, std::size_t n);
double dot(const double* x, const double* y, std::size_t n);
void subtract(double* x, std::size_t n, double shift);
}  // namespace neon
#endif

/// True when the variant is compiled in and the running CPU supports it.
[[nodiscard]] bool isa_available(Isa isa) noexcept;

/// Kernel table for a specific variant. Throws std::invalid_argument if unavailable.
[[nodiscard]] const KernelTable& kernels_for(Isa isa);

/// Process-wide selection, fixed after the first call.
[[nodiscard]] const KernelTable& active_kernels();

[[nodiscard]] inline double sum(std::span<const double> x) {
    return active_kernels().sum(x.data(), x.size());
}

[[nodiscard]] double dot(std::span<const double> x, std::span<const double> y);

inline void subtract(std::span<double> x, double shift) {
    active_kernels().subtract(x.data(), x.size(), shift);
}

}  // namespace fnet::simd
