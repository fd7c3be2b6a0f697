#include <cstdlib>
#include <stdexcept>
#include <string>

#include "fnet/simd/kernels.hpp"

namespace fnet::simd {

namespace {

constexpr KernelTable kScalar{Isa::Scalar, &scalar::sum, &scalar::dot, &scalar::subtract};
#if defined(FNET_HAVE_AVX2)
constexpr KernelTable kAvx2{Isa::Avx2, &avx2::sum, &avx2::dot, &avx2::subtract};
#endif
#if defined(FNET_HAVE_NEON)
constexpr KernelTable kNeon{Isa::Neon, &neon::sum, &neon::dot, &neon::subtract};
#endif

const KernelTable& select() {
    if (const char* forced = std::getenv("FNET_SIMD"); forced != nullptr && *forced != '\0') {
        const std::string name(forced);
        if (name == "scalar") return kScalar;
        if (name == "avx2" && isa_available(Isa::Avx2)) return kernels_for(Isa::Avx2);
        if (name == "neon" && isa_available(Isa::Neon)) return kernels_for(Isa::Neon);
        // unknown or unsupported request: fall through to auto-detection
    }
    if (isa_available(Isa::Avx2)) return kernels_for(Isa::Avx2);
    if (isa_available(Isa::Neon)) return kernels_for(Isa::Neon);
    return kScalar;
}

}  // namespace

std::string_view to_string(Isa isa) noexcept {
    switch (isa) {
        case Isa::Scalar: return "scalar";
        case Isa::Avx2: return "avx2";
        case Isa::Neon: return "neon";
    }
    return "unknown";
}

bool isa_available(Isa isa) noexcept {
    switch (isa) {
        case Isa::Scalar: return true;
        case Isa::Avx2:
#if defined(FNET_HAVE_AVX2)
            return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
            return false;
#endif
        case Isa::Neon:
#if defined(FNET_HAVE_NEON)
            return true;
#else
            return false;
#endif
    }
    return false;
}

const KernelTable& kernels_for(Isa isa) {
    if (!isa_available(isa)) {
        throw std::invalid_argument("SIMD variant not available: " + std::string(to_string(isa)));
    }
    switch (isa) {
#if defined(FNET_HAVE_AVX2)
        case Isa::Avx2: return kAvx2;
#endif
#if defined(FNET_HAVE_NEON)
        case Isa::Neon: return kNeon;
#endif
        default: return kScalar;
    }
}

const KernelTable& active_kernels() {
    static const KernelTable& table = select();
    return table;
}

double dot(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) throw std::invalid_argument("dot: length mismatch");
    return active_kernels().dot(x.data(), y.data(), x.size());
}

}  // namespace fnet::simd
