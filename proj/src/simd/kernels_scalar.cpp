#include "fnet/simd/kernels.hpp"

namespace fnet::simd::scalar {

double sum(const double* x, std::size_t n) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += x[i];
    return acc;
}

double dot(const double* x, const double* y, std::size_t n) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += x[i] * y[i];
    return acc;
}

void subtract(double* x, std::size_t n, double shift) {
    for (std::size_t i = 0; i < n; ++i) x[i] -= shift;
}

}  // namespace fnet::simd::scalar
