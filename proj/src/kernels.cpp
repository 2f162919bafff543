#include "triconic/kernels.hpp"

#include <cstdlib>
#include <cstring>

namespace triconic::kernels {

void monomials_scalar(const double* coeff, const int32_t* idx, int nvars, std::size_t n,
                      const double* table, double* out) {
    for (std::size_t k = 0; k < n; ++k) {
        double acc = coeff[k];
        for (int j = 0; j < nvars; ++j) acc = acc * table[idx[j * n + k]];
        out[k] = acc;
    }
}

bool cpu_has_avx2() {
#if defined(__x86_64__) || defined(__i386__)
    return __builtin_cpu_supports("avx2");
#else
    return false;
#endif
}

namespace {

bool use_avx2() {
    const char* env = std::getenv("TRICONIC_KERNEL");
    if (env && std::strcmp(env, "scalar") == 0) return false;
    return cpu_has_avx2();
}

}  // namespace

MonomialFn monomial_kernel() {
    static const MonomialFn fn = use_avx2() ? monomials_avx2 : monomials_scalar;
    return fn;
}

const char* monomial_kernel_name() { return monomial_kernel() == monomials_avx2 ? "avx2" : "scalar"; }

}  // namespace triconic::kernels
