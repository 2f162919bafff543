#include "triconic/kernels.hpp"

#if defined(__x86_64__) || defined(__i386__)
#include <immintrin.h>
#endif

namespace triconic::kernels {

#if defined(__x86_64__) || defined(__i386__)

__attribute__((target("avx2"))) void monomials_avx2(const double* coeff, const int32_t* idx, int nvars,
                                                    std::size_t n, const double* table, double* out) {
    std::size_t k = 0;
    for (; k + 4 <= n; k += 4) {
        __m256d acc = _mm256_loadu_pd(coeff + k);
        for (int j = 0; j < nvars; ++j) {
            __m128i ix = _mm_loadu_si128(reinterpret_cast<const __m128i*>(idx + j * n + k));
            acc = _mm256_mul_pd(acc, _mm256_i32gather_pd(table, ix, 8));
        }
        _mm256_storeu_pd(out + k, acc);
    }
    if (k < n) {
        for (; k < n; ++k) {
            double acc = coeff[k];
            for (int j = 0; j < nvars; ++j) acc = acc * table[idx[j * n + k]];
            out[k] = acc;
        }
    }
}

#else

void monomials_avx2(const double* coeff, const int32_t* idx, int nvars, std::size_t n, const double* table,
                    double* out) {
    monomials_scalar(coeff, idx, nvars, n, table, out);
}

#endif

}  // namespace triconic::kernels
