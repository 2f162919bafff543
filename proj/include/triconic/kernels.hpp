#pragma once

#include <cstddef>
#include <cstdint>

namespace triconic::kernels {

// out[k] = coeff[k] * table[idx[k]] * table[idx[n + k]] * ... * table[idx[(nvars-1) n + k]],
// multiplied left to right. Both variants use this exact order and no FMA, so their results
// are bit-identical.
using MonomialFn = void (*)(const double* coeff, const int32_t* idx, int nvars, std::size_t n,
                            const double* table, double* out);

void monomials_scalar(const double* coeff, const int32_t* idx, int nvars, std::size_t n,
                      const double* table, double* out);
void monomials_avx2(const double* coeff, const int32_t* idx, int nvars, std::size_t n,
                    const double* table, double* out);

bool cpu_has_avx2();

// AVX2 when the CPU supports it, unless TRICONIC_KERNEL=scalar. Resolved once.
MonomialFn monomial_kernel();
const char* monomial_kernel_name();

}  // namespace triconic::kernels
