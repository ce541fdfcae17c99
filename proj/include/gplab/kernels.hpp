#pragma once

#include <cstddef>

namespace gplab::kernels {

enum class Backend { scalar, avx2 };

// Resolved once at first use: GPLAB_KERNELS=scalar|avx2 wins if set and
// available, otherwise the widest supported instruction set.
Backend active();
bool available(Backend b);
// Test hook; throws std::invalid_argument if the backend cannot run here.
void force(Backend b);
const char* name(Backend b);

// Reduction contract shared by all backends: four accumulators over
// stride-4 blocks combined as (acc0 + acc1) + (acc2 + acc3), then a
// sequential tail, every multiply-add fused.  Backends therefore agree bit
// for bit, which the equivalence tests assert.
double dot(const double* a, const double* b, std::size_t n);
double sum(const double* a, std::size_t n);

// out[j] += env[j] * p(x[j]) with p(t) = sum_k coeffs[k] t^k evaluated by
// Horner with fused multiply-adds.  Elementwise, so backends agree exactly.
void poly_eval_mul_add(const double* coeffs, int deg, const double* x,
                       const double* env, double* out, std::size_t n);

}  // namespace gplab::kernels
