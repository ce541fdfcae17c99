#include <cmath>
#include <cstddef>

// Reference kernels.  These mirror the vector lane structure (four fma
// accumulators, fixed combine order) so the SIMD backends can be checked
// against them bit for bit.

namespace gplab::kernels::detail {

double scalar_dot(const double* a, const double* b, std::size_t n) {
  double acc0 = 0.0, acc1 = 0.0, acc2 = 0.0, acc3 = 0.0;
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    acc0 = std::fma(a[i + 0], b[i + 0], acc0);
    acc1 = std::fma(a[i + 1], b[i + 1], acc1);
    acc2 = std::fma(a[i + 2], b[i + 2], acc2);
    acc3 = std::fma(a[i + 3], b[i + 3], acc3);
  }
  double s = (acc0 + acc1) + (acc2 + acc3);
  for (; i < n; ++i) s = std::fma(a[i], b[i], s);
  return s;
}

double scalar_sum(const double* a, std::size_t n) {
  double acc0 = 0.0, acc1 = 0.0, acc2 = 0.0, acc3 = 0.0;
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    acc0 += a[i + 0];
    acc1 += a[i + 1];
    acc2 += a[i + 2];
    acc3 += a[i + 3];
  }
  double s = (acc0 + acc1) + (acc2 + acc3);
  for (; i < n; ++i) s += a[i];
  return s;
}

void scalar_poly_eval_mul_add(const double* coeffs, int deg, const double* x,
                              const double* env, double* out, std::size_t n) {
  for (std::size_t j = 0; j < n; ++j) {
    double r = coeffs[deg];
    for (int k = deg - 1; k >= 0; --k) r = std::fma(r, x[j], coeffs[k]);
    out[j] = std::fma(env[j], r, out[j]);
  }
}

}  // namespace gplab::kernels::detail
