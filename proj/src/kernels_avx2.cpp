#include <cstddef>

#if defined(__AVX2__) && defined(__FMA__)

#include <immintrin.h>

#include <cmath>

namespace gplab::kernels::detail {

double avx2_dot(const double* a, const double* b, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d va = _mm256_loadu_pd(a + i);
    const __m256d vb = _mm256_loadu_pd(b + i);
    acc = _mm256_fmadd_pd(va, vb, acc);
  }
  alignas(32) double lane[4];
  _mm256_store_pd(lane, acc);
  // Same combine order as the scalar reference.
  double s = (lane[0] + lane[1]) + (lane[2] + lane[3]);
  for (; i < n; ++i) s = std::fma(a[i], b[i], s);
  return s;
}

double avx2_sum(const double* a, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) acc = _mm256_add_pd(acc, _mm256_loadu_pd(a + i));
  alignas(32) double lane[4];
  _mm256_store_pd(lane, acc);
  double s = (lane[0] + lane[1]) + (lane[2] + lane[3]);
  for (; i < n; ++i) s += a[i];
  return s;
}

void avx2_poly_eval_mul_add(const double* coeffs, int deg, const double* x,
                            const double* env, double* out, std::size_t n) {
  std::size_t j = 0;
  for (; j + 4 <= n; j += 4) {
    const __m256d vx = _mm256_loadu_pd(x + j);
    __m256d r = _mm256_set1_pd(coeffs[deg]);
    for (int k = deg - 1; k >= 0; --k)
      r = _mm256_fmadd_pd(r, vx, _mm256_set1_pd(coeffs[k]));
    const __m256d vo =
        _mm256_fmadd_pd(_mm256_loadu_pd(env + j), r, _mm256_loadu_pd(out + j));
    _mm256_storeu_pd(out + j, vo);
  }
  for (; j < n; ++j) {
    double r = coeffs[deg];
    for (int k = deg - 1; k >= 0; --k) r = std::fma(r, x[j], coeffs[k]);
    out[j] = std::fma(env[j], r, out[j]);
  }
}

}  // namespace gplab::kernels::detail

#endif  // __AVX2__ && __FMA__
