#include "gplab/kernels.hpp"

#include <cstdlib>
#include <cstring>
#include <stdexcept>

namespace gplab::kernels {

namespace detail {
double scalar_dot(const double*, const double*, std::size_t);
double scalar_sum(const double*, std::size_t);
void scalar_poly_eval_mul_add(const double*, int, const double*, const double*,
                              double*, std::size_t);
#if defined(__x86_64__)
double avx2_dot(const double*, const double*, std::size_t);
double avx2_sum(const double*, std::size_t);
void avx2_poly_eval_mul_add(const double*, int, const double*, const double*,
                            double*, std::size_t);
#endif
}  // namespace detail

namespace {

struct Table {
  double (*dot)(const double*, const double*, std::size_t);
  double (*sum)(const double*, std::size_t);
  void (*poly)(const double*, int, const double*, const double*, double*,
               std::size_t);
};

constexpr Table kScalar{detail::scalar_dot, detail::scalar_sum,
                        detail::scalar_poly_eval_mul_add};
#if defined(__x86_64__)
constexpr Table kAvx2{detail::avx2_dot, detail::avx2_sum,
                      detail::avx2_poly_eval_mul_add};
#endif

bool cpu_has_avx2() {
#if defined(__x86_64__)
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

struct State {
  Backend backend;
  const Table* table;
};

State resolve_initial() {
  const char* env = std::getenv("GPLAB_KERNELS");
  if (env != nullptr) {
    if (std::strcmp(env, "scalar") == 0) return {Backend::scalar, &kScalar};
#if defined(__x86_64__)
    if (std::strcmp(env, "avx2") == 0 && cpu_has_avx2())
      return {Backend::avx2, &kAvx2};
#endif
    // Unknown or unavailable request falls through to auto detection.
  }
#if defined(__x86_64__)
  if (cpu_has_avx2()) return {Backend::avx2, &kAvx2};
#endif
  return {Backend::scalar, &kScalar};
}

State& state() {
  static State s = resolve_initial();
  return s;
}

}  // namespace

Backend active() { return state().backend; }

bool available(Backend b) {
  if (b == Backend::scalar) return true;
  return cpu_has_avx2();
}

void force(Backend b) {
  if (!available(b))
    throw std::invalid_argument("kernels: backend not available on this host");
  switch (b) {
    case Backend::scalar:
      state() = {Backend::scalar, &kScalar};
      break;
    case Backend::avx2:
#if defined(__x86_64__)
      state() = {Backend::avx2, &kAvx2};
#endif
      break;
  }
}

const char* name(Backend b) {
  return b == Backend::scalar ? "scalar" : "avx2";
}

double dot(const double* a, const double* b, std::size_t n) {
  return state().table->dot(a, b, n);
}

double sum(const double* a, std::size_t n) { return state().table->sum(a, n); }

void poly_eval_mul_add(const double* coeffs, int deg, const double* x,
                       const double* env, double* out, std::size_t n) {
  state().table->poly(coeffs, deg, x, env, out, n);
}

}  // namespace gplab::kernels
