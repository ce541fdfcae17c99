#include "gplab/moments.hpp"

#include <cmath>
#include <stdexcept>

#include "gplab/special.hpp"

namespace gplab {

double monomial_moment(int k, double alpha, double s, bool half_line) {
  if (k < 0) throw std::invalid_argument("moment: exponent must be >= 0");
  if (!(alpha >= 0.0)) throw std::invalid_argument("moment: alpha must be >= 0");
  if (!(s > 0.0) || !std::isfinite(s))
    throw std::invalid_argument("moment: gaussian rate must be positive");
  if (!half_line) {
    if (alpha != 0.0)
      throw std::invalid_argument("moment: full line requires alpha == 0");
    if (k % 2 == 1) return 0.0;
  }
  const double m = k + alpha;
  const double value = std::pow(2.0, 0.5 * (m - 1.0)) * gamma_fn(0.5 * (m + 1.0)) *
                       std::pow(s, -0.5 * (m + 1.0));
  return half_line ? value : 2.0 * value;
}

std::vector<double> moment_table(int k_max, double alpha, double s,
                                 bool half_line) {
  std::vector<double> t(static_cast<size_t>(k_max) + 1);
  t[0] = monomial_moment(0, alpha, s, half_line);
  if (k_max >= 1) t[1] = monomial_moment(1, alpha, s, half_line);
  for (int k = 2; k <= k_max; ++k)
    t[k] = t[k - 2] * (k - 1 + alpha) / s;
  return t;
}

namespace {

// Shared core: int f(x) x^A exp(-rate0 |x|^2) dx where rate0 >= 0 adds to
// every component's own envelope rate.  rate0 = 1/(2 lambda^2) gives the
// Gaussian measure integral; rate0 = 0 the raw weighted one.
double weighted_core(const MonomialWeight& w, const FuncSum& f, double rate0) {
  const int n = w.dim();
  if (f.dim() != n) throw std::invalid_argument("integrate: dimension mismatch");
  double total = 0.0;
  for (const auto& pg : f.components()) {
    const double s = 2.0 * (rate0 + pg.beta());
    if (!(s > 0.0))
      throw std::domain_error(
          "integrate: component has no Gaussian decay (rate 0)");
    // Per-coordinate moment tables up to this component's degree.
    std::vector<std::vector<double>> tables(n);
    for (int i = 0; i < n; ++i)
      tables[i] =
          moment_table(pg.max_degree(i), w.alpha(i), s, w.weighted(i));
    for (const auto& [e, c] : pg.terms()) {
      double m = c;
      for (int i = 0; i < n; ++i) m *= tables[i][e[i]];
      total += m;
    }
  }
  return total;
}

}  // namespace

double integrate(const WeightedGaussianMeasure& mu, const FuncSum& f) {
  const double rate0 = 0.5 / (mu.lambda() * mu.lambda());
  return weighted_core(mu.weight(), f, rate0) / mu.normalization();
}

double integrate_weighted(const MonomialWeight& w, const FuncSum& f) {
  return weighted_core(w, f, 0.0);
}

double inner(const WeightedGaussianMeasure& mu, const FuncSum& f,
             const FuncSum& g) {
  return integrate(mu, f * g);
}

double inner_weighted(const MonomialWeight& w, const FuncSum& f,
                      const FuncSum& g) {
  return integrate_weighted(w, f * g);
}

}  // namespace gplab
