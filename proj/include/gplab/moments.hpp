#pragma once

#include <vector>

#include "gplab/funcsum.hpp"
#include "gplab/weight.hpp"

namespace gplab {

// int_0^inf x^{k+alpha} e^{-s x^2/2} dx   (half_line = true), or
// int_{-inf}^inf x^k e^{-s x^2/2} dx      (half_line = false, alpha must be 0).
// Closed form 2^{(m-1)/2} Gamma((m+1)/2) s^{-(m+1)/2}, m = k + alpha; the full
// line doubles even k and kills odd k.  Requires s > 0, k >= 0, alpha >= 0.
double monomial_moment(int k, double alpha, double s, bool half_line);

// moments[k] = monomial_moment(k, alpha, s, half_line) for k = 0..k_max,
// built from the k = 0, 1 values by the two-step recurrence
// m(k+2) = ((k + alpha + 1)/s) m(k).
std::vector<double> moment_table(int k_max, double alpha, double s,
                                 bool half_line);

// int f dmu, probability-normalized.  Exact: every monomial integrates
// through the Gamma identities with per-component rate s = 1/lambda^2 +
// 2 beta.
double integrate(const WeightedGaussianMeasure& mu, const FuncSum& f);

// int f x^A dx over the chamber, no Gaussian normalization.  Every component
// must decay on its own (envelope rate > 0).
double integrate_weighted(const MonomialWeight& w, const FuncSum& f);

// int f g dmu and int f g x^A dx without forming f*g when g is small.
double inner(const WeightedGaussianMeasure& mu, const FuncSum& f,
             const FuncSum& g);
double inner_weighted(const MonomialWeight& w, const FuncSum& f,
                      const FuncSum& g);

}  // namespace gplab
