#pragma once

#include <functional>
#include <span>
#include <vector>

#include "gplab/funcsum.hpp"
#include "gplab/weight.hpp"

namespace gplab {

// Gauss rule for one coordinate of the weighted Gaussian.  full_line carries
// weight e^{-x^2/2} (probabilists' Hermite); half_line carries x^alpha
// e^{-x^2/2} on (0, inf), obtained from the generalized Laguerre rule with
// parameter (alpha-1)/2 under t = x^2/2.  Nodes ascend.
struct QuadratureRule1D {
  enum class Kind { half_line, full_line };
  Kind kind = Kind::full_line;
  double alpha = 0.0;
  int order = 0;
  std::vector<double> nodes;
  std::vector<double> weights;
};

QuadratureRule1D build_rule(QuadratureRule1D::Kind kind, double alpha, int n);

// Tensor-product rule whose weights represent x^A e^{-rate |x|^2} dx on the
// chamber (per-coordinate scaling of the base rules).
class TensorRule {
 public:
  TensorRule(const MonomialWeight& w, double rate, int order);
  static TensorRule for_measure(const WeightedGaussianMeasure& mu, int order);

  const MonomialWeight& weight() const { return weight_; }
  double rate() const { return rate_; }
  int order() const { return order_; }
  double total_weight() const;

  // sum_j W_j g(x_j); approximates int g x^A e^{-rate |x|^2} dx.  Throws on a
  // non-finite evaluation, reporting the node.
  double integrate_pointwise(
      const std::function<double(std::span<const double>)>& g) const;

  // Approximates int f x^A dx for f in the closed family by folding the
  // rule's Gaussian into the component envelopes; every component needs
  // envelope rate >= rate().  Runs through the batch kernels row by row with
  // a fixed traversal order, so results are reproducible bit for bit.
  double integrate(const FuncSum& f) const;

 private:
  MonomialWeight weight_;
  double rate_;
  int order_;
  std::vector<QuadratureRule1D> rules_;
};

// int f dmu by quadrature, normalized by the rule's own total weight so the
// path shares nothing with the Gamma identities except the rule masses.
double quad_integrate(const WeightedGaussianMeasure& mu, const FuncSum& f,
                      int order);

// int f x^A dx by quadrature; requires every envelope rate positive.
double quad_integrate_weighted(const MonomialWeight& w, const FuncSum& f,
                               int order);

struct AdaptiveResult {
  double value = 0.0;
  int final_order = 0;
  bool converged = false;
};

// Doubles the order (cap 160) until two successive estimates agree to 1e-10
// relative.
AdaptiveResult adaptive_integrate_pointwise(
    const WeightedGaussianMeasure& mu,
    const std::function<double(std::span<const double>)>& g, int order0 = 40);

// Default per-coordinate order: GPLAB_QUAD_ORDER if set and valid, else 40.
int default_quad_order();

}  // namespace gplab
