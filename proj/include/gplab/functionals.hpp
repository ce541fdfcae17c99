#pragma once

#include <cstdint>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "gplab/funcsum.hpp"
#include "gplab/moments.hpp"
#include "gplab/weight.hpp"

namespace gplab {

// All functionals reject inadmissible inputs (odd exponents in weighted
// coordinates) rather than silently integrating them.

// int |grad u|^2 dmu
double dirichlet_energy(const FuncSum& u, const WeightedGaussianMeasure& mu);
double variance(const FuncSum& u, const WeightedGaussianMeasure& mu);

// lambda^2 int |grad u|^2 dmu - Var(u); the scale factor makes the deficit
// of mu_{A,lambda} equal the lambda = 1 deficit of u(lambda x).  At
// lambda = 1 this is the plain Poincare deficit.
double poincare_deficit(const FuncSum& u, const WeightedGaussianMeasure& mu);

// b = int (u - mean u) x dmu, the linear-mode coefficient vector.
std::vector<double> linear_mode_vector(const FuncSum& u,
                                       const WeightedGaussianMeasure& mu);

// (1/2) int |lambda grad u - b/lambda|^2 dmu; first stability lower bound
// for the deficit.  Reduces to (1/2) int |grad u - b|^2 dmu at lambda = 1.
double gradient_stability_rhs(const FuncSum& u,
                              const WeightedGaussianMeasure& mu);

// (1/2) int |u - mean - (b/lambda^2) . (x - mean_x)|^2 dmu; the projected
// (weaker, fully explicit) stability bound.
double projection_stability_rhs(const FuncSum& u,
                                const WeightedGaussianMeasure& mu);

// Classical chain deficit >= gradient_rhs >= projection_rhs with constants
// (1, 1/2, 1); requires a classical (unweighted) measure.
struct ClassicalChain {
  double deficit = 0.0;
  double gradient_rhs = 0.0;    // (1/2) int |grad u - b|^2
  double projection_rhs = 0.0;  // int |u - mean - b.x|^2
};
ClassicalChain classical_chain(const FuncSum& u,
                               const WeightedGaussianMeasure& mu);

// inf over (c, e) of int |u-c|^2 dmu + second_weight * int |u-c-e.(x-xbar)|^2
// dmu, recentred at the measure's own mean so the normal equations decouple.
double joint_profile_rhs(const FuncSum& u, const WeightedGaussianMeasure& mu,
                         double second_weight);

// Heisenberg-type quantities against the raw weight x^A dx.  delta_1 and
// delta_2 are the classical deficits of the same function (zero weight, same
// dimension).  Requires every envelope rate positive.
struct UncertaintyDeficits {
  double q = 0.0;        // int u^2 x^A dx
  double energy = 0.0;   // int |grad u|^2 x^A dx
  double moment = 0.0;   // int u^2 |x|^2 x^A dx
  double delta_A = 0.0;  // sqrt(energy * moment) - (D/2) q
  double lambda_star = 0.0;
  double delta_1 = 0.0;
  double delta_2 = 0.0;
  double q_classical = 0.0;
};
UncertaintyDeficits uncertainty_deficits(const FuncSum& u,
                                         const MonomialWeight& w);

// (lambda^2/2) int |grad u + x u / lambda^2|^2 x^A dx; equals
// (lambda^2/2) E + M/(2 lambda^2) - (D/2) Q for admissible u.
double uncertainty_identity_rhs(const FuncSum& u, const MonomialWeight& w,
                                double lambda);

// Relative residual of that identity at lambda (lambda <= 0 picks
// lambda_star, where the left side is delta_A itself).
double uncertainty_identity_residual(const FuncSum& u, const MonomialWeight& w,
                                     double lambda = 0.0);

// Gamma_2(u)(x) = ||Hess u||_F^2 + |grad u|^2 + sum_i alpha_i (d_i u)^2/x_i^2
double gamma2_pointwise(const FuncSum& u, const MonomialWeight& w,
                        std::span<const double> x);
double carre_du_champ_pointwise(const FuncSum& u, std::span<const double> x);

// Minimum over seeded chamber samples of (Gamma_2 - Gamma)/scale; the
// curvature condition CD(1, inf) demands it stay >= 0.
double cd_min_margin(const FuncSum& u, const MonomialWeight& w, int samples,
                     std::uint64_t seed);

// int Gamma_2(u) dmu_A: smooth part exactly, singular part by adaptive
// quadrature at interior nodes.
double gamma2_integral(const FuncSum& u, const MonomialWeight& w,
                       int order0 = 40);

struct DeficitReport {
  std::vector<double> alpha;
  double lambda = 1.0;
  double poincare_deficit = 0.0;
  double t2_rhs = 0.0;
  double p1_rhs = 0.0;
  bool classical = false;
  double p2_deficit = 0.0;  // classical only
  double p2_mid = 0.0;
  double p2_rhs = 0.0;
  double delta_A = 0.0;
  double delta_1 = 0.0;
  double delta_2 = 0.0;
  double lambda_star = 0.0;
  double identity_residual = 0.0;
  nlohmann::json to_json(const FuncSum& u) const;
};
DeficitReport deficit_report(const FuncSum& u, const MonomialWeight& w,
                             double lambda = 1.0);

}  // namespace gplab
