#pragma once

#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "gplab/functionals.hpp"
#include "gplab/funcsum.hpp"
#include "gplab/weight.hpp"

namespace gplab {

// Best fit of u by c e^{-|x|^2/(2 lambda^2)} (or (c + d.x) times that) in
// L^2(x^A dx).  distance_sq is the squared residual at the fit.
struct ProfileFit {
  double c = 0.0;
  std::vector<double> d;  // empty for the pure Gaussian family
  double lambda = 1.0;
  double distance_sq = 0.0;
};

// Least squares at fixed lambda.
ProfileFit project_profile(const FuncSum& u, const MonomialWeight& w,
                           double lambda, bool with_linear);

// Minimized over lambda > 0: 64-point log grid spanning [l0/32, 32 l0]
// around l0 = sqrt(M/(D Q)), then golden-section refinement to 1e-10
// relative.  Optionally records the scan profile.
struct ScanPoint {
  double lambda = 0.0;
  double distance_sq = 0.0;
};
ProfileFit distance_to_gaussians(const FuncSum& u, const MonomialWeight& w,
                                 std::vector<ScanPoint>* scan = nullptr);
ProfileFit distance_to_affine_gaussians(const FuncSum& u,
                                        const MonomialWeight& w,
                                        std::vector<ScanPoint>* scan = nullptr);

// Classical combined distance: joint (c, d, lambda) fit with the constant
// and affine residuals sharing c and lambda; distance_sq is the sum of both
// squared residuals.
ProfileFit combined_distance(const FuncSum& u,
                             std::vector<ScanPoint>* scan = nullptr);
ProfileFit project_combined(const FuncSum& u, const MonomialWeight& w,
                            double lambda);

struct StabilityReport {
  DeficitReport deficits;
  ProfileFit gaussian_fit;         // d_A^2 under the given weight
  ProfileFit affine_fit;           // (d tilde)_A^2
  double t11_margin = 0.0;         // delta_A - d_A^2
  double t6_margin = 0.0;          // delta_A - d_A^2 - (1/2)(d tilde)_A^2
  // Classical block (zero weight, same dimension), always defined.
  ProfileFit classical_gaussian_fit;
  ProfileFit classical_affine_fit;
  ProfileFit classical_combined_fit;
  double t7_margin = 0.0;         // delta_1 - d_2^2
  double t7_chain_margin = 0.0;   // delta_1 - d_1^2 - d_1(F)^2
  double delta2_margin = 0.0;     // delta_2 - N Q d_1^2 - d_1^4
  double delta2_literature_rhs = 0.0;  // (1/4) Q d_1^2 + (1/16) d_1^4, context
  std::vector<ScanPoint> gaussian_scan;  // filled when with_scan
  std::vector<ScanPoint> affine_scan;

  nlohmann::json to_json(const FuncSum& u) const;
};

StabilityReport stability_report(const FuncSum& u, const MonomialWeight& w,
                                 bool with_scan = false);

}  // namespace gplab
