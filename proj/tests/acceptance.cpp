// Acceptance gate: one line per criterion, nonzero exit if any fails.

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <vector>

#include "gplab/funcsum.hpp"
#include "gplab/functionals.hpp"
#include "gplab/moments.hpp"
#include "gplab/quadrature.hpp"
#include "gplab/random_funcs.hpp"
#include "gplab/spectral.hpp"
#include "gplab/stability.hpp"
#include "gplab/verify.hpp"
#include "gplab/weight.hpp"

using gplab::FuncSum;
using gplab::MonomialWeight;
using gplab::PolyGauss;
using gplab::WeightedGaussianMeasure;

namespace {

int failures = 0;

void line(int id, const char* what, bool ok, double detail) {
  std::printf("criterion %2d  %-44s %s  (worst %.3g)\n", id, what,
              ok ? "pass" : "FAIL", detail);
  if (!ok) ++failures;
}

const std::vector<std::vector<double>>& stock_alphas() {
  static const std::vector<std::vector<double>> a = {
      {0.0, 0.0}, {1.0, 0.0}, {1.0, 1.0}, {0.5, 2.0}};
  return a;
}

FuncSum poly2(double c00, double c01, double c02, double c20) {
  PolyGauss p(2, 0.0);
  if (c00 != 0.0) p.add_term({0, 0}, c00);
  if (c01 != 0.0) p.add_term({0, 1}, c01);
  if (c02 != 0.0) p.add_term({0, 2}, c02);
  if (c20 != 0.0) p.add_term({2, 0}, c20);
  FuncSum u(2);
  u.add_component(p);
  return u;
}

void c1() {
  const MonomialWeight w({1.0, 0.0});
  const WeightedGaussianMeasure mu(w);
  const FuncSum u = poly2(3.0, 2.0, 0.0, 0.0);
  const double e = gplab::dirichlet_energy(u, mu);
  const double v = gplab::variance(u, mu);
  double worst = std::max(std::fabs(e - v), std::fabs(e - 4.0));
  bool ok = worst <= 1e-12;
  double eq = 0.0;
  for (int i = 0; i < 2; ++i) {
    const FuncSum d = u.partial(i);
    eq += gplab::quad_integrate(mu, d * d, 40);
  }
  const double m1 = gplab::quad_integrate(mu, u, 40);
  const double vq = gplab::quad_integrate(mu, u * u, 40) - m1 * m1;
  const double worst_q =
      std::max({std::fabs(eq - vq), std::fabs(eq - 4.0), std::fabs(vq - 4.0)});
  ok = ok && worst_q <= 1e-10;
  line(1, "t1 equality, partial weight", ok, std::max(worst, worst_q));
}

void c2() {
  const MonomialWeight w({1.0, 0.0});
  const WeightedGaussianMeasure mu(w);
  const FuncSum u = poly2(-1.0, 0.0, 1.0, 0.0);
  const double d = gplab::poincare_deficit(u, mu);
  const double r = gplab::gradient_stability_rhs(u, mu);
  const double worst =
      std::max({std::fabs(d - 2.0), std::fabs(r - 2.0), std::fabs(d - r)});
  line(2, "t2 equality", worst <= 1e-12, worst);
}

void c3() {
  const MonomialWeight w({1.0, 0.0});
  PolyGauss p(2, 0.5);
  p.add_term({0, 1}, 1.0);
  FuncSum u(2);
  u.add_component(p);
  const double ref = 0.25 * std::sqrt(4.0 * std::atan(1.0));  // sqrt(pi)/4
  const double da = gplab::uncertainty_deficits(u, w).delta_A;
  const double dist = gplab::distance_to_gaussians(u, w).distance_sq;
  const double worst = std::max({std::fabs(da - ref), std::fabs(dist - ref),
                                 std::fabs(da - dist)}) /
                       ref;
  line(3, "t11 gaussian extremizer saturates", worst <= 1e-6, worst);
}

void c4() {
  double worst = 0.0;
  int widx = 0;
  for (const auto& alpha : stock_alphas()) {
    const MonomialWeight w(alpha);
    for (std::uint64_t s = 0; s < 100; ++s) {
      const FuncSum u =
          gplab::random_admissible(w, gplab::derive_seed(4001 + widx, s));
      worst = std::max(worst,
                       gplab::uncertainty_identity_residual(u, w, -1.0));
    }
    ++widx;
  }
  line(4, "p0 identity residual, 400 functions", worst <= 1e-9, worst);
}

void c5() {
  double worst = 0.0;
  bool ok = true;
  int widx = 0;
  for (const auto& alpha : stock_alphas()) {
    gplab::SuiteConfig cfg;
    cfg.alpha = alpha;
    cfg.trials = 1000;
    cfg.seed = 5001 + static_cast<std::uint64_t>(widx++);
    const auto res = gplab::run_margin_suite(cfg);
    ok = ok && res.pass;
    for (const auto& s : res.summaries)
      worst = std::min(worst, s.min_margin_rel);
  }
  line(5, "margin suite, 1000 trials x 4 weights", ok, worst);
}

void c6() {
  const double g10 = gplab::rayleigh_gap(MonomialWeight({1.0, 0.0}), 8);
  const double g00 = gplab::rayleigh_gap(MonomialWeight({0.0, 0.0}), 8);
  const double g11 = gplab::rayleigh_gap(MonomialWeight({1.0, 1.0}), 8);
  const double e10 =
      gplab::spectral_gap_enumerated(MonomialWeight({1.0, 0.0}), 8);
  const double e00 =
      gplab::spectral_gap_enumerated(MonomialWeight({0.0, 0.0}), 8);
  const double e11 =
      gplab::spectral_gap_enumerated(MonomialWeight({1.0, 1.0}), 8);
  const double worst =
      std::max({std::fabs(g10 - 1.0), std::fabs(g00 - 1.0),
                std::fabs(g10 - e10), std::fabs(g00 - e00),
                std::fabs(g11 - 2.0) / 2.0, std::fabs(g11 - e11) / 2.0});
  const bool ok = std::fabs(g10 - 1.0) <= 1e-10 &&
                  std::fabs(g00 - 1.0) <= 1e-10 &&
                  std::fabs(g11 - 2.0) <= 2e-8 && e10 == 1.0 && e00 == 1.0 &&
                  e11 == 2.0;
  line(6, "spectral gap, partial and full weights", ok, worst);
}

void c7() {
  double worst = 0.0;
  gplab::FuncGenOptions opt;
  opt.polynomial = true;
  int widx = 0;
  for (const auto& alpha :
       {std::vector<double>{1.0, 0.0}, std::vector<double>{1.0, 1.0}}) {
    const MonomialWeight w(alpha);
    const WeightedGaussianMeasure mu(w);
    for (std::uint64_t s = 0; s < 50; ++s) {
      FuncSum rhs =
          gplab::random_admissible(w, gplab::derive_seed(7001 + widx, s), opt);
      rhs = rhs - FuncSum::constant(2, gplab::integrate(mu, rhs));
      const auto sol = gplab::poisson_solve(gplab::expand(rhs, w, 1.0));
      const FuncSum wfs = gplab::reconstruct(sol);
      const FuncSum resid = gplab::apply_generator(wfs, w, 1.0) + rhs;
      worst = std::max(worst, gplab::integrate(mu, resid * resid));
    }
    ++widx;
  }
  line(7, "poisson residual, 100 solves", worst <= 1e-18, worst);
}

void c8() {
  const MonomialWeight w({0.0});
  const WeightedGaussianMeasure mu(w);
  gplab::SpectralBasis basis(w);
  const FuncSum phi3 = basis.basis_function({{3}});
  const auto ch = gplab::classical_chain(phi3, mu);
  // Coefficient route from the expansion of the same function.
  const auto ex = gplab::expand(phi3, w, 1.0);
  double cd = 0.0, cm = 0.0, cr = 0.0;
  for (const auto& [idx, c] : ex.coeffs) {
    const int k = idx.n[0];
    if (k >= 1) cd += (k - 1) * c * c;
    if (k >= 2) {
      cm += 0.5 * k * c * c;
      cr += c * c;
    }
  }
  double worst = std::max({std::fabs(ch.deficit - 2.0),
                           std::fabs(ch.gradient_rhs - 1.5),
                           std::fabs(ch.projection_rhs - 1.0),
                           std::fabs(cd - 2.0), std::fabs(cm - 1.5),
                           std::fabs(cr - 1.0)});
  // On span{phi_0, phi_1, phi_2} all three collapse to c_2^2.
  const FuncSum low = 0.7 * basis.basis_function({{0}}) -
                      1.3 * basis.basis_function({{1}}) +
                      0.9 * basis.basis_function({{2}});
  const auto cl = gplab::classical_chain(low, mu);
  const double c2sq = 0.81;
  worst = std::max({worst, std::fabs(cl.deficit - c2sq),
                    std::fabs(cl.gradient_rhs - c2sq),
                    std::fabs(cl.projection_rhs - c2sq)});
  line(8, "p2 chain constants (2, 3/2, 1)", worst <= 1e-12, worst);
}

void c9() {
  double worst = 0.0;
  int widx = 0;
  for (const auto& alpha : stock_alphas()) {
    const MonomialWeight w(alpha);
    const WeightedGaussianMeasure mu(w);
    for (std::uint64_t s = 0; s < 250; ++s) {
      const FuncSum u =
          gplab::random_admissible(w, gplab::derive_seed(9001 + widx, s));
      const double exact = gplab::integrate(mu, u);
      const double quad = gplab::quad_integrate(mu, u, 40);
      worst = std::max(worst, std::fabs(quad - exact) /
                                  std::max(1.0, std::fabs(exact)));
    }
    ++widx;
  }
  line(9, "dual-path oracle, 1000 integrands", worst <= 1e-9, worst);
}

void c10() {
  double worst_rel = 0.0;
  double worst_cd = 0.0;
  int widx = 0;
  for (const auto& alpha : stock_alphas()) {
    const MonomialWeight w(alpha);
    const WeightedGaussianMeasure mu(w);
    for (std::uint64_t s = 0; s < 25; ++s) {
      const std::uint64_t seed = gplab::derive_seed(10001 + widx, s);
      const FuncSum u = gplab::random_admissible(w, seed);
      const double lhs = gplab::gamma2_integral(u, w);
      const FuncSum lu = gplab::apply_generator(u, w, 1.0);
      const double rhs = gplab::integrate(mu, lu * lu);
      worst_rel = std::max(worst_rel, std::fabs(lhs - rhs) /
                                          std::max(1.0, std::fabs(rhs)));
      worst_cd =
          std::min(worst_cd, gplab::cd_min_margin(u, w, 10000, seed));
    }
    ++widx;
  }
  const bool ok = worst_rel <= 1e-8 && worst_cd >= -1e-11;
  line(10, "curvature identity and pointwise cd bound", ok,
       std::max(worst_rel, -worst_cd));
}

void c11() {
  const double lambda = 1.5;
  const MonomialWeight w({0.0, 0.0});
  const WeightedGaussianMeasure mu(w, lambda);
  const FuncSum u = poly2(-2.0 * lambda * lambda, 0.0, 1.0, 1.0);
  const double energy = gplab::dirichlet_energy(u, mu);
  const double jpr = gplab::joint_profile_rhs(u, mu, 1.0);
  double worst = std::fabs(energy - 18.0);
  worst = std::max(worst, std::fabs(lambda * lambda * energy - jpr) / jpr);
  // Stationarity of the stated minimizer (c, e) = (0, 0): u is centred and
  // uncorrelated with each coordinate, and the objective there matches the
  // fitted infimum.
  worst = std::max(worst, std::fabs(gplab::integrate(mu, u)));
  for (int i = 0; i < 2; ++i) {
    PolyGauss xi(2, 0.0);
    gplab::Exponents e(2, 0);
    e[static_cast<size_t>(i)] = 1;
    xi.add_term(e, 1.0);
    FuncSum coord(2);
    coord.add_component(xi);
    worst = std::max(worst, std::fabs(gplab::inner(mu, u, coord)));
  }
  const double at_zero = 2.0 * gplab::integrate(mu, u * u);
  worst = std::max(worst, std::fabs(at_zero - jpr) / jpr);
  line(11, "t5 extremizer saturates the inf form", worst <= 1e-8, worst);
}

}  // namespace

int main() {
  c1();
  c2();
  c3();
  c4();
  c5();
  c6();
  c7();
  c8();
  c9();
  c10();
  c11();
  if (failures) {
    std::printf("acceptance: %d criterion(s) failed\n", failures);
    return 1;
  }
  std::printf("acceptance: all 11 criteria pass\n");
  return 0;
}
