#include <array>
#include <cmath>
#include <stdexcept>
#include <doctest.h>

#include "gplab/moments.hpp"
#include "gplab/random_funcs.hpp"
#include "gplab/spectral.hpp"

using gplab::EigenIndex;
using gplab::FuncSum;
using gplab::MonomialWeight;
using gplab::SpectralBasis;
using gplab::WeightedGaussianMeasure;

namespace {

FuncSum random_poly(const MonomialWeight& w, std::uint64_t seed) {
  gplab::FuncGenOptions opt;
  opt.polynomial = true;
  opt.max_total_degree = 5;
  return gplab::random_admissible(w, seed, opt);
}

}  // namespace

TEST_SUITE("spectral") {

TEST_CASE("orthonormality of the product eigenfunctions") {
  for (const std::vector<double> alpha :
       {std::vector<double>{1.0, 0.0}, {0.5, 2.0}}) {
    const MonomialWeight w(alpha);
    const SpectralBasis basis(w);
    const WeightedGaussianMeasure mu(w);
    const auto idxs = basis.indices_up_to_degree(6, true);
    for (std::size_t i = 0; i < idxs.size(); ++i)
      for (std::size_t j = i; j < idxs.size(); ++j) {
        const double g = gplab::inner(mu, basis.basis_function(idxs[i]),
                                      basis.basis_function(idxs[j]));
        CHECK(std::fabs(g - (i == j ? 1.0 : 0.0)) <= 1e-12);
      }
  }
}

TEST_CASE("eigenvalue map doubles on weighted coordinates") {
  const SpectralBasis partial(MonomialWeight({1.0, 0.0}));
  CHECK(partial.eigenvalue({{2, 3}}) == 2 * 2 + 3);
  CHECK(partial.poly_degree({{2, 3}}) == 4 + 3);
  const SpectralBasis full(MonomialWeight({0.5, 2.0}));
  CHECK(full.eigenvalue({{2, 3}}) == 2 * 2 + 2 * 3);
  CHECK(full.poly_degree({{2, 3}}) == 4 + 6);
}

TEST_CASE("known low modes") {
  // Unweighted coordinate: normalized probabilists' Hermite, He_3/sqrt(6).
  const SpectralBasis cl(MonomialWeight::classical(1));
  const FuncSum h3 = cl.basis_function({{3}});
  const std::array<double, 1> two{2.0};
  CHECK(h3.evaluate(two) ==
        doctest::Approx((8.0 - 6.0) / std::sqrt(6.0)).epsilon(1e-13));

  // Weighted coordinate alpha = 0.5: Laguerre a = -1/4 in t = x^2/2,
  // L_2^{(a)}(t) = t^2/2 - (a+2) t + (a+1)(a+2)/2, squared norm 0.65625.
  const SpectralBasis half(MonomialWeight({0.5}));
  const FuncSum l2 = half.basis_function({{2}});
  const double a = -0.25;
  for (const double x : {0.3, 1.0, 2.1}) {
    const double t = 0.5 * x * x;
    const double raw = 0.5 * t * t - (a + 2.0) * t + 0.5 * (a + 1.0) * (a + 2.0);
    const std::array<double, 1> xx{x};
    CHECK(l2.evaluate(xx) ==
          doctest::Approx(raw / std::sqrt(0.65625)).epsilon(1e-12));
  }
}

TEST_CASE("generator identity on every cached mode") {
  for (const std::vector<double> alpha :
       {std::vector<double>{1.0, 0.0}, {0.5, 2.0}}) {
    const MonomialWeight w(alpha);
    const SpectralBasis basis(w);
    for (const auto& idx : basis.indices_up_to_degree(5, true)) {
      const FuncSum& phi = basis.basis_function(idx);
      const FuncSum lphi = gplab::apply_generator(phi, w, 1.0);
      CHECK(gplab::approx_equal(lphi, phi.scaled(-basis.eigenvalue(idx)),
                                1e-12));
    }
  }
}

TEST_CASE("expansion satisfies Parseval and reconstructs") {
  const MonomialWeight w({1.0, 0.0});
  const WeightedGaussianMeasure mu(w);
  const FuncSum u = random_poly(w, 17);
  const auto e = gplab::expand(u, w, 1.0);
  CHECK(e.norm_sq() ==
        doctest::Approx(gplab::integrate(mu, u * u)).epsilon(1e-12));
  CHECK(gplab::approx_equal(gplab::reconstruct(e), u, 1e-11));
}

TEST_CASE("lambda-scaled expansion is an isometry") {
  const MonomialWeight w({0.5, 2.0});
  const double lambda = 1.7;
  const WeightedGaussianMeasure mul(w, lambda);
  const FuncSum u = random_poly(w, 23);
  const auto e = gplab::expand(u, w, lambda);
  CHECK(e.lambda == lambda);
  CHECK(e.norm_sq() ==
        doctest::Approx(gplab::integrate(mul, u * u)).epsilon(1e-12));
  CHECK(gplab::approx_equal(gplab::reconstruct(e), u, 1e-11));
}

TEST_CASE("expand rejects envelopes and inadmissible functions") {
  const MonomialWeight w({1.0, 0.0});
  CHECK_THROWS(gplab::expand(FuncSum::constant(2, 1.0, 0.5), w, 1.0));
  CHECK_THROWS(gplab::expand(FuncSum::monomial(2, {1, 0}, 1.0), w, 1.0));
}

TEST_CASE("truncation accounts for the dropped mass") {
  const MonomialWeight w({1.0, 0.0});
  const SpectralBasis basis(w);
  const FuncSum phi = basis.basis_function({{2, 1}});  // degree 5
  const FuncSum u = phi.scaled(0.8) + basis.basis_function({{0, 1}});
  const auto tr = gplab::expand_truncated(u, w, 1.0, 2);
  CHECK(tr.dropped_mass == doctest::Approx(0.64).epsilon(1e-12));
  CHECK(tr.expansion.coefficient({{0, 1}}) ==
        doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("poisson solve inverts the generator") {
  for (const std::vector<double> alpha :
       {std::vector<double>{1.0, 0.0}, {1.0, 1.0}}) {
    const MonomialWeight w(alpha);
    const WeightedGaussianMeasure mu(w);
    for (std::uint64_t s = 0; s < 5; ++s) {
      FuncSum rhs = random_poly(w, gplab::derive_seed(55, s));
      // project out the mean
      rhs = rhs - FuncSum::constant(2, gplab::integrate(mu, rhs));
      const auto sol = gplab::poisson_solve(gplab::expand(rhs, w, 1.0));
      const FuncSum wfs = gplab::reconstruct(sol);
      const FuncSum resid = gplab::apply_generator(wfs, w, 1.0) + rhs;
      CHECK(gplab::integrate(mu, resid * resid) <= 1e-18);
    }
  }
}

TEST_CASE("poisson solve rejects a nonzero mean") {
  const MonomialWeight w({1.0, 0.0});
  const auto e = gplab::expand(FuncSum::constant(2, 1.0), w, 1.0);
  CHECK_THROWS_AS(gplab::poisson_solve(e), std::domain_error);
}

TEST_CASE("spectral gap values") {
  CHECK(gplab::rayleigh_gap(MonomialWeight({1.0, 0.0}), 8) ==
        doctest::Approx(1.0).epsilon(1e-10));
  CHECK(gplab::rayleigh_gap(MonomialWeight({0.0, 0.0}), 8) ==
        doctest::Approx(1.0).epsilon(1e-10));
  CHECK(gplab::rayleigh_gap(MonomialWeight({1.0, 1.0}), 8) ==
        doctest::Approx(2.0).epsilon(1e-8));
  CHECK(gplab::spectral_gap_enumerated(MonomialWeight({1.0, 0.0}), 8) == 1.0);
  CHECK(gplab::spectral_gap_enumerated(MonomialWeight({1.0, 1.0}), 8) == 2.0);
}

TEST_CASE("index enumeration is sorted and complete") {
  const SpectralBasis basis(MonomialWeight({1.0, 0.0}));
  const auto idxs = basis.indices_up_to_degree(4, true);
  // weighted coordinate contributes degree 2 per level: n1 <= 2, n2 <= 4
  std::size_t count = 0;
  for (int n1 = 0; n1 <= 2; ++n1)
    for (int n2 = 0; n2 <= 4; ++n2)
      if (2 * n1 + n2 <= 4) ++count;
  CHECK(idxs.size() == count);
  for (std::size_t i = 1; i < idxs.size(); ++i)
    CHECK(basis.eigenvalue(idxs[i - 1]) <= basis.eigenvalue(idxs[i]));
  const auto no_zero = basis.indices_up_to_degree(4, false);
  CHECK(no_zero.size() == count - 1);
}

}  // TEST_SUITE
