#include <array>
#include <cmath>
#include <stdexcept>
#include <doctest.h>
#include <nlohmann/json.hpp>

#include "gplab/funcsum.hpp"
#include "gplab/random_funcs.hpp"

using gplab::FuncSum;
using gplab::MonomialWeight;
using gplab::PolyGauss;

namespace {

// Finite-difference partial, for checking the symbolic derivative.
double fd_partial(const FuncSum& f, int coord, std::array<double, 2> x) {
  const double h = 1e-6;
  auto xp = x, xm = x;
  xp[static_cast<size_t>(coord)] += h;
  xm[static_cast<size_t>(coord)] -= h;
  return (f.evaluate(xp) - f.evaluate(xm)) / (2 * h);
}

}  // namespace

TEST_SUITE("funcsum") {

TEST_CASE("term bookkeeping is canonical") {
  PolyGauss p(2, 0.5);
  p.add_term({1, 2}, 3.0);
  p.add_term({1, 2}, -3.0);  // cancels exactly
  CHECK(p.empty());
  p.add_term({0, 1}, 2.0);
  p.add_term({2, 0}, -1.0);
  CHECK(p.coefficient({0, 1}) == 2.0);
  CHECK(p.coefficient({5, 5}) == 0.0);
  CHECK(p.total_degree() == 2);
  CHECK(p.max_degree(0) == 2);
  CHECK(p.max_degree(1) == 1);
  CHECK_THROWS_AS(p.add_term({-1, 0}, 1.0), std::invalid_argument);
}

TEST_CASE("sum and difference cancel exactly on dyadic coefficients") {
  const FuncSum a = FuncSum::monomial(2, {2, 1}, 0.75, 0.5) +
                    FuncSum::monomial(2, {0, 3}, -1.25, 1.0);
  const FuncSum b = FuncSum::monomial(2, {1, 1}, 2.5, 0.5);
  CHECK((a + b) - b == a);
  CHECK(a - a == FuncSum::zero(2));
  CHECK((a + b) - a - b == FuncSum::zero(2));
}

TEST_CASE("product merges envelopes and multiplies polynomials") {
  const FuncSum f = FuncSum::monomial(1, {1}, 2.0, 0.25);
  const FuncSum g = FuncSum::monomial(1, {2}, 0.5, 0.5);
  const FuncSum fg = f * g;
  REQUIRE(fg.components().size() == 1);
  CHECK(fg.components()[0].beta() == 0.75);
  CHECK(fg.components()[0].coefficient({3}) == 1.0);

  const std::array<double, 1> x{1.3};
  CHECK(fg.evaluate(x) ==
        doctest::Approx(f.evaluate(x) * g.evaluate(x)).epsilon(1e-15));
}

TEST_CASE("evaluate on a mixed sum") {
  FuncSum f = FuncSum::constant(2, 2.0) +
              FuncSum::monomial(2, {1, 1}, -0.5, 0.5);
  const std::array<double, 2> x{0.7, -1.1};
  const double expect =
      2.0 - 0.5 * (0.7 * -1.1) * std::exp(-0.5 * (0.49 + 1.21));
  CHECK(f.evaluate(x) == doctest::Approx(expect).epsilon(1e-15));
}

TEST_CASE("partial derivative matches finite differences") {
  const MonomialWeight w({1.0, 0.0});
  const FuncSum u = gplab::random_admissible(w, 42);
  for (int c = 0; c < 2; ++c) {
    const FuncSum du = u.partial(c);
    for (const std::array<double, 2> x :
         {std::array<double, 2>{0.8, -0.4}, {1.7, 1.1}, {0.3, 2.2}}) {
      CHECK(du.evaluate(x) == doctest::Approx(fd_partial(u, c, x))
                                  .epsilon(1e-7));
    }
  }
}

TEST_CASE("product rule is exact on dyadic coefficients") {
  const FuncSum f = FuncSum::monomial(2, {2, 0}, 0.5, 0.25) +
                    FuncSum::constant(2, 1.5);
  const FuncSum g = FuncSum::monomial(2, {1, 1}, 2.0, 0.5);
  for (int c = 0; c < 2; ++c) {
    const FuncSum lhs = (f * g).partial(c);
    const FuncSum rhs = f.partial(c) * g + f * g.partial(c);
    CHECK(lhs == rhs);
  }
}

TEST_CASE("envelope derivative carries the -2 beta x factor") {
  const FuncSum f = FuncSum::constant(1, 1.0, 0.5);  // e^{-x^2/2}
  const FuncSum df = f.partial(0);
  // expect -x e^{-x^2/2}
  REQUIRE(df.components().size() == 1);
  CHECK(df.components()[0].coefficient({1}) == -1.0);
}

TEST_CASE("divided_by_coordinate") {
  const FuncSum f = FuncSum::monomial(2, {3, 1}, 2.0, 0.5);
  const FuncSum g = f.divided_by_coordinate(0);
  CHECK(g.components()[0].coefficient({2, 1}) == 2.0);
  CHECK_THROWS_AS(FuncSum::constant(2, 1.0).divided_by_coordinate(0),
                  std::domain_error);
}

TEST_CASE("scaled_argument composes with evaluate") {
  const MonomialWeight w({0.5, 2.0});
  const FuncSum u = gplab::random_admissible(w, 7);
  const double s = 1.7;
  const FuncSum v = u.scaled_argument(s);
  const std::array<double, 2> x{0.9, 1.4};
  const std::array<double, 2> sx{s * 0.9, s * 1.4};
  CHECK(v.evaluate(x) == doctest::Approx(u.evaluate(sx)).epsilon(1e-13));
  // round trip
  CHECK(gplab::approx_equal(v.scaled_argument(1.0 / s), u, 1e-13));
}

TEST_CASE("shifted_envelope adds to every rate") {
  const FuncSum f = FuncSum::monomial(1, {2}, 1.0, 0.5);
  CHECK(f.shifted_envelope(0.25).components()[0].beta() == 0.75);
  CHECK(f.shifted_envelope(-0.5).components()[0].beta() == 0.0);
  CHECK_THROWS_AS(f.shifted_envelope(-0.75), std::domain_error);
}

TEST_CASE("rate queries") {
  const FuncSum f = FuncSum::constant(2, 1.0, 0.5) +
                    FuncSum::monomial(2, {2, 0}, 1.0, 1.25);
  CHECK(f.min_envelope_rate() == 0.5);
  CHECK(f.all_rates_positive());
  CHECK_FALSE((f + FuncSum::constant(2, 1.0)).all_rates_positive());
}

TEST_CASE("neumann admissibility needs even powers on weighted coordinates") {
  const MonomialWeight w({1.0, 0.0});
  CHECK(FuncSum::monomial(2, {2, 3}, 1.0).neumann_admissible(w));
  CHECK_FALSE(FuncSum::monomial(2, {1, 0}, 1.0).neumann_admissible(w));
  CHECK(FuncSum::monomial(2, {0, 1}, 1.0).neumann_admissible(w));
}

TEST_CASE("json round trip preserves the function exactly") {
  const MonomialWeight w({1.0, 0.0});
  const FuncSum u = gplab::random_admissible(w, 99);
  const FuncSum back = FuncSum::from_json(u.to_json());
  CHECK(back == u);
  CHECK_THROWS(FuncSum::from_json(nlohmann::json::array()));
}

TEST_CASE("gradient_norm_sq agrees with the squared gradient") {
  const FuncSum u = gplab::random_admissible(MonomialWeight({1.0, 1.0}), 5);
  const FuncSum gsq = gplab::gradient_norm_sq(u);
  const auto grad = u.gradient();
  const std::array<double, 2> x{0.6, 1.9};
  const double direct = grad[0].evaluate(x) * grad[0].evaluate(x) +
                        grad[1].evaluate(x) * grad[1].evaluate(x);
  CHECK(gsq.evaluate(x) == doctest::Approx(direct).epsilon(1e-13));
}

TEST_CASE("hessian is symmetric") {
  // mixed partials agree up to multiply reordering
  const FuncSum u = gplab::random_admissible(MonomialWeight({0.5, 2.0}), 11);
  const auto h = u.hessian();
  CHECK(gplab::approx_equal(h[0][1], h[1][0], 1e-14));
}

}  // TEST_SUITE
