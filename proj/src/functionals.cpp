#include "gplab/functionals.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "gplab/quadrature.hpp"
#include "gplab/random_funcs.hpp"

namespace gplab {

namespace {

void require_admissible(const FuncSum& u, const MonomialWeight& w) {
  if (u.dim() != w.dim())
    throw std::invalid_argument("functionals: dimension mismatch");
  if (!u.neumann_admissible(w))
    throw std::domain_error(
        "functionals: function is not Neumann admissible for this weight");
}

void require_decaying(const FuncSum& u) {
  if (!u.all_rates_positive())
    throw std::domain_error(
        "functionals: weighted-space quantities need a decaying function");
}

FuncSum centered(const FuncSum& u, const WeightedGaussianMeasure& mu) {
  return u - FuncSum::constant(u.dim(), integrate(mu, u));
}

}  // namespace

double dirichlet_energy(const FuncSum& u, const WeightedGaussianMeasure& mu) {
  require_admissible(u, mu.weight());
  double e = 0.0;
  for (int i = 0; i < u.dim(); ++i) {
    const FuncSum di = u.partial(i);
    e += inner(mu, di, di);
  }
  return e;
}

double variance(const FuncSum& u, const WeightedGaussianMeasure& mu) {
  require_admissible(u, mu.weight());
  const FuncSum v = centered(u, mu);
  return inner(mu, v, v);
}

double poincare_deficit(const FuncSum& u, const WeightedGaussianMeasure& mu) {
  const double l2 = mu.lambda() * mu.lambda();
  return l2 * dirichlet_energy(u, mu) - variance(u, mu);
}

std::vector<double> linear_mode_vector(const FuncSum& u,
                                       const WeightedGaussianMeasure& mu) {
  require_admissible(u, mu.weight());
  const FuncSum v = centered(u, mu);
  std::vector<double> b(static_cast<size_t>(u.dim()));
  for (int i = 0; i < u.dim(); ++i)
    b[static_cast<size_t>(i)] = inner(mu, v, FuncSum::coordinate(u.dim(), i));
  return b;
}

double gradient_stability_rhs(const FuncSum& u,
                              const WeightedGaussianMeasure& mu) {
  const std::vector<double> b = linear_mode_vector(u, mu);
  const double l = mu.lambda();
  double s = 0.0;
  for (int i = 0; i < u.dim(); ++i) {
    const FuncSum r = u.partial(i).scaled(l) -
                      FuncSum::constant(u.dim(), b[static_cast<size_t>(i)] / l);
    s += inner(mu, r, r);
  }
  return 0.5 * s;
}

double projection_stability_rhs(const FuncSum& u,
                                const WeightedGaussianMeasure& mu) {
  const std::vector<double> b = linear_mode_vector(u, mu);
  const std::vector<double> mean_x = mu.mean_vector();
  const double inv_l2 = 1.0 / (mu.lambda() * mu.lambda());
  FuncSum r = centered(u, mu);
  for (int i = 0; i < u.dim(); ++i) {
    const double coef = b[static_cast<size_t>(i)] * inv_l2;
    r = r - FuncSum::coordinate(u.dim(), i).scaled(coef);
    r = r + FuncSum::constant(u.dim(), coef * mean_x[static_cast<size_t>(i)]);
  }
  return 0.5 * inner(mu, r, r);
}

ClassicalChain classical_chain(const FuncSum& u,
                               const WeightedGaussianMeasure& mu) {
  if (!mu.weight().is_classical())
    throw std::domain_error("functionals: chain needs the classical measure");
  ClassicalChain c;
  c.deficit = poincare_deficit(u, mu);
  c.gradient_rhs = gradient_stability_rhs(u, mu);
  c.projection_rhs = 2.0 * projection_stability_rhs(u, mu);
  return c;
}

double joint_profile_rhs(const FuncSum& u, const WeightedGaussianMeasure& mu,
                         double second_weight) {
  require_admissible(u, mu.weight());
  if (!(second_weight >= 0.0))
    throw std::invalid_argument("functionals: profile weight must be >= 0");
  const std::vector<double> mean_x = mu.mean_vector();
  const double ubar = integrate(mu, u);
  // Recentred at the mean the coordinates decouple: c = mean of u and
  // e_i = Cov(u, x_i)/Var(x_i).
  FuncSum r2 = u - FuncSum::constant(u.dim(), ubar);
  const FuncSum r1 = r2;
  for (int i = 0; i < u.dim(); ++i) {
    FuncSum xi = FuncSum::coordinate(u.dim(), i) -
                 FuncSum::constant(u.dim(), mean_x[static_cast<size_t>(i)]);
    const double cov = inner(mu, r1, xi);
    const double var = inner(mu, xi, xi);
    r2 = r2 - xi.scaled(cov / var);
  }
  return inner(mu, r1, r1) + second_weight * inner(mu, r2, r2);
}

UncertaintyDeficits uncertainty_deficits(const FuncSum& u,
                                         const MonomialWeight& w) {
  require_admissible(u, w);
  require_decaying(u);
  UncertaintyDeficits d;
  const FuncSum u2 = u * u;
  d.q = integrate_weighted(w, u2);
  d.energy = integrate_weighted(w, gradient_norm_sq(u));
  d.moment = integrate_weighted(w, radius_sq_times(u2));
  d.delta_A =
      std::sqrt(d.energy * d.moment) - 0.5 * w.effective_dimension() * d.q;
  d.lambda_star = std::pow(d.moment / d.energy, 0.25);
  const MonomialWeight classical = MonomialWeight::classical(w.dim());
  d.q_classical = integrate_weighted(classical, u2);
  const double e0 = integrate_weighted(classical, gradient_norm_sq(u));
  const double m0 = integrate_weighted(classical, radius_sq_times(u2));
  const double n = static_cast<double>(w.dim());
  d.delta_1 = std::sqrt(e0 * m0) - 0.5 * n * d.q_classical;
  d.delta_2 = e0 * m0 - 0.25 * n * n * d.q_classical * d.q_classical;
  return d;
}

double uncertainty_identity_rhs(const FuncSum& u, const MonomialWeight& w,
                                double lambda) {
  require_admissible(u, w);
  require_decaying(u);
  if (!(lambda > 0.0))
    throw std::invalid_argument("functionals: lambda must be positive");
  const double inv_l2 = 1.0 / (lambda * lambda);
  double s = 0.0;
  for (int i = 0; i < u.dim(); ++i) {
    const FuncSum r =
        u.partial(i) + FuncSum::coordinate(u.dim(), i).scaled(inv_l2) * u;
    s += integrate_weighted(w, r * r);
  }
  return 0.5 * lambda * lambda * s;
}

double uncertainty_identity_residual(const FuncSum& u, const MonomialWeight& w,
                                     double lambda) {
  const UncertaintyDeficits d = uncertainty_deficits(u, w);
  const double l = lambda > 0.0 ? lambda : d.lambda_star;
  const double lhs = 0.5 * l * l * d.energy + 0.5 * d.moment / (l * l) -
                     0.5 * w.effective_dimension() * d.q;
  const double rhs = uncertainty_identity_rhs(u, w, l);
  const double scale =
      std::max({std::fabs(lhs), std::fabs(rhs),
                0.5 * w.effective_dimension() * d.q});
  return std::fabs(lhs - rhs) / scale;
}

double gamma2_pointwise(const FuncSum& u, const MonomialWeight& w,
                        std::span<const double> x) {
  require_admissible(u, w);
  double hess2 = 0.0;
  for (int i = 0; i < u.dim(); ++i)
    for (int j = 0; j < u.dim(); ++j) {
      const double hij = u.partial(i).partial(j).evaluate(x);
      hess2 += hij * hij;
    }
  double grad2 = 0.0, sing = 0.0;
  for (int i = 0; i < u.dim(); ++i) {
    const double di = u.partial(i).evaluate(x);
    grad2 += di * di;
    if (w.weighted(i)) sing += w.alpha(i) * di * di / (x[i] * x[i]);
  }
  return hess2 + grad2 + sing;
}

double carre_du_champ_pointwise(const FuncSum& u, std::span<const double> x) {
  double grad2 = 0.0;
  for (int i = 0; i < u.dim(); ++i) {
    const double di = u.partial(i).evaluate(x);
    grad2 += di * di;
  }
  return grad2;
}

double cd_min_margin(const FuncSum& u, const MonomialWeight& w, int samples,
                     std::uint64_t seed) {
  require_admissible(u, w);
  if (samples < 1) throw std::invalid_argument("functionals: samples >= 1");
  Rng rng(seed);
  std::vector<double> x(static_cast<size_t>(u.dim()));
  double min_rel = std::numeric_limits<double>::infinity();
  for (int s = 0; s < samples; ++s) {
    for (int i = 0; i < u.dim(); ++i) {
      double v = rng.normal();
      if (w.weighted(i)) {
        v = std::fabs(v);
        if (v < 1e-3) v = 1e-3;  // stay inside the chamber
      }
      x[static_cast<size_t>(i)] = v;
    }
    const double g2 = gamma2_pointwise(u, w, x);
    const double g1 = carre_du_champ_pointwise(u, x);
    const double scale = std::max({std::fabs(g2), std::fabs(g1), 1.0});
    min_rel = std::min(min_rel, (g2 - g1) / scale);
  }
  return min_rel;
}

double gamma2_integral(const FuncSum& u, const MonomialWeight& w, int order0) {
  require_admissible(u, w);
  const WeightedGaussianMeasure mu(w, 1.0);
  FuncSum smooth(u.dim());
  for (int i = 0; i < u.dim(); ++i) {
    const FuncSum di = u.partial(i);
    smooth = smooth + di * di;
    for (int j = 0; j < u.dim(); ++j) {
      const FuncSum hij = di.partial(j);
      smooth = smooth + hij * hij;
    }
  }
  double total = integrate(mu, smooth);
  bool any_weighted = false;
  for (int i = 0; i < u.dim(); ++i)
    if (w.weighted(i)) any_weighted = true;
  if (any_weighted) {
    std::vector<FuncSum> grads = u.gradient();
    const auto singular = [&](std::span<const double> x) {
      double s = 0.0;
      for (int i = 0; i < u.dim(); ++i) {
        if (!w.weighted(i)) continue;
        const double di = grads[static_cast<size_t>(i)].evaluate(x);
        s += w.alpha(i) * di * di / (x[i] * x[i]);
      }
      return s;
    };
    const AdaptiveResult r = adaptive_integrate_pointwise(mu, singular, order0);
    total += r.value;
  }
  return total;
}

DeficitReport deficit_report(const FuncSum& u, const MonomialWeight& w,
                             double lambda) {
  DeficitReport rep;
  rep.alpha = w.alphas();
  rep.lambda = lambda;
  const WeightedGaussianMeasure mu(w, lambda);
  rep.poincare_deficit = poincare_deficit(u, mu);
  rep.t2_rhs = gradient_stability_rhs(u, mu);
  rep.p1_rhs = projection_stability_rhs(u, mu);
  rep.classical = w.is_classical();
  if (rep.classical) {
    const ClassicalChain c = classical_chain(u, mu);
    rep.p2_deficit = c.deficit;
    rep.p2_mid = c.gradient_rhs;
    rep.p2_rhs = c.projection_rhs;
  }
  const UncertaintyDeficits d = uncertainty_deficits(u, w);
  rep.delta_A = d.delta_A;
  rep.delta_1 = d.delta_1;
  rep.delta_2 = d.delta_2;
  rep.lambda_star = d.lambda_star;
  rep.identity_residual = uncertainty_identity_residual(u, w);
  return rep;
}

nlohmann::json DeficitReport::to_json(const FuncSum& u) const {
  nlohmann::json j;
  j["alpha"] = alpha;
  j["lambda"] = lambda;
  j["poincare_deficit"] = poincare_deficit;
  j["t2_rhs"] = t2_rhs;
  j["p1_rhs"] = p1_rhs;
  if (classical) {
    j["p2_chain"] = {{"deficit", p2_deficit},
                     {"gradient_rhs", p2_mid},
                     {"projection_rhs", p2_rhs}};
  }
  j["delta_A"] = delta_A;
  j["delta_1"] = delta_1;
  j["delta_2"] = delta_2;
  j["lambda_star"] = lambda_star;
  j["identity_residual"] = identity_residual;
  j["function"] = u.to_json();
  return j;
}

}  // namespace gplab
