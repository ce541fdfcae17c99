#include "gplab/stability.hpp"

#include <cmath>
#include <functional>
#include <stdexcept>

#include <Eigen/Dense>
#include <nlohmann/json.hpp>

namespace gplab {

namespace {

void require_fit_input(const FuncSum& u, const MonomialWeight& w) {
  if (u.dim() != w.dim())
    throw std::invalid_argument("stability: dimension mismatch");
  if (!u.all_rates_positive())
    throw std::domain_error(
        "stability: profile distances need a decaying function");
}

// Gaussian profile e^{-|x|^2/(2 lambda^2)} as a FuncSum.
FuncSum profile_gaussian(int dim, double lambda) {
  return FuncSum::constant(dim, 1.0, 0.5 / (lambda * lambda));
}

ProfileFit fit_at_lambda(const FuncSum& u, const MonomialWeight& w,
                         double lambda, bool with_linear) {
  const int n = u.dim();
  const FuncSum g = profile_gaussian(n, lambda);
  std::vector<FuncSum> basis;
  basis.push_back(g);
  if (with_linear)
    for (int i = 0; i < n; ++i)
      basis.push_back(FuncSum::coordinate(n, i) * g);
  const int m = static_cast<int>(basis.size());
  Eigen::MatrixXd G(m, m);
  Eigen::VectorXd rhs(m);
  for (int i = 0; i < m; ++i) {
    for (int j = i; j < m; ++j) {
      G(i, j) = G(j, i) =
          inner_weighted(w, basis[static_cast<size_t>(i)],
                         basis[static_cast<size_t>(j)]);
    }
    rhs(i) = inner_weighted(w, u, basis[static_cast<size_t>(i)]);
  }
  Eigen::LLT<Eigen::MatrixXd> llt(G);
  if (llt.info() != Eigen::Success)
    throw std::runtime_error("stability: profile Gram not positive definite");
  const Eigen::VectorXd theta = llt.solve(rhs);
  ProfileFit fit;
  fit.lambda = lambda;
  fit.c = theta(0);
  FuncSum residual = u - basis[0].scaled(theta(0));
  if (with_linear) {
    fit.d.resize(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
      fit.d[static_cast<size_t>(i)] = theta(i + 1);
      residual = residual - basis[static_cast<size_t>(i) + 1].scaled(theta(i + 1));
    }
  }
  fit.distance_sq = std::max(0.0, inner_weighted(w, residual, residual));
  return fit;
}

// Scan 64 log-spaced lambdas around l0, then golden-section refine the
// bracket formed by the best point's neighbours, working in log lambda.
ProfileFit scan_and_refine(const std::function<ProfileFit(double)>& fit,
                           double l0, std::vector<ScanPoint>* scan) {
  constexpr int kGrid = 64;
  constexpr double kSpan = 32.0;
  const double lo = std::log(l0 / kSpan), hi = std::log(l0 * kSpan);
  std::vector<double> logl(kGrid), val(kGrid);
  int best = 0;
  for (int i = 0; i < kGrid; ++i) {
    logl[static_cast<size_t>(i)] = lo + (hi - lo) * i / (kGrid - 1);
    const ProfileFit f = fit(std::exp(logl[static_cast<size_t>(i)]));
    val[static_cast<size_t>(i)] = f.distance_sq;
    if (val[static_cast<size_t>(i)] < val[static_cast<size_t>(best)]) best = i;
    if (scan != nullptr)
      scan->push_back({std::exp(logl[static_cast<size_t>(i)]), f.distance_sq});
  }
  double a = logl[static_cast<size_t>(std::max(0, best - 1))];
  double b = logl[static_cast<size_t>(std::min(kGrid - 1, best + 1))];
  const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
  double x1 = b - gr * (b - a), x2 = a + gr * (b - a);
  double f1 = fit(std::exp(x1)).distance_sq;
  double f2 = fit(std::exp(x2)).distance_sq;
  while (b - a > 1e-10) {
    if (f1 <= f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - gr * (b - a);
      f1 = fit(std::exp(x1)).distance_sq;
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + gr * (b - a);
      f2 = fit(std::exp(x2)).distance_sq;
    }
  }
  return fit(std::exp(0.5 * (a + b)));
}

double lambda_seed(const FuncSum& u, const MonomialWeight& w) {
  const UncertaintyDeficits d = uncertainty_deficits(u, w);
  return std::sqrt(d.moment / (w.effective_dimension() * d.q));
}

}  // namespace

ProfileFit project_profile(const FuncSum& u, const MonomialWeight& w,
                           double lambda, bool with_linear) {
  require_fit_input(u, w);
  if (!(lambda > 0.0) || !std::isfinite(lambda))
    throw std::invalid_argument("stability: lambda must be positive");
  return fit_at_lambda(u, w, lambda, with_linear);
}

ProfileFit distance_to_gaussians(const FuncSum& u, const MonomialWeight& w,
                                 std::vector<ScanPoint>* scan) {
  require_fit_input(u, w);
  return scan_and_refine(
      [&](double l) { return fit_at_lambda(u, w, l, false); },
      lambda_seed(u, w), scan);
}

ProfileFit distance_to_affine_gaussians(const FuncSum& u,
                                        const MonomialWeight& w,
                                        std::vector<ScanPoint>* scan) {
  require_fit_input(u, w);
  return scan_and_refine(
      [&](double l) { return fit_at_lambda(u, w, l, true); },
      lambda_seed(u, w), scan);
}

ProfileFit project_combined(const FuncSum& u, const MonomialWeight& w,
                            double lambda) {
  require_fit_input(u, w);
  if (!w.is_classical())
    throw std::domain_error("stability: combined fit is classical only");
  const int n = u.dim();
  const FuncSum g = profile_gaussian(n, lambda);
  std::vector<FuncSum> xg;
  for (int i = 0; i < n; ++i) xg.push_back(FuncSum::coordinate(n, i) * g);
  // Unknowns (c, d): residuals u - c g and u - (c + d.x) g summed; the
  // quadratic form doubles the c block.
  Eigen::MatrixXd A(n + 1, n + 1);
  Eigen::VectorXd rhs(n + 1);
  const double g00 = inner_weighted(w, g, g);
  A(0, 0) = 2.0 * g00;
  rhs(0) = 2.0 * inner_weighted(w, u, g);
  for (int i = 0; i < n; ++i) {
    A(0, i + 1) = A(i + 1, 0) = inner_weighted(w, xg[static_cast<size_t>(i)], g);
    rhs(i + 1) = inner_weighted(w, u, xg[static_cast<size_t>(i)]);
    for (int j = i; j < n; ++j)
      A(i + 1, j + 1) = A(j + 1, i + 1) =
          inner_weighted(w, xg[static_cast<size_t>(i)], xg[static_cast<size_t>(j)]);
  }
  Eigen::LLT<Eigen::MatrixXd> llt(A);
  if (llt.info() != Eigen::Success)
    throw std::runtime_error("stability: combined Gram not positive definite");
  const Eigen::VectorXd theta = llt.solve(rhs);
  ProfileFit fit;
  fit.lambda = lambda;
  fit.c = theta(0);
  fit.d.resize(static_cast<size_t>(n));
  FuncSum r1 = u - g.scaled(theta(0));
  FuncSum r2 = r1;
  for (int i = 0; i < n; ++i) {
    fit.d[static_cast<size_t>(i)] = theta(i + 1);
    r2 = r2 - xg[static_cast<size_t>(i)].scaled(theta(i + 1));
  }
  fit.distance_sq = std::max(
      0.0, inner_weighted(w, r1, r1) + inner_weighted(w, r2, r2));
  return fit;
}

ProfileFit combined_distance(const FuncSum& u, std::vector<ScanPoint>* scan) {
  const MonomialWeight w = MonomialWeight::classical(u.dim());
  require_fit_input(u, w);
  return scan_and_refine(
      [&](double l) { return project_combined(u, w, l); },
      lambda_seed(u, w), scan);
}

StabilityReport stability_report(const FuncSum& u, const MonomialWeight& w,
                                 bool with_scan) {
  StabilityReport rep;
  rep.deficits = deficit_report(u, w);
  rep.gaussian_fit = distance_to_gaussians(
      u, w, with_scan ? &rep.gaussian_scan : nullptr);
  rep.affine_fit = distance_to_affine_gaussians(
      u, w, with_scan ? &rep.affine_scan : nullptr);
  rep.t11_margin = rep.deficits.delta_A - rep.gaussian_fit.distance_sq;
  rep.t6_margin = rep.t11_margin - 0.5 * rep.affine_fit.distance_sq;

  const MonomialWeight classical = MonomialWeight::classical(w.dim());
  if (w.is_classical()) {
    rep.classical_gaussian_fit = rep.gaussian_fit;
    rep.classical_affine_fit = rep.affine_fit;
  } else {
    rep.classical_gaussian_fit = distance_to_gaussians(u, classical, nullptr);
    rep.classical_affine_fit =
        distance_to_affine_gaussians(u, classical, nullptr);
  }
  rep.classical_combined_fit = combined_distance(u, nullptr);
  const double d1sq = rep.classical_gaussian_fit.distance_sq;
  const double d1fsq = rep.classical_affine_fit.distance_sq;
  const double d2sq = rep.classical_combined_fit.distance_sq;
  const UncertaintyDeficits ud = uncertainty_deficits(u, w);
  rep.t7_margin = ud.delta_1 - d2sq;
  rep.t7_chain_margin = ud.delta_1 - d1sq - d1fsq;
  const double n = static_cast<double>(w.dim());
  rep.delta2_margin =
      ud.delta_2 - n * ud.q_classical * d1sq - d1sq * d1sq;
  rep.delta2_literature_rhs =
      0.25 * ud.q_classical * d1sq + 0.0625 * d1sq * d1sq;
  return rep;
}

namespace {

nlohmann::json fit_json(const ProfileFit& f) {
  nlohmann::json j;
  j["c"] = f.c;
  if (!f.d.empty()) j["d"] = f.d;
  j["lambda"] = f.lambda;
  j["distance_sq"] = f.distance_sq;
  return j;
}

nlohmann::json scan_json(const std::vector<ScanPoint>& scan) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& p : scan)
    arr.push_back({{"lambda", p.lambda}, {"distance_sq", p.distance_sq}});
  return arr;
}

}  // namespace

nlohmann::json StabilityReport::to_json(const FuncSum& u) const {
  nlohmann::json j;
  j["deficits"] = deficits.to_json(u);
  j["gaussian_fit"] = fit_json(gaussian_fit);
  j["affine_fit"] = fit_json(affine_fit);
  j["t11_margin"] = t11_margin;
  j["t6_margin"] = t6_margin;
  j["classical"] = {
      {"gaussian_fit", fit_json(classical_gaussian_fit)},
      {"affine_fit", fit_json(classical_affine_fit)},
      {"combined_fit", fit_json(classical_combined_fit)},
      {"t7_margin", t7_margin},
      {"t7_chain_margin", t7_chain_margin},
      {"delta2_margin", delta2_margin},
      {"delta2_literature_rhs", delta2_literature_rhs},
  };
  if (!gaussian_scan.empty()) j["gaussian_scan"] = scan_json(gaussian_scan);
  if (!affine_scan.empty()) j["affine_scan"] = scan_json(affine_scan);
  return j;
}

}  // namespace gplab
