#include "gplab/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>

#include <Eigen/Dense>

#include "gplab/special.hpp"

namespace gplab {

SpectralBasis::SpectralBasis(MonomialWeight w) : weight_(std::move(w)) {
  tables_.resize(static_cast<size_t>(weight_.dim()));
}

// Monomial coefficients of the normalized 1-D eigenfunction of order n.
const std::vector<double>& SpectralBasis::table(int coord, int n) const {
  auto& per_coord = tables_[static_cast<size_t>(coord)];
  while (static_cast<int>(per_coord.size()) <= n) {
    const int k = static_cast<int>(per_coord.size());
    if (!weight_.weighted(coord)) {
      // He_k by recurrence He_{k+1} = x He_k - k He_{k-1}, then / sqrt(k!).
      std::vector<double> cur(static_cast<size_t>(k) + 1, 0.0);
      if (k == 0) {
        cur[0] = 1.0;
      } else if (k == 1) {
        cur[1] = 1.0;
      } else {
        const auto& h1 = per_coord[static_cast<size_t>(k - 1)];
        const auto& h2 = per_coord[static_cast<size_t>(k - 2)];
        // Stored tables are normalized; undo to raw He before recursing.
        const double n1 = std::sqrt(gamma_fn(k));      // sqrt((k-1)!)
        const double n2 = std::sqrt(gamma_fn(k - 1));  // sqrt((k-2)!)
        for (size_t p = 0; p < h1.size(); ++p) cur[p + 1] = h1[p] * n1;
        for (size_t p = 0; p < h2.size(); ++p)
          cur[p] -= (k - 1) * h2[p] * n2;
      }
      const double norm = std::sqrt(gamma_fn(k + 1));  // sqrt(k!)
      for (auto& c : cur) c /= norm;
      per_coord.push_back(std::move(cur));
    } else {
      // L_k^{(a)}(t) with t = x^2/2, a = (alpha-1)/2, via the three-term
      // recurrence in t; normalized so the weighted L2 norm is one.
      const double a = 0.5 * (weight_.alpha(coord) - 1.0);
      std::vector<std::vector<double>> lag(static_cast<size_t>(k) + 1);
      lag[0] = {1.0};
      if (k >= 1) lag[1] = {a + 1.0, -1.0};
      for (int m = 1; m < k; ++m) {
        const auto& lm = lag[static_cast<size_t>(m)];
        const auto& lm1 = lag[static_cast<size_t>(m - 1)];
        std::vector<double> next(static_cast<size_t>(m) + 2, 0.0);
        for (size_t p = 0; p < lm.size(); ++p) {
          next[p] += (2 * m + a + 1) * lm[p];
          next[p + 1] -= lm[p];
        }
        for (size_t p = 0; p < lm1.size(); ++p) next[p] -= (m + a) * lm1[p];
        for (auto& c : next) c /= (m + 1);
        lag[static_cast<size_t>(m) + 1] = std::move(next);
      }
      const auto& lt = lag[static_cast<size_t>(k)];
      // t^p -> x^{2p} / 2^p; norm^2 = Gamma(k+a+1) / (k! Gamma(a+1)).
      const double norm = std::exp(0.5 * (log_gamma_fn(k + a + 1.0) -
                                          log_gamma_fn(k + 1.0) -
                                          log_gamma_fn(a + 1.0)));
      std::vector<double> cur(2 * lt.size() - 1, 0.0);
      double pow2 = 1.0;
      for (size_t p = 0; p < lt.size(); ++p) {
        cur[2 * p] = lt[p] / (pow2 * norm);
        pow2 *= 2.0;
      }
      per_coord.push_back(std::move(cur));
    }
  }
  return per_coord[static_cast<size_t>(n)];
}

void SpectralBasis::check_index(const EigenIndex& idx) const {
  if (static_cast<int>(idx.n.size()) != weight_.dim())
    throw std::invalid_argument("spectral: index arity mismatch");
  for (int v : idx.n)
    if (v < 0) throw std::invalid_argument("spectral: negative index entry");
}

const FuncSum& SpectralBasis::basis_function(const EigenIndex& idx) const {
  check_index(idx);
  auto it = cache_.find(idx);
  if (it != cache_.end()) return it->second;

  const int dim = weight_.dim();
  PolyGauss prod(dim, 0.0);
  // Tensor product of the per-coordinate coefficient lists.
  std::vector<const std::vector<double>*> coords;
  coords.reserve(static_cast<size_t>(dim));
  for (int i = 0; i < dim; ++i)
    coords.push_back(&table(i, idx.n[static_cast<size_t>(i)]));
  Exponents e(static_cast<size_t>(dim), 0);
  std::vector<size_t> pos(static_cast<size_t>(dim), 0);
  for (;;) {
    double c = 1.0;
    bool nonzero = true;
    for (int i = 0; i < dim; ++i) {
      const double ci = (*coords[static_cast<size_t>(i)])[pos[static_cast<size_t>(i)]];
      if (ci == 0.0) {
        nonzero = false;
        break;
      }
      c *= ci;
      e[static_cast<size_t>(i)] = static_cast<int>(pos[static_cast<size_t>(i)]);
    }
    if (nonzero) prod.add_term(e, c);
    int k = dim - 1;
    while (k >= 0 &&
           ++pos[static_cast<size_t>(k)] == coords[static_cast<size_t>(k)]->size()) {
      pos[static_cast<size_t>(k)] = 0;
      --k;
    }
    if (k < 0) break;
  }
  FuncSum f(dim);
  f.add_component(prod);
  auto [ins, ok] = cache_.emplace(idx, std::move(f));
  return ins->second;
}

double SpectralBasis::eigenvalue(const EigenIndex& idx) const {
  check_index(idx);
  double ev = 0.0;
  for (int i = 0; i < weight_.dim(); ++i)
    ev += weight_.weighted(i) ? 2.0 * idx.n[static_cast<size_t>(i)]
                              : 1.0 * idx.n[static_cast<size_t>(i)];
  return ev;
}

int SpectralBasis::poly_degree(const EigenIndex& idx) const {
  check_index(idx);
  int d = 0;
  for (int i = 0; i < weight_.dim(); ++i)
    d += (weight_.weighted(i) ? 2 : 1) * idx.n[static_cast<size_t>(i)];
  return d;
}

std::vector<EigenIndex> SpectralBasis::indices_up_to_degree(
    int cutoff, bool include_zero) const {
  std::vector<EigenIndex> out;
  const int dim = weight_.dim();
  EigenIndex idx;
  idx.n.assign(static_cast<size_t>(dim), 0);
  // depth-first over per-coordinate degrees within the budget
  std::function<void(int, int)> rec = [&](int coord, int budget) {
    if (coord == dim) {
      out.push_back(idx);
      return;
    }
    const int step = weight_.weighted(coord) ? 2 : 1;
    for (int n = 0; step * n <= budget; ++n) {
      idx.n[static_cast<size_t>(coord)] = n;
      rec(coord + 1, budget - step * n);
    }
    idx.n[static_cast<size_t>(coord)] = 0;
  };
  rec(0, cutoff);
  if (!include_zero) {
    out.erase(std::remove_if(out.begin(), out.end(),
                             [&](const EigenIndex& i) {
                               return poly_degree(i) == 0;
                             }),
              out.end());
  }
  std::sort(out.begin(), out.end(), [&](const EigenIndex& a, const EigenIndex& b) {
    const double ea = eigenvalue(a), eb = eigenvalue(b);
    if (ea != eb) return ea < eb;
    return a < b;
  });
  return out;
}

double SpectralExpansion::norm_sq() const {
  double s = 0.0;
  for (const auto& [i, c] : coeffs) s += c * c;
  return s;
}

double SpectralExpansion::coefficient(const EigenIndex& idx) const {
  auto it = coeffs.find(idx);
  return it == coeffs.end() ? 0.0 : it->second;
}

namespace {

void require_polynomial(const FuncSum& u) {
  for (const auto& pg : u.components())
    if (pg.beta() != 0.0)
      throw std::domain_error(
          "spectral: expansion requires envelope-free input");
}

}  // namespace

SpectralExpansion expand(const FuncSum& u, const MonomialWeight& w,
                         double lambda) {
  require_polynomial(u);
  if (!u.neumann_admissible(w))
    throw std::domain_error("spectral: input is not Neumann admissible");
  if (!(lambda > 0.0))
    throw std::invalid_argument("spectral: lambda must be positive");
  // u against phi(./lambda) under mu_{A,lambda} equals u(lambda .) against
  // phi under mu_{A,1}; the substitution stays in the polynomial family.
  const FuncSum v = u.scaled_argument(lambda);
  const SpectralBasis basis(w);
  const WeightedGaussianMeasure mu1(w, 1.0);
  const int dim = w.dim();
  std::vector<int> maxn(static_cast<size_t>(dim), 0);
  for (int i = 0; i < dim; ++i) {
    const int d = v.max_degree(i);
    maxn[static_cast<size_t>(i)] = w.weighted(i) ? d / 2 : d;
  }
  SpectralExpansion e{w, lambda, {}};
  EigenIndex idx;
  idx.n.assign(static_cast<size_t>(dim), 0);
  for (;;) {
    const double c = inner(mu1, v, basis.basis_function(idx));
    if (c != 0.0) e.coeffs[idx] = c;
    int k = dim - 1;
    while (k >= 0 && ++idx.n[static_cast<size_t>(k)] > maxn[static_cast<size_t>(k)]) {
      idx.n[static_cast<size_t>(k)] = 0;
      --k;
    }
    if (k < 0) break;
  }
  return e;
}

TruncatedExpansion expand_truncated(const FuncSum& u, const MonomialWeight& w,
                                    double lambda, int max_poly_degree) {
  SpectralExpansion full = expand(u, w, lambda);
  const SpectralBasis basis(w);
  TruncatedExpansion out{SpectralExpansion{w, lambda, {}}, 0.0};
  double dropped = 0.0;
  for (const auto& [idx, c] : full.coeffs) {
    if (basis.poly_degree(idx) <= max_poly_degree)
      out.expansion.coeffs[idx] = c;
    else
      dropped += c * c;
  }
  out.dropped_mass = std::max(0.0, dropped);
  return out;
}

FuncSum reconstruct(const SpectralExpansion& e) {
  const SpectralBasis basis(e.weight);
  FuncSum u(e.weight.dim());
  for (const auto& [idx, c] : e.coeffs)
    u = u + basis.basis_function(idx).scaled(c);
  if (e.lambda != 1.0) u = u.scaled_argument(1.0 / e.lambda);
  return u;
}

FuncSum apply_generator(const FuncSum& u, const MonomialWeight& w,
                        double lambda) {
  if (u.dim() != w.dim())
    throw std::invalid_argument("spectral: dimension mismatch");
  if (!u.neumann_admissible(w))
    throw std::domain_error("spectral: generator needs admissible input");
  const double inv_l2 = 1.0 / (lambda * lambda);
  FuncSum out(u.dim());
  for (int i = 0; i < u.dim(); ++i) {
    const FuncSum di = u.partial(i);
    out = out + di.partial(i);
    out = out - FuncSum::coordinate(u.dim(), i).scaled(inv_l2) * di;
    if (w.weighted(i))
      out = out + di.divided_by_coordinate(i).scaled(w.alpha(i));
  }
  return out;
}

SpectralExpansion poisson_solve(const SpectralExpansion& rhs) {
  const SpectralBasis basis(rhs.weight);
  const double norm = std::sqrt(rhs.norm_sq());
  SpectralExpansion w{rhs.weight, rhs.lambda, {}};
  for (const auto& [idx, c] : rhs.coeffs) {
    const double ev = basis.eigenvalue(idx);
    if (ev == 0.0) {
      if (std::fabs(c) > 1e-12 * std::max(1.0, norm))
        throw std::domain_error("spectral: poisson rhs must have zero mean");
      continue;
    }
    w.coeffs[idx] = c / (ev / (rhs.lambda * rhs.lambda));
  }
  return w;
}

double rayleigh_gap(const MonomialWeight& w, int cutoff) {
  const SpectralBasis basis(w);
  const auto idxs = basis.indices_up_to_degree(cutoff, /*include_zero=*/false);
  if (idxs.empty())
    throw std::invalid_argument("spectral: cutoff excludes every mode");
  const int m = static_cast<int>(idxs.size());
  const WeightedGaussianMeasure mu(w, 1.0);
  Eigen::MatrixXd K(m, m), M(m, m);
  std::vector<std::vector<FuncSum>> grads;
  grads.reserve(static_cast<size_t>(m));
  std::vector<const FuncSum*> funcs;
  funcs.reserve(static_cast<size_t>(m));
  for (const auto& idx : idxs) {
    const FuncSum& phi = basis.basis_function(idx);
    funcs.push_back(&phi);
    grads.push_back(phi.gradient());
  }
  for (int i = 0; i < m; ++i) {
    for (int j = i; j < m; ++j) {
      double k = 0.0;
      for (int d = 0; d < w.dim(); ++d)
        k += inner(mu, grads[static_cast<size_t>(i)][static_cast<size_t>(d)],
                   grads[static_cast<size_t>(j)][static_cast<size_t>(d)]);
      K(i, j) = K(j, i) = k;
      const double g = inner(mu, *funcs[static_cast<size_t>(i)],
                             *funcs[static_cast<size_t>(j)]);
      M(i, j) = M(j, i) = g;
    }
  }
  Eigen::LLT<Eigen::MatrixXd> llt(M);
  if (llt.info() != Eigen::Success)
    throw std::runtime_error("spectral: Gram matrix not positive definite");
  const Eigen::MatrixXd L = llt.matrixL();
  const Eigen::MatrixXd Kt =
      L.triangularView<Eigen::Lower>().solve(K).transpose();
  const Eigen::MatrixXd Kred =
      L.triangularView<Eigen::Lower>().solve(Kt);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(
      0.5 * (Kred + Kred.transpose()));
  if (es.info() != Eigen::Success)
    throw std::runtime_error("spectral: eigensolve failed");
  return es.eigenvalues().minCoeff();
}

double spectral_gap_enumerated(const MonomialWeight& w, int cutoff) {
  const SpectralBasis basis(w);
  const auto idxs = basis.indices_up_to_degree(cutoff, /*include_zero=*/false);
  if (idxs.empty())
    throw std::invalid_argument("spectral: cutoff excludes every mode");
  double gap = basis.eigenvalue(idxs.front());
  for (const auto& idx : idxs) gap = std::min(gap, basis.eigenvalue(idx));
  return gap;
}

}  // namespace gplab
