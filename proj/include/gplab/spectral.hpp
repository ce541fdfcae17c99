#pragma once

#include <map>
#include <vector>

#include "gplab/funcsum.hpp"
#include "gplab/moments.hpp"
#include "gplab/weight.hpp"

namespace gplab {

// Multi-index labelling one product eigenfunction.
struct EigenIndex {
  std::vector<int> n;
  bool operator<(const EigenIndex& o) const { return n < o.n; }
  bool operator==(const EigenIndex& o) const { return n == o.n; }
};

// Orthonormal eigenbasis of the weighted Ornstein-Uhlenbeck generator
//   L = Laplacian - x . grad + sum_i (alpha_i / x_i) d_i
// under the lambda = 1 measure.  Unweighted coordinates carry normalized
// probabilists' Hermite polynomials (eigenvalue n_i); weighted ones carry
// L_n^{(a_i)}(x_i^2/2) with a_i = (alpha_i - 1)/2 (eigenvalue 2 n_i).
class SpectralBasis {
 public:
  explicit SpectralBasis(MonomialWeight w);

  const MonomialWeight& weight() const { return weight_; }

  // Normalized product eigenfunction as an envelope-free FuncSum.
  const FuncSum& basis_function(const EigenIndex& idx) const;

  // -L phi = eigenvalue(idx) phi; sum over coordinates of n_i or 2 n_i.
  double eigenvalue(const EigenIndex& idx) const;

  // Polynomial degree of the product eigenfunction.
  int poly_degree(const EigenIndex& idx) const;

  // All indices with poly_degree <= cutoff, ascending (eigenvalue, index).
  std::vector<EigenIndex> indices_up_to_degree(int cutoff,
                                               bool include_zero) const;

 private:
  const std::vector<double>& table(int coord, int n) const;
  void check_index(const EigenIndex& idx) const;

  MonomialWeight weight_;
  // per coordinate: list over n of monomial coefficients (power -> coef)
  mutable std::vector<std::vector<std::vector<double>>> tables_;
  mutable std::map<EigenIndex, FuncSum> cache_;
};

// Coefficients of u against the basis scaled to the lambda-measure: entry
// idx holds <u, phi_idx(./lambda)> in L^2(mu_{A,lambda}).
struct SpectralExpansion {
  MonomialWeight weight;
  double lambda = 1.0;
  std::map<EigenIndex, double> coeffs;

  double norm_sq() const;  // sum of squared coefficients
  double coefficient(const EigenIndex& idx) const;
};

// Exact finite expansion of an envelope-free admissible function; throws if
// some component has a Gaussian envelope or is inadmissible.
SpectralExpansion expand(const FuncSum& u, const MonomialWeight& w,
                         double lambda = 1.0);

struct TruncatedExpansion {
  SpectralExpansion expansion;
  double dropped_mass = 0.0;  // ||u||^2 - sum of kept squares, clamped at 0
};

TruncatedExpansion expand_truncated(const FuncSum& u, const MonomialWeight& w,
                                    double lambda, int max_poly_degree);

FuncSum reconstruct(const SpectralExpansion& e);

// L_{A,lambda} u = Laplacian u - x . grad u / lambda^2 + singular term.
// Exact within the closed family; throws if u is not Neumann admissible.
FuncSum apply_generator(const FuncSum& u, const MonomialWeight& w,
                        double lambda = 1.0);

// Solves L_{A,lambda} w = -rhs for zero-mean rhs by eigenvalue division.
SpectralExpansion poisson_solve(const SpectralExpansion& rhs);

// Smallest nonzero Rayleigh quotient int |grad u|^2 dmu / Var(u) over the
// span of eigenfunctions of polynomial degree <= cutoff, via exact stiffness
// and Gram matrices.
double rayleigh_gap(const MonomialWeight& w, int cutoff);

// Oracle for the same quantity: direct minimum of eigenvalue(idx) over
// nonzero indices within the cutoff.
double spectral_gap_enumerated(const MonomialWeight& w, int cutoff);

}  // namespace gplab
