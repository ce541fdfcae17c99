#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "gplab/weight.hpp"

namespace gplab {

// Exponent multi-index, one entry per coordinate.
using Exponents = std::vector<int>;

// p(x) * exp(-beta |x|^2) with p a sparse multivariate polynomial and
// beta >= 0.  Terms are kept in a canonical ordered map; zero coefficients
// are dropped as they appear.
class PolyGauss {
 public:
  PolyGauss(int dim, double beta);

  int dim() const { return dim_; }
  double beta() const { return beta_; }
  const std::map<Exponents, double>& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }

  void add_term(const Exponents& exp, double coef);
  double coefficient(const Exponents& exp) const;

  int total_degree() const;
  int max_degree(int coord) const;
  double evaluate(std::span<const double> x) const;

 private:
  int dim_;
  double beta_;
  std::map<Exponents, double> terms_;
};

// Finite sum of PolyGauss components with pairwise distinct envelope rates.
// This family is closed under sums, products, partial derivatives and the
// argument scalings used throughout, so everything downstream can integrate
// it exactly.
class FuncSum {
 public:
  explicit FuncSum(int dim);

  static FuncSum zero(int dim) { return FuncSum(dim); }
  static FuncSum constant(int dim, double value, double beta = 0.0);
  static FuncSum monomial(int dim, const Exponents& exp, double coef,
                          double beta = 0.0);
  static FuncSum coordinate(int dim, int i);

  int dim() const { return dim_; }
  const std::vector<PolyGauss>& components() const { return components_; }
  bool is_zero() const { return components_.empty(); }

  void add_component(const PolyGauss& pg);

  FuncSum operator+(const FuncSum& o) const;
  FuncSum operator-(const FuncSum& o) const;
  FuncSum operator*(const FuncSum& o) const;
  FuncSum scaled(double factor) const;
  FuncSum operator-() const { return scaled(-1.0); }

  FuncSum partial(int coord) const;
  std::vector<FuncSum> gradient() const;
  std::vector<std::vector<FuncSum>> hessian() const;

  // Exact division by x_coord; throws if some monomial lacks that factor.
  FuncSum divided_by_coordinate(int coord) const;

  // f(s x); polynomial exponents scale coefficients by s^|e|, envelopes by
  // s^2.
  FuncSum scaled_argument(double s) const;

  // Shift every envelope rate by delta (resulting rates must stay >= 0).
  FuncSum shifted_envelope(double delta) const;

  double evaluate(std::span<const double> x) const;

  int total_degree() const;
  int max_degree(int coord) const;
  double min_envelope_rate() const;  // smallest beta; 0 for the zero function
  bool all_rates_positive() const;

  // Neumann admissibility for the weighted generator: the polynomial part of
  // every component must have even exponents in each weighted coordinate.
  bool neumann_admissible(const MonomialWeight& w) const;

  bool operator==(const FuncSum& o) const;

  nlohmann::json to_json() const;
  static FuncSum from_json(const nlohmann::json& j);

 private:
  int dim_;
  std::vector<PolyGauss> components_;  // sorted by beta, distinct, non-empty
};

// max |coefficient difference| <= tol * max(1, largest |coefficient|), with
// envelope rates paired when they agree to the same relative tolerance;
// unpaired components must be negligible at that scale.
bool approx_equal(const FuncSum& a, const FuncSum& b, double tol);

FuncSum operator*(double s, const FuncSum& f);

// sum_i (d_i f)^2, the carre du champ of f.
FuncSum gradient_norm_sq(const FuncSum& f);

// |x|^2 f.
FuncSum radius_sq_times(const FuncSum& f);

}  // namespace gplab
