#pragma once

#include <string>
#include <vector>

namespace gplab {

// Monomial weight x^A = prod_i x_i^{alpha_i} with alpha_i >= 0.  Coordinates
// with alpha_i > 0 are restricted to the half line x_i > 0; the others range
// over all of R.  The weight is "full" if every coordinate is weighted and
// "classical" if none is.
class MonomialWeight {
 public:
  explicit MonomialWeight(std::vector<double> alpha);
  static MonomialWeight classical(int dim);

  int dim() const { return static_cast<int>(alpha_.size()); }
  double alpha(int i) const { return alpha_[i]; }
  const std::vector<double>& alphas() const { return alpha_; }
  bool weighted(int i) const { return alpha_[i] > 0.0; }

  bool is_classical() const;
  bool is_full() const;
  bool is_partial() const { return !is_classical() && !is_full(); }

  // D = N + sum_i alpha_i, the homogeneity order of x^A dx.
  double effective_dimension() const;

  std::string describe() const;

  bool operator==(const MonomialWeight& o) const { return alpha_ == o.alpha_; }

 private:
  std::vector<double> alpha_;
};

// Gaussian measure with monomial weight: density proportional to
// x^A exp(-|x|^2 / (2 lambda^2)) on the chamber, normalized to mass one.
class WeightedGaussianMeasure {
 public:
  explicit WeightedGaussianMeasure(MonomialWeight weight, double lambda = 1.0);

  const MonomialWeight& weight() const { return weight_; }
  double lambda() const { return lambda_; }
  int dim() const { return weight_.dim(); }

  // Total mass of x^A exp(-|x|^2/(2 lambda^2)) dx over the chamber.
  double normalization() const;
  std::vector<double> mean_vector() const;

 private:
  MonomialWeight weight_;
  double lambda_;
};

}  // namespace gplab
