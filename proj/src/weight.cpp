#include "gplab/weight.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "gplab/moments.hpp"

namespace gplab {

MonomialWeight::MonomialWeight(std::vector<double> alpha)
    : alpha_(std::move(alpha)) {
  if (alpha_.empty())
    throw std::invalid_argument("weight: need at least one coordinate");
  for (double a : alpha_)
    if (!(a >= 0.0) || !std::isfinite(a))
      throw std::invalid_argument("weight: exponents must be finite and >= 0");
}

MonomialWeight MonomialWeight::classical(int dim) {
  return MonomialWeight(std::vector<double>(static_cast<size_t>(dim), 0.0));
}

bool MonomialWeight::is_classical() const {
  for (double a : alpha_)
    if (a > 0.0) return false;
  return true;
}

bool MonomialWeight::is_full() const {
  for (double a : alpha_)
    if (a == 0.0) return false;
  return true;
}

double MonomialWeight::effective_dimension() const {
  double d = static_cast<double>(dim());
  for (double a : alpha_) d += a;
  return d;
}

std::string MonomialWeight::describe() const {
  std::ostringstream os;
  os << "alpha=(";
  for (int i = 0; i < dim(); ++i) os << (i ? "," : "") << alpha_[i];
  os << ")";
  return os.str();
}

WeightedGaussianMeasure::WeightedGaussianMeasure(MonomialWeight weight,
                                                 double lambda)
    : weight_(std::move(weight)), lambda_(lambda) {
  if (!(lambda > 0.0) || !std::isfinite(lambda))
    throw std::invalid_argument("measure: lambda must be positive");
}

double WeightedGaussianMeasure::normalization() const {
  const double s = 1.0 / (lambda_ * lambda_);
  double z = 1.0;
  for (int i = 0; i < dim(); ++i)
    z *= monomial_moment(0, weight_.alpha(i), s, weight_.weighted(i));
  return z;
}

std::vector<double> WeightedGaussianMeasure::mean_vector() const {
  const double s = 1.0 / (lambda_ * lambda_);
  std::vector<double> m(static_cast<size_t>(dim()), 0.0);
  for (int i = 0; i < dim(); ++i) {
    if (!weight_.weighted(i)) continue;  // symmetric coordinate
    m[i] = monomial_moment(1, weight_.alpha(i), s, true) /
           monomial_moment(0, weight_.alpha(i), s, true);
  }
  return m;
}

}  // namespace gplab
