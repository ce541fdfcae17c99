#include "gplab/quadrature.hpp"

#include <cmath>
#include <cstdlib>
#include <sstream>
#include <stdexcept>

#include <Eigen/Dense>

#include "gplab/kernels.hpp"
#include "gplab/special.hpp"

namespace gplab {

namespace {

// Golub-Welsch: nodes are the eigenvalues of the Jacobi matrix, weights the
// squared first eigenvector components times the total mass.
void golub_welsch(const Eigen::VectorXd& diag, const Eigen::VectorXd& offdiag,
                  double mass, std::vector<double>& nodes,
                  std::vector<double>& weights) {
  const int n = static_cast<int>(diag.size());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
  es.computeFromTridiagonal(diag, offdiag,
                            Eigen::ComputeEigenvectors);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("quadrature: tridiagonal eigensolve failed");
  nodes.resize(n);
  weights.resize(n);
  for (int j = 0; j < n; ++j) {
    nodes[j] = es.eigenvalues()(j);
    const double v0 = es.eigenvectors()(0, j);
    weights[j] = mass * v0 * v0;
  }
}

// The eigensolver delivers first eigenvector components with absolute
// accuracy only, so the smallest weights can be off by 1e-10 relative.
// Polish each node with Newton on the orthonormal recurrence and take the
// weight from the Christoffel sum; both are then good to a few ulp.
void polish_rule(const Eigen::VectorXd& diag, const Eigen::VectorXd& off,
                 double mass, std::vector<double>& nodes,
                 std::vector<double>& weights) {
  const int n = static_cast<int>(diag.size());
  // Returns the degree-n value and derivative (the last level may stay
  // unnormalized, Newton's ratio cancels the scale) plus sum_{k<n} p_k(x)^2
  // for the orthonormal family of the unit-mass measure.
  const auto sweep = [&](double x, double& pn_out, double& dn_out) {
    double pm = 0.0, dm = 0.0;
    double pk = 1.0, dk = 0.0;
    double chris = 1.0;
    for (int k = 0; k < n; ++k) {
      double pn = (x - diag(k)) * pk - (k ? off(k - 1) * pm : 0.0);
      double dn = pk + (x - diag(k)) * dk - (k ? off(k - 1) * dm : 0.0);
      if (k < n - 1) {
        pn /= off(k);
        dn /= off(k);
        chris += pn * pn;
      }
      pm = pk;
      dm = dk;
      pk = pn;
      dk = dn;
    }
    pn_out = pk;
    dn_out = dk;
    return chris;
  };
  for (int j = 0; j < n; ++j) {
    double x = nodes[j];
    double p = 0.0, d = 0.0;
    for (int it = 0; it < 3; ++it) {
      sweep(x, p, d);
      if (d == 0.0) break;
      x -= p / d;
    }
    const double chris = sweep(x, p, d);
    nodes[j] = x;
    weights[j] = mass / chris;
  }
}

}  // namespace

QuadratureRule1D build_rule(QuadratureRule1D::Kind kind, double alpha, int n) {
  if (n < 1) throw std::invalid_argument("quadrature: order must be >= 1");
  QuadratureRule1D rule;
  rule.kind = kind;
  rule.alpha = alpha;
  rule.order = n;
  if (kind == QuadratureRule1D::Kind::full_line) {
    if (alpha != 0.0)
      throw std::invalid_argument("quadrature: full line requires alpha == 0");
    Eigen::VectorXd diag = Eigen::VectorXd::Zero(n);
    Eigen::VectorXd off(n > 1 ? n - 1 : 0);
    for (int k = 1; k < n; ++k) off(k - 1) = std::sqrt(static_cast<double>(k));
    const double mass = std::sqrt(8.0 * std::atan(1.0));  // sqrt(2 pi)
    golub_welsch(diag, off, mass, rule.nodes, rule.weights);
    polish_rule(diag, off, mass, rule.nodes, rule.weights);
  } else {
    if (!(alpha >= 0.0))
      throw std::invalid_argument("quadrature: alpha must be >= 0");
    // Generalized Laguerre with a = (alpha-1)/2 in t = x^2/2.
    const double a = 0.5 * (alpha - 1.0);
    Eigen::VectorXd diag(n), off(n > 1 ? n - 1 : 0);
    for (int k = 0; k < n; ++k) diag(k) = 2.0 * k + a + 1.0;
    for (int k = 1; k < n; ++k) off(k - 1) = std::sqrt(k * (k + a));
    golub_welsch(diag, off, gamma_fn(a + 1.0), rule.nodes, rule.weights);
    polish_rule(diag, off, gamma_fn(a + 1.0), rule.nodes, rule.weights);
    const double scale = std::pow(2.0, a);
    for (int j = 0; j < n; ++j) {
      rule.nodes[j] = std::sqrt(2.0 * rule.nodes[j]);
      rule.weights[j] *= scale;
    }
  }
  return rule;
}

TensorRule::TensorRule(const MonomialWeight& w, double rate, int order)
    : weight_(w), rate_(rate), order_(order) {
  if (!(rate > 0.0) || !std::isfinite(rate))
    throw std::invalid_argument("quadrature: rate must be positive");
  // x^alpha e^{-rate x^2} = (sigma y)^alpha e^{-y^2/2} under x = sigma y,
  // sigma = 1/sqrt(2 rate); nodes scale by sigma, weights by sigma^{1+alpha}.
  const double sigma = 1.0 / std::sqrt(2.0 * rate);
  rules_.reserve(w.dim());
  for (int i = 0; i < w.dim(); ++i) {
    QuadratureRule1D r =
        w.weighted(i)
            ? build_rule(QuadratureRule1D::Kind::half_line, w.alpha(i), order)
            : build_rule(QuadratureRule1D::Kind::full_line, 0.0, order);
    const double wscale = std::pow(sigma, 1.0 + w.alpha(i));
    for (auto& x : r.nodes) x *= sigma;
    for (auto& wt : r.weights) wt *= wscale;
    rules_.push_back(std::move(r));
  }
}

TensorRule TensorRule::for_measure(const WeightedGaussianMeasure& mu,
                                   int order) {
  return TensorRule(mu.weight(), 0.5 / (mu.lambda() * mu.lambda()), order);
}

double TensorRule::total_weight() const {
  double t = 1.0;
  for (const auto& r : rules_)
    t *= kernels::sum(r.weights.data(), r.weights.size());
  return t;
}

double TensorRule::integrate_pointwise(
    const std::function<double(std::span<const double>)>& g) const {
  const int n = weight_.dim();
  std::vector<int> idx(static_cast<size_t>(n), 0);
  std::vector<double> x(static_cast<size_t>(n));
  double total = 0.0;
  for (;;) {
    double wt = 1.0;
    for (int i = 0; i < n; ++i) {
      x[i] = rules_[i].nodes[idx[i]];
      wt *= rules_[i].weights[idx[i]];
    }
    const double v = g(x);
    if (!std::isfinite(v)) {
      std::ostringstream os;
      os << "quadrature: non-finite integrand at node (";
      for (int i = 0; i < n; ++i) os << (i ? "," : "") << x[i];
      os << ")";
      throw std::runtime_error(os.str());
    }
    total += wt * v;
    int c = n - 1;
    while (c >= 0 && ++idx[c] == static_cast<int>(rules_[c].nodes.size())) {
      idx[c] = 0;
      --c;
    }
    if (c < 0) break;
  }
  return total;
}

double TensorRule::integrate(const FuncSum& f) const {
  const int n = weight_.dim();
  if (f.dim() != n)
    throw std::invalid_argument("quadrature: dimension mismatch");
  if (f.is_zero()) return 0.0;
  if (f.min_envelope_rate() < rate_ - 1e-15)
    throw std::domain_error(
        "quadrature: component envelope slower than the rule's Gaussian");

  const int inner = n - 1;
  const auto& rin = rules_[inner];
  const size_t nin = rin.nodes.size();

  struct Comp {
    const PolyGauss* pg;
    double shifted_beta;          // own rate minus the rule's
    std::vector<double> env_row;  // exp(-shifted_beta * t^2) at inner nodes
    int inner_deg;
  };
  std::vector<Comp> comps;
  comps.reserve(f.components().size());
  for (const auto& pg : f.components()) {
    Comp c;
    c.pg = &pg;
    c.shifted_beta = std::max(0.0, pg.beta() - rate_);
    c.env_row.resize(nin);
    for (size_t j = 0; j < nin; ++j)
      c.env_row[j] =
          std::exp(-c.shifted_beta * rin.nodes[j] * rin.nodes[j]);
    c.inner_deg = pg.max_degree(inner);
    comps.push_back(std::move(c));
  }

  std::vector<int> idx(static_cast<size_t>(std::max(inner, 1)), 0);
  std::vector<double> xout(static_cast<size_t>(std::max(inner, 1)), 0.0);
  std::vector<double> row(nin), coeffs;
  double total = 0.0;
  for (;;) {
    double wout = 1.0;
    double r2out = 0.0;
    for (int i = 0; i < inner; ++i) {
      xout[i] = rules_[i].nodes[idx[i]];
      wout *= rules_[i].weights[idx[i]];
      r2out += xout[i] * xout[i];
    }
    std::fill(row.begin(), row.end(), 0.0);
    for (const auto& c : comps) {
      const double env_out = std::exp(-c.shifted_beta * r2out);
      coeffs.assign(static_cast<size_t>(c.inner_deg) + 1, 0.0);
      for (const auto& [e, coef] : c.pg->terms()) {
        double m = coef;
        for (int i = 0; i < inner; ++i) {
          for (int k = 0; k < e[i]; ++k) m *= xout[i];
        }
        coeffs[e[inner]] += m;
      }
      for (auto& cc : coeffs) cc *= env_out;
      kernels::poly_eval_mul_add(coeffs.data(), c.inner_deg, rin.nodes.data(),
                                 c.env_row.data(), row.data(), nin);
    }
    total += wout * kernels::dot(row.data(), rin.weights.data(), nin);

    if (inner == 0) break;
    int c = inner - 1;
    while (c >= 0 && ++idx[c] == static_cast<int>(rules_[c].nodes.size())) {
      idx[c] = 0;
      --c;
    }
    if (c < 0) break;
  }
  return total;
}

namespace {

// One rule per component, built at the component's full Gaussian rate.  The
// residual integrand at the nodes is then a bare polynomial, which the rule
// integrates exactly; folding a leftover envelope into the node values instead
// would cap the accuracy well short of the dual-path budget at fast rates.
double integrate_per_component(const MonomialWeight& w, const FuncSum& f,
                               double base_rate, int order) {
  double acc = 0.0;
  for (const auto& pg : f.components()) {
    const double rate = pg.beta() + base_rate;
    PolyGauss shifted(f.dim(), rate);
    for (const auto& [exp, coef] : pg.terms()) shifted.add_term(exp, coef);
    FuncSum one(f.dim());
    one.add_component(shifted);
    acc += TensorRule(w, rate, order).integrate(one);
  }
  return acc;
}

}  // namespace

double quad_integrate(const WeightedGaussianMeasure& mu, const FuncSum& f,
                      int order) {
  const double base = 0.5 / (mu.lambda() * mu.lambda());
  const double raw = integrate_per_component(mu.weight(), f, base, order);
  return raw / TensorRule(mu.weight(), base, order).total_weight();
}

double quad_integrate_weighted(const MonomialWeight& w, const FuncSum& f,
                               int order) {
  if (!f.all_rates_positive())
    throw std::domain_error(
        "quadrature: weighted-mode integrand must decay (rate > 0)");
  return integrate_per_component(w, f, 0.0, order);
}

AdaptiveResult adaptive_integrate_pointwise(
    const WeightedGaussianMeasure& mu,
    const std::function<double(std::span<const double>)>& g, int order0) {
  constexpr int kCap = 160;
  constexpr double kRelTol = 1e-10;
  AdaptiveResult res;
  double prev = 0.0;
  bool have_prev = false;
  for (int order = order0; order <= kCap; order *= 2) {
    const TensorRule rule = TensorRule::for_measure(mu, order);
    const double v = rule.integrate_pointwise(g) / rule.total_weight();
    res.value = v;
    res.final_order = order;
    if (have_prev &&
        std::fabs(v - prev) <= kRelTol * std::max({std::fabs(v),
                                                   std::fabs(prev), 1.0})) {
      res.converged = true;
      return res;
    }
    prev = v;
    have_prev = true;
  }
  return res;
}

int default_quad_order() {
  const char* env = std::getenv("GPLAB_QUAD_ORDER");
  if (env != nullptr) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v >= 1 && v <= 4096)
      return static_cast<int>(v);
  }
  return 40;
}

}  // namespace gplab
