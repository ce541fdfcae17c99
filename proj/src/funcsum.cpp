#include "gplab/funcsum.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace gplab {

namespace {

void check_dim(int a, int b) {
  if (a != b) throw std::invalid_argument("funcsum: dimension mismatch");
}

double pow_int(double x, int k) {
  double r = 1.0;
  for (int i = 0; i < k; ++i) r *= x;
  return r;
}

}  // namespace

PolyGauss::PolyGauss(int dim, double beta) : dim_(dim), beta_(beta) {
  if (dim < 1) throw std::invalid_argument("polygauss: dim must be >= 1");
  if (!(beta >= 0.0) || !std::isfinite(beta))
    throw std::invalid_argument("polygauss: envelope rate must be >= 0");
}

void PolyGauss::add_term(const Exponents& exp, double coef) {
  if (static_cast<int>(exp.size()) != dim_)
    throw std::invalid_argument("polygauss: exponent arity mismatch");
  for (int e : exp)
    if (e < 0) throw std::invalid_argument("polygauss: negative exponent");
  if (coef == 0.0) return;
  auto it = terms_.find(exp);
  if (it == terms_.end()) {
    terms_.emplace(exp, coef);
  } else {
    it->second += coef;
    if (it->second == 0.0) terms_.erase(it);
  }
}

double PolyGauss::coefficient(const Exponents& exp) const {
  auto it = terms_.find(exp);
  return it == terms_.end() ? 0.0 : it->second;
}

int PolyGauss::total_degree() const {
  int deg = 0;
  for (const auto& [e, c] : terms_) {
    int d = 0;
    for (int k : e) d += k;
    deg = std::max(deg, d);
  }
  return deg;
}

int PolyGauss::max_degree(int coord) const {
  int deg = 0;
  for (const auto& [e, c] : terms_) deg = std::max(deg, e[coord]);
  return deg;
}

double PolyGauss::evaluate(std::span<const double> x) const {
  double poly = 0.0;
  for (const auto& [e, c] : terms_) {
    double m = c;
    for (int i = 0; i < dim_; ++i) m *= pow_int(x[i], e[i]);
    poly += m;
  }
  if (beta_ == 0.0) return poly;
  double r2 = 0.0;
  for (int i = 0; i < dim_; ++i) r2 += x[i] * x[i];
  return poly * std::exp(-beta_ * r2);
}

FuncSum::FuncSum(int dim) : dim_(dim) {
  if (dim < 1) throw std::invalid_argument("funcsum: dim must be >= 1");
}

FuncSum FuncSum::constant(int dim, double value, double beta) {
  FuncSum f(dim);
  PolyGauss pg(dim, beta);
  pg.add_term(Exponents(dim, 0), value);
  f.add_component(pg);
  return f;
}

FuncSum FuncSum::monomial(int dim, const Exponents& exp, double coef,
                          double beta) {
  FuncSum f(dim);
  PolyGauss pg(dim, beta);
  pg.add_term(exp, coef);
  f.add_component(pg);
  return f;
}

FuncSum FuncSum::coordinate(int dim, int i) {
  Exponents e(dim, 0);
  e[i] = 1;
  return monomial(dim, e, 1.0);
}

void FuncSum::add_component(const PolyGauss& pg) {
  check_dim(dim_, pg.dim());
  if (pg.empty()) return;
  auto it = std::lower_bound(
      components_.begin(), components_.end(), pg.beta(),
      [](const PolyGauss& c, double b) { return c.beta() < b; });
  if (it != components_.end() && it->beta() == pg.beta()) {
    for (const auto& [e, c] : pg.terms()) it->add_term(e, c);
    if (it->empty()) components_.erase(it);
  } else {
    components_.insert(it, pg);
  }
}

FuncSum FuncSum::operator+(const FuncSum& o) const {
  check_dim(dim_, o.dim_);
  FuncSum r = *this;
  for (const auto& pg : o.components_) r.add_component(pg);
  return r;
}

FuncSum FuncSum::operator-(const FuncSum& o) const {
  return *this + o.scaled(-1.0);
}

FuncSum FuncSum::operator*(const FuncSum& o) const {
  check_dim(dim_, o.dim_);
  FuncSum r(dim_);
  for (const auto& a : components_) {
    for (const auto& b : o.components_) {
      PolyGauss prod(dim_, a.beta() + b.beta());
      for (const auto& [ea, ca] : a.terms()) {
        for (const auto& [eb, cb] : b.terms()) {
          Exponents e(dim_);
          for (int i = 0; i < dim_; ++i) e[i] = ea[i] + eb[i];
          prod.add_term(e, ca * cb);
        }
      }
      r.add_component(prod);
    }
  }
  return r;
}

FuncSum FuncSum::scaled(double factor) const {
  FuncSum r(dim_);
  if (factor == 0.0) return r;
  for (const auto& pg : components_) {
    PolyGauss s(dim_, pg.beta());
    for (const auto& [e, c] : pg.terms()) s.add_term(e, c * factor);
    r.add_component(s);
  }
  return r;
}

FuncSum FuncSum::partial(int coord) const {
  // d_i [p e^{-b|x|^2}] = (d_i p - 2 b x_i p) e^{-b|x|^2}
  FuncSum r(dim_);
  for (const auto& pg : components_) {
    PolyGauss d(dim_, pg.beta());
    for (const auto& [e, c] : pg.terms()) {
      if (e[coord] > 0) {
        Exponents de = e;
        de[coord] -= 1;
        d.add_term(de, c * e[coord]);
      }
      if (pg.beta() != 0.0) {
        Exponents xe = e;
        xe[coord] += 1;
        d.add_term(xe, -2.0 * pg.beta() * c);
      }
    }
    r.add_component(d);
  }
  return r;
}

std::vector<FuncSum> FuncSum::gradient() const {
  std::vector<FuncSum> g;
  g.reserve(dim_);
  for (int i = 0; i < dim_; ++i) g.push_back(partial(i));
  return g;
}

std::vector<std::vector<FuncSum>> FuncSum::hessian() const {
  std::vector<std::vector<FuncSum>> h(dim_);
  std::vector<FuncSum> g = gradient();
  for (int i = 0; i < dim_; ++i) {
    h[i].reserve(dim_);
    for (int j = 0; j < dim_; ++j) h[i].push_back(g[i].partial(j));
  }
  return h;
}

FuncSum FuncSum::divided_by_coordinate(int coord) const {
  FuncSum r(dim_);
  for (const auto& pg : components_) {
    PolyGauss q(dim_, pg.beta());
    for (const auto& [e, c] : pg.terms()) {
      if (e[coord] == 0)
        throw std::domain_error(
            "funcsum: monomial not divisible by requested coordinate");
      Exponents qe = e;
      qe[coord] -= 1;
      q.add_term(qe, c);
    }
    r.add_component(q);
  }
  return r;
}

FuncSum FuncSum::scaled_argument(double s) const {
  if (!(s != 0.0) || !std::isfinite(s))
    throw std::invalid_argument("funcsum: argument scale must be nonzero");
  FuncSum r(dim_);
  for (const auto& pg : components_) {
    PolyGauss sc(dim_, pg.beta() * s * s);
    for (const auto& [e, c] : pg.terms()) {
      int deg = 0;
      for (int k : e) deg += k;
      sc.add_term(e, c * pow_int(s, deg));
    }
    r.add_component(sc);
  }
  return r;
}

FuncSum FuncSum::shifted_envelope(double delta) const {
  FuncSum r(dim_);
  for (const auto& pg : components_) {
    const double b = pg.beta() + delta;
    if (b < 0.0)
      throw std::domain_error("funcsum: envelope shift makes a rate negative");
    PolyGauss sc(dim_, b);
    for (const auto& [e, c] : pg.terms()) sc.add_term(e, c);
    r.add_component(sc);
  }
  return r;
}

double FuncSum::evaluate(std::span<const double> x) const {
  double v = 0.0;
  for (const auto& pg : components_) v += pg.evaluate(x);
  return v;
}

int FuncSum::total_degree() const {
  int deg = 0;
  for (const auto& pg : components_) deg = std::max(deg, pg.total_degree());
  return deg;
}

int FuncSum::max_degree(int coord) const {
  int deg = 0;
  for (const auto& pg : components_) deg = std::max(deg, pg.max_degree(coord));
  return deg;
}

double FuncSum::min_envelope_rate() const {
  if (components_.empty()) return 0.0;
  return components_.front().beta();
}

bool FuncSum::all_rates_positive() const {
  return !components_.empty() && components_.front().beta() > 0.0;
}

bool FuncSum::neumann_admissible(const MonomialWeight& w) const {
  check_dim(dim_, w.dim());
  for (const auto& pg : components_)
    for (const auto& [e, c] : pg.terms())
      for (int i = 0; i < dim_; ++i)
        if (w.weighted(i) && (e[i] % 2) != 0) return false;
  return true;
}

bool FuncSum::operator==(const FuncSum& o) const {
  if (dim_ != o.dim_ || components_.size() != o.components_.size())
    return false;
  for (size_t k = 0; k < components_.size(); ++k) {
    if (components_[k].beta() != o.components_[k].beta()) return false;
    if (components_[k].terms() != o.components_[k].terms()) return false;
  }
  return true;
}

bool approx_equal(const FuncSum& a, const FuncSum& b, double tol) {
  if (a.dim() != b.dim()) return false;
  double scale = 1.0;
  for (const FuncSum* f : {&a, &b})
    for (const auto& pg : f->components())
      for (const auto& [e, c] : pg.terms())
        scale = std::max(scale, std::fabs(c));
  const auto small = [&](const PolyGauss& pg) {
    for (const auto& [e, c] : pg.terms())
      if (std::fabs(c) > tol * scale) return false;
    return true;
  };
  // Walk the two rate-sorted lists, pairing rates that agree to the same
  // tolerance; whatever stays unpaired must be negligible.
  const auto& ca = a.components();
  const auto& cb = b.components();
  std::size_t i = 0, j = 0;
  while (i < ca.size() && j < cb.size()) {
    const double ra = ca[i].beta(), rb = cb[j].beta();
    if (std::fabs(ra - rb) <= tol * std::max(1.0, std::max(ra, rb))) {
      for (const auto& [e, c] : ca[i].terms())
        if (std::fabs(c - cb[j].coefficient(e)) > tol * scale) return false;
      for (const auto& [e, c] : cb[j].terms())
        if (std::fabs(c - ca[i].coefficient(e)) > tol * scale) return false;
      ++i, ++j;
    } else if (ra < rb) {
      if (!small(ca[i])) return false;
      ++i;
    } else {
      if (!small(cb[j])) return false;
      ++j;
    }
  }
  for (; i < ca.size(); ++i)
    if (!small(ca[i])) return false;
  for (; j < cb.size(); ++j)
    if (!small(cb[j])) return false;
  return true;
}

FuncSum operator*(double s, const FuncSum& f) { return f.scaled(s); }

FuncSum gradient_norm_sq(const FuncSum& f) {
  FuncSum r(f.dim());
  for (int i = 0; i < f.dim(); ++i) {
    FuncSum di = f.partial(i);
    r = r + di * di;
  }
  return r;
}

FuncSum radius_sq_times(const FuncSum& f) {
  FuncSum r(f.dim());
  for (int i = 0; i < f.dim(); ++i) {
    Exponents e(f.dim(), 0);
    e[i] = 2;
    r = r + FuncSum::monomial(f.dim(), e, 1.0) * f;
  }
  return r;
}

nlohmann::json FuncSum::to_json() const {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& pg : components_) {
    nlohmann::json comp;
    comp["beta"] = pg.beta();
    nlohmann::json terms = nlohmann::json::array();
    for (const auto& [e, c] : pg.terms())
      terms.push_back({{"exp", e}, {"coef", c}});
    comp["terms"] = std::move(terms);
    arr.push_back(std::move(comp));
  }
  return arr;
}

FuncSum FuncSum::from_json(const nlohmann::json& j) {
  if (!j.is_array() || j.empty())
    throw std::invalid_argument("funcsum: expected non-empty component array");
  int dim = -1;
  FuncSum f(1);
  bool first = true;
  for (const auto& comp : j) {
    const double beta = comp.at("beta").get<double>();
    const auto& terms = comp.at("terms");
    if (!terms.is_array())
      throw std::invalid_argument("funcsum: terms must be an array");
    for (const auto& t : terms) {
      const auto exp = t.at("exp").get<Exponents>();
      if (dim < 0) {
        dim = static_cast<int>(exp.size());
        f = FuncSum(dim);
        first = false;
      }
      PolyGauss pg(dim, beta);
      pg.add_term(exp, t.at("coef").get<double>());
      f.add_component(pg);
    }
  }
  if (first) throw std::invalid_argument("funcsum: no terms present");
  return f;
}

}  // namespace gplab
