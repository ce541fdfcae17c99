#include "gplab/random_funcs.hpp"

#include <cmath>
#include <stdexcept>

namespace gplab {

double Rng::log_uniform(double a, double b) {
  return std::exp(uniform(std::log(a), std::log(b)));
}

double Rng::normal() {
  if (have_spare_) {
    have_spare_ = false;
    return spare_;
  }
  double u1 = uniform();
  while (u1 == 0.0) u1 = uniform();
  const double u2 = uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double two_pi = 8.0 * std::atan(1.0);
  spare_ = r * std::sin(two_pi * u2);
  have_spare_ = true;
  return r * std::cos(two_pi * u2);
}

int Rng::uniform_int(int n) {
  if (n <= 0) throw std::invalid_argument("rng: uniform_int needs n > 0");
  return static_cast<int>(uniform() * n) % n;
}

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index) {
  // splitmix64 finalizer over the combined value.
  std::uint64_t z = base + 0x9e3779b97f4a7c15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

namespace {

void enumerate_exponents(const MonomialWeight& w, int coord, int budget,
                         Exponents& cur, std::vector<Exponents>& out) {
  if (coord == w.dim()) {
    out.push_back(cur);
    return;
  }
  const int step = w.weighted(coord) ? 2 : 1;
  for (int e = 0; e <= budget; e += step) {
    cur[coord] = e;
    enumerate_exponents(w, coord + 1, budget - e, cur, out);
  }
  cur[coord] = 0;
}

}  // namespace

FuncSum random_admissible(const MonomialWeight& w, std::uint64_t seed,
                          const FuncGenOptions& opt) {
  if (opt.max_total_degree < 0)
    throw std::invalid_argument("funcgen: degree cap must be >= 0");
  Rng rng(seed);
  const double beta =
      opt.polynomial ? 0.0 : rng.log_uniform(opt.beta_min, opt.beta_max);
  std::vector<Exponents> exps;
  Exponents cur(static_cast<size_t>(w.dim()), 0);
  enumerate_exponents(w, 0, opt.max_total_degree, cur, exps);
  PolyGauss pg(w.dim(), beta);
  for (const auto& e : exps) pg.add_term(e, rng.uniform(-1.0, 1.0));
  FuncSum f(w.dim());
  f.add_component(pg);
  return f;
}

}  // namespace gplab
