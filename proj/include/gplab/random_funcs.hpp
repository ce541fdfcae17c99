#pragma once

#include <cstdint>
#include <random>

#include "gplab/funcsum.hpp"
#include "gplab/weight.hpp"

namespace gplab {

// mt19937_64 with portable value mappings: std::uniform_real_distribution is
// implementation-defined, so reports stay byte-identical only if we map the
// raw 64-bit draws ourselves.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t bits() { return eng_(); }
  // uniform in [0, 1)
  double uniform() { return (bits() >> 11) * 0x1.0p-53; }
  double uniform(double a, double b) { return a + (b - a) * uniform(); }
  double log_uniform(double a, double b);
  double normal();  // Box-Muller on the portable uniforms
  int uniform_int(int n);  // 0..n-1

 private:
  std::mt19937_64 eng_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

// Mixes a base seed with a trial index so trials are independent and
// order-insensitive.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index);

struct FuncGenOptions {
  int max_total_degree = 6;
  double beta_min = 0.1;
  double beta_max = 2.0;
  // polynomial = true emits envelope rate 0 (spectral-side inputs).
  bool polynomial = false;
};

// Dense random element of the admissible family: every multi-index of total
// degree <= max_total_degree whose weighted coordinates carry even exponents,
// coefficients uniform in [-1, 1], envelope rate log-uniform in
// [beta_min, beta_max].  Deterministic in (weight, seed, options).
FuncSum random_admissible(const MonomialWeight& w, std::uint64_t seed,
                          const FuncGenOptions& opt = {});

}  // namespace gplab
