#pragma once

#include <cstdint>
#include <functional>
#include <string_view>
#include <vector>

#include "freeconv/measure.hpp"
#include "freeconv/semigroup.hpp"

namespace fc {

struct EmpiricalCDF {
  std::vector<double> samples;  // sorted ascending

  std::size_t count() const noexcept { return samples.size(); }
  // Right-continuous empirical distribution function.
  double cdf(double x) const noexcept;
};

// Monte Carlo approximation of mu^{boxplus n}: per trial, sum n independent
// Haar-conjugated diagonal matrices with i.i.d. mu-distributed entries and
// collect all eigenvalues. Deterministic given the seed; trials run
// concurrently with per-trial seeds seed + trial index.
EmpiricalCDF rmt_sample(const AtomicMeasure& mu, int n, int dim, int trials,
                        std::uint64_t seed);

// sup_x |F_emp(x) - cdf(x)|, evaluated two-sidedly at the samples with the
// right-continuous convention (left limits of cdf taken one ulp below).
double ks_distance(const EmpiricalCDF& emp, const std::function<double(double)>& cdf);

// Closed-form references used for validation.
struct ReferenceLaw {
  std::string name;
  double domain_lo = 0.0;
  double domain_hi = 0.0;
  std::function<double(double)> pdf;   // or pointwise values for mu_eps_g
  std::function<double(double)> cdf;   // empty for mu_eps_g / mu_eps_rho
  std::vector<RealAtom> atoms;         // filled for mu_eps_rho
};

// name in {"semicircle_t", "bernoulli_arcsine", "mu_eps_g", "mu_eps_rho"};
// params: t >= 1 for semicircle_t, 0 < eps < 1 for the mu_eps laws.
ReferenceLaw reference_law(std::string_view name, std::span<const double> params);

}  // namespace fc
