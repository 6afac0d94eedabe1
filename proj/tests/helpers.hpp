#pragma once

#include <random>
#include <vector>

#include "freeconv/nevanlinna.hpp"

namespace fc::testing {

inline AtomicMeasure atoms(std::vector<RealAtom> a) {
  return AtomicMeasure::from_atoms(std::move(a));
}

inline AtomicMeasure bernoulli() { return atoms({{-1.0, 0.5}, {1.0, 0.5}}); }

// mu_eps = eps/2 (delta_{-1} + delta_1) + (1-eps) delta_0
inline AtomicMeasure mu_eps(double eps) {
  return atoms({{-1.0, eps / 2.0}, {0.0, 1.0 - eps}, {1.0, eps / 2.0}});
}

inline Measure engine_measure(const AtomicMeasure& mu) {
  return build_measure({ValidatedMeasure::Route::atomic, mu});
}

// nu = c sum_{n=1}^{n_max} 2^{-n} delta_{2^n}, renormalized to mass 1.
inline AtomicMeasure dyadic_nu(int n_max) {
  std::vector<RealAtom> a;
  double total = 0.0;
  for (int n = 1; n <= n_max; ++n) total += std::pow(2.0, -n);
  for (int n = 1; n <= n_max; ++n)
    a.push_back({std::pow(2.0, n), std::pow(2.0, -n) / total});
  return atoms(std::move(a));
}

// Random probability measure with n atoms in [-3, 3], pairwise separated.
inline AtomicMeasure random_measure(std::mt19937& rng, int n) {
  std::uniform_real_distribution<double> pos(-3.0, 3.0);
  std::uniform_real_distribution<double> wgt(0.1, 1.0);
  std::vector<double> xs;
  while (static_cast<int>(xs.size()) < n) {
    const double x = pos(rng);
    bool ok = true;
    for (double y : xs) ok = ok && std::abs(x - y) > 0.05;
    if (ok) xs.push_back(x);
  }
  std::vector<RealAtom> a;
  double total = 0.0;
  for (double x : xs) {
    const double w = wgt(rng);
    a.push_back({x, w});
    total += w;
  }
  for (RealAtom& atom : a) atom.mass /= total;
  return atoms(std::move(a));
}

}  // namespace fc::testing
