#pragma once

#include <complex>
#include <span>
#include <vector>

#include "freeconv/errors.hpp"

namespace fc {

struct RealAtom {
  double position = 0.0;
  double mass = 0.0;

  friend bool operator==(const RealAtom&, const RealAtom&) = default;
};

// Finite nonnegative weighted point set on the real line, positions kept
// strictly increasing. Represents both probability measures and the finite
// Nevanlinna measure rho (whose total mass need not be 1). Immutable after
// construction.
class AtomicMeasure {
public:
  AtomicMeasure() = default;

  // Sorts, merges coincident positions by mass addition, validates that
  // positions are finite and masses positive.
  static AtomicMeasure from_atoms(std::vector<RealAtom> atoms);

  std::span<const RealAtom> atoms() const noexcept { return atoms_; }
  std::size_t size() const noexcept { return atoms_.size(); }
  bool empty() const noexcept { return atoms_.empty(); }
  const RealAtom& operator[](std::size_t i) const noexcept { return atoms_[i]; }
  double total_mass() const noexcept { return total_mass_; }

  // max(1, max |position|); the reference length for tolerances.
  double scale() const noexcept { return scale_; }
  double max_mass() const noexcept;

  bool is_probability(double tol = 1e-9) const noexcept;
  void require_probability(double tol = 1e-9) const;

  friend bool operator==(const AtomicMeasure&, const AtomicMeasure&) = default;

private:
  std::vector<RealAtom> atoms_;
  double total_mass_ = 0.0;
  double scale_ = 1.0;
};

// Continuous input: a piecewise-linear density on a strictly increasing grid.
struct ContinuousDensity {
  std::vector<double> xs;
  std::vector<double> pdf;
};

// Input envelope for the three construction routes.
struct MeasureSpec {
  enum class Kind { atomic, nu, continuous };
  Kind kind = Kind::atomic;
  std::vector<RealAtom> atoms;  // atomic / nu payload
  ContinuousDensity density;    // continuous payload
};

// Result of validation: a normalized atomic measure plus the route it came
// through. For Route::nu the atoms are those of nu itself, not of mu.
struct ValidatedMeasure {
  enum class Route { atomic, nu, discretized };
  Route route = Route::atomic;
  AtomicMeasure atoms;
};

ValidatedMeasure validate_measure(const MeasureSpec& spec, int n_atoms = 200);

// G(z) = sum_j w_j / (z - s_j), Im z >= 0 and z off the atoms when real.
std::complex<double> cauchy_transform(const AtomicMeasure& m, std::complex<double> z);

// G'(x) = -sum_j w_j / (x - s_j)^2 < 0, x off the atoms.
double cauchy_derivative(const AtomicMeasure& m, double x);

// The n-1 real zeros of G, one in each gap between consecutive atoms.
std::vector<double> zeros_of_cauchy(const AtomicMeasure& m);

}  // namespace fc
