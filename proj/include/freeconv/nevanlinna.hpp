#pragma once

#include <complex>
#include <span>

#include "freeconv/measure.hpp"

namespace fc {

// Canonical internal form of the reciprocal Cauchy transform,
//   F(z) = a + z + sum_j rho_j (1 + s_j z) / (s_j - z),
// with a real and rho a finite positive atomic measure.
struct NevanlinnaRep {
  enum class Source { rational, maassen, discretized };

  double a = 0.0;
  AtomicMeasure rho;
  Source source = Source::rational;

  // sum_j rho_j (s_j^2 + 1); bounds the half-plane integrals that drive f_t.
  double weighted_mass() const noexcept;
  double scale() const noexcept;
};

// Rep of an atomic probability measure: rho sits on the zeros of G with
// mass -1/((x0^2+1) G'(x0)), and a = Re(1/G(i)). Exact for rational
// transforms up to the root-finding tolerance.
NevanlinnaRep rep_from_atomic(const AtomicMeasure& mu,
                              NevanlinnaRep::Source tag = NevanlinnaRep::Source::rational);

// Rep of the mean-zero unit-variance measure mu with F(z) = z - G_nu(z):
// a = 0 and rho has mass nu({s})/(s^2+1) at each atom s of nu.
NevanlinnaRep rep_from_nu(const AtomicMeasure& nu);

// Equal-mass quantile discretization of a piecewise-linear density: one atom
// at the conditional mean of each of n_atoms consecutive quantile slices.
AtomicMeasure discretize_continuous(std::span<const double> xs,
                                    std::span<const double> pdf, int n_atoms);

// F evaluated from the rep; requires Im z >= 0 and z off the rho atoms when real.
std::complex<double> eval_F(const NevanlinnaRep& rep, std::complex<double> z);

// Atoms of the underlying probability measure, recovered as the zeros of F
// with Julia-Caratheodory mass 1/F'(alpha) = 1/(1 + g(alpha)). Reproduces mu
// for reps built by rep_from_atomic and materializes mu for Maassen reps.
AtomicMeasure atoms_from_rep(const NevanlinnaRep& rep);

// Working form used by the engine: the measure's own atoms plus its rep.
struct Measure {
  AtomicMeasure mu;
  NevanlinnaRep rep;
  ValidatedMeasure::Route route = ValidatedMeasure::Route::atomic;

  bool is_dirac() const noexcept { return rep.rho.empty(); }
};

Measure build_measure(const ValidatedMeasure& vm);

}  // namespace fc
