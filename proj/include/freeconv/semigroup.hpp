#pragma once

#include <complex>
#include <vector>

#include "freeconv/nevanlinna.hpp"
#include "freeconv/support.hpp"

namespace fc {

enum class PointClass { plus, zero, minus };

// One sample of the boundary curve of Omega_t above x.
struct BoundaryPoint {
  double x = 0.0;
  double f = 0.0;    // f_t(x) >= 0, positive exactly on V_t^+
  double psi = 0.0;  // psi_t(x) = H_t(x + i f_t(x)), real on the boundary
  PointClass cls = PointClass::minus;
};

struct PowerAtom {
  double position = 0.0;  // t * alpha
  double mass = 0.0;      // t * mu({alpha}) - (t - 1)
};

struct DensitySample {
  double u = 0.0;       // psi_t(x)
  double pdf = 0.0;     // density of the absolutely continuous part at u
  double weight = 0.0;  // quadrature mass carried by this sample
};

struct SamplingOptions {
  int points_per_component = 512;
  double mass_tol = 1e-3;
};

// Density samples over one component of V_t^+, u ascending; [u_lo, u_hi] is
// the closure of the psi_t image.
struct SampledComponent {
  double u_lo = 0.0;
  double u_hi = 0.0;
  double mass = 0.0;  // quadrature mass carried by the component
  std::vector<DensitySample> samples;
};

// Full description of mu^{boxplus t}.
struct PowerResult {
  double t = 1.0;
  std::vector<PowerAtom> atoms;
  std::vector<SampledComponent> components;  // per V_t^+ component
  SupportReport support;
  double density_mass = 0.0;  // quadrature mass of the AC part

  double total_mass() const noexcept;
  // Distribution function (right-continuous) assembled from atoms and the
  // sampled density.
  double cdf(double u) const;
};

// g(x) = sum_j rho_j (s_j^2 + 1)/(s_j - x)^2; +infinity exactly at rho atoms.
double g_value(const NevanlinnaRep& rep, double x);

// Membership of x in V_t^+ / V_t / V_t^-, with ties resolved toward V_t.
PointClass classify_point(const NevanlinnaRep& rep, double t, double x);

// Height of the boundary curve of Omega_t above x; 0 off V_t^+, otherwise the
// unique root of sum_j rho_j (s_j^2+1)/((x-s_j)^2 + y^2) = 1/(t-1).
double f_t_value(const NevanlinnaRep& rep, double t, double x);

// H_t(z) = t z - (t-1) F(z) on the closure of Omega_t.
std::complex<double> h_t(const NevanlinnaRep& rep, double t, std::complex<double> z);

BoundaryPoint psi_t_value(const NevanlinnaRep& rep, double t, double x);

// Analytic derivative of psi_t at a point of V_t^+ with f = f_t(x) > 0.
double psi_t_derivative(const NevanlinnaRep& rep, double t, double x, double f);

// (psi_t(x), density at psi_t(x)); requires x in V_t^+.
std::pair<double, double> density_at(const NevanlinnaRep& rep, double t, double x);

// Surviving atoms of mu^{boxplus t}: t*alpha with mass t*mu({alpha}) - (t-1)
// for each atom of mu with mass strictly above 1 - 1/t.
std::vector<PowerAtom> atoms_of_power(const AtomicMeasure& mu, double t);

// The full pipeline: atoms, sampled density per V_t^+ component, support
// decomposition and mass bookkeeping. t = 1 returns mu itself.
PowerResult convolve_power(const Measure& m, double t, const SamplingOptions& opts = {});

}  // namespace fc
