#pragma once

#include <utility>
#include <vector>

#include "freeconv/nevanlinna.hpp"

namespace fc {

struct ComponentInterval {
  enum class Kind { ac_component, atom_point };

  double lo = 0.0;
  double hi = 0.0;
  Kind kind = Kind::ac_component;
};

struct OpenInterval {
  double lo = 0.0;
  double hi = 0.0;
};

struct SupportReport {
  double t = 0.0;
  std::vector<ComponentInterval> components;  // disjoint, sorted by lo
  int n = 0;                                  // = components.size()
  std::vector<OpenInterval> vplus;            // components of V_t^+
};

// Components of the open set V_t^+ = { g > 1/(t-1) }. Exact interval
// structure for atomic rho: each bounded gap between rho atoms carries a
// convex piece of g whose sublevel set is a single closed interval, and each
// unbounded flank has one crossing. Throws empty_rho for Dirac measures.
std::vector<OpenInterval> vplus_components(const NevanlinnaRep& rep, double t);

// Full support decomposition of mu^{boxplus t}: closures of the psi_t images
// of V_t^+ (merged where they touch) plus isolated surviving atoms.
SupportReport support(const Measure& m, double t);

// Component counts along an increasing t grid.
std::vector<std::pair<double, int>> n_curve(const Measure& m,
                                            std::span<const double> t_grid);

struct MergeThreshold {
  double m_inf = 0.0;  // inf of g over the bounded gaps of supp(mu)
  double t0 = 0.0;     // max(1 + 1/m_inf, 1/(1 - largest atom mass))
};

// Threshold beyond which the support is a single interval. Throws
// dirac_measure for point masses.
MergeThreshold merge_threshold(const Measure& m);

enum class CheckOutcome { pass, vacuous, fail };

// Self-test harness for structural relations between supp(mu) and
// supp(mu^{boxplus t}); not part of the user-facing pipeline.
struct StructuralReport {
  CheckOutcome psi_image_of_support = CheckOutcome::vacuous;  // psi_t(supp mu) inside supp mu^t
  CheckOutcome gap_image_gap_count = CheckOutcome::vacuous;   // <= 2 support gaps per mu gap image
  CheckOutcome mass_between_heavy_atoms = CheckOutcome::vacuous;
  CheckOutcome bounded_support = CheckOutcome::vacuous;
  CheckOutcome null_interval_single_atom = CheckOutcome::vacuous;

  bool all_ok() const noexcept;
};

StructuralReport structural_checks(const Measure& m, double t);

}  // namespace fc
