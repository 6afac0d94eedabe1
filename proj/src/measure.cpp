#include "freeconv/measure.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "freeconv/nevanlinna.hpp"
#include "freeconv/solve.hpp"

namespace fc {

const char* errc_name(errc code) noexcept {
  switch (code) {
    case errc::ok: return "Ok";
    case errc::not_probability: return "NotProbability";
    case errc::empty_measure: return "EmptyMeasure";
    case errc::non_finite_position: return "NonFinitePosition";
    case errc::parse_error: return "ParseError";
    case errc::io_error: return "IoError";
    case errc::bad_t: return "BadT";
    case errc::pole_hit: return "PoleHit";
    case errc::outside_omega: return "OutsideOmega";
    case errc::not_in_vplus: return "NotInVPlus";
    case errc::dirac_measure: return "DiracMeasure";
    case errc::empty_rho: return "EmptyRho";
    case errc::bad_dimension: return "BadDimension";
    case errc::degenerate_density: return "DegenerateDensity";
    case errc::unknown_law: return "UnknownLaw";
    case errc::null_argument: return "NullArgument";
    case errc::internal: return "InternalError";
  }
  return "UnknownError";
}

AtomicMeasure AtomicMeasure::from_atoms(std::vector<RealAtom> atoms) {
  for (const RealAtom& a : atoms) {
    if (!std::isfinite(a.position))
      raise(errc::non_finite_position, "atom position is not finite");
    if (!std::isfinite(a.mass) || a.mass <= 0.0)
      raise(errc::not_probability, "atom mass must be positive and finite");
  }
  std::sort(atoms.begin(), atoms.end(),
            [](const RealAtom& l, const RealAtom& r) { return l.position < r.position; });

  AtomicMeasure m;
  m.atoms_.reserve(atoms.size());
  for (const RealAtom& a : atoms) {
    if (!m.atoms_.empty() && m.atoms_.back().position == a.position)
      m.atoms_.back().mass += a.mass;  // coincident positions merge
    else
      m.atoms_.push_back(a);
  }
  double mass = 0.0, amax = 0.0;
  for (const RealAtom& a : m.atoms_) {
    mass += a.mass;
    amax = std::max(amax, std::abs(a.position));
  }
  m.total_mass_ = mass;
  m.scale_ = std::max(1.0, amax);
  return m;
}

double AtomicMeasure::max_mass() const noexcept {
  double w = 0.0;
  for (const RealAtom& a : atoms_) w = std::max(w, a.mass);
  return w;
}

bool AtomicMeasure::is_probability(double tol) const noexcept {
  return !atoms_.empty() && std::abs(total_mass_ - 1.0) <= tol;
}

void AtomicMeasure::require_probability(double tol) const {
  if (atoms_.empty()) raise(errc::empty_measure, "measure has no atoms");
  if (std::abs(total_mass_ - 1.0) > tol)
    raise(errc::not_probability,
          "total mass " + std::to_string(total_mass_) + " differs from 1");
}

ValidatedMeasure validate_measure(const MeasureSpec& spec, int n_atoms) {
  switch (spec.kind) {
    case MeasureSpec::Kind::atomic: {
      AtomicMeasure m = AtomicMeasure::from_atoms(spec.atoms);
      m.require_probability();
      return {ValidatedMeasure::Route::atomic, std::move(m)};
    }
    case MeasureSpec::Kind::nu: {
      AtomicMeasure m = AtomicMeasure::from_atoms(spec.atoms);
      m.require_probability();
      return {ValidatedMeasure::Route::nu, std::move(m)};
    }
    case MeasureSpec::Kind::continuous: {
      AtomicMeasure m = discretize_continuous(spec.density.xs, spec.density.pdf, n_atoms);
      return {ValidatedMeasure::Route::discretized, std::move(m)};
    }
  }
  raise(errc::parse_error, "unknown measure kind");
}

std::complex<double> cauchy_transform(const AtomicMeasure& m, std::complex<double> z) {
  std::complex<double> sum = 0.0;
  const bool real_z = z.imag() == 0.0;
  for (const RealAtom& a : m.atoms()) {
    if (real_z && z.real() == a.position)
      raise(errc::pole_hit, "Cauchy transform evaluated at an atom");
    sum += a.mass / (z - a.position);
  }
  return sum;
}

double cauchy_derivative(const AtomicMeasure& m, double x) {
  double sum = 0.0;
  for (const RealAtom& a : m.atoms()) {
    const double d = x - a.position;
    if (d == 0.0) raise(errc::pole_hit, "derivative evaluated at an atom");
    sum += a.mass / (d * d);
  }
  return -sum;
}

std::vector<double> zeros_of_cauchy(const AtomicMeasure& m) {
  // G is strictly decreasing between consecutive poles, running from
  // +infinity down to -infinity, so each gap brackets exactly one zero.
  std::vector<double> zeros;
  if (m.size() < 2) return zeros;
  const double xtol = 4.0 * std::numeric_limits<double>::epsilon() * m.scale();
  auto g_real = [&m](double x) {
    double sum = 0.0;
    for (const RealAtom& a : m.atoms()) sum += a.mass / (x - a.position);
    return sum;
  };
  zeros.reserve(m.size() - 1);
  for (std::size_t j = 0; j + 1 < m.size(); ++j)
    zeros.push_back(detail::bisect_decreasing(g_real, m[j].position,
                                              m[j + 1].position, xtol));
  return zeros;
}

}  // namespace fc
