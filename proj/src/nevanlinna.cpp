#include "freeconv/nevanlinna.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "freeconv/solve.hpp"

namespace fc {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

double root_xtol(double lo, double hi) {
  return 4.0 * kEps * std::max({1.0, std::abs(lo), std::abs(hi)});
}

// g restricted to what this file needs; the full-featured version lives in
// the semigroup module.
double g_local(const NevanlinnaRep& rep, double x) {
  double sum = 0.0;
  for (const RealAtom& a : rep.rho.atoms()) {
    const double d = a.position - x;
    if (d == 0.0) return std::numeric_limits<double>::infinity();
    sum += a.mass * (a.position * a.position + 1.0) / (d * d);
  }
  return sum;
}

double eval_F_real(const NevanlinnaRep& rep, double x) {
  double sum = rep.a + x;
  for (const RealAtom& a : rep.rho.atoms())
    sum += a.mass * (1.0 + a.position * x) / (a.position - x);
  return sum;
}

}  // namespace

double NevanlinnaRep::weighted_mass() const noexcept {
  double sum = 0.0;
  for (const RealAtom& a : rho.atoms())
    sum += a.mass * (a.position * a.position + 1.0);
  return sum;
}

double NevanlinnaRep::scale() const noexcept {
  return std::max(rho.scale(), std::abs(a));
}

std::complex<double> eval_F(const NevanlinnaRep& rep, std::complex<double> z) {
  if (z.imag() < 0.0)
    raise(errc::internal, "eval_F requires Im z >= 0");
  const bool real_z = z.imag() == 0.0;
  std::complex<double> sum = rep.a + z;
  for (const RealAtom& a : rep.rho.atoms()) {
    if (real_z && z.real() == a.position)
      raise(errc::pole_hit, "F evaluated at an atom of rho");
    sum += a.mass * (1.0 + a.position * z) / (a.position - z);
  }
  return sum;
}

NevanlinnaRep rep_from_atomic(const AtomicMeasure& mu, NevanlinnaRep::Source tag) {
  mu.require_probability();

  std::vector<RealAtom> rho;
  for (double x0 : zeros_of_cauchy(mu)) {
    const double gp = cauchy_derivative(mu, x0);  // < 0
    rho.push_back({x0, -1.0 / ((x0 * x0 + 1.0) * gp)});
  }

  NevanlinnaRep rep;
  rep.a = (1.0 / cauchy_transform(mu, {0.0, 1.0})).real();
  rep.rho = AtomicMeasure::from_atoms(std::move(rho));
  rep.source = tag;

  // The rep must reproduce 1/G throughout the upper half-plane; spot-check at
  // deterministic pseudo-random points.
  std::mt19937_64 rng(0x66C0FFEEull);
  auto uniform = [&rng] { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };
  const double s = mu.scale();
  for (int k = 0; k < 32; ++k) {
    const std::complex<double> z{(4.0 * uniform() - 2.0) * s,
                                 0.1 * std::pow(100.0, uniform())};
    const std::complex<double> ref = 1.0 / cauchy_transform(mu, z);
    if (std::abs(eval_F(rep, z) - ref) > 1e-9 * std::abs(ref))
      raise(errc::internal, "Nevanlinna representation failed the closure check");
  }
  return rep;
}

NevanlinnaRep rep_from_nu(const AtomicMeasure& nu) {
  nu.require_probability();
  std::vector<RealAtom> rho;
  rho.reserve(nu.size());
  double a = 0.0;
  for (const RealAtom& atom : nu.atoms()) {
    const double w = atom.mass / (atom.position * atom.position + 1.0);
    rho.push_back({atom.position, w});
    // (1+sz)/(s-z) = (s^2+1)/(s-z) - s, so matching F = z - G_nu needs
    // a = integral of s drho(s); it vanishes only for symmetric nu.
    a += w * atom.position;
  }
  NevanlinnaRep rep;
  rep.a = a;
  rep.rho = AtomicMeasure::from_atoms(std::move(rho));
  rep.source = NevanlinnaRep::Source::maassen;
  return rep;
}

AtomicMeasure atoms_from_rep(const NevanlinnaRep& rep) {
  if (rep.rho.empty())
    return AtomicMeasure::from_atoms({{-rep.a, 1.0}});

  // F is strictly increasing between consecutive poles of rho, running from
  // -infinity to +infinity on every bounded gap and on both flanks, so each
  // piece holds exactly one zero.
  auto F = [&rep](double x) { return eval_F_real(rep, x); };
  const auto rho = rep.rho.atoms();
  const std::size_t m = rho.size();
  std::vector<double> zeros;
  zeros.reserve(m + 1);

  double d = std::max(1.0, rep.scale());
  int guard = 0;
  while (F(rho.front().position - d) >= 0.0 && guard++ < 200) d *= 2.0;
  zeros.push_back(detail::bisect_increasing(F, rho.front().position - d,
                                            rho.front().position,
                                            root_xtol(rho.front().position - d,
                                                      rho.front().position)));

  for (std::size_t j = 0; j + 1 < m; ++j)
    zeros.push_back(detail::bisect_increasing(
        F, rho[j].position, rho[j + 1].position,
        root_xtol(rho[j].position, rho[j + 1].position)));

  d = std::max(1.0, rep.scale());
  guard = 0;
  while (F(rho.back().position + d) <= 0.0 && guard++ < 200) d *= 2.0;
  zeros.push_back(detail::bisect_increasing(F, rho.back().position,
                                            rho.back().position + d,
                                            root_xtol(rho.back().position,
                                                      rho.back().position + d)));

  std::vector<RealAtom> atoms;
  atoms.reserve(zeros.size());
  double total = 0.0;
  for (double alpha : zeros) {
    const double w = 1.0 / (1.0 + g_local(rep, alpha));  // 1/F'(alpha)
    atoms.push_back({alpha, w});
    total += w;
  }
  if (std::abs(total - 1.0) > 1e-7)
    raise(errc::internal, "atom masses recovered from the rep do not sum to 1");
  return AtomicMeasure::from_atoms(std::move(atoms));
}

AtomicMeasure discretize_continuous(std::span<const double> xs,
                                    std::span<const double> pdf, int n_atoms) {
  if (xs.size() != pdf.size() || xs.size() < 2)
    raise(errc::parse_error, "density grid and values must have equal length >= 2");
  if (n_atoms < 2)
    raise(errc::bad_dimension, "discretization needs at least 2 atoms");
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (!std::isfinite(xs[i])) raise(errc::non_finite_position, "grid point not finite");
    if (!std::isfinite(pdf[i]) || pdf[i] < 0.0)
      raise(errc::degenerate_density, "density values must be finite and nonnegative");
    if (i > 0 && xs[i] <= xs[i - 1])
      raise(errc::parse_error, "density grid must be strictly increasing");
  }

  const std::size_t nseg = xs.size() - 1;
  std::vector<double> cum(xs.size(), 0.0);
  for (std::size_t i = 0; i < nseg; ++i)
    cum[i + 1] = cum[i] + 0.5 * (pdf[i] + pdf[i + 1]) * (xs[i + 1] - xs[i]);
  const double total = cum.back();
  if (total < 1e-12)
    raise(errc::degenerate_density, "density integrates to zero");
  if (std::abs(total - 1.0) > 1e-6)
    raise(errc::not_probability,
          "density integrates to " + std::to_string(total) + ", not 1");

  // x with cumulative mass level L, resolved on the piecewise-quadratic CDF.
  auto quantile = [&](double level) {
    if (level <= 0.0) return xs.front();
    if (level >= total) return xs.back();
    const std::size_t idx =
        std::upper_bound(cum.begin(), cum.end(), level) - cum.begin();
    if (idx == 0) return xs.front();
    if (idx >= cum.size()) return xs.back();
    const std::size_t i = idx - 1;
    const double h = xs[i + 1] - xs[i];
    const double slope = (pdf[i + 1] - pdf[i]) / h;
    const double c = level - cum[i];
    const double disc = pdf[i] * pdf[i] + 2.0 * slope * c;
    const double denom = pdf[i] + std::sqrt(std::max(disc, 0.0));
    const double d = (denom > 0.0) ? 2.0 * c / denom : 0.0;
    return xs[i] + std::min(d, h);
  };

  // integral of x * pdf(x) over [a, b]
  auto first_moment = [&](double a, double b) {
    double acc = 0.0;
    for (std::size_t i = 0; i < nseg; ++i) {
      const double lo = std::max(a, xs[i]);
      const double hi = std::min(b, xs[i + 1]);
      if (hi <= lo) continue;
      const double slope = (pdf[i + 1] - pdf[i]) / (xs[i + 1] - xs[i]);
      const double c0 = pdf[i] - slope * xs[i];
      acc += 0.5 * c0 * (hi * hi - lo * lo) + slope * (hi * hi * hi - lo * lo * lo) / 3.0;
    }
    return acc;
  };

  std::vector<RealAtom> atoms;
  atoms.reserve(n_atoms);
  const double w = 1.0 / n_atoms;
  for (int k = 0; k < n_atoms; ++k) {
    const double q0 = quantile(total * k / n_atoms);
    const double q1 = quantile(total * (k + 1) / n_atoms);
    const double slice_mass = total / n_atoms;
    atoms.push_back({first_moment(q0, q1) / slice_mass, w});
  }
  return AtomicMeasure::from_atoms(std::move(atoms));
}

Measure build_measure(const ValidatedMeasure& vm) {
  Measure m;
  m.route = vm.route;
  switch (vm.route) {
    case ValidatedMeasure::Route::atomic:
      m.mu = vm.atoms;
      m.rep = rep_from_atomic(m.mu, NevanlinnaRep::Source::rational);
      break;
    case ValidatedMeasure::Route::discretized:
      m.mu = vm.atoms;
      m.rep = rep_from_atomic(m.mu, NevanlinnaRep::Source::discretized);
      break;
    case ValidatedMeasure::Route::nu:
      m.rep = rep_from_nu(vm.atoms);
      m.mu = atoms_from_rep(m.rep);
      break;
  }
  return m;
}

}  // namespace fc
