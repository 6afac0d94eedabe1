#include "freeconv/semigroup.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "freeconv/solve.hpp"

namespace fc {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_t_above_one(double t) {
  if (!(t > 1.0)) raise(errc::bad_t, "t must be greater than 1");
}

// Half-plane analogue of g: sum_j rho_j (s_j^2+1) / ((x-s_j)^2 + y^2).
double level_integral(const NevanlinnaRep& rep, double x, double y) {
  double sum = 0.0;
  const double y2 = y * y;
  for (const RealAtom& a : rep.rho.atoms()) {
    const double d = x - a.position;
    sum += a.mass * (a.position * a.position + 1.0) / (d * d + y2);
  }
  return sum;
}

}  // namespace

double g_value(const NevanlinnaRep& rep, double x) {
  double sum = 0.0;
  for (const RealAtom& a : rep.rho.atoms()) {
    const double d = a.position - x;
    if (d == 0.0) return kInf;
    sum += a.mass * (a.position * a.position + 1.0) / (d * d);
  }
  return sum;
}

PointClass classify_point(const NevanlinnaRep& rep, double t, double x) {
  require_t_above_one(t);
  const double g = g_value(rep, x);
  if (std::isinf(g)) return PointClass::plus;  // atoms of rho always lie in V_t^+
  const double thr = 1.0 / (t - 1.0);
  if (std::abs(g - thr) <= 1e-12 * thr) return PointClass::zero;
  return g > thr ? PointClass::plus : PointClass::minus;
}

double f_t_value(const NevanlinnaRep& rep, double t, double x) {
  if (classify_point(rep, t, x) != PointClass::plus) return 0.0;
  const double thr = 1.0 / (t - 1.0);

  // level_integral(x, .) decreases strictly from g(x) > thr to 0, and is
  // bounded by weighted_mass/y^2, which pins the root below y_hi.
  double hi = std::sqrt((t - 1.0) * rep.weighted_mass());
  int guard = 0;
  while (level_integral(rep, x, hi) > thr && guard++ < 60) hi *= 2.0;
  double lo = 0.0;
  for (int it = 0; it < detail::kMaxBisectIter; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (level_integral(rep, x, mid) > thr)
      lo = mid;
    else
      hi = mid;
    if (hi - lo <= 1e-12 * hi) break;
  }
  return 0.5 * (lo + hi);
}

std::complex<double> h_t(const NevanlinnaRep& rep, double t, std::complex<double> z) {
  require_t_above_one(t);
  const double thr = 1.0 / (t - 1.0);
  double sum = 0.0;
  for (const RealAtom& a : rep.rho.atoms()) {
    const std::complex<double> d = z - a.position;
    const double n2 = std::norm(d);
    if (n2 == 0.0) { sum = kInf; break; }
    sum += a.mass * (a.position * a.position + 1.0) / n2;
  }
  if (z.imag() < 0.0 || sum > thr + 1e-9 * std::max(1.0, thr))
    raise(errc::outside_omega, "point lies outside the closure of Omega_t");
  return t * z - (t - 1.0) * eval_F(rep, z);
}

BoundaryPoint psi_t_value(const NevanlinnaRep& rep, double t, double x) {
  const PointClass cls = classify_point(rep, t, x);
  const double f = (cls == PointClass::plus) ? f_t_value(rep, t, x) : 0.0;
  const std::complex<double> w = h_t(rep, t, {x, f});
  if (std::abs(w.imag()) > 1e-9 * std::max(rep.scale(), std::abs(w.real())))
    raise(errc::internal, "H_t is not real on the boundary curve");
  return {x, f, w.real(), cls};
}

double psi_t_derivative(const NevanlinnaRep& rep, double t, double x, double f) {
  // psi_t'(x) = 2 (t-1) f^2 (1 + f'^2) K with K the fourth-power moment; f'
  // comes from differentiating the defining identity of f_t.
  double K = 0.0, J = 0.0;
  const double f2 = f * f;
  for (const RealAtom& a : rep.rho.atoms()) {
    const double d = x - a.position;
    const double q = d * d + f2;
    const double w = a.mass * (a.position * a.position + 1.0) / (q * q);
    K += w;
    J += w * d;
  }
  const double fp = (f > 0.0 && K > 0.0) ? -J / (f * K) : 0.0;
  return 2.0 * (t - 1.0) * f2 * (1.0 + fp * fp) * K;
}

std::pair<double, double> density_at(const NevanlinnaRep& rep, double t, double x) {
  require_t_above_one(t);
  if (classify_point(rep, t, x) != PointClass::plus)
    raise(errc::not_in_vplus, "density is defined on V_t^+ only");
  const BoundaryPoint bp = psi_t_value(rep, t, x);
  const double re = t * x - bp.psi;
  const double im = t * bp.f;
  const double pdf = t * (t - 1.0) * bp.f / (std::numbers::pi * (re * re + im * im));
  return {bp.psi, pdf};
}

std::vector<PowerAtom> atoms_of_power(const AtomicMeasure& mu, double t) {
  require_t_above_one(t);
  // Strictly above the threshold survives; ties are the F-zero case and give
  // no atom. The 1e-12 band makes the tie decision stable at breakpoints.
  const double threshold = 1.0 - 1.0 / t;
  std::vector<PowerAtom> out;
  for (const RealAtom& a : mu.atoms())
    if (a.mass - threshold > 1e-12)
      out.push_back({t * a.position, t * a.mass - (t - 1.0)});
  return out;
}

double PowerResult::total_mass() const noexcept {
  double sum = density_mass;
  for (const PowerAtom& a : atoms) sum += a.mass;
  return sum;
}

double PowerResult::cdf(double u) const {
  double acc = 0.0;
  for (const PowerAtom& a : atoms)
    if (a.position <= u) acc += a.mass;
  for (const SampledComponent& comp : components) {
    if (u >= comp.u_hi) {
      acc += comp.mass;
      continue;
    }
    if (u <= comp.u_lo || comp.samples.empty()) continue;
    // Piecewise-linear cumulative through the sample nodes; each node carries
    // half of its quadrature weight on either side.
    double prev_u = comp.u_lo;
    double prev_c = 0.0;
    double cum = 0.0;
    bool done = false;
    for (const DensitySample& s : comp.samples) {
      const double node_c = cum + 0.5 * s.weight;
      if (u <= s.u) {
        const double frac = (s.u > prev_u) ? (u - prev_u) / (s.u - prev_u) : 1.0;
        acc += prev_c + frac * (node_c - prev_c);
        done = true;
        break;
      }
      cum += s.weight;
      prev_u = s.u;
      prev_c = node_c;
    }
    if (!done) {
      const double frac =
          (comp.u_hi > prev_u) ? (u - prev_u) / (comp.u_hi - prev_u) : 1.0;
      acc += prev_c + frac * (comp.mass - prev_c);
    }
  }
  return acc;
}

PowerResult convolve_power(const Measure& m, double t, const SamplingOptions& opts) {
  if (t < 1.0) raise(errc::bad_t, "t must be at least 1");

  PowerResult res;
  res.t = t;

  if (t == 1.0) {  // identity element of the semigroup
    res.support.t = t;
    for (const RealAtom& a : m.mu.atoms()) {
      res.atoms.push_back({a.position, a.mass});
      res.support.components.push_back(
          {a.position, a.position, ComponentInterval::Kind::atom_point});
    }
    res.support.n = static_cast<int>(res.support.components.size());
    return res;
  }

  res.support = support(m, t);
  res.atoms = atoms_of_power(m.mu, t);
  if (m.is_dirac()) return res;

  // Per V_t^+ component, sample at Chebyshev points x(theta) and integrate
  // the mass with the midpoint rule in theta, which absorbs inverse-square-
  // root edge behavior of the density.
  const int N = std::max(2, opts.points_per_component);
  res.components.reserve(res.support.vplus.size());
  for (const OpenInterval& iv : res.support.vplus) {
    SampledComponent comp;
    comp.u_lo = psi_t_value(m.rep, t, iv.lo).psi;
    comp.u_hi = psi_t_value(m.rep, t, iv.hi).psi;
    comp.samples.reserve(N);
    const double mid = 0.5 * (iv.lo + iv.hi);
    const double half = 0.5 * (iv.hi - iv.lo);
    for (int k = 0; k < N; ++k) {
      const double theta = std::numbers::pi * (2.0 * k + 1.0) / (2.0 * N);
      const double x = mid - half * std::cos(theta);
      const double f = f_t_value(m.rep, t, x);
      const BoundaryPoint bp = psi_t_value(m.rep, t, x);
      double pdf = 0.0, weight = 0.0;
      if (f > 0.0) {
        const double re = t * x - bp.psi;
        const double im = t * f;
        pdf = t * (t - 1.0) * f / (std::numbers::pi * (re * re + im * im));
        weight = (std::numbers::pi / N) * pdf *
                 psi_t_derivative(m.rep, t, x, f) * half * std::sin(theta);
      }
      comp.samples.push_back({bp.psi, pdf, weight});
      comp.mass += weight;
    }
    res.density_mass += comp.mass;
    res.components.push_back(std::move(comp));
  }
  return res;
}

}  // namespace fc
