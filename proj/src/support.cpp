#include "freeconv/support.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "freeconv/semigroup.hpp"
#include "freeconv/solve.hpp"

namespace fc {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Closed interval on which f_t vanishes, possibly a single point.
struct Cut {
  double lo = 0.0;
  double hi = 0.0;
};

double mass_threshold_slack(const RealAtom& a, double t) {
  return a.mass - (1.0 - 1.0 / t);
}

}  // namespace

std::vector<OpenInterval> vplus_components(const NevanlinnaRep& rep, double t) {
  if (!(t > 1.0)) raise(errc::bad_t, "t must be greater than 1");
  if (rep.rho.empty())
    raise(errc::empty_rho, "V_t^+ is empty: the measure is a point mass");

  const double thr = 1.0 / (t - 1.0);
  const double band = 1e-12 * thr;
  const double xtol = 1e-12 * rep.scale();
  auto g = [&rep](double x) { return g_value(rep, x); };
  const auto rho = rep.rho.atoms();

  // One crossing on each unbounded flank: g is monotone there and decays to 0.
  double d = std::max(1.0, rep.scale());
  int guard = 0;
  while (g(rho.front().position - d) >= thr && guard++ < 200) d *= 2.0;
  const double x_left = detail::bisect_increasing(
      [&](double x) { return g(x) - thr; }, rho.front().position - d,
      rho.front().position, xtol);

  d = std::max(1.0, rep.scale());
  guard = 0;
  while (g(rho.back().position + d) >= thr && guard++ < 200) d *= 2.0;
  const double x_right = detail::bisect_decreasing(
      [&](double x) { return g(x) - thr; }, rho.back().position,
      rho.back().position + d, xtol);

  // On each bounded gap g is strictly convex and blows up at both ends, so
  // the sublevel set {g <= thr} is a single closed interval (possibly empty
  // or a point).
  std::vector<Cut> cuts;
  for (std::size_t j = 0; j + 1 < rho.size(); ++j) {
    const double lo = rho[j].position, hi = rho[j + 1].position;
    const auto [xmin, gmin] = detail::golden_min(g, lo, hi, xtol);
    if (std::abs(gmin - thr) <= band) {
      cuts.push_back({xmin, xmin});
    } else if (gmin < thr) {
      const double a = detail::bisect_decreasing(
          [&](double x) { return g(x) - thr; }, lo, xmin, xtol);
      const double b = detail::bisect_increasing(
          [&](double x) { return g(x) - thr; }, xmin, hi, xtol);
      cuts.push_back({a, b});
    }
  }

  std::vector<OpenInterval> comps;
  comps.reserve(cuts.size() + 1);
  double start = x_left;
  for (const Cut& c : cuts) {
    comps.push_back({start, c.lo});
    start = c.hi;
  }
  comps.push_back({start, x_right});
  return comps;
}

SupportReport support(const Measure& m, double t) {
  if (!(t > 1.0)) raise(errc::bad_t, "t must be greater than 1");

  SupportReport rep;
  rep.t = t;

  if (m.is_dirac()) {
    const double c = m.mu[0].position;
    rep.components.push_back({t * c, t * c, ComponentInterval::Kind::atom_point});
    rep.n = 1;
    return rep;
  }

  rep.vplus = vplus_components(m.rep, t);

  // Touching-closure decisions are made in x-space: psi_t is a strictly
  // increasing homeomorphism, but H_t' vanishes exactly at V_t boundary
  // points, so u-space gaps collapse quadratically and cannot separate
  // components near breakpoints.
  const double xtol = 1e-12 * std::max(m.mu.scale(), m.rep.scale());

  struct Chain {
    double x_lo, x_hi;
  };
  std::vector<Chain> chains;
  for (const OpenInterval& iv : rep.vplus) {
    if (!chains.empty() && iv.lo - chains.back().x_hi <= xtol)
      chains.back().x_hi = iv.hi;  // zero-width cut: closures touch
    else
      chains.push_back({iv.lo, iv.hi});
  }

  std::vector<ComponentInterval> merged;
  merged.reserve(chains.size());
  for (const Chain& ch : chains)
    merged.push_back({psi_t_value(m.rep, t, ch.x_lo).psi,
                      psi_t_value(m.rep, t, ch.x_hi).psi,
                      ComponentInterval::Kind::ac_component});

  // A surviving atom of mu^t sits at t*alpha with g(alpha) strictly below the
  // level, so alpha lies strictly outside every V_t^+ closure; the band only
  // guards rounding. An atom within a closure boundary is absorbed.
  const double tie = 1.0 - 1.0 / t;
  for (const RealAtom& a : m.mu.atoms()) {
    if (a.mass - tie <= 1e-12) continue;
    bool absorbed = false;
    for (const Chain& ch : chains)
      if (a.position >= ch.x_lo - xtol && a.position <= ch.x_hi + xtol) {
        absorbed = true;
        break;
      }
    if (!absorbed)
      merged.push_back({t * a.position, t * a.position,
                        ComponentInterval::Kind::atom_point});
  }
  std::sort(merged.begin(), merged.end(),
            [](const ComponentInterval& l, const ComponentInterval& r) {
              return l.lo < r.lo;
            });

  rep.components = std::move(merged);
  rep.n = static_cast<int>(rep.components.size());
  return rep;
}

std::vector<std::pair<double, int>> n_curve(const Measure& m,
                                            std::span<const double> t_grid) {
  std::vector<std::pair<double, int>> out;
  out.reserve(t_grid.size());
  for (double t : t_grid) out.emplace_back(t, support(m, t).n);
  return out;
}

MergeThreshold merge_threshold(const Measure& m) {
  if (m.mu.size() < 2 || m.is_dirac())
    raise(errc::dirac_measure, "merge threshold is undefined for point masses");

  const auto mu = m.mu.atoms();
  const auto rho = m.rep.rho.atoms();
  auto g = [&](double x) { return g_value(m.rep, x); };

  // Infimum of g over the bounded gaps of supp(mu). Each gap is split at the
  // rho atoms it contains; on every piece g is convex and continuous up to
  // the gap endpoints (which are atoms of mu, never of rho), so the infimum
  // is the minimum over piece interiors and finite endpoints.
  double m_inf = kInf;
  const double xtol = 1e-12 * m.mu.scale();
  for (std::size_t j = 0; j + 1 < mu.size(); ++j) {
    const double A = mu[j].position, B = mu[j + 1].position;
    std::vector<double> ends;
    ends.push_back(A);
    for (const RealAtom& r : rho)
      if (r.position > A && r.position < B) ends.push_back(r.position);
    ends.push_back(B);
    for (std::size_t p = 0; p + 1 < ends.size(); ++p) {
      const double L = ends[p], R = ends[p + 1];
      // golden section never evaluates the endpoints, so poles are safe
      m_inf = std::min(m_inf, detail::golden_min(g, L, R, xtol).second);
      if (p == 0) m_inf = std::min(m_inf, g(L));                // gap endpoint
      if (p + 2 == ends.size()) m_inf = std::min(m_inf, g(R));  // gap endpoint
    }
  }

  MergeThreshold out;
  out.m_inf = m_inf;
  const double atom_term = 1.0 / (1.0 - m.mu.max_mass());
  out.t0 = std::max(std::isfinite(m_inf) ? 1.0 + 1.0 / m_inf : 1.0, atom_term);

  if (support(m, 1.01 * out.t0).n != 1)
    raise(errc::internal, "support did not merge above the computed threshold");
  return out;
}

bool StructuralReport::all_ok() const noexcept {
  for (CheckOutcome c : {psi_image_of_support, gap_image_gap_count,
                         mass_between_heavy_atoms, bounded_support,
                         null_interval_single_atom})
    if (c == CheckOutcome::fail) return false;
  return true;
}

StructuralReport structural_checks(const Measure& m, double t) {
  if (!(t > 1.0)) raise(errc::bad_t, "t must be greater than 1");
  StructuralReport rep;
  if (m.is_dirac()) return rep;  // everything vacuous for point masses

  const SupportReport sup = support(m, t);
  double out_scale = 1.0;
  for (const ComponentInterval& c : sup.components)
    out_scale = std::max({out_scale, std::abs(c.lo), std::abs(c.hi)});
  const double tol = 1e-9 * out_scale;

  auto in_support = [&](double u) {
    for (const ComponentInterval& c : sup.components)
      if (u >= c.lo - tol && u <= c.hi + tol) return true;
    return false;
  };

  // (a) psi_t(supp mu) lands inside supp(mu^t).
  {
    bool ok = true;
    for (const RealAtom& a : m.mu.atoms())
      ok = ok && in_support(psi_t_value(m.rep, t, a.position).psi);
    rep.psi_image_of_support = ok ? CheckOutcome::pass : CheckOutcome::fail;
  }

  // (b) the image of a bounded gap of supp(mu) holds at most two gaps of
  // supp(mu^t); counted over gaps lying inside the open image interval.
  {
    std::vector<std::pair<double, double>> sgaps;
    for (std::size_t i = 0; i + 1 < sup.components.size(); ++i)
      sgaps.emplace_back(sup.components[i].hi, sup.components[i + 1].lo);
    int counted = 0;
    bool ok = true;
    for (std::size_t j = 0; j + 1 < m.mu.size(); ++j) {
      const double lo = psi_t_value(m.rep, t, m.mu[j].position).psi;
      const double hi = psi_t_value(m.rep, t, m.mu[j + 1].position).psi;
      int inside = 0;
      for (const auto& [glo, ghi] : sgaps)
        if (glo >= lo - tol && ghi <= hi + tol) ++inside;
      counted += inside;
      ok = ok && inside <= 2;
    }
    rep.gap_image_gap_count = (counted == 0) ? CheckOutcome::vacuous
                              : ok           ? CheckOutcome::pass
                                             : CheckOutcome::fail;
  }

  // (c) positive mass between consecutive heavy atoms.
  {
    std::vector<double> heavy;
    for (const RealAtom& a : m.mu.atoms())
      if (mass_threshold_slack(a, t) >= -1e-12) heavy.push_back(a.position);
    if (heavy.size() < 2) {
      rep.mass_between_heavy_atoms = CheckOutcome::vacuous;
    } else {
      bool ok = true;
      for (std::size_t i = 0; i + 1 < heavy.size(); ++i) {
        const double lo = t * heavy[i], hi = t * heavy[i + 1];
        bool positive = false;
        for (const ComponentInterval& c : sup.components) {
          if (c.kind == ComponentInterval::Kind::ac_component &&
              std::min(c.hi, hi) - std::max(c.lo, lo) > tol)
            positive = true;
          if (c.kind == ComponentInterval::Kind::atom_point &&
              c.lo > lo + tol && c.lo < hi - tol)
            positive = true;
        }
        ok = ok && positive;
      }
      rep.mass_between_heavy_atoms = ok ? CheckOutcome::pass : CheckOutcome::fail;
    }
  }

  // (d) supp(mu) bounded iff supp(mu^t) bounded; atomic mu is always bounded.
  {
    bool ok = true;
    for (const ComponentInterval& c : sup.components)
      ok = ok && std::isfinite(c.lo) && std::isfinite(c.hi);
    rep.bounded_support = ok ? CheckOutcome::pass : CheckOutcome::fail;
  }

  // (e) every bounded maximal f_t-null interval carrying mu-mass holds
  // exactly one atom, of mass at least 1 - 1/t.
  {
    int instances = 0;
    bool ok = true;
    const double xtol = 1e-9 * m.mu.scale();
    for (std::size_t i = 0; i + 1 < sup.vplus.size(); ++i) {
      const double lo = sup.vplus[i].hi, hi = sup.vplus[i + 1].lo;
      std::vector<const RealAtom*> inside;
      for (const RealAtom& a : m.mu.atoms())
        if (a.position >= lo - xtol && a.position <= hi + xtol)
          inside.push_back(&a);
      if (inside.empty()) continue;
      ++instances;
      ok = ok && inside.size() == 1 &&
           mass_threshold_slack(*inside.front(), t) >= -1e-12;
    }
    rep.null_interval_single_atom = (instances == 0) ? CheckOutcome::vacuous
                                    : ok             ? CheckOutcome::pass
                                                     : CheckOutcome::fail;
  }

  return rep;
}

}  // namespace fc
