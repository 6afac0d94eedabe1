#include "freeconv.h"

#include <cstring>
#include <memory>
#include <new>
#include <string>

#include "freeconv/measure_io.hpp"
#include "freeconv/nevanlinna.hpp"
#include "freeconv/oracle.hpp"
#include "freeconv/semigroup.hpp"
#include "freeconv/support.hpp"

struct fc_measure {
  fc::ValidatedMeasure vm;
  fc::Measure m;
};

struct fc_power {
  fc::PowerResult p;
  std::vector<double> flat_u;
  std::vector<double> flat_pdf;
};

struct fc_support {
  fc::SupportReport s;
};

struct fc_ecdf {
  fc::EmpiricalCDF e;
};

namespace {

thread_local std::string g_last_error;

fc_status map_code(fc::errc code) {
  switch (code) {
    case fc::errc::ok: return FC_OK;
    case fc::errc::not_probability: return FC_ERR_NOT_PROBABILITY;
    case fc::errc::empty_measure: return FC_ERR_EMPTY_MEASURE;
    case fc::errc::non_finite_position: return FC_ERR_NON_FINITE_POSITION;
    case fc::errc::parse_error: return FC_ERR_PARSE;
    case fc::errc::io_error: return FC_ERR_IO;
    case fc::errc::bad_t: return FC_ERR_BAD_T;
    case fc::errc::pole_hit: return FC_ERR_POLE_HIT;
    case fc::errc::outside_omega: return FC_ERR_OUTSIDE_OMEGA;
    case fc::errc::not_in_vplus: return FC_ERR_NOT_IN_VPLUS;
    case fc::errc::dirac_measure: return FC_ERR_DIRAC_MEASURE;
    case fc::errc::empty_rho: return FC_ERR_EMPTY_RHO;
    case fc::errc::bad_dimension: return FC_ERR_BAD_DIMENSION;
    case fc::errc::degenerate_density: return FC_ERR_DEGENERATE_DENSITY;
    case fc::errc::unknown_law: return FC_ERR_UNKNOWN_LAW;
    case fc::errc::null_argument: return FC_ERR_NULL_ARGUMENT;
    case fc::errc::internal: return FC_ERR_INTERNAL;
  }
  return FC_ERR_INTERNAL;
}

template <class Fn>
fc_status guarded(Fn&& fn) {
  try {
    fn();
    return FC_OK;
  } catch (const fc::Error& e) {
    g_last_error = e.what();
    return map_code(e.code());
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return FC_ERR_INTERNAL;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return FC_ERR_INTERNAL;
  }
}

fc_status require(bool ok, const char* what) {
  if (!ok) {
    g_last_error = what;
    return FC_ERR_NULL_ARGUMENT;
  }
  return FC_OK;
}

fc_status copy_atoms(std::span<const fc::RealAtom> atoms, double* positions,
                     double* masses, size_t capacity) {
  if (fc_status s = require(positions && masses, "null output array")) return s;
  if (capacity < atoms.size()) {
    g_last_error = "output capacity too small";
    return FC_ERR_BAD_DIMENSION;
  }
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    positions[i] = atoms[i].position;
    masses[i] = atoms[i].mass;
  }
  return FC_OK;
}

}  // namespace

extern "C" {

const char* fc_status_name(fc_status s) {
  switch (s) {
    case FC_OK: return "Ok";
    case FC_ERR_NOT_PROBABILITY: return "NotProbability";
    case FC_ERR_EMPTY_MEASURE: return "EmptyMeasure";
    case FC_ERR_NON_FINITE_POSITION: return "NonFinitePosition";
    case FC_ERR_PARSE: return "ParseError";
    case FC_ERR_IO: return "IoError";
    case FC_ERR_BAD_T: return "BadT";
    case FC_ERR_POLE_HIT: return "PoleHit";
    case FC_ERR_OUTSIDE_OMEGA: return "OutsideOmega";
    case FC_ERR_NOT_IN_VPLUS: return "NotInVPlus";
    case FC_ERR_DIRAC_MEASURE: return "DiracMeasure";
    case FC_ERR_EMPTY_RHO: return "EmptyRho";
    case FC_ERR_BAD_DIMENSION: return "BadDimension";
    case FC_ERR_DEGENERATE_DENSITY: return "DegenerateDensity";
    case FC_ERR_UNKNOWN_LAW: return "UnknownLaw";
    case FC_ERR_NULL_ARGUMENT: return "NullArgument";
    case FC_ERR_INTERNAL: return "InternalError";
  }
  return "UnknownError";
}

const char* fc_last_error(void) { return g_last_error.c_str(); }

fc_status fc_measure_parse_json(const char* json_text, int discretize_atoms,
                                fc_measure** out) {
  if (fc_status s = require(json_text && out, "null argument")) return s;
  return guarded([&] {
    const fc::MeasureSpec spec = fc::parse_measure_json(json_text);
    const int n_atoms = discretize_atoms > 0 ? discretize_atoms : 200;
    auto h = std::make_unique<fc_measure>();
    h->vm = fc::validate_measure(spec, n_atoms);
    h->m = fc::build_measure(h->vm);
    *out = h.release();
  });
}

fc_status fc_measure_from_atoms(const double* positions, const double* masses,
                                size_t count, fc_measure** out) {
  if (fc_status s = require(positions && masses && out, "null argument")) return s;
  return guarded([&] {
    fc::MeasureSpec spec;
    spec.kind = fc::MeasureSpec::Kind::atomic;
    for (size_t i = 0; i < count; ++i)
      spec.atoms.push_back({positions[i], masses[i]});
    auto h = std::make_unique<fc_measure>();
    h->vm = fc::validate_measure(spec);
    h->m = fc::build_measure(h->vm);
    *out = h.release();
  });
}

void fc_measure_free(fc_measure* m) { delete m; }

fc_status fc_measure_serialize(const fc_measure* m, char** json_out) {
  if (fc_status s = require(m && json_out, "null argument")) return s;
  return guarded([&] {
    const std::string text = fc::serialize_measure(m->vm);
    char* buf = new char[text.size() + 1];
    std::memcpy(buf, text.c_str(), text.size() + 1);
    *json_out = buf;
  });
}

void fc_string_free(char* s) { delete[] s; }

size_t fc_measure_atom_count(const fc_measure* m) {
  return m ? m->m.mu.size() : 0;
}

fc_status fc_measure_atoms(const fc_measure* m, double* positions,
                           double* masses, size_t capacity) {
  if (fc_status s = require(m, "null measure")) return s;
  return copy_atoms(m->m.mu.atoms(), positions, masses, capacity);
}

fc_status fc_measure_rep_a(const fc_measure* m, double* a_out) {
  if (fc_status s = require(m && a_out, "null argument")) return s;
  *a_out = m->m.rep.a;
  return FC_OK;
}

size_t fc_measure_rho_count(const fc_measure* m) {
  return m ? m->m.rep.rho.size() : 0;
}

fc_status fc_measure_rho(const fc_measure* m, double* positions, double* masses,
                         size_t capacity) {
  if (fc_status s = require(m, "null measure")) return s;
  return copy_atoms(m->m.rep.rho.atoms(), positions, masses, capacity);
}

fc_status fc_g_value(const fc_measure* m, double x, double* g_out) {
  if (fc_status s = require(m && g_out, "null argument")) return s;
  return guarded([&] { *g_out = fc::g_value(m->m.rep, x); });
}

fc_status fc_boundary_point(const fc_measure* m, double t, double x,
                            double* f_out, double* psi_out, int* class_out) {
  if (fc_status s = require(m && f_out && psi_out && class_out, "null argument"))
    return s;
  return guarded([&] {
    const fc::BoundaryPoint bp = fc::psi_t_value(m->m.rep, t, x);
    *f_out = bp.f;
    *psi_out = bp.psi;
    *class_out = bp.cls == fc::PointClass::plus   ? 1
                 : bp.cls == fc::PointClass::zero ? 0
                                                  : -1;
  });
}

fc_status fc_power_compute(const fc_measure* m, double t,
                           int points_per_component, fc_power** out) {
  if (fc_status s = require(m && out, "null argument")) return s;
  return guarded([&] {
    fc::SamplingOptions opts;
    if (points_per_component > 0) opts.points_per_component = points_per_component;
    auto h = std::make_unique<fc_power>();
    h->p = fc::convolve_power(m->m, t, opts);
    for (const fc::SampledComponent& comp : h->p.components)
      for (const fc::DensitySample& smp : comp.samples) {
        h->flat_u.push_back(smp.u);
        h->flat_pdf.push_back(smp.pdf);
      }
    *out = h.release();
  });
}

void fc_power_free(fc_power* p) { delete p; }

size_t fc_power_atom_count(const fc_power* p) {
  return p ? p->p.atoms.size() : 0;
}

fc_status fc_power_atoms(const fc_power* p, double* positions, double* masses,
                         size_t capacity) {
  if (fc_status s = require(p && positions && masses, "null argument")) return s;
  if (capacity < p->p.atoms.size()) {
    g_last_error = "output capacity too small";
    return FC_ERR_BAD_DIMENSION;
  }
  for (std::size_t i = 0; i < p->p.atoms.size(); ++i) {
    positions[i] = p->p.atoms[i].position;
    masses[i] = p->p.atoms[i].mass;
  }
  return FC_OK;
}

size_t fc_power_sample_count(const fc_power* p) {
  return p ? p->flat_u.size() : 0;
}

fc_status fc_power_samples(const fc_power* p, double* u, double* pdf,
                           size_t capacity) {
  if (fc_status s = require(p && u && pdf, "null argument")) return s;
  if (capacity < p->flat_u.size()) {
    g_last_error = "output capacity too small";
    return FC_ERR_BAD_DIMENSION;
  }
  std::memcpy(u, p->flat_u.data(), p->flat_u.size() * sizeof(double));
  std::memcpy(pdf, p->flat_pdf.data(), p->flat_pdf.size() * sizeof(double));
  return FC_OK;
}

fc_status fc_power_total_mass(const fc_power* p, double* mass_out) {
  if (fc_status s = require(p && mass_out, "null argument")) return s;
  *mass_out = p->p.total_mass();
  return FC_OK;
}

fc_status fc_power_cdf(const fc_power* p, double u, double* cdf_out) {
  if (fc_status s = require(p && cdf_out, "null argument")) return s;
  return guarded([&] { *cdf_out = p->p.cdf(u); });
}

fc_status fc_support_compute(const fc_measure* m, double t, fc_support** out) {
  if (fc_status s = require(m && out, "null argument")) return s;
  return guarded([&] {
    auto h = std::make_unique<fc_support>();
    h->s = fc::support(m->m, t);
    *out = h.release();
  });
}

void fc_support_free(fc_support* s) { delete s; }

int fc_support_ncomponents(const fc_support* s) { return s ? s->s.n : 0; }

fc_status fc_support_component(const fc_support* s, int i, double* lo,
                               double* hi, int* kind) {
  if (fc_status st = require(s && lo && hi && kind, "null argument")) return st;
  if (i < 0 || i >= static_cast<int>(s->s.components.size())) {
    g_last_error = "component index out of range";
    return FC_ERR_BAD_DIMENSION;
  }
  const fc::ComponentInterval& c = s->s.components[i];
  *lo = c.lo;
  *hi = c.hi;
  *kind = c.kind == fc::ComponentInterval::Kind::atom_point ? 1 : 0;
  return FC_OK;
}

int fc_support_vplus_count(const fc_support* s) {
  return s ? static_cast<int>(s->s.vplus.size()) : 0;
}

fc_status fc_support_vplus(const fc_support* s, int i, double* lo, double* hi) {
  if (fc_status st = require(s && lo && hi, "null argument")) return st;
  if (i < 0 || i >= static_cast<int>(s->s.vplus.size())) {
    g_last_error = "V+ index out of range";
    return FC_ERR_BAD_DIMENSION;
  }
  *lo = s->s.vplus[i].lo;
  *hi = s->s.vplus[i].hi;
  return FC_OK;
}

fc_status fc_ncurve(const fc_measure* m, const double* ts, size_t count,
                    int* n_out) {
  if (fc_status s = require(m && ts && n_out, "null argument")) return s;
  return guarded([&] {
    const auto curve = fc::n_curve(m->m, std::span<const double>(ts, count));
    for (std::size_t i = 0; i < curve.size(); ++i) n_out[i] = curve[i].second;
  });
}

fc_status fc_merge_threshold(const fc_measure* m, double* m_inf_out,
                             double* t0_out) {
  if (fc_status s = require(m && m_inf_out && t0_out, "null argument")) return s;
  return guarded([&] {
    const fc::MergeThreshold mt = fc::merge_threshold(m->m);
    *m_inf_out = mt.m_inf;
    *t0_out = mt.t0;
  });
}

fc_status fc_rmt_sample(const fc_measure* m, int n, int dim, int trials,
                        uint64_t seed, fc_ecdf** out) {
  if (fc_status s = require(m && out, "null argument")) return s;
  return guarded([&] {
    auto h = std::make_unique<fc_ecdf>();
    h->e = fc::rmt_sample(m->m.mu, n, dim, trials, seed);
    *out = h.release();
  });
}

void fc_ecdf_free(fc_ecdf* e) { delete e; }

size_t fc_ecdf_count(const fc_ecdf* e) { return e ? e->e.count() : 0; }

fc_status fc_ecdf_samples(const fc_ecdf* e, double* values, size_t capacity) {
  if (fc_status s = require(e && values, "null argument")) return s;
  if (capacity < e->e.count()) {
    g_last_error = "output capacity too small";
    return FC_ERR_BAD_DIMENSION;
  }
  std::memcpy(values, e->e.samples.data(), e->e.count() * sizeof(double));
  return FC_OK;
}

fc_status fc_ks_power_vs_ecdf(const fc_power* p, const fc_ecdf* e,
                              double* ks_out) {
  if (fc_status s = require(p && e && ks_out, "null argument")) return s;
  return guarded([&] {
    *ks_out = fc::ks_distance(e->e, [p](double u) { return p->p.cdf(u); });
  });
}

}  // extern "C"
