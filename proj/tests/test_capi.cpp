#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <string>
#include <vector>

#include "freeconv.h"

using doctest::Approx;

namespace {

const char* kMuEps05 =
    R"({"type":"atomic","atoms":[{"x":-1,"w":0.25},{"x":0,"w":0.5},{"x":1,"w":0.25}]})";
const char* kBernoulli =
    R"({"type":"atomic","atoms":[{"x":-1,"w":0.5},{"x":1,"w":0.5}]})";

}  // namespace

TEST_CASE("parse, serialize, reparse round trip") {
  fc_measure* m = nullptr;
  REQUIRE(fc_measure_parse_json(kMuEps05, 0, &m) == FC_OK);
  REQUIRE(fc_measure_atom_count(m) == 3);

  char* text = nullptr;
  REQUIRE(fc_measure_serialize(m, &text) == FC_OK);
  fc_measure* m2 = nullptr;
  REQUIRE(fc_measure_parse_json(text, 0, &m2) == FC_OK);

  std::vector<double> p1(3), w1(3), p2(3), w2(3);
  REQUIRE(fc_measure_atoms(m, p1.data(), w1.data(), 3) == FC_OK);
  REQUIRE(fc_measure_atoms(m2, p2.data(), w2.data(), 3) == FC_OK);
  CHECK(p1 == p2);
  CHECK(w1 == w2);

  fc_string_free(text);
  fc_measure_free(m2);
  fc_measure_free(m);
}

TEST_CASE("error codes and messages cross the boundary") {
  fc_measure* m = nullptr;
  CHECK(fc_measure_parse_json(R"({"type":"atomic","atoms":[{"x":0,"w":0.7}]})",
                              0, &m) == FC_ERR_NOT_PROBABILITY);
  CHECK(std::string(fc_last_error()).find("differs from 1") != std::string::npos);

  CHECK(fc_measure_parse_json(R"({"type":"atomic","atoms":[]})", 0, &m) ==
        FC_ERR_EMPTY_MEASURE);
  CHECK(fc_measure_parse_json("{broken", 0, &m) == FC_ERR_PARSE);
  CHECK(fc_measure_parse_json(nullptr, 0, &m) == FC_ERR_NULL_ARGUMENT);
  CHECK(std::string(fc_status_name(FC_ERR_BAD_T)) == "BadT");
}

TEST_CASE("measure construction from raw arrays") {
  const double pos[2] = {-1.0, 1.0};
  const double mass[2] = {0.5, 0.5};
  fc_measure* m = nullptr;
  REQUIRE(fc_measure_from_atoms(pos, mass, 2, &m) == FC_OK);
  CHECK(fc_measure_atom_count(m) == 2);
  CHECK(fc_measure_rho_count(m) == 1);
  fc_measure_free(m);

  const double bad_mass[2] = {0.5, 0.6};
  CHECK(fc_measure_from_atoms(pos, bad_mass, 2, &m) == FC_ERR_NOT_PROBABILITY);
  CHECK(fc_measure_from_atoms(nullptr, mass, 2, &m) == FC_ERR_NULL_ARGUMENT);
}

TEST_CASE("Nevanlinna data through the C API") {
  fc_measure* m = nullptr;
  REQUIRE(fc_measure_parse_json(kMuEps05, 0, &m) == FC_OK);

  double a = 1.0;
  CHECK(fc_measure_rep_a(m, &a) == FC_OK);
  CHECK(std::abs(a) < 1e-10);

  REQUIRE(fc_measure_rho_count(m) == 2);
  double pos[2], mass[2];
  REQUIRE(fc_measure_rho(m, pos, mass, 2) == FC_OK);
  CHECK(pos[0] == Approx(-std::sqrt(0.5)).epsilon(1e-10));
  CHECK(mass[0] == Approx(1.0 / 6.0).epsilon(1e-10));

  double g = 0.0;
  CHECK(fc_g_value(m, 0.0, &g) == FC_OK);
  CHECK(g == Approx(1.0).epsilon(1e-10));

  double f = 0.0, psi = 0.0;
  int cls = 9;
  CHECK(fc_boundary_point(m, 1.2, 0.0, &f, &psi, &cls) == FC_OK);
  CHECK(f == 0.0);
  CHECK(std::abs(psi) < 1e-12);
  CHECK(cls == -1);
  CHECK(fc_boundary_point(m, 0.5, 0.0, &f, &psi, &cls) == FC_ERR_BAD_T);

  fc_measure_free(m);
}

TEST_CASE("power and support through the C API") {
  fc_measure* m = nullptr;
  REQUIRE(fc_measure_parse_json(kBernoulli, 0, &m) == FC_OK);

  fc_power* p = nullptr;
  REQUIRE(fc_power_compute(m, 1.5, 64, &p) == FC_OK);
  REQUIRE(fc_power_atom_count(p) == 2);
  double pos[2], mass[2];
  REQUIRE(fc_power_atoms(p, pos, mass, 2) == FC_OK);
  CHECK(pos[0] == Approx(-1.5));
  CHECK(mass[0] == Approx(0.25).epsilon(1e-12));

  double total = 0.0;
  CHECK(fc_power_total_mass(p, &total) == FC_OK);
  CHECK(total == Approx(1.0).epsilon(1e-3));

  double c = 0.0;
  CHECK(fc_power_cdf(p, 0.0, &c) == FC_OK);
  CHECK(c == Approx(0.5).epsilon(1e-3));
  CHECK(fc_power_cdf(p, 10.0, &c) == FC_OK);
  CHECK(c == Approx(1.0).epsilon(1e-3));

  fc_support* s = nullptr;
  REQUIRE(fc_support_compute(m, 1.5, &s) == FC_OK);
  CHECK(fc_support_ncomponents(s) == 3);
  double lo, hi;
  int kind;
  REQUIRE(fc_support_component(s, 1, &lo, &hi, &kind) == FC_OK);
  CHECK(kind == 0);
  CHECK(lo == Approx(-std::sqrt(2.0)).epsilon(1e-9));
  CHECK(fc_support_component(s, 7, &lo, &hi, &kind) == FC_ERR_BAD_DIMENSION);

  const double ts[3] = {1.5, 2.0, 3.0};
  int ns[3];
  REQUIRE(fc_ncurve(m, ts, 3, ns) == FC_OK);
  CHECK(ns[0] == 3);
  CHECK(ns[1] == 1);
  CHECK(ns[2] == 1);

  double m_inf = 0.0, t0 = 0.0;
  REQUIRE(fc_merge_threshold(m, &m_inf, &t0) == FC_OK);
  CHECK(m_inf == Approx(1.0).epsilon(1e-9));
  CHECK(t0 == Approx(2.0).epsilon(1e-9));

  fc_support_free(s);
  fc_power_free(p);
  fc_measure_free(m);
}

TEST_CASE("oracle through the C API") {
  fc_measure* m = nullptr;
  REQUIRE(fc_measure_parse_json(kBernoulli, 0, &m) == FC_OK);

  fc_ecdf* e = nullptr;
  REQUIRE(fc_rmt_sample(m, 2, 64, 2, 11, &e) == FC_OK);
  CHECK(fc_ecdf_count(e) == 128);
  std::vector<double> vals(128);
  REQUIRE(fc_ecdf_samples(e, vals.data(), vals.size()) == FC_OK);
  CHECK(std::is_sorted(vals.begin(), vals.end()));

  fc_power* p = nullptr;
  REQUIRE(fc_power_compute(m, 2.0, 256, &p) == FC_OK);
  double ks = 0.0;
  REQUIRE(fc_ks_power_vs_ecdf(p, e, &ks) == FC_OK);
  CHECK(ks > 0.0);
  CHECK(ks < 0.5);

  CHECK(fc_rmt_sample(m, 2, 10, 1, 1, &e) == FC_ERR_BAD_DIMENSION);

  fc_power_free(p);
  fc_ecdf_free(e);
  fc_measure_free(m);
}
