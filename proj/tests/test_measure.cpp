#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>

#include "freeconv/measure.hpp"
#include "helpers.hpp"

using namespace fc;
using doctest::Approx;
namespace t = fc::testing;

TEST_CASE("validation sorts and merges atoms") {
  MeasureSpec spec;
  spec.atoms = {{-1.0, 0.25}, {1.0, 0.25}, {0.0, 0.5}};
  const ValidatedMeasure vm = validate_measure(spec);
  REQUIRE(vm.atoms.size() == 3);
  CHECK(vm.atoms[0].position == -1.0);
  CHECK(vm.atoms[1].position == 0.0);
  CHECK(vm.atoms[2].position == 1.0);

  MeasureSpec merged;
  merged.atoms = {{0.0, 0.5}, {0.0, 0.5}};
  const ValidatedMeasure vm2 = validate_measure(merged);
  REQUIRE(vm2.atoms.size() == 1);
  CHECK(vm2.atoms[0].mass == Approx(1.0));
}

TEST_CASE("validation rejects bad measures") {
  MeasureSpec bad;
  bad.atoms = {{0.0, 0.7}};
  CHECK_THROWS_WITH_AS(validate_measure(bad), doctest::Contains("differs from 1"), Error);
  try {
    validate_measure(bad);
  } catch (const Error& e) {
    CHECK(e.code() == errc::not_probability);
  }

  MeasureSpec empty;
  CHECK_THROWS_AS(validate_measure(empty), Error);
  try {
    validate_measure(empty);
  } catch (const Error& e) {
    CHECK(e.code() == errc::empty_measure);
  }

  MeasureSpec inf_pos;
  inf_pos.atoms = {{std::numeric_limits<double>::infinity(), 1.0}};
  try {
    validate_measure(inf_pos);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == errc::non_finite_position);
  }
}

TEST_CASE("Cauchy transform on reference points") {
  const AtomicMeasure mu_b = t::bernoulli();
  const std::complex<double> i{0.0, 1.0};

  CHECK(std::abs(cauchy_transform(mu_b, i) - std::complex<double>{0.0, -0.5}) < 1e-15);
  CHECK(cauchy_transform(mu_b, {2.0, 0.0}).real() == Approx(2.0 / 3.0).epsilon(1e-14));

  const AtomicMeasure d3 = t::atoms({{3.0, 1.0}});
  CHECK(std::abs(cauchy_transform(d3, i) - 1.0 / (i - 3.0)) < 1e-15);

  CHECK_THROWS_AS(cauchy_transform(mu_b, {1.0, 0.0}), Error);
}

TEST_CASE("Cauchy derivative on reference points") {
  CHECK(cauchy_derivative(t::bernoulli(), 0.0) == Approx(-1.0));
  CHECK(cauchy_derivative(t::atoms({{0.0, 1.0}}), 2.0) == Approx(-0.25));
  CHECK_THROWS_AS(cauchy_derivative(t::bernoulli(), 1.0), Error);
}

TEST_CASE("zeros of the Cauchy transform") {
  const auto zb = zeros_of_cauchy(t::bernoulli());
  REQUIRE(zb.size() == 1);
  CHECK(std::abs(zb[0]) < 1e-13);

  const auto ze = zeros_of_cauchy(t::mu_eps(0.5));
  REQUIRE(ze.size() == 2);
  CHECK(ze[0] == Approx(-std::sqrt(0.5)).epsilon(1e-12));
  CHECK(ze[1] == Approx(std::sqrt(0.5)).epsilon(1e-12));

  CHECK(zeros_of_cauchy(t::atoms({{0.0, 1.0}})).empty());
}

TEST_CASE("upper half-plane properties of G") {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> re(-3.0, 3.0), im(0.01, 5.0);
  for (int trial = 0; trial < 20; ++trial) {
    const AtomicMeasure mu = t::random_measure(rng, 2 + trial % 7);
    for (int k = 0; k < 10; ++k) {
      const std::complex<double> z{re(rng), im(rng)};
      CHECK(cauchy_transform(mu, z).imag() < 0.0);
    }
    const std::complex<double> iy{0.0, 1e6};
    CHECK(std::abs(cauchy_transform(mu, iy) * iy - 1.0) < 1e-4);
  }
}

TEST_CASE("zeros interlace the atoms") {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 30; ++trial) {
    const AtomicMeasure mu = t::random_measure(rng, 2 + trial % 7);
    const auto zeros = zeros_of_cauchy(mu);
    REQUIRE(zeros.size() == mu.size() - 1);
    for (std::size_t j = 0; j < zeros.size(); ++j) {
      CHECK(zeros[j] > mu[j].position);
      CHECK(zeros[j] < mu[j + 1].position);
    }
  }
}

TEST_CASE("derivative matches a finite difference of G on the real line") {
  std::mt19937 rng(13);
  std::uniform_real_distribution<double> off(-4.0, 4.0);
  for (int trial = 0; trial < 10; ++trial) {
    const AtomicMeasure mu = t::random_measure(rng, 4);
    const double h = 1e-5 * mu.scale();
    int done = 0;
    while (done < 8) {
      const double x = off(rng);
      bool near_atom = false;
      for (const RealAtom& a : mu.atoms())
        near_atom = near_atom || std::abs(x - a.position) < 0.1;
      if (near_atom) continue;
      const double fd = (cauchy_transform(mu, {x + h, 0.0}).real() -
                         cauchy_transform(mu, {x - h, 0.0}).real()) /
                        (2.0 * h);
      CHECK(cauchy_derivative(mu, x) == Approx(fd).epsilon(1e-6));
      ++done;
    }
  }
}
