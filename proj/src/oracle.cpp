#include "freeconv/oracle.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <numbers>
#include <thread>

#include "freeconv/linalg.hpp"

namespace fc {

namespace {

// Inverse-CDF sampler over an atomic probability measure.
class AtomSampler {
public:
  explicit AtomSampler(const AtomicMeasure& mu) {
    positions_.reserve(mu.size());
    cum_.reserve(mu.size());
    double acc = 0.0;
    for (const RealAtom& a : mu.atoms()) {
      acc += a.mass;
      positions_.push_back(a.position);
      cum_.push_back(acc);
    }
    cum_.back() = std::max(cum_.back(), 1.0);  // guard the top bin
  }

  double operator()(Rng& rng) const {
    const double u = rng.uniform();
    const std::size_t i =
        std::upper_bound(cum_.begin(), cum_.end(), u) - cum_.begin();
    return positions_[std::min(i, positions_.size() - 1)];
  }

private:
  std::vector<double> positions_;
  std::vector<double> cum_;
};

std::vector<double> one_trial(const AtomSampler& sampler, int n, int dim,
                              std::uint64_t trial_seed) {
  Rng rng(trial_seed);
  SquareMatrix a(dim);
  std::vector<double> diag(dim);
  for (int k = 0; k < n; ++k) {
    for (int i = 0; i < dim; ++i) diag[i] = sampler(rng);
    const SquareMatrix q = haar_orthogonal(dim, rng);
    add_conjugated_diagonal(a, q, diag);
  }
  return symmetric_eigenvalues(std::move(a));
}

}  // namespace

double EmpiricalCDF::cdf(double x) const noexcept {
  const auto it = std::upper_bound(samples.begin(), samples.end(), x);
  return static_cast<double>(it - samples.begin()) / samples.size();
}

EmpiricalCDF rmt_sample(const AtomicMeasure& mu, int n, int dim, int trials,
                        std::uint64_t seed) {
  if (n < 2) raise(errc::bad_dimension, "convolution power n must be at least 2");
  if (dim < 50) raise(errc::bad_dimension, "matrix dimension must be at least 50");
  if (trials < 1) raise(errc::bad_dimension, "need at least one trial");
  mu.require_probability();

  const AtomSampler sampler(mu);
  std::vector<std::vector<double>> per_trial(trials);

  // Trials are independent given the derived seeds, so they can run on any
  // number of workers; aggregation sorts, making the result order-free.
  const int workers =
      std::max(1, std::min<int>(trials, std::thread::hardware_concurrency()));
  std::atomic<int> next{0};
  auto work = [&] {
    for (int trial = next.fetch_add(1); trial < trials; trial = next.fetch_add(1))
      per_trial[trial] = one_trial(sampler, n, dim, seed + static_cast<std::uint64_t>(trial));
  };
  std::vector<std::thread> pool;
  for (int w = 1; w < workers; ++w) pool.emplace_back(work);
  work();
  for (std::thread& th : pool) th.join();

  EmpiricalCDF out;
  out.samples.reserve(static_cast<std::size_t>(trials) * dim);
  for (const auto& tr : per_trial)
    out.samples.insert(out.samples.end(), tr.begin(), tr.end());
  std::sort(out.samples.begin(), out.samples.end());
  return out;
}

double ks_distance(const EmpiricalCDF& emp, const std::function<double(double)>& cdf) {
  const std::size_t n = emp.count();
  if (n == 0) raise(errc::bad_dimension, "empirical distribution is empty");
  double dist = 0.0;
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j + 1 < n && emp.samples[j + 1] == emp.samples[i]) ++j;
    const double x = emp.samples[i];
    const double hi = static_cast<double>(j + 1) / n;  // value at x
    const double lo = static_cast<double>(i) / n;      // value just below x
    const double fx = cdf(x);
    const double fx_left = cdf(std::nextafter(x, -std::numeric_limits<double>::infinity()));
    dist = std::max({dist, std::abs(hi - fx), std::abs(lo - fx_left)});
    i = j + 1;
  }
  return dist;
}

ReferenceLaw reference_law(std::string_view name, std::span<const double> params) {
  ReferenceLaw law;
  law.name = std::string(name);
  const double pi = std::numbers::pi;
  if (name == "semicircle_t") {
    if (params.size() != 1 || !(params[0] >= 1.0))
      raise(errc::unknown_law, "semicircle_t takes one parameter t >= 1");
    const double t = params[0];
    const double edge = 2.0 * std::sqrt(t);
    law.domain_lo = -edge;
    law.domain_hi = edge;
    law.pdf = [t, edge, pi](double u) {
      if (std::abs(u) >= edge) return 0.0;
      return std::sqrt(4.0 * t - u * u) / (2.0 * pi * t);
    };
    law.cdf = [t, edge, pi](double u) {
      if (u <= -edge) return 0.0;
      if (u >= edge) return 1.0;
      return 0.5 + u * std::sqrt(4.0 * t - u * u) / (4.0 * pi * t) +
             std::asin(u / edge) / pi;
    };
  } else if (name == "bernoulli_arcsine") {
    if (!params.empty())
      raise(errc::unknown_law, "bernoulli_arcsine takes no parameters");
    law.domain_lo = -2.0;
    law.domain_hi = 2.0;
    law.pdf = [pi](double u) {
      if (std::abs(u) >= 2.0) return 0.0;
      return 1.0 / (pi * std::sqrt(4.0 - u * u));
    };
    law.cdf = [pi](double u) {
      if (u <= -2.0) return 0.0;
      if (u >= 2.0) return 1.0;
      return 0.5 + std::asin(0.5 * u) / pi;
    };
  } else if (name == "mu_eps_g") {
    if (params.size() != 1 || !(params[0] > 0.0 && params[0] < 1.0))
      raise(errc::unknown_law, "mu_eps_g takes one parameter 0 < eps < 1");
    const double eps = params[0];
    law.domain_lo = -std::numeric_limits<double>::infinity();
    law.domain_hi = std::numeric_limits<double>::infinity();
    law.pdf = [eps](double x) {
      const double den = x * x - 1.0 + eps;
      return (eps * x * x + eps * (1.0 - eps)) / (den * den);
    };
  } else if (name == "mu_eps_rho") {
    if (params.size() != 1 || !(params[0] > 0.0 && params[0] < 1.0))
      raise(errc::unknown_law, "mu_eps_rho takes one parameter 0 < eps < 1");
    const double eps = params[0];
    const double pos = std::sqrt(1.0 - eps);
    const double w = eps / (2.0 * (2.0 - eps));
    law.domain_lo = -pos;
    law.domain_hi = pos;
    law.atoms = {{-pos, w}, {pos, w}};
  } else {
    raise(errc::unknown_law, "unknown reference law: " + std::string(name));
  }
  return law;
}

}  // namespace fc
