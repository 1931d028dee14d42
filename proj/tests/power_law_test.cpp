#include "fogsim/power_law.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "catch2/catch_amalgamated.hpp"

using fogsim::BoundedPareto;
using fogsim::PowerLawSpec;
using fogsim::RngStream;

namespace {

// Independent oracle: E[X] by Simpson quadrature of x f(x) dx in log space.
// The integrand is a pure exponential in t = ln x, so the rule converges far
// below the tolerances asserted here.
double quadrature_mean(const BoundedPareto& d) {
  const double a = d.shape();
  const double lo = std::log(d.lower());
  const double hi = std::log(d.upper());
  const int n = 20000;  // even
  const double h = (hi - lo) / n;
  const double norm = 1.0 - std::pow(d.lower() / d.upper(), a);
  auto integrand = [&](double t) {
    const double x = std::exp(t);
    const double pdf = a * std::pow(d.lower(), a) * std::pow(x, -a - 1.0) / norm;
    return x * pdf * x;  // extra x from dx = x dt
  };
  double sum = integrand(lo) + integrand(hi);
  for (int i = 1; i < n; ++i) sum += (i % 2 ? 4.0 : 2.0) * integrand(lo + i * h);
  return sum * h / 3.0;
}

double ks_statistic(std::vector<double> xs, const BoundedPareto& d) {
  std::sort(xs.begin(), xs.end());
  const double n = static_cast<double>(xs.size());
  double ks = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double f = d.cdf(xs[i]);
    ks = std::max(ks, std::max(f - static_cast<double>(i) / n,
                               static_cast<double>(i + 1) / n - f));
  }
  return ks;
}

}  // namespace

TEST_CASE("ratio 1 collapses to a point mass at the mean") {
  const BoundedPareto d(PowerLawSpec{100.0, 0.48, 1.0});
  RngStream rng(7);
  for (int i = 0; i < 32; ++i) REQUIRE(d.sample(rng) == 100.0);
  REQUIRE(d.lower() == 100.0);
  REQUIRE(d.upper() == 100.0);
}

TEST_CASE("solved lower bound reproduces the target mean") {
  const std::vector<PowerLawSpec> specs = {
      {100.0, 0.48, 1e6}, {100.0, 0.48, 1e3}, {10.0, 0.48, 10.0},
      {4.0, 0.8, 100.0},  {10.0, 1.0, 1e3},   {5.0, 2.0, 1e4},
      {4.0, 0.1, 100.0},
  };
  for (const PowerLawSpec& spec : specs) {
    const BoundedPareto d(spec);
    REQUIRE(d.upper() == Catch::Approx(d.lower() * spec.ratio).epsilon(1e-12));
    REQUIRE(quadrature_mean(d) == Catch::Approx(spec.mean).epsilon(1e-9));
  }
}

TEST_CASE("exponent 1 mean formula joins the generic branch continuously") {
  const double r = 1e4;
  const double at_one = fogsim::bounded_pareto_mean_factor(1.0, r);
  REQUIRE(fogsim::bounded_pareto_mean_factor(1.0 - 1e-9, r) ==
          Catch::Approx(at_one).epsilon(1e-6));
  REQUIRE(fogsim::bounded_pareto_mean_factor(1.0 + 1e-9, r) ==
          Catch::Approx(at_one).epsilon(1e-6));
}

TEST_CASE("inverse CDF endpoints land on the solved support") {
  const BoundedPareto d(PowerLawSpec{10.0, 0.48, 1e6});
  REQUIRE(d.quantile(0.0) == d.lower());
  REQUIRE(d.quantile(1.0) == Catch::Approx(d.upper()).epsilon(1e-9));
  REQUIRE(d.quantile(1.0 - 1e-12) ==
          Catch::Approx(d.upper()).epsilon(1e-4));

  RngStream rng(11);
  for (int i = 0; i < 10000; ++i) {
    const double x = d.sample(rng);
    REQUIRE(x >= d.lower());
    REQUIRE(x < d.upper());
  }
}

TEST_CASE("empirical mean matches the analytic mean") {
  const BoundedPareto d(PowerLawSpec{100.0, 0.48, 1e6});
  RngStream rng(4242);
  const int n = 1'000'000;

  // Stratified draws (one uniform per 1/n stratum) estimate the same mean
  // with O(1/n) error, which keeps a heavy right tail from swamping the 1%
  // tolerance the way plain iid draws would at this sample size.
  double stratified = 0.0;
  for (int i = 0; i < n; ++i)
    stratified += d.quantile((static_cast<double>(i) + rng.uniform()) / n);
  stratified /= n;
  REQUIRE(stratified == Catch::Approx(100.0).epsilon(0.01));

  // The plain iid path stays within a few standard errors.
  double iid = 0.0;
  for (int i = 0; i < n; ++i) iid += d.sample(rng);
  iid /= n;
  REQUIRE(iid == Catch::Approx(100.0).epsilon(0.05));
}

TEST_CASE("empirical CDF matches the closed form (KS)") {
  RngStream rng(99);
  const int n = 1'000'000;
  for (const PowerLawSpec& spec :
       {PowerLawSpec{100.0, 0.48, 1e6}, PowerLawSpec{10.0, 1.0, 1e3}}) {
    const BoundedPareto d(spec);
    std::vector<double> xs(n);
    for (double& x : xs) x = d.sample(rng);
    REQUIRE(ks_statistic(std::move(xs), d) < 0.002);
  }
}

TEST_CASE("invalid specs are rejected") {
  REQUIRE_THROWS_AS((PowerLawSpec{0.0, 0.48, 1e6}.validate()), std::invalid_argument);
  REQUIRE_THROWS_AS((PowerLawSpec{-1.0, 0.48, 1e6}.validate()), std::invalid_argument);
  REQUIRE_THROWS_AS((PowerLawSpec{1.0, 0.0, 1e6}.validate()), std::invalid_argument);
  REQUIRE_THROWS_AS((PowerLawSpec{1.0, 2.5, 1e6}.validate()), std::invalid_argument);
  REQUIRE_THROWS_AS((PowerLawSpec{1.0, 0.48, 0.5}.validate()), std::invalid_argument);
}
