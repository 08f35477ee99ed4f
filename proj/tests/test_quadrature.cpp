#include <cmath>
#include <limits>

#include "doctest.h"
#include "liouville/quadrature.hpp"

using namespace liouville;

namespace {
double gauss(double x, double mean, double sd) {
    const double u = (x - mean) / sd;
    return std::exp(-0.5 * u * u) / (sd * std::sqrt(2.0 * M_PI));
}
}  // namespace

TEST_CASE("polynomial integral is exact") {
    const double v = integrate([](double x) { return x * x; }, 0.0, 1.0, 1e-12);
    CHECK(v == doctest::Approx(1.0 / 3.0).epsilon(1e-13));
}

TEST_CASE("gaussian mass over a wide window") {
    const double v =
        integrate([](double x) { return gauss(x, 0.0, 1.0); }, -10.0, 10.0, 1e-10);
    CHECK(std::abs(v - 1.0) < 1e-9);
}

TEST_CASE("bracketing seed points catch a narrow spike") {
    const double w = 1e-4;
    auto spike = [&](double x) { return gauss(x, 3.0, w); };
    const double with_seed = integrate(spike, -500.0, 500.0, 1e-10, 4000,
                                       {3.0 - 4 * w, 3.0 - w, 3.0, 3.0 + w, 3.0 + 4 * w});
    CHECK(std::abs(with_seed - 1.0) < 1e-8);
}

TEST_CASE("power-endpoint integration resolves beta-like singularities") {
    // x^{-0.7} (1-x)^{-0.3} / B(0.3, 0.7) integrates to one.
    const double norm = std::exp(std::lgamma(0.3) + std::lgamma(0.7) - std::lgamma(1.0));
    auto lower = [&](double d) {
        return std::pow(d, -0.7) * std::pow(1.0 - d, -0.3) / norm;
    };
    auto upper = [&](double e) {
        return std::pow(1.0 - e, -0.7) * std::pow(e, -0.3) / norm;
    };
    const double v = integrate_power_endpoints(lower, upper, 0.0, 1.0, -0.7, -0.3, 1e-10);
    CHECK(std::abs(v - 1.0) < 1e-8);
}

TEST_CASE("truncated integration finds unbounded support") {
    const double v = integrate_truncated(
        [](double x) { return gauss(x, -2.0, 3.0); },
        -std::numeric_limits<double>::infinity(),
        std::numeric_limits<double>::infinity(), 0.0, 1e-10);
    CHECK(std::abs(v - 1.0) < 1e-8);
}

TEST_CASE("numeric cdf matches the normal law") {
    NumericCdf cdf([](double x) { return gauss(x, 0.0, 1.0); }, -10.0, 10.0, 1e-11);
    CHECK(cdf.total_mass() == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(cdf.cdf(0.0) == doctest::Approx(0.5).epsilon(1e-8));
    CHECK(cdf.cdf(1.0) == doctest::Approx(0.8413447460685429).epsilon(1e-7));
    CHECK(cdf.invert(0.975) == doctest::Approx(1.959963984540054).epsilon(1e-6));
    CHECK(cdf.invert(0.5) == doctest::Approx(0.0).epsilon(1e-8));
}

TEST_CASE("numeric cdf handles endpoint singularities") {
    // Beta(1/2, 1/2) density blows up at both ends.
    auto dens = [](double x) { return 1.0 / (M_PI * std::sqrt(x * (1.0 - x))); };
    NumericCdf cdf(dens, 1e-12, 1.0 - 1e-12, 1e-8);
    CHECK(cdf.total_mass() == doctest::Approx(1.0).epsilon(1e-5));
    CHECK(cdf.cdf(0.5) == doctest::Approx(0.5).epsilon(1e-5));
}
