#include <cmath>
#include <vector>

#include "doctest.h"
#include "liouville/random.hpp"

using namespace liouville;

namespace {

struct Moments {
    double mean;
    double var;
};

template <typename F>
Moments sample_moments(std::size_t n, F draw) {
    double s = 0.0, ss = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double x = draw();
        s += x;
        ss += x * x;
    }
    const double mean = s / static_cast<double>(n);
    return {mean, ss / static_cast<double>(n) - mean * mean};
}

}  // namespace

TEST_CASE("streams are reproducible and distinct") {
    RngStream a(42, 7), b(42, 7), c(42, 8);
    bool all_equal = true, any_equal_c = false;
    for (int i = 0; i < 64; ++i) {
        const auto va = a.next_u64();
        all_equal = all_equal && va == b.next_u64();
        any_equal_c = any_equal_c || va == c.next_u64();
    }
    CHECK(all_equal);
    CHECK_FALSE(any_equal_c);
}

TEST_CASE("uniform stays inside the open unit interval") {
    RngStream rng(1);
    for (int i = 0; i < 10000; ++i) {
        const double u = rng.uniform();
        CHECK(u > 0.0);
        CHECK(u < 1.0);
    }
}

TEST_CASE("normal moments") {
    RngStream rng(2);
    const auto m = sample_moments(200000, [&] { return rng.normal(1.5, 2.0); });
    CHECK(m.mean == doctest::Approx(1.5).epsilon(0.02));
    CHECK(m.var == doctest::Approx(4.0).epsilon(0.03));
}

TEST_CASE("gamma moments across the shape boundary") {
    RngStream rng(3);
    for (double shape : {0.4, 1.0, 3.7}) {
        const auto m = sample_moments(200000, [&] { return rng.gamma(shape); });
        CHECK(m.mean == doctest::Approx(shape).epsilon(0.02));
        CHECK(m.var == doctest::Approx(shape).epsilon(0.04));
    }
}

TEST_CASE("beta moments") {
    RngStream rng(4);
    const double a = 0.3, b = 0.7;
    const auto m = sample_moments(100000, [&] { return rng.beta(a, b); });
    CHECK(m.mean == doctest::Approx(a / (a + b)).epsilon(0.02));
    CHECK(m.var ==
          doctest::Approx(a * b / ((a + b) * (a + b) * (a + b + 1.0))).epsilon(0.05));
}

TEST_CASE("binomial and poisson counts") {
    RngStream rng(5);
    const auto mb = sample_moments(
        100000, [&] { return static_cast<double>(rng.binomial(20, 0.3)); });
    CHECK(mb.mean == doctest::Approx(6.0).epsilon(0.01));
    CHECK(mb.var == doctest::Approx(4.2).epsilon(0.05));
    const auto mp = sample_moments(
        100000, [&] { return static_cast<double>(rng.poisson(2.5)); });
    CHECK(mp.mean == doctest::Approx(2.5).epsilon(0.02));
    CHECK(mp.var == doctest::Approx(2.5).epsilon(0.05));
}

TEST_CASE("multinomial counts and dirichlet moments") {
    RngStream rng(6);
    const std::vector<double> probs{0.2, 0.3, 0.5};
    std::vector<double> totals(3, 0.0);
    const int reps = 50000;
    for (int r = 0; r < reps; ++r) {
        const auto counts = rng.multinomial(10, probs);
        std::uint64_t total = 0;
        for (std::size_t i = 0; i < 3; ++i) {
            totals[i] += static_cast<double>(counts[i]);
            total += counts[i];
        }
        REQUIRE(total == 10);
    }
    for (std::size_t i = 0; i < 3; ++i)
        CHECK(totals[i] / reps == doctest::Approx(10.0 * probs[i]).epsilon(0.02));

    const std::vector<double> alpha{1.0, 2.0, 3.0};
    std::vector<double> dsum(3, 0.0);
    for (int r = 0; r < reps; ++r) {
        const auto d = rng.dirichlet(alpha);
        CHECK(std::abs(d[0] + d[1] + d[2] - 1.0) < 1e-12);
        for (std::size_t i = 0; i < 3; ++i) dsum[i] += d[i];
    }
    for (std::size_t i = 0; i < 3; ++i)
        CHECK(dsum[i] / reps == doctest::Approx(alpha[i] / 6.0).epsilon(0.03));
}

TEST_CASE("categorical respects weights") {
    RngStream rng(7);
    const std::vector<double> w{1.0, 3.0};
    int hits = 0;
    const int reps = 100000;
    for (int r = 0; r < reps; ++r) hits += rng.categorical(w) == 1 ? 1 : 0;
    CHECK(static_cast<double>(hits) / reps == doctest::Approx(0.75).epsilon(0.02));
}
