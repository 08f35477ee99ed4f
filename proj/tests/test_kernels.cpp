#include <cmath>
#include <vector>

#include "doctest.h"
#include "liouville/errors.hpp"
#include "liouville/kernels.hpp"
#include "liouville/quadrature.hpp"
#include "liouville/stats.hpp"

using namespace liouville;

namespace {

const DensityFamily kBrownian = DensityFamily::brownian(1.0);
const DensityFamily kGamma = DensityFamily::gamma_unit();
const DensityFamily kPoisson = DensityFamily::poisson();
const DensityFamily kStable = DensityFamily::stable_half(1.0);

// Exhaustive splitting of z Poisson-bridge jumps over [0, t) vs [t, T):
// every jump lands in the first block independently with probability t/T.
double poisson_bridge_pmf_oracle(int z, double t, double T, int x) {
    const double p = t / T;
    double acc = 0.0;
    for (int mask = 0; mask < (1 << z); ++mask) {
        int first = 0;
        double prob = 1.0;
        for (int j = 0; j < z; ++j) {
            if (mask & (1 << j)) {
                ++first;
                prob *= p;
            } else {
                prob *= 1.0 - p;
            }
        }
        if (first == x) acc += prob;
    }
    return acc;
}

}  // namespace

TEST_CASE("density closed-form values") {
    CHECK(kBrownian.density(1.0, 0.0) ==
          doctest::Approx(0.3989422804014327).epsilon(1e-12));
    CHECK(kPoisson.density(2.0, 0.0) == doctest::Approx(std::exp(-2.0)).epsilon(1e-12));
    CHECK(kGamma.density(1.0, 1.0) == doctest::Approx(std::exp(-1.0)).epsilon(1e-12));
    const double c = 1.0, t = 1.0, x = 0.7;
    CHECK(kStable.density(t, x) ==
          doctest::Approx(c * t / (2.0 * std::sqrt(M_PI)) * std::pow(x, -1.5) *
                          std::exp(-c * c * t * t / (4.0 * x)))
              .epsilon(1e-12));
}

TEST_CASE("density argument contracts") {
    CHECK_THROWS_AS(kBrownian.density(0.0, 0.0), DomainError);
    CHECK_THROWS_AS(kBrownian.density(-1.0, 0.0), DomainError);
    CHECK_THROWS_AS(kGamma.density(1.0, -0.5), DomainError);
    CHECK_THROWS_AS(kPoisson.density(1.0, 1.5), DomainError);
    CHECK_THROWS_AS(kPoisson.density(1.0, -1.0), DomainError);
    CHECK_THROWS_AS(kStable.density(1.0, -2.0), DomainError);
    CHECK(kGamma.density(2.0, 0.0) == 0.0);
    CHECK(kStable.density(1.0, 0.0) == 0.0);
}

TEST_CASE("convolution semigroup on a test grid") {
    const double a = 0.6, b = 0.9;
    SUBCASE("brownian") {
        for (double x : {-2.0, -0.3, 0.0, 1.1, 2.5}) {
            const double conv = integrate(
                [&](double y) { return kBrownian.density(a, y) * kBrownian.density(b, x - y); },
                -12.0, 12.0, 1e-10);
            CHECK(std::abs(conv - kBrownian.density(a + b, x)) < 1e-6);
        }
    }
    SUBCASE("gamma") {
        for (double x : {0.4, 1.0, 2.3}) {
            const double conv = integrate(
                [&](double y) { return kGamma.density(a, y) * kGamma.density(b, x - y); },
                1e-13, x, 1e-10);
            CHECK(std::abs(conv - kGamma.density(a + b, x)) < 1e-6);
        }
    }
    SUBCASE("stable-half") {
        for (double x : {0.5, 1.5, 6.0}) {
            const double conv = integrate(
                [&](double y) { return kStable.density(a, y) * kStable.density(b, x - y); },
                1e-13, x, 1e-11);
            CHECK(std::abs(conv - kStable.density(a + b, x)) < 1e-6);
        }
    }
    SUBCASE("poisson lattice is exact") {
        for (int x : {0, 1, 3, 7}) {
            double conv = 0.0;
            for (int k = 0; k <= x; ++k)
                conv += kPoisson.density(a, k) * kPoisson.density(b, x - k);
            CHECK(std::abs(conv - kPoisson.density(a + b, x)) < 1e-12);
        }
    }
}

TEST_CASE("brownian bridge transition closed form") {
    const BridgeEndpoint end{1.0, 0.0};
    // From the origin, halfway to a zero pin: N(0, 0.25).
    CHECK(bridge_transition_density(kBrownian, 0.0, 0.5, end, 0.0, 0.0) ==
          doctest::Approx(0.7978845608028654).epsilon(1e-12));
    // Normalisation and mean/variance by quadrature.
    auto dens = [&](double x) {
        return bridge_transition_density(kBrownian, 0.0, 0.5, end, 0.0, x);
    };
    CHECK(integrate(dens, -8.0, 8.0, 1e-10) == doctest::Approx(1.0).epsilon(1e-8));
    const double second = integrate([&](double x) { return x * x * dens(x); }, -8.0,
                                    8.0, 1e-10);
    CHECK(second == doctest::Approx(0.25).epsilon(1e-7));
}

TEST_CASE("poisson bridge pmf against exhaustive enumeration") {
    const BridgeEndpoint end{1.0, 2.0};
    for (int x = 0; x <= 2; ++x) {
        const double expect = poisson_bridge_pmf_oracle(2, 0.5, 1.0, x);
        CHECK(bridge_transition_density(kPoisson, 0.0, 0.5, end, 0.0, x) ==
              doctest::Approx(expect).epsilon(1e-12));
    }
    CHECK(bridge_transition_density(kPoisson, 0.0, 0.5, end, 0.0, 1.0) ==
          doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("bridge transition normalises for every family") {
    RngStream rng(91);
    struct Case {
        DensityFamily family;
        BridgeEndpoint end;
    };
    const std::vector<Case> cases{{kBrownian, {1.0, 0.7}},
                                  {kGamma, {1.4, 2.2}},
                                  {kPoisson, {1.0, 5.0}},
                                  {kStable, {1.0, 1.6}}};
    for (const auto& kase : cases) {
        for (int rep = 0; rep < 3; ++rep) {
            const double T = kase.end.horizon;
            const double s = rng.uniform(0.1, 0.5) * T;
            const double t = rng.uniform(0.55, 0.9) * T;
            const double y = sample_bridge_step(kase.family, 0.0, 0.0, s, kase.end, rng);
            double mass;
            if (kase.family.is_lattice()) {
                mass = 0.0;
                for (double x = y; x <= kase.end.pin; x += 1.0)
                    mass += bridge_transition_density(kase.family, s, t, kase.end, y, x);
                CHECK(std::abs(mass - 1.0) < 1e-12);
            } else if (kase.family.support() == Support::NonnegativeReal) {
                // Endpoint-offset form of the same h-transform kernel keeps
                // full precision against the algebraic endpoint behaviour.
                const auto& fam = kase.family;
                const double span = kase.end.pin - y;
                const double T = kase.end.horizon;
                const double lnorm = fam.log_density(T - s, span);
                auto lower = [&](double d) {
                    return std::exp(fam.log_density(t - s, d) +
                                    fam.log_density(T - t, span - d) - lnorm);
                };
                auto upper = [&](double e) {
                    return std::exp(fam.log_density(t - s, span - e) +
                                    fam.log_density(T - t, e) - lnorm);
                };
                const double alpha =
                    fam.kind() == FamilyKind::Gamma ? (t - s) - 1.0 : 0.0;
                const double beta =
                    fam.kind() == FamilyKind::Gamma ? (T - t) - 1.0 : 0.0;
                mass = integrate_power_endpoints(lower, upper, 0.0, span,
                                                 std::max(alpha, -0.999),
                                                 std::max(beta, -0.999), 1e-9);
                CHECK(std::abs(mass - 1.0) < 1e-6);
            } else {
                mass = integrate(
                    [&](double x) {
                        return bridge_transition_density(kase.family, s, t, kase.end, y, x);
                    },
                    -10.0, 10.0, 1e-9, 4000,
                    kernel_seed_points(kase.family, t - s, y));
                CHECK(std::abs(mass - 1.0) < 1e-6);
            }
        }
    }
}

TEST_CASE("bridge transition error contracts") {
    const BridgeEndpoint end{1.0, 2.0};
    CHECK_THROWS_AS(bridge_transition_density(kPoisson, 0.5, 0.4, end, 0.0, 1.0),
                    HorizonError);
    CHECK_THROWS_AS(bridge_transition_density(kPoisson, 0.0, 0.5, end, 3.0, 3.0),
                    UnreachableStateError);
    CHECK_THROWS_AS(validate_endpoint(kGamma, {1.0, -1.0}), DomainError);
    CHECK_THROWS_AS(validate_endpoint(kPoisson, {1.0, 2.5}), DomainError);
}

TEST_CASE("poisson bridge increments are multinomial") {
    const BridgeEndpoint end{1.0, 2.0};
    const std::vector<double> grid{0.0, 0.5, 1.0};
    RngStream rng(92);
    const int n = 4000;
    int counts[3] = {0, 0, 0};
    for (int p = 0; p < n; ++p) {
        const auto path = sample_bridge_path(kPoisson, end, grid, rng);
        CHECK(path[2] == 2.0);
        counts[static_cast<int>(path[1])]++;
    }
    const double expect[3] = {0.25, 0.5, 0.25};
    for (int k = 0; k < 3; ++k) {
        const double phat = static_cast<double>(counts[k]) / n;
        const double se = std::sqrt(expect[k] * (1.0 - expect[k]) / n);
        CHECK(std::abs(phat - expect[k]) < 3.5 * se);
    }
}

TEST_CASE("gamma bridge split follows the dirichlet law") {
    const double u = 0.3;
    const BridgeEndpoint end{1.0, 1.0};
    const std::vector<double> grid{0.0, u, 1.0};
    RngStream rng(93);
    const int n = 6000;
    std::vector<double> first(n);
    for (int p = 0; p < n; ++p) {
        const auto path = sample_bridge_path(kGamma, end, grid, rng);
        CHECK(path[2] == doctest::Approx(1.0).epsilon(1e-12));
        first[p] = path[1];
    }
    const auto ms = mean_se(first);
    CHECK(std::abs(ms.mean - u) < 3.0 * ms.se);  // Beta(u, 1-u) mean
    double ss = 0.0;
    for (double v : first) ss += (v - ms.mean) * (v - ms.mean);
    const double var = ss / (n - 1);
    const double target_var = u * (1.0 - u) / 2.0;
    CHECK(var == doctest::Approx(target_var).epsilon(0.1));
}

TEST_CASE("brownian bridge pins exactly") {
    const BridgeEndpoint end{2.0, -1.3};
    const std::vector<double> grid{0.0, 0.4, 1.1, 2.0};
    RngStream rng(94);
    for (int p = 0; p < 50; ++p) {
        const auto path = sample_bridge_path(kBrownian, end, grid, rng);
        CHECK(path[0] == 0.0);
        CHECK(path[3] == end.pin);
    }
}

TEST_CASE("sampled bridge marginals match the transition law") {
    RngStream rng(95);
    const int n = 4000;
    SUBCASE("stable-half by numeric inversion") {
        const BridgeEndpoint end{1.0, 1.6};
        std::vector<double> samples(n);
        for (int p = 0; p < n; ++p)
            samples[p] = sample_bridge_step(kStable, 0.0, 0.0, 0.5, end, rng);
        NumericCdf cdf(
            [&](double x) {
                return bridge_transition_density(kStable, 0.0, 0.5, end, 0.0, x);
            },
            1e-12, end.pin, 1e-10);
        const double d =
            ks_statistic(samples, [&](double x) { return cdf.cdf(x); });
        CHECK(ks_p_value(d, n) > 0.01);
    }
    SUBCASE("gamma sequential steps keep the right law") {
        const BridgeEndpoint end{1.0, 2.0};
        const std::vector<double> grid{0.0, 0.25, 0.6};
        std::vector<double> samples(n);
        for (int p = 0; p < n; ++p)
            samples[p] = sample_bridge_path(kGamma, end, grid, rng)[2];
        NumericCdf cdf(
            [&](double x) {
                return bridge_transition_density(kGamma, 0.0, 0.6, end, 0.0, x);
            },
            1e-12, end.pin, 1e-10);
        const double d =
            ks_statistic(samples, [&](double x) { return cdf.cdf(x); });
        CHECK(ks_p_value(d, n) > 0.01);
    }
}

TEST_CASE("grid validation") {
    const BridgeEndpoint end{1.0, 1.0};
    RngStream rng(96);
    CHECK_THROWS_AS(
        sample_bridge_path(kBrownian, end, std::vector<double>{0.0, 1.2}, rng),
        DomainError);
    CHECK_THROWS_AS(
        sample_bridge_path(kBrownian, end, std::vector<double>{0.5, 0.4}, rng),
        DomainError);
}

TEST_CASE("pinned allocation sums exactly and has the right moments") {
    RngStream rng(97);
    const std::vector<double> weights{0.5, 1.0, 1.5};
    SUBCASE("brownian") {
        const int n = 20000;
        std::vector<double> first(n);
        for (int p = 0; p < n; ++p) {
            const auto d = allocate_pinned_increment(kBrownian, weights, 2.0, rng);
            CHECK(std::abs(d[0] + d[1] + d[2] - 2.0) < 1e-12);
            first[p] = d[0];
        }
        const auto ms = mean_se(first);
        CHECK(std::abs(ms.mean - 2.0 * 0.5 / 3.0) < 3.5 * ms.se);
    }
    SUBCASE("poisson") {
        for (int rep = 0; rep < 200; ++rep) {
            const auto d = allocate_pinned_increment(kPoisson, weights, 7.0, rng);
            CHECK(d[0] + d[1] + d[2] == 7.0);
            for (double v : d) CHECK(v == std::floor(v));
        }
    }
    SUBCASE("gamma") {
        for (int rep = 0; rep < 200; ++rep) {
            const auto d = allocate_pinned_increment(kGamma, weights, 3.0, rng);
            CHECK(std::abs(d[0] + d[1] + d[2] - 3.0) < 1e-12);
            for (double v : d) CHECK(v > 0.0);
        }
    }
    SUBCASE("stable-half") {
        for (int rep = 0; rep < 50; ++rep) {
            const auto d = allocate_pinned_increment(kStable, weights, 3.0, rng);
            CHECK(std::abs(d[0] + d[1] + d[2] - 3.0) < 1e-9);
            for (double v : d) CHECK(v > 0.0);
        }
    }
}

TEST_CASE("free increments match family moments") {
    RngStream rng(98);
    const int n = 50000;
    double s = 0.0;
    for (int p = 0; p < n; ++p) s += kGamma.sample_increment(1.7, rng);
    CHECK(s / n == doctest::Approx(1.7).epsilon(0.03));
    CHECK_THROWS_AS(kStable.increment_mean(1.0), IntegrabilityError);
    // 1/2-stable free draw has the right CDF: erfc(c t / (2 sqrt(x))).
    std::vector<double> xs(20000);
    for (auto& x : xs) x = kStable.sample_increment(0.8, rng);
    const double d = ks_statistic(xs, [](double x) {
        return std::erfc(0.8 / (2.0 * std::sqrt(x)));
    });
    CHECK(ks_p_value(d, xs.size()) > 0.01);
}
