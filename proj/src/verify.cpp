#include "liouville/verify.hpp"

#include <cmath>
#include <cstdio>
#include <future>
#include <sstream>

#include "json.hpp"
#include "liouville/blp.hpp"
#include "liouville/errors.hpp"
#include "liouville/lrb.hpp"
#include "liouville/plp.hpp"
#include "liouville/quadrature.hpp"

namespace liouville {

namespace {

double normal_cdf(double x) { return 0.5 * std::erfc(-x / 1.4142135623730951); }

std::vector<GlpPath> sample_bundle(const GlpSpec& spec, const PathGrid& grid,
                                   std::size_t n, std::uint64_t seed,
                                   std::uint64_t stream, bool markov = false) {
    std::vector<GlpPath> out;
    out.reserve(n);
    for (std::size_t p = 0; p < n; ++p) {
        RngStream rng(seed, stream, p);
        out.push_back(markov ? sample_glp_markov(spec, grid, rng)
                             : sample_glp_master(spec, grid, rng));
    }
    return out;
}

double worst_abs_z(const std::vector<std::pair<double, double>>& est_se) {
    double worst = 0.0;
    for (const auto& [e, s] : est_se)
        if (s > 0.0) worst = std::max(worst, std::abs(e) / s);
    return worst;
}

// Weighted correlation z-score of two columns under importance weights.
std::pair<double, double> weighted_cov_se(std::span<const double> x,
                                          std::span<const double> y,
                                          std::span<const double> w) {
    const std::size_t n = x.size();
    double sw = 0.0, sx = 0.0, sy = 0.0;
    for (std::size_t p = 0; p < n; ++p) {
        sw += w[p];
        sx += w[p] * x[p];
        sy += w[p] * y[p];
    }
    const double mx = sx / sw, my = sy / sw;
    std::vector<double> prod(n);
    for (std::size_t p = 0; p < n; ++p)
        prod[p] = w[p] * (x[p] - mx) * (y[p] - my) / (sw / static_cast<double>(n));
    const auto ms = mean_se(prod);
    return {ms.mean, ms.se};
}

}  // namespace

VerificationReport moment_report(std::string name, std::string null_hypothesis,
                                 double estimate, double null_value, double se,
                                 double k, std::size_t n, std::uint64_t seed) {
    VerificationReport r;
    r.name = std::move(name);
    r.null_hypothesis = std::move(null_hypothesis);
    r.estimate = estimate;
    r.null_value = null_value;
    r.se = se;
    r.threshold = k;
    r.pass = std::abs(estimate - null_value) <= k * se;
    r.sample_size = n;
    r.seed = seed;
    return r;
}

VerificationReport deterministic_report(std::string name, std::string null_hypothesis,
                                        double deviation, double tol,
                                        std::uint64_t seed) {
    VerificationReport r;
    r.name = std::move(name);
    r.null_hypothesis = std::move(null_hypothesis);
    r.estimate = deviation;
    r.se = 0.0;
    r.threshold = tol;
    r.pass = std::abs(deviation) <= tol;
    r.seed = seed;
    return r;
}

VerificationReport ks_one_sample(std::vector<double> samples,
                                 const std::function<double(double)>& cdf,
                                 std::string name, std::uint64_t seed, double alpha) {
    if (samples.size() < 100)
        throw InsufficientDataError("KS test needs at least 100 samples");
    VerificationReport r;
    r.name = std::move(name);
    r.null_hypothesis = "samples follow the reference CDF";
    r.sample_size = samples.size();
    const double n = static_cast<double>(samples.size());
    r.estimate = ks_statistic(std::move(samples), cdf);
    r.p_value = ks_p_value(r.estimate, n);
    r.threshold = alpha;
    r.pass = r.p_value >= alpha;
    r.seed = seed;
    return r;
}

VerificationReport ks_two_sample(std::vector<double> a, std::vector<double> b,
                                 std::string name, std::uint64_t seed, double alpha) {
    if (a.size() < 100 || b.size() < 100)
        throw InsufficientDataError("KS test needs at least 100 samples");
    VerificationReport r;
    r.name = std::move(name);
    r.null_hypothesis = "both samples share one law";
    r.sample_size = a.size() + b.size();
    const double n_eff = static_cast<double>(a.size()) * static_cast<double>(b.size()) /
                         static_cast<double>(a.size() + b.size());
    r.estimate = ks_statistic_two(std::move(a), std::move(b));
    r.p_value = ks_p_value(r.estimate, n_eff);
    r.threshold = alpha;
    r.pass = r.p_value >= alpha;
    r.seed = seed;
    return r;
}

VerificationReport martingale_test(const std::vector<std::vector<double>>& paths,
                                   std::span<const double> times, std::string name,
                                   std::uint64_t seed, double k) {
    if (paths.size() < 10000)
        throw InsufficientDataError("martingale test needs at least 10^4 paths");
    const std::size_t K = times.size();
    for (const auto& p : paths)
        if (p.size() != K) throw InsufficientDataError("path/grid length mismatch");
    const std::size_t n = paths.size();
    std::vector<std::pair<double, double>> stats;
    std::vector<double> incr(n), cur(n);
    for (std::size_t j = 0; j + 1 < K; ++j) {
        for (std::size_t p = 0; p < n; ++p) {
            cur[p] = paths[p][j];
            incr[p] = paths[p][j + 1] - paths[p][j];
        }
        const auto ms = mean_se(incr);
        stats.emplace_back(ms.mean, ms.se);
        const auto fit = ols(incr, {cur});
        stats.emplace_back(fit.coef[1], fit.se[1]);
    }
    std::vector<double> total(n);
    for (std::size_t p = 0; p < n; ++p) total[p] = paths[p][K - 1] - paths[p][0];
    const auto drift = mean_se(total);
    stats.emplace_back(drift.mean, drift.se);

    VerificationReport r;
    r.name = std::move(name);
    r.null_hypothesis =
        "per-step mean increments, value slopes and total drift all vanish (worst |z|)";
    r.estimate = worst_abs_z(stats);
    r.se = 1.0;
    r.threshold = k;
    r.pass = r.estimate <= k;
    r.sample_size = n;
    r.seed = seed;
    return r;
}

namespace {

using Reports = std::vector<VerificationReport>;

// ---------------------------------------------------------------- kernels --

Reports kernels_suite(const GlpSpec& spec, std::size_t budget, std::uint64_t seed) {
    Reports out;
    const auto& family = spec.family;
    const double M = spec.total_activity();

    {  // convolution semigroup on a test grid
        const double a = 0.35 * M, b = 0.65 * M;
        double worst = 0.0;
        if (family.is_lattice()) {
            for (int x = 0; x <= 12; ++x) {
                double conv = 0.0;
                for (int k = 0; k <= x; ++k)
                    conv += family.density(a, k) * family.density(b, x - k);
                worst = std::max(worst, std::abs(conv - family.density(a + b, x)));
            }
            out.push_back(deterministic_report(
                "kernels/convolution", "f_a * f_b = f_{a+b} on the lattice", worst,
                1e-12, seed));
        } else {
            const auto win = kernel_window(family, a + b, 0.0);
            for (int j = 1; j <= 7; ++j) {
                const double x = win.first + (win.second - win.first) * j / 8.0;
                if (family.support() != Support::RealLine && x <= 0.0) continue;
                auto integrand = [&](double y) {
                    const double l = family.log_density(a, y) + family.log_density(b, x - y);
                    return std::isfinite(l) ? std::exp(l) : 0.0;
                };
                double lo = win.first, hi = win.second;
                if (family.support() == Support::NonnegativeReal) {
                    lo = 0.0;
                    hi = x;
                }
                const double conv =
                    integrate(integrand, lo, hi, 1e-10, 4000,
                              kernel_seed_points(family, a, 0.0));
                worst = std::max(worst, std::abs(conv - family.density(a + b, x)));
            }
            out.push_back(deterministic_report(
                "kernels/convolution", "f_a * f_b = f_{a+b} on a test grid", worst,
                1e-6, seed));
        }
    }

    {  // bridge transition normalisation at random (s, t, y)
        RngStream rng(seed, 101);
        const double T = M;
        const double z = family.is_lattice() ? 5.0
                         : family.support() == Support::NonnegativeReal
                             ? family.sample_increment(T, rng)
                             : 0.7;
        const BridgeEndpoint end{T, z};
        double worst = 0.0;
        for (int rep = 0; rep < 10; ++rep) {
            const double s = rng.uniform(0.05, 0.6) * T;
            const double t = rng.uniform(s / T + 0.1, 0.9) * T;
            const double y = sample_bridge_step(family, 0.0, 0.0, s, end, rng);
            double mass;
            if (family.is_lattice()) {
                mass = 0.0;
                for (double x = y; x <= z; x += 1.0)
                    mass += bridge_transition_density(family, s, t, end, y, x);
                worst = std::max(worst, std::abs(mass - 1.0));
            } else if (family.support() == Support::NonnegativeReal) {
                // Offset form of the same kernel resolves the algebraic
                // endpoint behaviour of the subordinator bridges.
                const double span = z - y;
                const double lnorm = family.log_density(T - s, span);
                auto lower = [&](double d) {
                    return std::exp(family.log_density(t - s, d) +
                                    family.log_density(T - t, span - d) - lnorm);
                };
                auto upper = [&](double e) {
                    return std::exp(family.log_density(t - s, span - e) +
                                    family.log_density(T - t, e) - lnorm);
                };
                const bool gamma = family.kind() == FamilyKind::Gamma;
                mass = integrate_power_endpoints(
                    lower, upper, 0.0, span,
                    gamma ? std::max((t - s) - 1.0, -0.999) : 0.0,
                    gamma ? std::max((T - t) - 1.0, -0.999) : 0.0, 1e-9);
                worst = std::max(worst, std::abs(mass - 1.0));
            } else {
                const auto w1 = kernel_window(family, t - s, y);
                const auto w2 = kernel_window(family, T - t, z);
                auto dens = [&](double x) {
                    return bridge_transition_density(family, s, t, end, y, x);
                };
                mass = integrate(dens, std::min(w1.first, w2.first),
                                 std::max(w1.second, w2.second), 1e-9, 4000,
                                 kernel_seed_points(family, t - s, y));
                worst = std::max(worst, std::abs(mass - 1.0));
            }
        }
        out.push_back(deterministic_report(
            "kernels/bridge-normalisation",
            "bridge transition integrates to one at random (s,t,y)", worst,
            family.is_lattice() ? 1e-12 : 1e-6, seed));
    }

    {  // terminal pinning
        RngStream rng(seed, 102);
        const double T = M;
        const double z = family.is_lattice() ? 4.0 : 1.3;
        const std::vector<double> grid{0.0, 0.31 * T, 0.77 * T, T};
        double worst = 0.0;
        for (int rep = 0; rep < 100; ++rep) {
            const auto path = sample_bridge_path(family, {T, z}, grid, rng);
            worst = std::max(worst, std::abs(path.back() - z));
        }
        out.push_back(deterministic_report("kernels/bridge-pinning",
                                           "sampled bridge ends exactly at the pin",
                                           worst, family.is_lattice() ? 0.0 : 1e-9,
                                           seed));
    }

    {  // sampled marginal against the transition density
        RngStream rng(seed, 103);
        const double T = M;
        const double z = family.is_lattice() ? 6.0 : 1.3;
        const BridgeEndpoint end{T, z};
        const double t = 0.6 * T;
        const std::size_t n = std::max<std::size_t>(budget, 1000);
        std::vector<double> samples(n);
        for (std::size_t p = 0; p < n; ++p) {
            RngStream prng(seed, 104, p);
            samples[p] = sample_bridge_step(family, 0.0, 0.0, t, end, prng);
        }
        if (family.is_lattice()) {
            std::vector<double> pit(n);
            for (std::size_t p = 0; p < n; ++p) {
                double acc = 0.0;
                for (double x = 0.0; x < samples[p]; x += 1.0)
                    acc += bridge_transition_density(family, 0.0, t, end, 0.0, x);
                acc += rng.uniform() *
                       bridge_transition_density(family, 0.0, t, end, 0.0, samples[p]);
                pit[p] = acc;
            }
            out.push_back(ks_one_sample(std::move(pit), [](double u) { return u; },
                                        "kernels/bridge-marginal-ks", seed));
        } else {
            double lo, hi;
            if (family.support() == Support::NonnegativeReal) {
                lo = 0.0;
                hi = z;
            } else {
                const auto w1 = kernel_window(family, t, 0.0);
                const auto w2 = kernel_window(family, T - t, z);
                lo = std::min(w1.first, w2.first);
                hi = std::max(w1.second, w2.second);
            }
            NumericCdf cdf([&](double x) {
                return bridge_transition_density(family, 0.0, t, end, 0.0, x);
            }, lo, hi, 1e-10, kernel_seed_points(family, t, 0.0));
            out.push_back(ks_one_sample(std::move(samples),
                                        [&](double x) { return cdf.cdf(x); },
                                        "kernels/bridge-marginal-ks", seed));
        }
    }
    return out;
}

// -------------------------------------------------------------------- lrb --

Reports lrb_suite(const GlpSpec& spec, std::size_t budget, std::uint64_t seed) {
    Reports out;
    const LrbSpec lrb(spec.family, spec.nu, spec.total_activity());
    const double T = lrb.horizon;
    const std::size_t n = std::max<std::size_t>(budget, 1000);

    {  // vartheta is a positive unit-mean martingale under the free law
        const std::vector<double> times{0.25 * T, 0.5 * T, 0.75 * T};
        std::vector<std::vector<double>> v(times.size(), std::vector<double>(n));
        for (std::size_t p = 0; p < n; ++p) {
            RngStream rng(seed, 201, p);
            double x = 0.0, s = 0.0;
            for (std::size_t j = 0; j < times.size(); ++j) {
                x += lrb.family.sample_increment(times[j] - s, rng);
                s = times[j];
                v[j][p] = std::exp(lrb_log_vartheta(lrb, s, x));
            }
        }
        std::vector<std::pair<double, double>> stats;
        double est = 0.0, se = 1.0;
        for (const auto& col : v) {
            const auto ms = mean_se(col);
            stats.emplace_back(ms.mean - 1.0, ms.se);
            if (std::abs(ms.mean - 1.0) / ms.se >= worst_abs_z(stats) - 1e-12) {
                est = ms.mean;
                se = ms.se;
            }
        }
        out.push_back(moment_report("lrb/vartheta-free-martingale",
                                    "E vartheta_t(X_t) = 1 under the free law", est,
                                    1.0, se, 3.0, n, seed));
    }

    {  // stationary increments
        const std::vector<double> grid{0.0, 0.1 * T, 0.4 * T, 0.55 * T, 0.85 * T};
        std::vector<double> inc1(n), inc2(n);
        for (std::size_t p = 0; p < n; ++p) {
            RngStream rng(seed, 202, p);
            const auto path = sample_lrb(lrb, grid, rng);
            inc1[p] = path[2] - path[1];
            inc2[p] = path[4] - path[3];
        }
        out.push_back(ks_two_sample(std::move(inc1), std::move(inc2),
                                    "lrb/stationary-increments", seed));
    }

    {  // Chapman-Kolmogorov
        RngStream rng(seed, 203);
        double worst = 0.0;
        for (int rep = 0; rep < 3; ++rep) {
            const double s = rng.uniform(0.05, 0.3) * T;
            const double t = rng.uniform(0.35, 0.55) * T;
            const double u = rng.uniform(0.6, 0.85) * T;
            RngStream prng(seed, 204, rep);
            const auto path = sample_lrb(lrb, std::vector<double>{0.0, s, u}, prng);
            const double y = path[1];
            const double x = path[2];
            double lhs;
            if (lrb.family.is_lattice()) {
                lhs = 0.0;
                for (double m = y; m <= x; m += 1.0)
                    lhs += lrb_transition_density(lrb, s, y, t, m) *
                           lrb_transition_density(lrb, t, m, u, x);
            } else if (lrb.family.support() == Support::NonnegativeReal) {
                // Offset form with the implemented log pieces keeps the
                // endpoint singularities integrable at full precision.
                const double span = x - y;
                auto product = [&](double d) {
                    const double m = y + d;
                    return std::exp(lrb_log_vartheta(lrb, t, m) -
                                    lrb_log_vartheta(lrb, s, y) +
                                    lrb.family.log_density(t - s, d) +
                                    lrb_log_vartheta(lrb, u, x) -
                                    lrb_log_vartheta(lrb, t, m) +
                                    lrb.family.log_density(u - t, span - d));
                };
                auto product_hi = [&](double e) {
                    const double m = x - e;
                    return std::exp(lrb_log_vartheta(lrb, t, m) -
                                    lrb_log_vartheta(lrb, s, y) +
                                    lrb.family.log_density(t - s, span - e) +
                                    lrb_log_vartheta(lrb, u, x) -
                                    lrb_log_vartheta(lrb, t, m) +
                                    lrb.family.log_density(u - t, e));
                };
                const bool gamma = lrb.family.kind() == FamilyKind::Gamma;
                lhs = integrate_power_endpoints(
                    product, product_hi, 0.0, span,
                    gamma ? std::max((t - s) - 1.0, -0.999) : 0.0,
                    gamma ? std::max((u - t) - 1.0, -0.999) : 0.0, 1e-9);
            } else {
                const auto w1 = kernel_window(lrb.family, t - s, y);
                const auto w2 = kernel_window(lrb.family, u - t, x);
                lhs = integrate([&](double m) {
                    return lrb_transition_density(lrb, s, y, t, m) *
                           lrb_transition_density(lrb, t, m, u, x);
                }, std::min(w1.first, w2.first), std::max(w1.second, w2.second),
                    1e-9, 4000, kernel_seed_points(lrb.family, t - s, y));
            }
            const double rhs = lrb_transition_density(lrb, s, y, u, x);
            worst = std::max(worst, std::abs(lhs - rhs));
        }
        out.push_back(deterministic_report(
            "lrb/chapman-kolmogorov", "one-step and two-step transitions agree", worst,
            1e-5, seed));
    }

    {  // terminal law recovers nu
        std::vector<double> terminal(n);
        for (std::size_t p = 0; p < n; ++p) {
            RngStream rng(seed, 205, p);
            terminal[p] = sample_lrb(lrb, std::vector<double>{0.0, T}, rng)[1];
        }
        if (lrb.nu.is_atomic()) {
            double est = 0.0, se = 1.0, worst = -1.0;
            for (const auto& a : lrb.nu.atoms()) {
                std::size_t hits = 0;
                for (double v : terminal)
                    if (v == a.location) ++hits;
                const double phat = static_cast<double>(hits) / static_cast<double>(n);
                const double sd =
                    std::sqrt(a.mass * (1.0 - a.mass) / static_cast<double>(n));
                const double zscore = std::abs(phat - a.mass) / sd;
                if (zscore > worst) {
                    worst = zscore;
                    est = phat - a.mass;
                    se = sd;
                }
            }
            out.push_back(moment_report("lrb/terminal-law",
                                        "terminal frequencies match nu atom by atom",
                                        est, 0.0, se, 3.0, n, seed));
        } else {
            NumericCdf cdf([&](double z) { return lrb.nu.continuous_density(z); },
                           lrb.nu.continuous_lower(), lrb.nu.continuous_upper(), 1e-10);
            out.push_back(ks_one_sample(std::move(terminal),
                                        [&](double z) { return cdf.cdf(z); },
                                        "lrb/terminal-law", seed));
        }
    }

    {  // time-t marginal against f_t(x) vartheta_t(x)
        const double t = 0.45 * T;
        std::vector<double> samples(n);
        for (std::size_t p = 0; p < n; ++p) {
            RngStream rng(seed, 206, p);
            samples[p] = sample_lrb(lrb, std::vector<double>{0.0, t}, rng)[1];
        }
        if (lrb.family.is_lattice()) {
            RngStream rng(seed, 207);
            std::vector<double> pit(n);
            for (std::size_t p = 0; p < n; ++p) {
                double acc = 0.0;
                for (double x = 0.0; x < samples[p]; x += 1.0)
                    acc += lrb_marginal_density(lrb, t, x);
                pit[p] = acc + rng.uniform() * lrb_marginal_density(lrb, t, samples[p]);
            }
            out.push_back(ks_one_sample(std::move(pit), [](double u) { return u; },
                                        "lrb/marginal-ks", seed));
        } else {
            double zlo = lrb.nu.atoms().empty() ? 0.0 : lrb.nu.atoms().front().location;
            double zhi = lrb.nu.atoms().empty() ? 0.0 : lrb.nu.atoms().back().location;
            if (lrb.nu.has_continuous()) {
                zlo = std::min(zlo, lrb.nu.continuous_lower());
                zhi = std::max(zhi, lrb.nu.continuous_upper());
            }
            const auto win = kernel_window(lrb.family, t, 0.0);
            double lo = win.first, hi = win.second;
            if (lrb.family.support() == Support::RealLine) {
                lo = std::min(lo, zlo - (win.second - win.first));
                hi = std::max(hi, zhi + (win.second - win.first));
            } else {
                lo = 0.0;
                hi = std::min(hi, zhi);
            }
            NumericCdf cdf([&](double x) { return lrb_marginal_density(lrb, t, x); },
                           lo, hi, 1e-10, kernel_seed_points(lrb.family, t, 0.0));
            out.push_back(ks_one_sample(std::move(samples),
                                        [&](double x) { return cdf.cdf(x); },
                                        "lrb/marginal-ks", seed));
        }
    }
    return out;
}

// -------------------------------------------------------------------- glp --

Reports glp_suite(const GlpSpec& spec, std::size_t budget, std::uint64_t seed) {
    Reports out;
    const std::size_t n = std::max<std::size_t>(budget, 1000);
    const std::size_t dim = spec.dim();
    const PathGrid grid({0.0, 0.25, 0.5, 0.75});

    const auto master = sample_bundle(spec, grid, n, seed, 301);
    const auto markov = sample_bundle(spec, grid, n, seed, 302, true);

    for (std::size_t i = 0; i < dim; ++i) {
        for (std::size_t k = 1; k < grid.size(); ++k) {
            std::vector<double> a(n), b(n);
            for (std::size_t p = 0; p < n; ++p) {
                a[p] = master[p].values[k][i];
                b[p] = markov[p].values[k][i];
            }
            char name[96];
            std::snprintf(name, sizeof name, "glp/sampler-equivalence-c%zu-t%.2f", i,
                          grid[k]);
            out.push_back(ks_two_sample(std::move(a), std::move(b), name, seed));
        }
    }

    {  // sum consistency
        double worst = 0.0;
        for (const auto& path : master)
            for (std::size_t k = 0; k < path.grid.size(); ++k) {
                double r = 0.0;
                for (double v : path.values[k]) r += v;
                worst = std::max(worst, std::abs(r - path.sums[k]));
            }
        out.push_back(deterministic_report("glp/sum-consistency",
                                           "R equals the coordinate sum exactly",
                                           worst, 0.0, seed));
    }

    {  // R-transition, marginal and fully conditioned normalisation
        RngStream rng(seed, 303);
        const auto probe = sample_glp_master(spec, grid, rng);
        const double s = 0.25, t = 0.5;
        const auto& x = probe.values[1];
        const auto laws = r_process_laws(spec, s, x);
        double worst = 0.0;
        const double sx = probe.sums[1];
        if (spec.family.is_lattice()) {
            double zmax = 0.0;
            for (const auto& a : spec.nu.atoms())
                if (a.mass > 0.0) zmax = std::max(zmax, a.location);
            double mass = 0.0;
            for (double r = sx; r <= zmax; r += 1.0) mass += laws.transition(t, r);
            worst = std::max(worst, std::abs(mass - 1.0));
            double mmass = 0.0;
            for (double y = x[0]; y <= zmax; y += 1.0)
                mmass += marginal_transition_density(spec, 0, s, x[0], t, y);
            worst = std::max(worst, std::abs(mmass - 1.0));
            double fmass = 0.0;
            for (double y = x[0]; y <= zmax; y += 1.0)
                fmass += fully_conditioned_marginal_density(spec, 0, s, x, t, y);
            worst = std::max(worst, std::abs(fmass - 1.0));
            out.push_back(deterministic_report(
                "glp/normalisation", "transition pmfs sum to one", worst, 1e-12, seed));
        } else {
            double zlo = spec.nu.atoms().empty() ? 0.0 : spec.nu.atoms().front().location;
            double zhi = spec.nu.atoms().empty() ? 0.0 : spec.nu.atoms().back().location;
            if (spec.nu.has_continuous()) {
                zlo = std::min(zlo, spec.nu.continuous_lower());
                zhi = std::max(zhi, spec.nu.continuous_upper());
            }
            const double M = spec.total_activity();
            auto window_for = [&](double tau, double center) {
                auto win = kernel_window(spec.family, tau, center);
                if (spec.family.support() == Support::RealLine) {
                    win.first = std::min(win.first, zlo - (win.second - win.first));
                    win.second = std::max(win.second, zhi + (win.second - win.first));
                } else {
                    win.first = center;
                    win.second = std::min(win.second, zhi);
                }
                return win;
            };
            {
                const auto win = window_for((t - s) * M, sx);
                const double mass = integrate([&](double r) {
                    return laws.transition(t, r);
                }, win.first, win.second, 1e-9, 4000,
                    kernel_seed_points(spec.family, (t - s) * M, sx));
                worst = std::max(worst, std::abs(mass - 1.0));
            }
            {
                const auto win = window_for((t - s) * spec.activity[0], x[0]);
                const double mass = integrate([&](double y) {
                    return marginal_transition_density(spec, 0, s, x[0], t, y);
                }, win.first, win.second, 1e-9, 4000,
                    kernel_seed_points(spec.family, (t - s) * spec.activity[0], x[0]));
                worst = std::max(worst, std::abs(mass - 1.0));
            }
            {
                auto win = window_for((t - s) * spec.activity[0], x[0]);
                if (spec.family.support() == Support::NonnegativeReal)
                    win.second = std::min(win.second, x[0] + (zhi - sx));
                const double mass = integrate([&](double y) {
                    return fully_conditioned_marginal_density(spec, 0, s, x, t, y);
                }, win.first, win.second, 1e-9, 4000,
                    kernel_seed_points(spec.family, (t - s) * spec.activity[0], x[0]));
                worst = std::max(worst, std::abs(mass - 1.0));
            }
            out.push_back(deterministic_report(
                "glp/normalisation", "transition densities integrate to one", worst,
                1e-5, seed));
        }
    }

    if (spec.family.has_mean()) {  // drift identity over [s, t]
        const double s = 0.25, t = 0.5;
        std::vector<double> diff(n);
        for (std::size_t p = 0; p < n; ++p) {
            const double es = posterior_terminal_mean(spec.nu, spec.family,
                                                      spec.total_activity(), s,
                                                      master[p].sums[1]);
            diff[p] = (master[p].sums[2] - master[p].sums[1]) -
                      (t - s) / (1.0 - s) * (es - master[p].sums[1]);
        }
        const auto ms = mean_se(diff);
        out.push_back(moment_report("glp/drift-identity",
                                    "mean R increment matches the compensator", ms.mean,
                                    0.0, ms.se, 3.0, n, seed));
    }

    if (spec.family.has_mean()) {  // harness statistic
        const PathGrid hgrid({0.0, 0.2, 0.4, 0.6, 0.8});
        const auto hp = sample_bundle(spec, hgrid, n, seed, 304);
        const auto hr = harness_statistic(spec, hp, 0.2, 0.4, 0.6, 0.8);
        out.push_back(moment_report("glp/harness",
                                    "bin-conditional slope minus chord vanishes",
                                    hr.worst_estimate, 0.0, hr.worst_se, 3.0, hr.n,
                                    seed));
    }

    {  // reweighting by 1/Theta restores independent stationary increments
        std::vector<double> d01(n), d12(n), dother(n), w(n);
        for (std::size_t p = 0; p < n; ++p) {
            d01[p] = master[p].values[2][0] - master[p].values[1][0];
            d12[p] = master[p].values[3][0] - master[p].values[2][0];
            dother[p] = dim > 1 ? master[p].values[3][1] - master[p].values[2][1]
                                : master[p].values[1][0];
            w[p] = rn_density(spec, master[p], 0.75);
        }
        const auto same = weighted_cov_se(d01, d12, w);
        out.push_back(moment_report(
            "glp/free-increments-serial",
            "reweighted covariance of consecutive increments vanishes", same.first, 0.0,
            same.second, 3.0, n, seed));
        if (dim > 1) {
            const auto cross = weighted_cov_se(d12, dother, w);
            out.push_back(moment_report(
                "glp/free-increments-cross",
                "reweighted covariance across coordinates vanishes", cross.first, 0.0,
                cross.second, 3.0, n, seed));
        }
    }

    if (spec.family.kind() == FamilyKind::Gamma) {  // Dirichlet reduction
        const PathGrid tgrid({0.0, 1.0});
        const auto paths = sample_bundle(spec, tgrid, n, seed, 305);
        const double M = spec.total_activity();
        std::vector<std::pair<double, double>> stats;
        double est = 0.0, se = 1.0, null_v = 0.0, worst = -1.0;
        for (std::size_t i = 0; i < dim; ++i) {
            std::vector<double> frac(n), frac2(n);
            for (std::size_t p = 0; p < n; ++p) {
                const double f = paths[p].values[1][i] / paths[p].sums[1];
                frac[p] = f;
                frac2[p] = f * f;
            }
            const auto m1 = mean_se(frac);
            const auto m2 = mean_se(frac2);
            const double t1 = spec.activity[i] / M;
            const double t2 = spec.activity[i] * (spec.activity[i] + 1.0) /
                              (M * (M + 1.0));
            for (const auto& [mm, tt] : {std::pair{m1, t1}, std::pair{m2, t2}}) {
                const double zscore = std::abs(mm.mean - tt) / mm.se;
                if (zscore > worst) {
                    worst = zscore;
                    est = mm.mean;
                    null_v = tt;
                    se = mm.se;
                }
            }
        }
        out.push_back(moment_report("glp/dirichlet-reduction",
                                    "normalised terminal splits have Dirichlet moments",
                                    est, null_v, se, 3.0, n, seed));
    }
    return out;
}

// -------------------------------------------------------------------- blp --

Reports blp_suite(const GlpSpec& spec, std::size_t budget, std::uint64_t seed) {
    if (spec.family.kind() != FamilyKind::Brownian)
        throw ConfigError("suite blp-core requires a Brownian spec");
    Reports out;
    const std::size_t n = std::max<std::size_t>(budget, 1000);
    const std::size_t big = std::max<std::size_t>(budget, 10000);
    const std::size_t dim = spec.dim();
    const double M = spec.total_activity();
    const double sigma = spec.family.sigma();

    {  // Z covariance and exact zero sum
        const std::size_t reps = std::max<std::size_t>(10 * n, 100000);
        std::vector<std::vector<double>> zs(reps);
        double worst_sum = 0.0;
        for (std::size_t p = 0; p < reps; ++p) {
            RngStream rng(seed, 401, p);
            zs[p] = sample_z_vector(spec, rng);
            double s = 0.0;
            for (double v : zs[p]) s += v;
            worst_sum = std::max(worst_sum, std::abs(s));
        }
        out.push_back(deterministic_report("blp/z-sum", "sum of Z vanishes per draw",
                                           worst_sum, 1e-12, seed));
        double est = 0.0, se = 1.0, null_v = 0.0, worst = -1.0;
        for (std::size_t i = 0; i < dim; ++i) {
            for (std::size_t j = i; j < dim; ++j) {
                std::vector<double> prod(reps);
                for (std::size_t p = 0; p < reps; ++p) prod[p] = zs[p][i] * zs[p][j];
                const auto ms = mean_se(prod);
                const double target = (i == j ? spec.activity[i] : 0.0) -
                                      spec.activity[i] * spec.activity[j] / M;
                const double zscore = std::abs(ms.mean - target) / ms.se;
                if (zscore > worst) {
                    worst = zscore;
                    est = ms.mean;
                    null_v = target;
                    se = ms.se;
                }
            }
        }
        out.push_back(moment_report("blp/z-covariance",
                                    "cov(Z_i, Z_j) = delta m_i - m_i m_j / M", est,
                                    null_v, se, 3.0, reps, seed));
    }

    const PathGrid grid({0.0, 0.25, 0.5, 0.75});
    const auto master = sample_bundle(spec, grid, n, seed, 402);
    std::vector<GlpPath> anticipative;
    anticipative.reserve(n);
    for (std::size_t p = 0; p < n; ++p) {
        RngStream rng(seed, 403, p);
        anticipative.push_back(sample_blp_anticipative(spec, grid, rng).path);
    }

    for (std::size_t i = 0; i < dim; ++i) {
        for (std::size_t k = 1; k < grid.size(); ++k) {
            std::vector<double> a(n), b(n);
            for (std::size_t p = 0; p < n; ++p) {
                a[p] = anticipative[p].values[k][i];
                b[p] = master[p].values[k][i];
            }
            char name[96];
            std::snprintf(name, sizeof name, "blp/anticipative-vs-master-c%zu-t%.2f", i,
                          grid[k]);
            out.push_back(ks_two_sample(std::move(a), std::move(b), name, seed));
        }
    }

    if (spec.nu.is_atomic()) {  // posterior weights are martingales
        const std::size_t atoms = spec.nu.atoms().size();
        std::vector<std::vector<double>> weight_paths(big);
        double est = 0.0, se = 1.0, null_v = 0.0, worst = -1.0;
        std::vector<std::vector<double>> at_end(atoms, std::vector<double>(big));
        for (std::size_t p = 0; p < big; ++p) {
            RngStream rng(seed, 404, p);
            const auto path = sample_glp_master(spec, grid, rng);
            weight_paths[p].resize(grid.size());
            for (std::size_t k = 0; k < grid.size(); ++k) {
                const auto post = blp_posterior(spec, grid[k], path.values[k]);
                weight_paths[p][k] = post.weights[0];
                if (k + 1 == grid.size())
                    for (std::size_t j = 0; j < atoms; ++j)
                        at_end[j][p] = post.weights[j];
            }
        }
        for (std::size_t j = 0; j < atoms; ++j) {
            const auto ms = mean_se(at_end[j]);
            const double target = spec.nu.atoms()[j].mass;
            const double zscore = std::abs(ms.mean - target) / ms.se;
            if (zscore > worst) {
                worst = zscore;
                est = ms.mean;
                null_v = target;
                se = ms.se;
            }
        }
        out.push_back(moment_report("blp/posterior-mean-level",
                                    "E pi_t(atom) stays at the prior mass", est, null_v,
                                    se, 3.0, big, seed));
        out.push_back(martingale_test(weight_paths, grid.times(),
                                      "blp/posterior-martingale", seed));
    }

    {  // R_t - t R_1 variance reduction
        const PathGrid rgrid({0.0, 0.35, 1.0});
        std::vector<double> centred(n);
        for (std::size_t p = 0; p < n; ++p) {
            RngStream rng(seed, 405, p);
            const auto draw = sample_blp_anticipative(spec, rgrid, rng);
            centred[p] = draw.path.sums[1] - rgrid[1] * draw.path.sums[2];
        }
        double ss = 0.0, mean = 0.0;
        for (double v : centred) mean += v;
        mean /= static_cast<double>(n);
        for (double v : centred) ss += (v - mean) * (v - mean);
        const double var = ss / static_cast<double>(n - 1);
        const double target = sigma * sigma * M * rgrid[1] * (1.0 - rgrid[1]);
        const double var_se = var * std::sqrt(2.0 / static_cast<double>(n - 1));
        out.push_back(moment_report("blp/sum-bridge-variance",
                                    "var(R_t - t R_1) = sigma^2 M t (1-t)", var, target,
                                    var_se, 3.0, n, seed));
    }

    {  // innovation increments have variance dt
        double est = 0.0, se = 1.0, null_v = 0.0, worst = -1.0;
        for (std::size_t k = 0; k + 1 < grid.size(); ++k) {
            const double dt = grid[k + 1] - grid[k];
            for (std::size_t i = 0; i < dim; ++i) {
                std::vector<double> innov2(n);
                for (std::size_t p = 0; p < n; ++p) {
                    const auto post = blp_posterior(spec, grid[k], master[p].values[k]);
                    const double drift =
                        (post.cond_mean[i] - master[p].values[k][i]) / (1.0 - grid[k]);
                    const double db = (master[p].values[k + 1][i] -
                                       master[p].values[k][i] - drift * dt) /
                                      (sigma * std::sqrt(spec.activity[i]));
                    innov2[p] = db * db;
                }
                const auto ms = mean_se(innov2);
                const double zscore = std::abs(ms.mean - dt) / ms.se;
                if (zscore > worst) {
                    worst = zscore;
                    est = ms.mean;
                    null_v = dt;
                    se = ms.se;
                }
            }
        }
        out.push_back(moment_report("blp/innovation-variance",
                                    "compensated coordinate increments have variance dt",
                                    est, null_v, se, 3.0, n, seed));
    }

    {  // measure change against free box probabilities
        RngStream boxes(seed, 406);
        const double t = 0.5;
        double est = 0.0, se = 1.0, null_v = 0.0, worst = -1.0;
        for (int rep = 0; rep < 5; ++rep) {
            std::vector<double> lo(dim), hi(dim);
            double free_prob = 1.0;
            for (std::size_t i = 0; i < dim; ++i) {
                const double sd = sigma * std::sqrt(spec.activity[i] * t);
                const double center = boxes.uniform(-1.0, 1.0) * sd;
                const double half = boxes.uniform(0.4, 1.4) * sd;
                lo[i] = center - half;
                hi[i] = center + half;
                free_prob *= normal_cdf(hi[i] / sd) - normal_cdf(lo[i] / sd);
            }
            std::vector<double> weighted(n);
            for (std::size_t p = 0; p < n; ++p) {
                bool inside = true;
                for (std::size_t i = 0; i < dim; ++i)
                    inside = inside && master[p].values[2][i] >= lo[i] &&
                             master[p].values[2][i] <= hi[i];
                weighted[p] = inside ? rn_density(spec, master[p], t) : 0.0;
            }
            const auto ms = mean_se(weighted);
            const double zscore = std::abs(ms.mean - free_prob) / ms.se;
            if (zscore > worst) {
                worst = zscore;
                est = ms.mean;
                null_v = free_prob;
                se = ms.se;
            }
        }
        out.push_back(moment_report("blp/measure-change",
                                    "reweighted box mass equals the free probability",
                                    est, null_v, se, 3.0, n, seed));
    }

    if (dim >= 2) {  // weak/strong Markov consistency
        RngStream rng(seed, 407);
        const auto rep = consistency_experiment(spec, 0.5, 0.75, big, rng);
        double min_p = 1.0;
        for (double p : rep.weak_ks_p) min_p = std::min(min_p, p);
        VerificationReport weak;
        weak.name = "blp/weak-consistency";
        weak.null_hypothesis = "coordinate transitions follow their own-state law";
        weak.estimate = min_p;
        weak.p_value = min_p;
        weak.threshold = 0.01;
        weak.pass = min_p >= 0.01;
        weak.sample_size = rep.n_paths;
        weak.seed = seed;
        out.push_back(weak);
        const bool informative = spec.nu.is_atomic() && spec.nu.atoms().size() > 1;
        if (informative) {
            VerificationReport strong;
            strong.name = "blp/strong-consistency-failure";
            strong.null_hypothesis =
                "sum-state coefficient is significant under the dependent law";
            strong.estimate = rep.strong_coef[0];
            strong.se = rep.strong_se[0];
            strong.threshold = 3.0;
            strong.pass = std::abs(rep.strong_coef[0]) > 3.0 * rep.strong_se[0];
            strong.sample_size = rep.n_paths;
            strong.seed = seed;
            out.push_back(strong);
        }
        out.push_back(moment_report("blp/strong-consistency-control",
                                    "sum-state coefficient vanishes under reweighting",
                                    rep.control_coef[0], 0.0, rep.control_se[0], 3.0,
                                    rep.n_paths, seed));
    }

    {  // canonical residual and Z_t martingale checks
        const PathGrid mgrid(
            {0.0, 0.12, 0.24, 0.36, 0.48, 0.6, 0.72, 0.84, 0.9});
        std::vector<std::vector<double>> m_paths(big), z_paths(big);
        for (std::size_t p = 0; p < big; ++p) {
            RngStream rng(seed, 408, p);
            const auto path = sample_glp_master(spec, mgrid, rng);
            m_paths[p] = martingale_residual(spec, path).sum;
            z_paths[p] = z_martingale(spec, path, [](double u) { return u; });
        }
        out.push_back(martingale_test(m_paths, mgrid.times(),
                                      "blp/canonical-residual", seed));
        out.push_back(martingale_test(z_paths, mgrid.times(), "blp/z-process", seed));
    }
    return out;
}

// -------------------------------------------------------------------- plp --

Reports plp_suite(const GlpSpec& gspec, std::size_t budget, std::uint64_t seed) {
    if (gspec.family.kind() != FamilyKind::Poisson)
        throw ConfigError("suite plp-core requires a Poisson spec");
    Reports out;
    const PlpSpec spec(gspec.nu, gspec.activity, gspec.horizon_eps);
    const std::size_t n = std::max<std::size_t>(budget, 1000);
    const std::size_t dim = spec.dim();
    const int kmax = static_cast<int>(spec.max_count());

    {  // pmf sums to one over the bounded support
        double mass = 0.0;
        std::vector<double> x(dim, 0.0);
        // Odometer enumeration of all count vectors with sum <= kmax.
        for (;;) {
            double total = 0.0;
            for (double v : x) total += v;
            if (total <= kmax) mass += plp_terminal_pmf(spec, x);
            std::size_t i = 0;
            for (; i < dim; ++i) {
                if (x[i] < kmax) {
                    x[i] += 1.0;
                    for (std::size_t j = 0; j < i; ++j) x[j] = 0.0;
                    break;
                }
            }
            if (i == dim) break;
        }
        out.push_back(deterministic_report("plp/pmf-total-mass",
                                           "terminal pmf sums to one", mass - 1.0,
                                           1e-12, seed));
    }

    {  // coordinate intensities sum to the norm intensity
        RngStream rng(seed, 501);
        double worst = 0.0;
        for (int rep = 0; rep < 20; ++rep) {
            const double t = rng.uniform(0.0, 0.9);
            const double r = std::floor(rng.uniform(0.0, kmax + 1.0));
            const double lam = intensity_r(spec, t, r);
            double acc = 0.0;
            for (std::size_t i = 0; i < dim; ++i)
                acc += intensity_coordinate(spec, i, t, r);
            worst = std::max(worst, std::abs(acc - lam));
        }
        out.push_back(deterministic_report("plp/intensity-sum",
                                           "coordinate intensities sum to lambda_R",
                                           worst, 1e-12, seed));
    }

    // Exact jump-time samples back most of the remaining checks.
    std::vector<JumpRecord> jumps(n);
    for (std::size_t p = 0; p < n; ++p) {
        RngStream rng(seed, 502, p);
        jumps[p] = sample_jump_times(spec, rng);
    }

    {  // MC jump rates against the intensities
        const double t = 0.3, h = 0.05;
        double est = 0.0, se = 1.0, worst = -1.0;
        std::vector<double> diff(n);
        for (std::size_t p = 0; p < n; ++p) {
            double r_t = 0.0;
            for (std::size_t i = 0; i < dim; ++i) r_t += jumps[p].count_at(i, t);
            double cnt = 0.0;
            for (std::size_t i = 0; i < dim; ++i)
                cnt += jumps[p].count_at(i, t + h) - jumps[p].count_at(i, t);
            diff[p] = cnt / h - intensity_r(spec, t, r_t);
        }
        const auto ms_r = mean_se(diff);
        est = ms_r.mean;
        se = ms_r.se;
        worst = std::abs(est) / se;
        for (std::size_t i = 0; i < dim; ++i) {
            for (std::size_t p = 0; p < n; ++p) {
                double r_t = 0.0;
                for (std::size_t j = 0; j < dim; ++j) r_t += jumps[p].count_at(j, t);
                const double cnt = jumps[p].count_at(i, t + h) - jumps[p].count_at(i, t);
                diff[p] = cnt / h - intensity_coordinate(spec, i, t, r_t);
            }
            const auto ms = mean_se(diff);
            if (std::abs(ms.mean) / ms.se > worst) {
                worst = std::abs(ms.mean) / ms.se;
                est = ms.mean;
                se = ms.se;
            }
        }
        out.push_back(moment_report("plp/intensity-mc",
                                    "windowed jump rates match the intensities", est,
                                    0.0, se, 3.0, n, seed));
    }

    {  // survival functions
        double est = 0.0, se = 1.0, null_v = 0.0, worst = -1.0;
        for (std::size_t i = 0; i < dim; ++i) {
            for (double s : {0.25, 0.5, 0.75, 1.0}) {
                std::size_t hits = 0;
                for (std::size_t p = 0; p < n; ++p)
                    if (jumps[p].first[i] > s) ++hits;
                const double target = survival_single(spec, i, s);
                const double phat = static_cast<double>(hits) / static_cast<double>(n);
                const double sd =
                    std::sqrt(target * (1.0 - target) / static_cast<double>(n));
                const double zscore = std::abs(phat - target) / sd;
                if (zscore > worst) {
                    worst = zscore;
                    est = phat;
                    null_v = target;
                    se = sd;
                }
            }
        }
        out.push_back(moment_report("plp/survival",
                                    "P(T_i > s) = G(1 - s p_i) at the probe times", est,
                                    null_v, se, 3.0, n, seed));
    }

    {  // psi round trip and joint evaluation consistency
        double worst = 0.0;
        RngStream rng(seed, 503);
        for (int rep = 0; rep < 30; ++rep) {
            const double u = rng.uniform(survival_all_never(spec) + 1e-6, 1.0 - 1e-6);
            worst = std::max(worst, std::abs(psi(spec, psi_inverse(spec, u)) - u));
        }
        std::vector<double> s(dim), u(dim);
        for (int rep = 0; rep < 10; ++rep) {
            for (std::size_t i = 0; i < dim; ++i) {
                s[i] = rng.uniform(0.0, 1.0);
                u[i] = psi(spec, spec.p[i] * s[i]);
            }
            worst = std::max(worst,
                             std::abs(psi_structure(spec, u) - survival_joint(spec, s)));
        }
        out.push_back(deterministic_report("plp/psi-structure",
                                           "psi round trip and joint survival identity",
                                           worst, 1e-9, seed));
    }

    {  // conditioned first-jump uniformity
        std::vector<double> pit;
        for (std::size_t p = 0; p < n; ++p) {
            for (std::size_t i = 0; i < dim; ++i) {
                const double tfirst = jumps[p].first[i];
                if (!(tfirst < 1.0)) continue;
                const double lo = psi(spec, spec.p[i]);
                pit.push_back((psi(spec, spec.p[i] * tfirst) - lo) / (1.0 - lo));
            }
        }
        out.push_back(ks_one_sample(std::move(pit), [](double u) { return u; },
                                    "plp/first-jump-uniformity", seed));
    }

    {  // counting paths: nondecreasing, unit jumps, multinomial terminals
        double worst = 0.0;
        for (std::size_t p = 0; p < n; ++p) {
            std::vector<double> all;
            for (std::size_t i = 0; i < dim; ++i)
                all.insert(all.end(), jumps[p].times[i].begin(), jumps[p].times[i].end());
            std::sort(all.begin(), all.end());
            for (std::size_t j = 1; j < all.size(); ++j)
                if (all[j] == all[j - 1]) worst = std::max(worst, 1.0);
        }
        out.push_back(deterministic_report("plp/simple-jumps",
                                           "the master counting path has unit jumps",
                                           worst, 0.0, seed));
    }
    return out;
}

}  // namespace

std::vector<std::string> suite_names() {
    return {"kernels-core", "lrb-core", "glp-core", "blp-core", "plp-core"};
}

std::vector<VerificationReport> run_suite(const GlpSpec& spec, const std::string& suite,
                                          std::size_t budget, std::uint64_t seed) {
    if (budget == 0) throw ConfigError("verification budget must be positive");
    using SuiteFn = Reports (*)(const GlpSpec&, std::size_t, std::uint64_t);
    SuiteFn fn = nullptr;
    if (suite == "kernels-core")
        fn = kernels_suite;
    else if (suite == "lrb-core")
        fn = lrb_suite;
    else if (suite == "glp-core")
        fn = glp_suite;
    else if (suite == "blp-core")
        fn = blp_suite;
    else if (suite == "plp-core")
        fn = plp_suite;
    else
        throw ConfigError("unknown suite: " + suite);
    return fn(spec, budget, seed);
}

std::string to_jsonl(std::span<const VerificationReport> reports) {
    std::ostringstream os;
    for (const auto& r : reports) {
        nlohmann::json j;
        j["name"] = r.name;
        j["null"] = r.null_hypothesis;
        j["estimate"] = r.estimate;
        j["null_value"] = r.null_value;
        if (std::isfinite(r.se)) j["se"] = r.se;
        if (std::isfinite(r.p_value)) j["p_value"] = r.p_value;
        j["threshold"] = r.threshold;
        j["pass"] = r.pass;
        j["n"] = r.sample_size;
        j["seed"] = r.seed;
        os << j.dump() << '\n';
    }
    return os.str();
}

std::string to_table(std::span<const VerificationReport> reports) {
    std::ostringstream os;
    char line[256];
    std::snprintf(line, sizeof line, "%-42s %12s %12s %10s %6s\n", "test", "estimate",
                  "null", "se/p", "pass");
    os << line;
    for (const auto& r : reports) {
        const double aux = std::isfinite(r.p_value) ? r.p_value : r.se;
        std::snprintf(line, sizeof line, "%-42s %12.5g %12.5g %10.4g %6s\n",
                      r.name.c_str(), r.estimate, r.null_value, aux,
                      r.pass ? "ok" : "FAIL");
        os << line;
    }
    return os.str();
}

}  // namespace liouville
