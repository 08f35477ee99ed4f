#ifndef LIOUVILLE_STATS_HPP
#define LIOUVILLE_STATS_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <numeric>
#include <span>
#include <vector>

#include "liouville/errors.hpp"

namespace liouville {

// Kolmogorov tail probability Q(lambda) = 2 sum_{j>=1} (-1)^{j-1} exp(-2 j^2 lambda^2).
inline double kolmogorov_q(double lambda) {
    if (lambda < 0.18) return 1.0;
    double sum = 0.0;
    for (int j = 1; j <= 100; ++j) {
        const double term = std::exp(-2.0 * j * j * lambda * lambda);
        sum += (j % 2 == 1 ? term : -term);
        if (term < 1e-14) break;
    }
    return std::min(1.0, std::max(0.0, 2.0 * sum));
}

// Asymptotic KS p-value with the Stephens small-sample correction.
inline double ks_p_value(double d, double n_eff) {
    const double sq = std::sqrt(n_eff);
    return kolmogorov_q((sq + 0.12 + 0.11 / sq) * d);
}

// One-sample KS statistic against a CDF callable.
inline double ks_statistic(std::vector<double> samples,
                           const std::function<double(double)>& cdf) {
    if (samples.empty()) throw InsufficientDataError("KS statistic of empty sample");
    std::sort(samples.begin(), samples.end());
    const double n = static_cast<double>(samples.size());
    double d = 0.0;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const double f = cdf(samples[i]);
        d = std::max(d, std::abs(f - static_cast<double>(i) / n));
        d = std::max(d, std::abs(static_cast<double>(i + 1) / n - f));
    }
    return d;
}

// Two-sample KS statistic.
inline double ks_statistic_two(std::vector<double> a, std::vector<double> b) {
    if (a.empty() || b.empty())
        throw InsufficientDataError("KS statistic of empty sample");
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    double d = 0.0;
    std::size_t i = 0, j = 0;
    const double na = static_cast<double>(a.size());
    const double nb = static_cast<double>(b.size());
    while (i < a.size() && j < b.size()) {
        const double x = std::min(a[i], b[j]);
        while (i < a.size() && a[i] <= x) ++i;
        while (j < b.size() && b[j] <= x) ++j;
        d = std::max(d, std::abs(static_cast<double>(i) / na -
                                 static_cast<double>(j) / nb));
    }
    return d;
}

struct MeanSe {
    double mean;
    double se;
    std::size_t n;
};

inline MeanSe mean_se(std::span<const double> xs) {
    if (xs.size() < 2) throw InsufficientDataError("need at least two samples");
    const double n = static_cast<double>(xs.size());
    const double mean = std::accumulate(xs.begin(), xs.end(), 0.0) / n;
    double ss = 0.0;
    for (double x : xs) ss += (x - mean) * (x - mean);
    return {mean, std::sqrt(ss / (n - 1.0) / n), xs.size()};
}

struct OlsFit {
    std::vector<double> coef;  // intercept first
    std::vector<double> se;    // heteroskedasticity-robust (HC0)
};

// Weighted least squares of y on [1, X...] with HC0 sandwich errors.
// `columns` holds the regressor columns; `weights` may be empty for OLS.
OlsFit ols(std::span<const double> y,
           const std::vector<std::vector<double>>& columns,
           std::span<const double> weights = {});

// Equal-count bin index per observation: ranks split into `bins` groups.
std::vector<std::size_t> equal_count_bins(std::span<const double> xs, std::size_t bins);

}  // namespace liouville

#endif
