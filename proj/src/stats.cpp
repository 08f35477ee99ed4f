#include "liouville/stats.hpp"

#include <stdexcept>

namespace liouville {

namespace {

// Solve A x = b for small symmetric positive definite A (Gaussian elimination
// with partial pivoting); A is row-major k x k.
std::vector<double> solve(std::vector<double> a, std::vector<double> b, std::size_t k) {
    for (std::size_t col = 0; col < k; ++col) {
        std::size_t piv = col;
        for (std::size_t r = col + 1; r < k; ++r)
            if (std::abs(a[r * k + col]) > std::abs(a[piv * k + col])) piv = r;
        if (std::abs(a[piv * k + col]) < 1e-300)
            throw InsufficientDataError("singular design matrix");
        if (piv != col) {
            for (std::size_t c = 0; c < k; ++c) std::swap(a[piv * k + c], a[col * k + c]);
            std::swap(b[piv], b[col]);
        }
        for (std::size_t r = col + 1; r < k; ++r) {
            const double f = a[r * k + col] / a[col * k + col];
            for (std::size_t c = col; c < k; ++c) a[r * k + c] -= f * a[col * k + c];
            b[r] -= f * b[col];
        }
    }
    std::vector<double> x(k);
    for (std::size_t i = k; i-- > 0;) {
        double s = b[i];
        for (std::size_t c = i + 1; c < k; ++c) s -= a[i * k + c] * x[c];
        x[i] = s / a[i * k + i];
    }
    return x;
}

// Inverse of small matrix by solving against unit vectors.
std::vector<double> inverse(const std::vector<double>& a, std::size_t k) {
    std::vector<double> inv(k * k);
    for (std::size_t j = 0; j < k; ++j) {
        std::vector<double> e(k, 0.0);
        e[j] = 1.0;
        const auto col = solve(a, e, k);
        for (std::size_t i = 0; i < k; ++i) inv[i * k + j] = col[i];
    }
    return inv;
}

}  // namespace

OlsFit ols(std::span<const double> y, const std::vector<std::vector<double>>& columns,
           std::span<const double> weights) {
    const std::size_t n = y.size();
    const std::size_t k = columns.size() + 1;
    if (n < k + 2) throw InsufficientDataError("too few observations for regression");
    for (const auto& c : columns)
        if (c.size() != n) throw std::invalid_argument("regressor length mismatch");
    if (!weights.empty() && weights.size() != n)
        throw std::invalid_argument("weight length mismatch");

    auto x_at = [&](std::size_t row, std::size_t col) -> double {
        return col == 0 ? 1.0 : columns[col - 1][row];
    };
    std::vector<double> xtx(k * k, 0.0), xty(k, 0.0);
    for (std::size_t r = 0; r < n; ++r) {
        const double w = weights.empty() ? 1.0 : weights[r];
        for (std::size_t i = 0; i < k; ++i) {
            xty[i] += w * x_at(r, i) * y[r];
            for (std::size_t j = i; j < k; ++j) xtx[i * k + j] += w * x_at(r, i) * x_at(r, j);
        }
    }
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < i; ++j) xtx[i * k + j] = xtx[j * k + i];

    OlsFit fit;
    fit.coef = solve(xtx, xty, k);
    // HC0 sandwich: (X'WX)^-1 X'W diag(e^2) WX (X'WX)^-1.
    const auto bread = inverse(xtx, k);
    std::vector<double> meat(k * k, 0.0);
    for (std::size_t r = 0; r < n; ++r) {
        double e = y[r];
        for (std::size_t i = 0; i < k; ++i) e -= fit.coef[i] * x_at(r, i);
        const double w = weights.empty() ? 1.0 : weights[r];
        const double we2 = w * w * e * e;
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = i; j < k; ++j) meat[i * k + j] += we2 * x_at(r, i) * x_at(r, j);
    }
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < i; ++j) meat[i * k + j] = meat[j * k + i];

    fit.se.assign(k, 0.0);
    for (std::size_t i = 0; i < k; ++i) {
        double v = 0.0;
        for (std::size_t a = 0; a < k; ++a)
            for (std::size_t b = 0; b < k; ++b)
                v += bread[i * k + a] * meat[a * k + b] * bread[b * k + i];
        fit.se[i] = std::sqrt(std::max(0.0, v));
    }
    return fit;
}

std::vector<std::size_t> equal_count_bins(std::span<const double> xs, std::size_t bins) {
    if (bins == 0) throw std::invalid_argument("bins must be positive");
    const std::size_t n = xs.size();
    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return xs[a] < xs[b]; });
    std::vector<std::size_t> bin(n);
    for (std::size_t rank = 0; rank < n; ++rank)
        bin[order[rank]] = std::min(bins - 1, rank * bins / n);
    return bin;
}

}  // namespace liouville
