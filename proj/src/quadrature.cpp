#include "liouville/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <stdexcept>

namespace liouville {

namespace {

// Gauss-Kronrod 15-point nodes/weights on [-1,1]; the embedded 7-point
// Gauss rule uses the even-indexed Kronrod nodes.
constexpr double kKronrodNodes[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000};
constexpr double kKronrodWeights[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};
constexpr double kGaussWeights[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

struct PanelResult {
    double integral;
    double error;
};

PanelResult gk15(const std::function<double(double)>& f, double a, double b) {
    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    double fv[15];
    for (int i = 0; i < 7; ++i) {
        fv[i] = f(center - half * kKronrodNodes[i]);
        fv[14 - i] = f(center + half * kKronrodNodes[i]);
    }
    fv[7] = f(center);
    double kronrod = 0.0;
    for (int i = 0; i < 7; ++i) kronrod += kKronrodWeights[i] * (fv[i] + fv[14 - i]);
    kronrod += kKronrodWeights[7] * fv[7];
    double gauss = kGaussWeights[3] * fv[7];
    for (int i = 0; i < 3; ++i) gauss += kGaussWeights[i] * (fv[2 * i + 1] + fv[13 - 2 * i]);
    kronrod *= half;
    gauss *= half;
    const double diff = std::abs(kronrod - gauss);
    // Classic QUADPACK error sharpening.
    const double err = diff > 0.0 ? std::min(diff, 200.0 * diff * std::sqrt(diff)) : 0.0;
    return {kronrod, std::max(err, std::abs(kronrod) * 1e-16)};
}

struct Panel {
    double a, b, integral, error;
    bool operator<(const Panel& o) const { return error < o.error; }
};

// Shared adaptive refinement; returns the final panel set.
std::vector<Panel> refine(const std::function<double(double)>& f, double a,
                          double b, double abs_tol, int max_panels,
                          const std::vector<double>& seeds) {
    std::vector<double> edges{a};
    for (double s : seeds)
        if (s > a && s < b) edges.push_back(s);
    edges.push_back(b);
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

    std::priority_queue<Panel> q;
    double err = 0.0;
    int n = 0;
    for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
        const PanelResult r = gk15(f, edges[i], edges[i + 1]);
        q.push({edges[i], edges[i + 1], r.integral, r.error});
        err += r.error;
        ++n;
    }
    while (err > abs_tol && n < max_panels) {
        Panel worst = q.top();
        q.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        if (mid <= worst.a || mid >= worst.b) {  // at floating resolution
            err -= worst.error;
            q.push({worst.a, worst.b, worst.integral, 0.0});
            continue;
        }
        const PanelResult left = gk15(f, worst.a, mid);
        const PanelResult right = gk15(f, mid, worst.b);
        err += left.error + right.error - worst.error;
        q.push({worst.a, mid, left.integral, left.error});
        q.push({mid, worst.b, right.integral, right.error});
        ++n;
    }
    std::vector<Panel> panels;
    panels.reserve(q.size());
    while (!q.empty()) {
        panels.push_back(q.top());
        q.pop();
    }
    std::sort(panels.begin(), panels.end(),
              [](const Panel& x, const Panel& y) { return x.a < y.a; });
    return panels;
}

}  // namespace

double integrate(const std::function<double(double)>& f, double a, double b,
                 double abs_tol, int max_panels, const std::vector<double>& seeds) {
    if (!(b > a)) return 0.0;
    double total = 0.0;
    for (const auto& p : refine(f, a, b, abs_tol, max_panels, seeds))
        total += p.integral;
    return total;
}

double integrate_truncated(const std::function<double(double)>& f, double lo,
                           double hi, double hint, double abs_tol) {
    // Walk outward in growing steps until f is negligible relative to the
    // largest value seen, then integrate the finite window.
    double peak = std::abs(f(hint));
    double a = std::isfinite(lo) ? lo : hint;
    double b = std::isfinite(hi) ? hi : hint;
    double step = 1.0;
    if (!std::isfinite(lo)) {
        double x = hint;
        for (int i = 0; i < 200; ++i) {
            x -= step;
            step *= 1.5;
            const double v = std::abs(f(x));
            peak = std::max(peak, v);
            if (v < peak * 1e-15 && i > 3) break;
        }
        a = x;
    }
    step = 1.0;
    if (!std::isfinite(hi)) {
        double x = hint;
        for (int i = 0; i < 200; ++i) {
            x += step;
            step *= 1.5;
            const double v = std::abs(f(x));
            peak = std::max(peak, v);
            if (v < peak * 1e-15 && i > 3) break;
        }
        b = x;
    }
    return integrate(f, a, b, abs_tol, 4000, {hint});
}

namespace {

// One half of the power-endpoint rule: int_0^H g(d) dd where g ~ C d^alpha
// at the origin, via d = u^{1/p} with p = alpha + 1.
double half_power_integral(const std::function<double(double)>& g, double H,
                           double alpha, double abs_tol) {
    const double p = alpha + 1.0;
    if (p == 1.0) return integrate(g, 0.0, H, abs_tol);
    const double top = std::pow(H, p);
    return integrate(
        [&](double u) {
            const double d = std::exp(std::log(u) / p);
            if (!(d > 0.0)) return 0.0;
            const double v = g(d) * d / (p * u);
            return std::isfinite(v) ? v : 0.0;
        },
        0.0, top, abs_tol);
}

}  // namespace

double integrate_power_endpoints(const std::function<double(double)>& from_lower,
                                 const std::function<double(double)>& from_upper,
                                 double a, double b, double alpha, double beta,
                                 double abs_tol) {
    if (!(b > a)) return 0.0;
    const double half = 0.5 * (b - a);
    return half_power_integral(from_lower, half, alpha, abs_tol * 0.5) +
           half_power_integral(from_upper, half, beta, abs_tol * 0.5);
}

NumericCdf::NumericCdf(std::function<double(double)> density, double a, double b,
                       double abs_tol, const std::vector<double>& seeds)
    : density_(std::move(density)), a_(a), b_(b) {
    if (!(b > a)) throw std::invalid_argument("NumericCdf: empty support");
    const auto panels = refine(density_, a, b, abs_tol, 4000, seeds);
    edges_.reserve(panels.size() + 1);
    cumul_.reserve(panels.size() + 1);
    edges_.push_back(a);
    cumul_.push_back(0.0);
    double acc = 0.0;
    for (const auto& p : panels) {
        acc += std::max(0.0, p.integral);
        edges_.push_back(p.b);
        cumul_.push_back(acc);
    }
    total_ = acc;
    if (!(total_ > 0.0))
        throw std::invalid_argument("NumericCdf: density integrates to zero");
}

double NumericCdf::cdf(double x) const {
    if (x <= a_) return 0.0;
    if (x >= b_) return 1.0;
    const auto it = std::upper_bound(edges_.begin(), edges_.end(), x);
    const std::size_t idx = static_cast<std::size_t>(it - edges_.begin()) - 1;
    const double base = cumul_[idx];
    const double local = integrate(density_, edges_[idx], x, 1e-12, 64);
    return std::min(1.0, std::max(0.0, (base + local) / total_));
}

double NumericCdf::invert(double u, double x_tol) const {
    u = std::min(1.0, std::max(0.0, u));
    const double target = u * total_;
    const auto it = std::lower_bound(cumul_.begin(), cumul_.end(), target);
    std::size_t idx = static_cast<std::size_t>(it - cumul_.begin());
    if (idx == 0) return a_;
    if (idx >= cumul_.size()) return b_;
    --idx;  // target lies inside panel [edges_[idx], edges_[idx+1]]
    double lo = edges_[idx], hi = edges_[idx + 1];
    const double base = cumul_[idx];
    while (hi - lo > x_tol) {
        const double mid = 0.5 * (lo + hi);
        const double mass = base + integrate(density_, edges_[idx], mid, 1e-13, 64);
        if (mass < target)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace liouville
