#include "liouville/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "liouville/errors.hpp"
#include "liouville/quadrature.hpp"

namespace liouville {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();
constexpr double kLog2Pi = 1.8378770664093454835606594728112;
constexpr double kLogPi = 1.1447298858494001741434273513531;

bool is_nonneg_integer(double x) {
    return x >= 0.0 && x == std::floor(x);
}

}  // namespace

DensityFamily DensityFamily::brownian(double sigma) {
    if (!(sigma > 0.0)) throw DomainError("Brownian scale must be positive");
    return DensityFamily(FamilyKind::Brownian, Support::RealLine, sigma);
}

DensityFamily DensityFamily::gamma_unit() {
    return DensityFamily(FamilyKind::Gamma, Support::NonnegativeReal, 1.0);
}

DensityFamily DensityFamily::poisson() {
    return DensityFamily(FamilyKind::Poisson, Support::NonnegativeInteger, 1.0);
}

DensityFamily DensityFamily::stable_half(double scale) {
    if (!(scale > 0.0)) throw DomainError("1/2-stable scale must be positive");
    return DensityFamily(FamilyKind::StableHalf, Support::NonnegativeReal, scale);
}

double DensityFamily::log_density(double t, double x) const {
    if (!(t > 0.0)) return kNegInf;
    switch (kind_) {
        case FamilyKind::Brownian: {
            const double v = param_ * param_ * t;
            return -0.5 * (kLog2Pi + std::log(v)) - x * x / (2.0 * v);
        }
        case FamilyKind::Gamma:
            if (!(x > 0.0)) return kNegInf;
            return (t - 1.0) * std::log(x) - x - std::lgamma(t);
        case FamilyKind::Poisson:
            if (!is_nonneg_integer(x)) return kNegInf;
            return x * std::log(t) - t - std::lgamma(x + 1.0);
        case FamilyKind::StableHalf: {
            if (!(x > 0.0)) return kNegInf;
            const double ct = param_ * t;
            return std::log(ct) - std::log(2.0) - 0.5 * kLogPi - 1.5 * std::log(x) -
                   ct * ct / (4.0 * x);
        }
    }
    return kNegInf;
}

double DensityFamily::density(double t, double x) const {
    if (!(t > 0.0)) throw DomainError("density requires t > 0");
    switch (kind_) {
        case FamilyKind::Brownian:
            break;
        case FamilyKind::Gamma:
        case FamilyKind::StableHalf:
            if (x < 0.0) throw DomainError("state outside nonnegative support");
            if (x == 0.0) {
                if (kind_ == FamilyKind::StableHalf) return 0.0;
                if (t < 1.0) return std::numeric_limits<double>::infinity();
                return t == 1.0 ? 1.0 : 0.0;
            }
            break;
        case FamilyKind::Poisson:
            if (!is_nonneg_integer(x)) throw DomainError("state must be a nonnegative integer");
            break;
    }
    return std::exp(log_density(t, x));
}

double DensityFamily::sample_increment(double t, RngStream& rng) const {
    if (!(t > 0.0)) throw DomainError("increment requires t > 0");
    switch (kind_) {
        case FamilyKind::Brownian:
            return rng.normal(0.0, param_ * std::sqrt(t));
        case FamilyKind::Gamma:
            return rng.gamma(t);
        case FamilyKind::Poisson:
            return static_cast<double>(rng.poisson(t));
        case FamilyKind::StableHalf: {
            const double z = rng.normal();
            const double ct = param_ * t;
            return ct * ct / (2.0 * z * z);
        }
    }
    return 0.0;
}

double DensityFamily::increment_mean(double t) const {
    switch (kind_) {
        case FamilyKind::Brownian:
            return 0.0;
        case FamilyKind::Gamma:
        case FamilyKind::Poisson:
            return t;
        case FamilyKind::StableHalf:
            throw IntegrabilityError("1/2-stable increments have no mean");
    }
    return 0.0;
}

void validate_endpoint(const DensityFamily& family, const BridgeEndpoint& end) {
    if (!(end.horizon > 0.0)) throw DomainError("bridge horizon must be positive");
    switch (family.kind()) {
        case FamilyKind::Brownian:
            break;
        case FamilyKind::Gamma:
            // f_T(z) must be positive and finite: z > 0 (z = 0 is infinite for T < 1).
            if (!(end.pin > 0.0)) throw DomainError("gamma bridge pin must be positive");
            break;
        case FamilyKind::StableHalf:
            if (!(end.pin > 0.0)) throw DomainError("1/2-stable bridge pin must be positive");
            break;
        case FamilyKind::Poisson:
            if (!is_nonneg_integer(end.pin))
                throw DomainError("Poisson bridge pin must be a nonnegative integer");
            break;
    }
}

double log_h(const DensityFamily& family, const BridgeEndpoint& end, double t, double x) {
    return family.log_density(end.horizon - t, end.pin - x);
}

double bridge_transition_density(const DensityFamily& family, double s, double t,
                                 const BridgeEndpoint& end, double y, double x) {
    validate_endpoint(family, end);
    if (!(0.0 <= s && s < t && t < end.horizon))
        throw HorizonError("bridge transition requires 0 <= s < t < T");
    const double lhs = log_h(family, end, s, y);
    if (lhs == kNegInf)
        throw UnreachableStateError("conditioning on a null event: h_s(y) = 0");
    const double l = log_h(family, end, t, x) - lhs + family.log_density(t - s, x - y);
    return l == kNegInf ? 0.0 : std::exp(l);
}

double sample_bridge_step(const DensityFamily& family, double s, double y, double t,
                          const BridgeEndpoint& end, RngStream& rng) {
    const double T = end.horizon;
    const double z = end.pin;
    if (t >= T) return z;
    const double dt = t - s;
    const double rem = T - t;
    switch (family.kind()) {
        case FamilyKind::Brownian: {
            const double mean = y + dt / (T - s) * (z - y);
            const double sd = family.sigma() * std::sqrt(dt * rem / (T - s));
            return rng.normal(mean, sd);
        }
        case FamilyKind::Gamma:
            return y + (z - y) * rng.beta(dt, rem);
        case FamilyKind::Poisson: {
            const auto remaining = static_cast<std::uint64_t>(z - y);
            return y + static_cast<double>(rng.binomial(remaining, dt / (T - s)));
        }
        case FamilyKind::StableHalf: {
            const double span = z - y;
            if (!(span > 0.0))
                throw UnreachableStateError("1/2-stable bridge state above its pin");
            auto dens = [&](double d) {
                const double l = family.log_density(dt, d) + family.log_density(rem, span - d);
                return l == kNegInf ? 0.0 : std::exp(l);
            };
            NumericCdf cdf(dens, 0.0, span, 1e-11);
            return y + cdf.invert(rng.uniform(), 1e-10);
        }
    }
    return z;
}

std::vector<double> sample_bridge_path(const DensityFamily& family,
                                       const BridgeEndpoint& end,
                                       std::span<const double> grid, RngStream& rng) {
    validate_endpoint(family, end);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (grid[i] < 0.0 || grid[i] > end.horizon)
            throw DomainError("bridge grid must lie inside [0, T]");
        if (i > 0 && !(grid[i] > grid[i - 1]))
            throw DomainError("bridge grid must be strictly increasing");
    }
    // Closed-form one-shot allocations for the lattice/Dirichlet families
    // keep the terminal exact; the sequential step rule is used otherwise.
    std::vector<double> values(grid.size());
    double s = 0.0, y = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double t = grid[i];
        if (t == 0.0) {
            values[i] = 0.0;
        } else if (t >= end.horizon) {
            values[i] = end.pin;
        } else {
            values[i] = sample_bridge_step(family, s, y, t, end, rng);
        }
        s = t;
        y = values[i];
    }
    return values;
}

std::vector<double> kernel_seed_points(const DensityFamily& family, double tau,
                                       double offset) {
    switch (family.kind()) {
        case FamilyKind::Brownian: {
            const double w = family.sigma() * std::sqrt(tau);
            return {offset - 4 * w, offset - w, offset, offset + w, offset + 4 * w};
        }
        case FamilyKind::Gamma: {
            const double sd = std::sqrt(tau);
            return {offset + 0.25 * tau, offset + tau, offset + tau + 3 * sd,
                    offset + tau + 10 * sd + 10};
        }
        case FamilyKind::Poisson:
            return {};
        case FamilyKind::StableHalf: {
            const double c = family.scale();
            const double mode = c * c * tau * tau / 6.0;
            return {offset + 0.25 * mode, offset + mode, offset + 6 * mode,
                    offset + 36 * mode, offset + 216 * mode};
        }
    }
    return {};
}

std::pair<double, double> kernel_window(const DensityFamily& family, double tau,
                                        double offset) {
    switch (family.kind()) {
        case FamilyKind::Brownian: {
            const double w = family.sigma() * std::sqrt(tau);
            return {offset - 9.5 * w, offset + 9.5 * w};
        }
        case FamilyKind::Gamma:
        case FamilyKind::Poisson:
            return {offset, offset + tau + 14 * std::sqrt(tau) + 45.0};
        case FamilyKind::StableHalf: {
            const double c = family.scale();
            const double mode = c * c * tau * tau / 6.0;
            // Heavy x^{-3/2} tail: callers clip against the carrier of nu.
            return {offset, offset + 3e10 * std::max(mode, 1.0)};
        }
    }
    return {offset, offset};
}

std::vector<double> allocate_pinned_increment(const DensityFamily& family,
                                              std::span<const double> weights,
                                              double total, RngStream& rng) {
    const std::size_t n = weights.size();
    std::vector<double> out(n, 0.0);
    if (n == 0) return out;
    if (n == 1) {
        out[0] = total;
        return out;
    }
    double wsum = 0.0;
    for (double w : weights) {
        if (!(w > 0.0)) throw DomainError("allocation weights must be positive");
        wsum += w;
    }
    switch (family.kind()) {
        case FamilyKind::Brownian: {
            const double sigma = family.sigma();
            double esum = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                out[i] = rng.normal(0.0, sigma * std::sqrt(weights[i]));
                esum += out[i];
            }
            for (std::size_t i = 0; i < n; ++i)
                out[i] += weights[i] / wsum * (total - esum);
            return out;
        }
        case FamilyKind::Gamma: {
            const auto fractions = rng.dirichlet(weights);
            for (std::size_t i = 0; i < n; ++i) out[i] = total * fractions[i];
            return out;
        }
        case FamilyKind::Poisson: {
            std::vector<double> probs(n);
            for (std::size_t i = 0; i < n; ++i) probs[i] = weights[i] / wsum;
            const auto counts =
                rng.multinomial(static_cast<std::uint64_t>(total), probs);
            for (std::size_t i = 0; i < n; ++i) out[i] = static_cast<double>(counts[i]);
            return out;
        }
        case FamilyKind::StableHalf: {
            double remaining = total;
            double tail = wsum;
            for (std::size_t i = 0; i + 1 < n; ++i) {
                tail -= weights[i];
                const BridgeEndpoint sub{weights[i] + tail, remaining};
                out[i] = sample_bridge_step(family, 0.0, 0.0, weights[i], sub, rng);
                remaining -= out[i];
            }
            out[n - 1] = remaining;
            return out;
        }
    }
    return out;
}

}  // namespace liouville
