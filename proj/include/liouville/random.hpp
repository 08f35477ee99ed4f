#ifndef LIOUVILLE_RANDOM_HPP
#define LIOUVILLE_RANDOM_HPP

#include <cmath>
#include <cstdint>
#include <span>
#include <vector>

#include "liouville/errors.hpp"

namespace liouville {

// Counter-derived pseudo-random streams.  Every sampler takes an explicit
// RngStream, and independent streams are derived from one master seed by
// mixing (seed, stream, substream) through splitmix64.  Streams derived from
// distinct counters are independent for practical purposes, so path i can
// always be regenerated as stream(master, i) regardless of scheduling order.
//
// The core generator is xoshiro256**; all variate transforms live here so
// results do not depend on the C++ standard library's unspecified
// distribution algorithms.
class RngStream {
  public:
    explicit RngStream(std::uint64_t seed, std::uint64_t stream = 0,
                       std::uint64_t substream = 0) {
        std::uint64_t x = seed;
        x = splitmix(x ^ 0x9e3779b97f4a7c15ULL);
        x = splitmix(x ^ stream);
        x = splitmix(x ^ substream);
        for (auto& s : state_) {
            x = splitmix(x);
            s = x;
        }
    }

    std::uint64_t next_u64() {
        const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
        const std::uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

    // Uniform on (0,1); never returns an exact endpoint.
    double uniform() {
        const std::uint64_t bits = next_u64() >> 11;  // 53 random bits
        return (static_cast<double>(bits) + 0.5) * 0x1.0p-53;
    }

    double uniform(double a, double b) { return a + (b - a) * uniform(); }

    bool bernoulli(double p) { return uniform() < p; }

    // Box-Muller; draws two uniforms per variate (no cached spare).
    double normal() {
        const double u = uniform();
        const double v = uniform();
        return std::sqrt(-2.0 * std::log(u)) * std::cos(6.283185307179586476925287 * v);
    }

    double normal(double mean, double sd) { return mean + sd * normal(); }

    double exponential(double rate = 1.0) { return -std::log(uniform()) / rate; }

    // Marsaglia-Tsang for shape >= 1, boosted by u^{1/a} below 1. Unit rate.
    double gamma(double shape) {
        if (!(shape > 0.0)) throw DomainError("gamma shape must be positive");
        if (shape < 1.0) {
            const double u = uniform();
            return gamma(shape + 1.0) * std::pow(u, 1.0 / shape);
        }
        const double d = shape - 1.0 / 3.0;
        const double c = 1.0 / std::sqrt(9.0 * d);
        for (;;) {
            double x, v;
            do {
                x = normal();
                v = 1.0 + c * x;
            } while (v <= 0.0);
            v = v * v * v;
            const double u = uniform();
            if (u < 1.0 - 0.0331 * x * x * x * x) return d * v;
            if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v;
        }
    }

    double beta(double a, double b) {
        const double x = gamma(a);
        const double y = gamma(b);
        return x / (x + y);
    }

    // Sequential Bernoulli; exact and fine for the small counts this
    // library pins (bridge allocations of tens of jumps).
    std::uint64_t binomial(std::uint64_t n, double p) {
        if (p <= 0.0) return 0;
        if (p >= 1.0) return n;
        std::uint64_t k = 0;
        for (std::uint64_t i = 0; i < n; ++i) k += bernoulli(p) ? 1 : 0;
        return k;
    }

    // Knuth's product method; means here stay small.
    std::uint64_t poisson(double mean) {
        if (!(mean >= 0.0)) throw DomainError("poisson mean must be nonnegative");
        const double limit = std::exp(-mean);
        std::uint64_t k = 0;
        double prod = uniform();
        while (prod > limit) {
            ++k;
            prod *= uniform();
        }
        return k;
    }

    // Index draw from unnormalised nonnegative weights.
    std::size_t categorical(std::span<const double> weights) {
        double total = 0.0;
        for (double w : weights) total += w;
        if (!(total > 0.0)) throw DomainError("categorical weights must have positive sum");
        double u = uniform() * total;
        for (std::size_t i = 0; i + 1 < weights.size(); ++i) {
            u -= weights[i];
            if (u <= 0.0) return i;
        }
        return weights.size() - 1;
    }

    std::vector<std::uint64_t> multinomial(std::uint64_t n, std::span<const double> probs) {
        std::vector<std::uint64_t> counts(probs.size(), 0);
        double remaining = 1.0;
        std::uint64_t left = n;
        for (std::size_t i = 0; i + 1 < probs.size() && left > 0; ++i) {
            const double p = remaining > 0.0 ? probs[i] / remaining : 0.0;
            const std::uint64_t k = binomial(left, std::min(1.0, std::max(0.0, p)));
            counts[i] = k;
            left -= k;
            remaining -= probs[i];
        }
        if (!probs.empty()) counts[probs.size() - 1] += left;
        return counts;
    }

    std::vector<double> dirichlet(std::span<const double> alpha) {
        std::vector<double> g(alpha.size());
        double total = 0.0;
        for (std::size_t i = 0; i < alpha.size(); ++i) {
            g[i] = gamma(alpha[i]);
            total += g[i];
        }
        for (auto& x : g) x /= total;
        return g;
    }

  private:
    static std::uint64_t splitmix(std::uint64_t x) {
        x += 0x9e3779b97f4a7c15ULL;
        x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
        x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
        return x ^ (x >> 31);
    }
    static std::uint64_t rotl(std::uint64_t x, int k) {
        return (x << k) | (x >> (64 - k));
    }

    std::uint64_t state_[4];
};

}  // namespace liouville

#endif
