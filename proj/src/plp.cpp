#include "liouville/plp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "liouville/errors.hpp"

namespace liouville {

PlpSpec::PlpSpec(GeneratingLaw nu, ActivityVector activity, double horizon_eps)
    : glp(DensityFamily::poisson(), std::move(nu), std::move(activity), horizon_eps) {
    if (!glp.nu.is_integer_lattice())
        throw UnsupportedLawError("Poisson Liouville law must be atomic on {0,1,...}");
    const double M = glp.total_activity();
    p.reserve(glp.dim());
    for (std::size_t i = 0; i < glp.dim(); ++i) p.push_back(glp.activity[i] / M);
}

double PlpSpec::mass(std::uint64_t k) const {
    for (const auto& a : glp.nu.atoms())
        if (a.location == static_cast<double>(k)) return a.mass;
    return 0.0;
}

double PlpSpec::max_count() const {
    double zmax = 0.0;
    for (const auto& a : glp.nu.atoms())
        if (a.mass > 0.0) zmax = std::max(zmax, a.location);
    return zmax;
}

double plp_terminal_pmf(const PlpSpec& spec, std::span<const double> x) {
    if (x.size() != spec.dim()) throw DomainError("count vector dimension mismatch");
    double total = 0.0;
    for (double v : x) {
        if (v < 0.0 || v != std::floor(v))
            throw DomainError("counts must be nonnegative integers");
        total += v;
    }
    const double a = spec.mass(static_cast<std::uint64_t>(total));
    if (a <= 0.0) return 0.0;
    double l = std::log(a) + std::lgamma(total + 1.0);
    for (std::size_t i = 0; i < x.size(); ++i)
        l += x[i] * std::log(spec.p[i]) - std::lgamma(x[i] + 1.0);
    return std::exp(l);
}

double intensity_r(const PlpSpec& spec, double t, double r_t) {
    if (!(t >= 0.0 && t <= 1.0 - spec.glp.horizon_eps))
        throw HorizonError("intensity requires t <= 1 - horizon_eps");
    const double mean = posterior_terminal_mean(spec.glp.nu, spec.glp.family,
                                                spec.glp.total_activity(), t, r_t);
    return (mean - r_t) / (1.0 - t);
}

double intensity_coordinate(const PlpSpec& spec, std::size_t i, double t, double r_t) {
    if (i >= spec.dim()) throw DomainError("coordinate index out of range");
    return spec.p[i] * intensity_r(spec, t, r_t);
}

double survival_single(const PlpSpec& spec, std::size_t i, double s) {
    if (i >= spec.dim()) throw DomainError("coordinate index out of range");
    if (!(s >= 0.0 && s <= 1.0)) throw DomainError("time must lie in [0, 1]");
    return pgf(spec.glp.nu, 1.0 - s * spec.p[i]);
}

double survival_never(const PlpSpec& spec, std::size_t i) {
    return survival_single(spec, i, 1.0);
}

double survival_joint(const PlpSpec& spec, std::span<const double> s) {
    if (s.size() != spec.dim()) throw DomainError("time vector dimension mismatch");
    double acc = 0.0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (!(s[i] >= 0.0 && s[i] <= 1.0)) throw DomainError("times must lie in [0, 1]");
        acc += spec.p[i] * s[i];
    }
    return pgf(spec.glp.nu, 1.0 - acc);
}

double survival_all_never(const PlpSpec& spec) { return spec.mass(0); }

double psi(const PlpSpec& spec, double x) {
    if (!(x >= 0.0 && x <= 1.0)) throw DomainError("psi argument must lie in [0, 1]");
    return pgf(spec.glp.nu, 1.0 - x);
}

double psi_inverse(const PlpSpec& spec, double u) {
    const double lo_val = psi(spec, 1.0);  // = A(0), the smallest value
    if (!(u >= lo_val - 1e-15 && u <= 1.0 + 1e-15))
        throw DomainError("psi_inverse argument outside [psi(1), 1]");
    double lo = 0.0, hi = 1.0;  // psi is strictly decreasing on [0, 1]
    while (hi - lo > 1e-12) {
        const double mid = 0.5 * (lo + hi);
        if (psi(spec, mid) > u)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

double psi_structure(const PlpSpec& spec, std::span<const double> u) {
    if (u.size() != spec.dim()) throw DomainError("argument dimension mismatch");
    double acc = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) {
        const double floor_i = psi(spec, spec.p[i]);
        if (!(u[i] >= floor_i - 1e-12 && u[i] <= 1.0 + 1e-15))
            throw DomainError("u_i outside the admissible range [psi(p_i), 1]");
        acc += psi_inverse(spec, u[i]);
    }
    return psi(spec, std::min(1.0, acc));
}

double JumpRecord::count_at(std::size_t i, double t) const {
    const auto& ts = times[i];
    return static_cast<double>(
        std::upper_bound(ts.begin(), ts.end(), t) - ts.begin());
}

JumpRecord sample_jump_times(const PlpSpec& spec, RngStream& rng) {
    const std::size_t n = spec.dim();
    const double z = spec.glp.nu.sample(rng);
    const auto counts = rng.multinomial(static_cast<std::uint64_t>(z), spec.p);
    JumpRecord rec;
    rec.terminal.resize(n);
    rec.times.resize(n);
    rec.first.assign(n, std::numeric_limits<double>::infinity());
    for (std::size_t i = 0; i < n; ++i) {
        rec.terminal[i] = static_cast<double>(counts[i]);
        rec.times[i].resize(counts[i]);
        for (auto& t : rec.times[i]) t = rng.uniform();
        std::sort(rec.times[i].begin(), rec.times[i].end());
        if (!rec.times[i].empty()) rec.first[i] = rec.times[i].front();
    }
    return rec;
}

}  // namespace liouville
