#include "liouville/measures.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "liouville/errors.hpp"

namespace liouville {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double log_sum_exp(const std::vector<double>& logs) {
    double m = kNegInf;
    for (double l : logs) m = std::max(m, l);
    if (m == kNegInf) return kNegInf;
    double s = 0.0;
    for (double l : logs) s += std::exp(l - m);
    return m + std::log(s);
}

double normal_pdf(double z, double mean, double sd) {
    const double u = (z - mean) / sd;
    return std::exp(-0.5 * u * u) / (sd * 2.5066282746310005024);
}

}  // namespace

MeasurableSet MeasurableSet::all() {
    MeasurableSet b;
    b.intervals.emplace_back(-kInf, kInf);
    return b;
}

MeasurableSet MeasurableSet::interval(double a, double b) {
    MeasurableSet s;
    s.intervals.emplace_back(a, b);
    return s;
}

MeasurableSet MeasurableSet::point(double z) {
    MeasurableSet s;
    s.points.push_back(z);
    return s;
}

MeasurableSet MeasurableSet::point_set(std::vector<double> zs) {
    MeasurableSet s;
    s.points = std::move(zs);
    return s;
}

bool MeasurableSet::contains(double z) const {
    for (const auto& [a, b] : intervals)
        if (z >= a && z <= b) return true;
    for (double p : points)
        if (p == z) return true;
    return false;
}

GeneratingLaw GeneratingLaw::dirac(double z) { return from_atoms({{z, 1.0}}); }

GeneratingLaw GeneratingLaw::from_atoms(std::vector<Atom> atoms) {
    GeneratingLaw nu;
    nu.atoms_ = std::move(atoms);
    std::sort(nu.atoms_.begin(), nu.atoms_.end(),
              [](const Atom& a, const Atom& b) { return a.location < b.location; });
    for (const auto& a : nu.atoms_)
        if (!(a.mass >= 0.0)) throw DomainError("atom masses must be nonnegative");
    return nu;
}

GeneratingLaw GeneratingLaw::with_density(std::function<double(double)> density,
                                          double lower, double upper, double weight,
                                          std::vector<Atom> atoms) {
    if (!(upper > lower)) throw DomainError("continuous window must be nonempty");
    if (!(weight > 0.0)) throw DomainError("continuous weight must be positive");
    GeneratingLaw nu = from_atoms(std::move(atoms));
    nu.density_ = std::move(density);
    nu.lower_ = lower;
    nu.upper_ = upper;
    nu.weight_ = weight;
    nu.cdf_ = std::make_shared<NumericCdf>(nu.density_, lower, upper, 1e-12);
    return nu;
}

GeneratingLaw GeneratingLaw::named(NamedDensity nd, double weight,
                                   std::vector<Atom> atoms) {
    double lower = 0.0, upper = 0.0;
    std::function<double(double)> dens;
    switch (nd.kind) {
        case NamedDensity::Kind::Uniform: {
            if (!(nd.p2 > nd.p1)) throw DomainError("uniform window must be nonempty");
            lower = nd.p1;
            upper = nd.p2;
            const double h = weight / (nd.p2 - nd.p1);
            dens = [h](double) { return h; };
            break;
        }
        case NamedDensity::Kind::Normal: {
            if (!(nd.p2 > 0.0)) throw DomainError("normal sd must be positive");
            lower = nd.p1 - 10.0 * nd.p2;
            upper = nd.p1 + 10.0 * nd.p2;
            dens = [nd, weight](double z) { return weight * normal_pdf(z, nd.p1, nd.p2); };
            break;
        }
        case NamedDensity::Kind::Exponential: {
            if (!(nd.p1 > 0.0)) throw DomainError("exponential rate must be positive");
            lower = 0.0;
            upper = 45.0 / nd.p1;
            dens = [nd, weight](double z) { return weight * nd.p1 * std::exp(-nd.p1 * z); };
            break;
        }
    }
    GeneratingLaw nu = with_density(std::move(dens), lower, upper, weight, std::move(atoms));
    nu.named_ = nd;
    return nu;
}

double GeneratingLaw::continuous_density(double z) const {
    if (!density_ || z < lower_ || z > upper_) return 0.0;
    return density_(z);
}

bool GeneratingLaw::is_integer_lattice() const {
    if (has_continuous()) return false;
    for (const auto& a : atoms_)
        if (a.location < 0.0 || a.location != std::floor(a.location)) return false;
    return true;
}

double GeneratingLaw::total_mass() const {
    double m = weight_;
    for (const auto& a : atoms_) m += a.mass;
    return m;
}

double GeneratingLaw::mean() const {
    double m = 0.0;
    for (const auto& a : atoms_) m += a.location * a.mass;
    if (density_)
        m += integrate([this](double z) { return z * density_(z); }, lower_, upper_, 1e-10);
    return m;
}

double GeneratingLaw::measure_of(const MeasurableSet& b) const {
    double m = 0.0;
    for (const auto& a : atoms_)
        if (b.contains(a.location)) m += a.mass;
    if (density_) {
        for (const auto& [lo, hi] : b.intervals) {
            const double a = std::max(lo, lower_);
            const double c = std::min(hi, upper_);
            if (c > a) m += integrate(density_, a, c, 1e-10);
        }
    }
    return m;
}

void GeneratingLaw::validate_against(const DensityFamily& family, double horizon) const {
    const double mass = total_mass();
    if (std::abs(mass - 1.0) > 1e-9)
        throw DomainError("generating law mass differs from 1");
    for (const auto& a : atoms_) {
        const double l = family.log_density(horizon, a.location);
        if (a.mass > 0.0 && !std::isfinite(l))
            throw DomainError("generating law puts mass where f_T vanishes or blows up");
    }
    if (density_) {
        if (family.support() != Support::RealLine && lower_ < 0.0)
            throw DomainError("continuous part extends below the family support");
        if (family.is_lattice())
            throw DomainError("lattice family requires a purely atomic generating law");
    }
}

double GeneratingLaw::sample(RngStream& rng) const {
    double u = rng.uniform() * total_mass();
    for (const auto& a : atoms_) {
        u -= a.mass;
        if (u <= 0.0) return a.location;
    }
    if (!density_) return atoms_.empty() ? 0.0 : atoms_.back().location;
    if (named_) {
        switch (named_->kind) {
            case NamedDensity::Kind::Uniform:
                return rng.uniform(named_->p1, named_->p2);
            case NamedDensity::Kind::Normal:
                return std::clamp(rng.normal(named_->p1, named_->p2), lower_, upper_);
            case NamedDensity::Kind::Exponential:
                return std::min(rng.exponential(named_->p1), upper_);
        }
    }
    return cdf_->invert(rng.uniform());
}

GeneratingLaw GeneratingLaw::shifted(double dz) const {
    if (dz == 0.0) return *this;
    std::vector<Atom> atoms = atoms_;
    for (auto& a : atoms) a.location += dz;
    if (!has_continuous()) return from_atoms(std::move(atoms));
    if (named_ && named_->kind != NamedDensity::Kind::Exponential) {
        NamedDensity nd = *named_;
        nd.p1 += dz;
        if (nd.kind == NamedDensity::Kind::Uniform) nd.p2 += dz;
        return named(nd, weight_, std::move(atoms));
    }
    auto base = density_;
    auto dens = [base, dz](double z) { return base(z - dz); };
    return with_density(dens, lower_ + dz, upper_ + dz, weight_, std::move(atoms));
}

namespace {

// Core of theta and its z-weighted variants:
//   sum_{atoms in B} w(z) m_z exp(log f_{M(1-t)}(z-x) - log f_M(z))
//   + int_{B} w(z) dens(z) exp(...) dz.
double theta_weighted(const GeneratingLaw& nu, const DensityFamily& family,
                      double total_activity, double t, double x,
                      const std::function<double(double)>& weight,
                      const MeasurableSet& b) {
    const double tau = total_activity * (1.0 - t);
    std::vector<double> logs;
    std::vector<double> signs;  // weights may be negative in principle
    logs.reserve(nu.atoms().size());
    double linear = 0.0;
    for (const auto& a : nu.atoms()) {
        if (a.mass <= 0.0 || !b.contains(a.location)) continue;
        const double l = std::log(a.mass) +
                         family.log_density(tau, a.location - x) -
                         family.log_density(total_activity, a.location);
        if (l == kNegInf) continue;
        const double w = weight ? weight(a.location) : 1.0;
        if (w == 0.0) continue;
        logs.push_back(l + std::log(std::abs(w)));
        signs.push_back(w > 0.0 ? 1.0 : -1.0);
    }
    if (!logs.empty()) {
        double m = *std::max_element(logs.begin(), logs.end());
        double s = 0.0;
        for (std::size_t i = 0; i < logs.size(); ++i)
            s += signs[i] * std::exp(logs[i] - m);
        linear += std::exp(m) * s;
    }
    if (nu.has_continuous()) {
        auto integrand = [&](double z) {
            const double l = family.log_density(tau, z - x) -
                             family.log_density(total_activity, z);
            if (!std::isfinite(l)) return 0.0;
            const double w = weight ? weight(z) : 1.0;
            return w * nu.continuous_density(z) * std::exp(l);
        };
        const auto seeds = kernel_seed_points(family, tau, x);
        for (const auto& [lo, hi] : b.intervals) {
            const double a = std::max(lo, nu.continuous_lower());
            const double c = std::min(hi, nu.continuous_upper());
            if (c > a) linear += integrate(integrand, a, c, 1e-9, 4000, seeds);
        }
    }
    return linear;
}

void check_unit_time(double t) {
    if (!(t >= 0.0 && t < 1.0))
        throw HorizonError("unnormalised measures are defined for t in [0,1)");
}

}  // namespace

double theta(const GeneratingLaw& nu, const DensityFamily& family,
             double total_activity, double t, double x, const MeasurableSet& b) {
    check_unit_time(t);
    if (t == 0.0) return nu.measure_of(b);
    return theta_weighted(nu, family, total_activity, t, x, nullptr, b);
}

double big_theta(const GeneratingLaw& nu, const DensityFamily& family,
                 double total_activity, double t, double x) {
    check_unit_time(t);
    if (t == 0.0) return nu.total_mass();
    return theta_weighted(nu, family, total_activity, t, x, nullptr,
                          MeasurableSet::all());
}

double log_big_theta(const GeneratingLaw& nu, const DensityFamily& family,
                     double total_activity, double t, double x) {
    check_unit_time(t);
    if (t == 0.0) return std::log(nu.total_mass());
    const double tau = total_activity * (1.0 - t);
    std::vector<double> logs;
    for (const auto& a : nu.atoms()) {
        if (a.mass <= 0.0) continue;
        logs.push_back(std::log(a.mass) + family.log_density(tau, a.location - x) -
                       family.log_density(total_activity, a.location));
    }
    if (nu.has_continuous()) {
        // Integrate the continuous part against a stabilising shift so the
        // quadrature stays in a representable range.
        double shift = kNegInf;
        const int probes = 33;
        for (int i = 0; i <= probes; ++i) {
            const double z = nu.continuous_lower() +
                             (nu.continuous_upper() - nu.continuous_lower()) * i / probes;
            if (nu.continuous_density(z) <= 0.0) continue;
            shift = std::max(shift, std::log(nu.continuous_density(z)) +
                                        family.log_density(tau, z - x) -
                                        family.log_density(total_activity, z));
        }
        if (shift != kNegInf) {
            auto integrand = [&](double z) {
                const double d = nu.continuous_density(z);
                if (d <= 0.0) return 0.0;
                const double l = std::log(d) + family.log_density(tau, z - x) -
                                 family.log_density(total_activity, z) - shift;
                return l < -700.0 ? 0.0 : std::exp(l);
            };
            const double v = integrate(integrand, nu.continuous_lower(),
                                       nu.continuous_upper(), 1e-12, 4000,
                                       kernel_seed_points(family, tau, x));
            if (v > 0.0) logs.push_back(shift + std::log(v));
        }
    }
    return log_sum_exp(logs);
}

double pgf(const GeneratingLaw& nu, double z) {
    if (nu.has_continuous())
        throw UnsupportedLawError("pgf requires a purely atomic integer law");
    if (!nu.is_integer_lattice())
        throw UnsupportedLawError("pgf requires atoms on {0,1,2,...}");
    if (!(z >= 0.0 && z <= 1.0)) throw DomainError("pgf argument must lie in [0,1]");
    double acc = 0.0;
    for (const auto& a : nu.atoms()) acc += a.mass * std::pow(z, a.location);
    return acc;
}

GeneratingLaw conditional_generating_law(const GeneratingLaw& nu,
                                         const DensityFamily& family,
                                         double total_activity, double s,
                                         double r_s, double t) {
    if (!(0.0 <= s && s < t && t <= 1.0))
        throw HorizonError("conditional law requires 0 <= s < t <= 1");
    const double log_norm = log_big_theta(nu, family, total_activity, s, r_s);
    if (!std::isfinite(log_norm))
        throw UnreachableStateError("conditioning on an unreachable sum state");

    if (t == 1.0)
        return posterior_terminal_law(nu, family, total_activity, s, r_s).shifted(-r_s);

    const double dt_activity = (t - s) * total_activity;
    if (family.is_lattice()) {
        // Increment pmf on {0, 1, ..., zmax - r_s}.
        double zmax = 0.0;
        for (const auto& a : nu.atoms())
            if (a.mass > 0.0) zmax = std::max(zmax, a.location);
        std::vector<double> logs;
        const int top = static_cast<int>(std::floor(zmax - r_s + 0.5));
        for (int w = 0; w <= std::max(0, top); ++w) {
            logs.push_back(log_big_theta(nu, family, total_activity, t, r_s + w) +
                           family.log_density(dt_activity, w) - log_norm);
        }
        const double lse = log_sum_exp(logs);
        std::vector<Atom> atoms;
        for (std::size_t w = 0; w < logs.size(); ++w) {
            const double mass = std::exp(logs[w] - lse);
            if (mass > 0.0) atoms.push_back({static_cast<double>(w), mass});
        }
        return GeneratingLaw::from_atoms(std::move(atoms));
    }

    // Continuous increment density Theta_t(r_s + w) f_{(t-s)M}(w) / Theta_s(r_s).
    double zlo = kInf, zhi = kNegInf;
    for (const auto& a : nu.atoms()) {
        if (a.mass <= 0.0) continue;
        zlo = std::min(zlo, a.location);
        zhi = std::max(zhi, a.location);
    }
    if (nu.has_continuous()) {
        zlo = std::min(zlo, nu.continuous_lower());
        zhi = std::max(zhi, nu.continuous_upper());
    }
    const auto fwin = kernel_window(family, dt_activity, 0.0);
    const auto rwin = kernel_window(family, total_activity * (1.0 - t), 0.0);
    double lo, hi;
    if (family.support() == Support::RealLine) {
        lo = std::min(fwin.first, (zlo - r_s) - (rwin.second - rwin.first) * 0.5);
        hi = std::max(fwin.second, (zhi - r_s) + (rwin.second - rwin.first) * 0.5);
    } else {
        lo = 0.0;
        hi = zhi - r_s;
        if (!(hi > 0.0))
            throw UnreachableStateError("sum state at or above the carrier of nu");
    }
    auto dens = [nu, family, total_activity, t, dt_activity, r_s, log_norm](double w) {
        const double l = log_big_theta(nu, family, total_activity, t, r_s + w) +
                         family.log_density(dt_activity, w) - log_norm;
        return std::isfinite(l) ? std::exp(l) : 0.0;
    };
    std::vector<double> seeds = kernel_seed_points(family, dt_activity, 0.0);
    for (const auto& a : nu.atoms()) seeds.push_back(a.location - r_s);
    const double mass = integrate(dens, lo, hi, 1e-11, 4000, seeds);
    auto scaled = [dens, mass](double w) { return dens(w) / mass; };
    return GeneratingLaw::with_density(scaled, lo, hi, 1.0);
}

GeneratingLaw posterior_terminal_law(const GeneratingLaw& nu,
                                     const DensityFamily& family,
                                     double total_activity, double s, double r_s) {
    check_unit_time(s);
    if (s == 0.0) return nu;
    const double tau = total_activity * (1.0 - s);
    // Max-log shift shared between atoms and the continuous part, then an
    // exact renormalisation of the assembled law.
    std::vector<std::pair<double, double>> atom_logs;  // (location, log weight)
    double shift = kNegInf;
    for (const auto& a : nu.atoms()) {
        if (a.mass <= 0.0) continue;
        const double l = std::log(a.mass) + family.log_density(tau, a.location - r_s) -
                         family.log_density(total_activity, a.location);
        if (std::isfinite(l)) {
            atom_logs.emplace_back(a.location, l);
            shift = std::max(shift, l);
        }
    }
    if (nu.has_continuous()) {
        const int probes = 65;
        for (int i = 0; i <= probes; ++i) {
            const double z = nu.continuous_lower() +
                             (nu.continuous_upper() - nu.continuous_lower()) * i / probes;
            const double d = nu.continuous_density(z);
            if (d <= 0.0) continue;
            const double l = std::log(d) + family.log_density(tau, z - r_s) -
                             family.log_density(total_activity, z);
            shift = std::max(shift, l);
        }
    }
    if (shift == kNegInf)
        throw UnreachableStateError("conditioning on an unreachable sum state");
    std::vector<Atom> atoms;
    double atom_mass = 0.0;
    for (const auto& [z, l] : atom_logs) {
        const double w = std::exp(l - shift);
        if (w > 0.0) {
            atoms.push_back({z, w});
            atom_mass += w;
        }
    }
    if (!nu.has_continuous()) {
        if (atoms.empty())
            throw UnreachableStateError("conditioning on an unreachable sum state");
        for (auto& a : atoms) a.mass /= atom_mass;
        return GeneratingLaw::from_atoms(std::move(atoms));
    }
    const double local_shift = shift;
    auto dens = [nu, family, total_activity, tau, r_s, local_shift](double z) {
        const double d = nu.continuous_density(z);
        if (d <= 0.0) return 0.0;
        const double l = std::log(d) + family.log_density(tau, z - r_s) -
                         family.log_density(total_activity, z) - local_shift;
        return l < -700.0 ? 0.0 : std::exp(l);
    };
    const double cont_mass =
        integrate(dens, nu.continuous_lower(), nu.continuous_upper(), 1e-12, 4000,
                  kernel_seed_points(family, tau, r_s));
    const double total = atom_mass + cont_mass;
    if (!(total > 0.0))
        throw UnreachableStateError("conditioning on an unreachable sum state");
    for (auto& a : atoms) a.mass /= total;
    if (!(cont_mass > 0.0)) return GeneratingLaw::from_atoms(std::move(atoms));
    auto scaled = [dens, total](double z) { return dens(z) / total; };
    return GeneratingLaw::with_density(scaled, nu.continuous_lower(),
                                       nu.continuous_upper(), cont_mass / total,
                                       std::move(atoms));
}

double posterior_terminal_mean(const GeneratingLaw& nu, const DensityFamily& family,
                               double total_activity, double s, double r_s) {
    check_unit_time(s);
    if (s == 0.0) return nu.mean();
    // Shared max-log shift keeps the numerator/denominator ratio finite even
    // when the unnormalised weights underflow near the horizon.
    const double tau = total_activity * (1.0 - s);
    std::vector<std::pair<double, double>> terms;  // (log weight, location)
    for (const auto& a : nu.atoms()) {
        if (a.mass <= 0.0) continue;
        const double l = std::log(a.mass) + family.log_density(tau, a.location - r_s) -
                         family.log_density(total_activity, a.location);
        if (std::isfinite(l)) terms.emplace_back(l, a.location);
    }
    double shift = kNegInf;
    for (const auto& [l, z] : terms) shift = std::max(shift, l);
    if (nu.has_continuous()) {
        const int probes = 33;
        for (int i = 0; i <= probes; ++i) {
            const double z = nu.continuous_lower() +
                             (nu.continuous_upper() - nu.continuous_lower()) * i / probes;
            const double d = nu.continuous_density(z);
            if (d <= 0.0) continue;
            shift = std::max(shift, std::log(d) + family.log_density(tau, z - r_s) -
                                        family.log_density(total_activity, z));
        }
    }
    if (shift == kNegInf)
        throw UnreachableStateError("conditioning on an unreachable sum state");
    double num = 0.0, den = 0.0;
    for (const auto& [l, z] : terms) {
        const double w = std::exp(l - shift);
        num += z * w;
        den += w;
    }
    if (nu.has_continuous()) {
        auto shifted = [&](double z) {
            const double d = nu.continuous_density(z);
            if (d <= 0.0) return 0.0;
            const double l = std::log(d) + family.log_density(tau, z - r_s) -
                             family.log_density(total_activity, z) - shift;
            return l < -700.0 ? 0.0 : std::exp(l);
        };
        const auto seeds = kernel_seed_points(family, tau, r_s);
        num += integrate([&](double z) { return z * shifted(z); }, nu.continuous_lower(),
                         nu.continuous_upper(), 1e-12, 4000, seeds);
        den += integrate(shifted, nu.continuous_lower(), nu.continuous_upper(), 1e-12,
                         4000, seeds);
    }
    if (!(den > 0.0))
        throw UnreachableStateError("conditioning on an unreachable sum state");
    return num / den;
}

}  // namespace liouville
