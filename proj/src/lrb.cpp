#include "liouville/lrb.hpp"

#include <cmath>

#include "liouville/errors.hpp"

namespace liouville {

LrbSpec::LrbSpec(DensityFamily family_, GeneratingLaw nu_, double horizon_)
    : family(family_), nu(std::move(nu_)), horizon(horizon_) {
    if (!(horizon > 0.0)) throw DomainError("LRB horizon must be positive");
    nu.validate_against(family, horizon);
}

double lrb_log_vartheta(const LrbSpec& spec, double s, double y) {
    if (!(s >= 0.0 && s < spec.horizon))
        throw HorizonError("vartheta is defined for s in [0, horizon)");
    return log_big_theta(spec.nu, spec.family, spec.horizon, s / spec.horizon, y);
}

double lrb_transition_density(const LrbSpec& spec, double s, double y, double t,
                              double x) {
    if (!(0.0 <= s && s < t && t < spec.horizon))
        throw HorizonError("LRB transition requires 0 <= s < t < horizon");
    const double den = lrb_log_vartheta(spec, s, y);
    if (!std::isfinite(den))
        throw UnreachableStateError("LRB transition from an unreachable state");
    const double l = lrb_log_vartheta(spec, t, x) - den +
                     spec.family.log_density(t - s, x - y);
    return std::isfinite(l) ? std::exp(l) : 0.0;
}

double lrb_marginal_density(const LrbSpec& spec, double t, double x) {
    if (!(0.0 < t && t < spec.horizon))
        throw HorizonError("marginal density requires t in (0, horizon)");
    const double l = spec.family.log_density(t, x) + lrb_log_vartheta(spec, t, x);
    return std::isfinite(l) ? std::exp(l) : 0.0;
}

GeneratingLaw lrb_terminal_law(const LrbSpec& spec, double s, double y) {
    if (!(s >= 0.0 && s < spec.horizon))
        throw HorizonError("terminal law requires s in [0, horizon)");
    return posterior_terminal_law(spec.nu, spec.family, spec.horizon,
                                  s / spec.horizon, y);
}

std::vector<double> sample_lrb(const LrbSpec& spec, std::span<const double> grid,
                               RngStream& rng) {
    const double z = spec.nu.sample(rng);
    return sample_bridge_path(spec.family, {spec.horizon, z}, grid, rng);
}

}  // namespace liouville
