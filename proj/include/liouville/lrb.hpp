#ifndef LIOUVILLE_LRB_HPP
#define LIOUVILLE_LRB_HPP

#include <span>
#include <vector>

#include "liouville/measures.hpp"

namespace liouville {

// A one-dimensional Levy random bridge: the family's free process on
// [0, horizon] conditioned so the terminal value follows nu.
struct LrbSpec {
    LrbSpec(DensityFamily family_, GeneratingLaw nu_, double horizon_);
    DensityFamily family;
    GeneratingLaw nu;
    double horizon;
};

// log vartheta_s(R; y), the normalising h-function of the bridge
// (vartheta_0 = 1); s in [0, horizon).
double lrb_log_vartheta(const LrbSpec& spec, double s, double y);

// Transition density (vartheta_t(R;x) / vartheta_s(R;y)) f_{t-s}(x-y) for
// 0 <= s < t < horizon; a pmf for lattice families.
double lrb_transition_density(const LrbSpec& spec, double s, double y, double t,
                              double x);

// Unconditional time-t marginal density, f_t(x) vartheta_t(R;x).
double lrb_marginal_density(const LrbSpec& spec, double t, double x);

// Posterior law of the terminal value given the state y at time s.
GeneratingLaw lrb_terminal_law(const LrbSpec& spec, double s, double y);

// Exact path sample at the given times in [0, horizon]: draws the terminal
// from nu, then the pinned bridge.
std::vector<double> sample_lrb(const LrbSpec& spec, std::span<const double> grid,
                               RngStream& rng);

}  // namespace liouville

#endif
