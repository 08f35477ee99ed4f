#ifndef LIOUVILLE_KERNELS_HPP
#define LIOUVILLE_KERNELS_HPP

#include <span>
#include <utility>
#include <vector>

#include "liouville/random.hpp"

namespace liouville {

enum class FamilyKind { Brownian, Gamma, Poisson, StableHalf };
enum class Support { RealLine, NonnegativeReal, NonnegativeInteger };

// A one-parameter convolution family {f_t}: the increment density of a Levy
// process at time t.  f_a * f_b = f_{a+b}.
//   Brownian(sigma): N(0, sigma^2 t) on the real line
//   Gamma:           unit-activity gamma, shape t, unit rate, on (0, inf)
//   Poisson:         unit-rate Poisson pmf on {0,1,2,...}
//   StableHalf(c):   1/2-stable subordinator, c t/(2 sqrt(pi)) x^{-3/2}
//                    exp(-c^2 t^2 / (4x)) on (0, inf)
class DensityFamily {
  public:
    static DensityFamily brownian(double sigma);
    static DensityFamily gamma_unit();
    static DensityFamily poisson();
    static DensityFamily stable_half(double scale);

    FamilyKind kind() const { return kind_; }
    Support support() const { return support_; }
    bool is_lattice() const { return support_ == Support::NonnegativeInteger; }
    bool has_mean() const { return kind_ != FamilyKind::StableHalf; }
    double sigma() const { return param_; }  // Brownian
    double scale() const { return param_; }  // StableHalf

    // log f_t(x); -inf where the density vanishes. No domain throwing, so it
    // can be used freely inside integrands.
    double log_density(double t, double x) const;

    // f_t(x) with the argument checks of the public contract: t must be
    // positive and x must lie in the support.
    double density(double t, double x) const;

    // Increment of the free process over time t.
    double sample_increment(double t, RngStream& rng) const;

    // Mean of the free increment over time t; IntegrabilityError for the
    // 1/2-stable family.
    double increment_mean(double t) const;

    bool operator==(const DensityFamily&) const = default;

  private:
    DensityFamily(FamilyKind kind, Support support, double param)
        : kind_(kind), support_(support), param_(param) {}
    FamilyKind kind_;
    Support support_;
    double param_;
};

// Deterministic pin: the bridge of the family to value `pin` at time
// `horizon`, requiring 0 < f_horizon(pin) < inf.
struct BridgeEndpoint {
    double horizon;
    double pin;
};

// Throws DomainError unless 0 < f_T(z) < inf.
void validate_endpoint(const DensityFamily& family, const BridgeEndpoint& end);

// log h_t(x) = log f_{T-t}(z - x), the space-time harmonic function of the
// pinned bridge.
double log_h(const DensityFamily& family, const BridgeEndpoint& end, double t, double x);

// Doob h-transform transition density of the pinned bridge,
//   (h_t(x) / h_s(y)) f_{t-s}(x - y),    0 <= s < t < T.
// Lattice families return a pmf. Throws UnreachableStateError when h_s(y)=0.
double bridge_transition_density(const DensityFamily& family, double s, double t,
                                 const BridgeEndpoint& end, double y, double x);

// One exact-in-law bridge step: the value at t given value y at s and the
// endpoint.  Closed forms for Brownian (Gaussian conditioning), Gamma
// (beta split), Poisson (binomial thinning); numeric inverse-CDF for the
// 1/2-stable family (bisection to 1e-10 on an adaptive-quadrature CDF).
double sample_bridge_step(const DensityFamily& family, double s, double y, double t,
                          const BridgeEndpoint& end, RngStream& rng);

// Exact bridge sample at the given strictly increasing times in [0, T].
// A grid point equal to T yields exactly the pin.
std::vector<double> sample_bridge_path(const DensityFamily& family,
                                       const BridgeEndpoint& end,
                                       std::span<const double> grid, RngStream& rng);

// Quadrature seed points for integrands containing the kernel
// z -> f_tau(z - offset): the peak location plus a few width multiples,
// so adaptive rules never miss a narrow kernel spike.
std::vector<double> kernel_seed_points(const DensityFamily& family, double tau,
                                       double offset);

// Effective support [lo, hi] of the kernel z -> f_tau(z - offset), truncated
// where the density is negligible (~1e-16 of peak mass scale).
std::pair<double, double> kernel_window(const DensityFamily& family, double tau,
                                        double offset);

// Split a pinned total increment across blocks with time-weights w:
// returns (d_1,...,d_k) with density proportional to prod_i f_{w_i}(d_i)
// conditioned on sum d_i = total.  Multinomial for Poisson, Dirichlet for
// Gamma, Gaussian conditioning for Brownian, sequential numeric inversion
// for the 1/2-stable family.
std::vector<double> allocate_pinned_increment(const DensityFamily& family,
                                              std::span<const double> weights,
                                              double total, RngStream& rng);

}  // namespace liouville

#endif
