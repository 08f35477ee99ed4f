#ifndef LIOUVILLE_MEASURES_HPP
#define LIOUVILLE_MEASURES_HPP

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "liouville/kernels.hpp"
#include "liouville/quadrature.hpp"
#include "liouville/random.hpp"

namespace liouville {

struct Atom {
    double location;
    double mass;
};

// Serializable continuous component shapes for run configs.
struct NamedDensity {
    enum class Kind { Uniform, Normal, Exponential };
    Kind kind;
    double p1;  // uniform: a, normal: mean, exponential: rate
    double p2;  // uniform: b, normal: sd,   exponential: unused
};

// Finite union of closed intervals and single points; the set arguments the
// unnormalised measures accept.
struct MeasurableSet {
    std::vector<std::pair<double, double>> intervals;
    std::vector<double> points;

    static MeasurableSet all();
    static MeasurableSet interval(double a, double b);
    static MeasurableSet point(double z);
    static MeasurableSet point_set(std::vector<double> zs);

    bool contains(double z) const;
};

// A probability law made of weighted atoms plus an optional absolutely
// continuous component on a finite window (no continuous singular part).
// Immutable after construction; all evaluations are safe to run concurrently.
class GeneratingLaw {
  public:
    static GeneratingLaw dirac(double z);
    static GeneratingLaw from_atoms(std::vector<Atom> atoms);
    // `density` must integrate to `weight` over [lower, upper].
    static GeneratingLaw with_density(std::function<double(double)> density,
                                      double lower, double upper, double weight,
                                      std::vector<Atom> atoms = {});
    static GeneratingLaw named(NamedDensity density, double weight,
                               std::vector<Atom> atoms = {});

    const std::vector<Atom>& atoms() const { return atoms_; }
    bool has_continuous() const { return static_cast<bool>(density_); }
    double continuous_weight() const { return weight_; }
    double continuous_lower() const { return lower_; }
    double continuous_upper() const { return upper_; }
    // Density of the continuous component (mass `weight` over its window).
    double continuous_density(double z) const;
    const std::optional<NamedDensity>& named_density() const { return named_; }

    bool is_atomic() const { return !has_continuous(); }
    // Purely atomic with every atom on {0,1,2,...}.
    bool is_integer_lattice() const;
    double total_mass() const;
    double mean() const;
    double measure_of(const MeasurableSet& b) const;

    // Every atom and the continuous window must satisfy 0 < f_T(z) < inf.
    void validate_against(const DensityFamily& family, double horizon) const;

    double sample(RngStream& rng) const;

    // The law of Z + dz when Z follows this law.
    GeneratingLaw shifted(double dz) const;

  private:
    GeneratingLaw() = default;
    std::vector<Atom> atoms_;
    std::function<double(double)> density_;
    double weight_ = 0.0, lower_ = 0.0, upper_ = 0.0;
    std::optional<NamedDensity> named_;
    std::shared_ptr<const NumericCdf> cdf_;  // inverse-transform fallback
};

// Unnormalised measures theta_t(B; x) of a process pinned to nu at the end
// of an activity budget `total_activity`:
//   theta_0(B; x) = nu(B)
//   theta_t(B; x) = int_B f_{total_activity (1-t)}(z - x) / f_{total_activity}(z) nu(dz)
// Atoms are summed in log space; the continuous part integrates by adaptive
// quadrature. Throws HorizonError for t outside [0, 1).
double theta(const GeneratingLaw& nu, const DensityFamily& family,
             double total_activity, double t, double x, const MeasurableSet& b);

// theta over the whole state space.
double big_theta(const GeneratingLaw& nu, const DensityFamily& family,
                 double total_activity, double t, double x);

// log of big_theta, kept in log space end to end (-inf when zero).
double log_big_theta(const GeneratingLaw& nu, const DensityFamily& family,
                     double total_activity, double t, double x);

// Probability generating function sum_k z^k nu({k}) of an integer-lattice
// law; UnsupportedLawError when a continuous part is present.
double pgf(const GeneratingLaw& nu, double z);

// Law of R_t - R_s given R_s = r_s for the sum process with the given
// family, total activity and generating law on the unit horizon; t = 1
// returns the shifted posterior terminal law.
GeneratingLaw conditional_generating_law(const GeneratingLaw& nu,
                                         const DensityFamily& family,
                                         double total_activity, double s,
                                         double r_s, double t);

// Posterior law of the terminal value given R_s = r_s:
//   theta_s(dz; r_s) / Theta_s(r_s).
GeneratingLaw posterior_terminal_law(const GeneratingLaw& nu,
                                     const DensityFamily& family,
                                     double total_activity, double s, double r_s);

// Posterior mean of the terminal value given R_s = r_s (atoms summed
// exactly, continuous part by quadrature). IntegrabilityError for families
// without a mean is not needed here: nu always has a bounded carrier.
double posterior_terminal_mean(const GeneratingLaw& nu, const DensityFamily& family,
                               double total_activity, double s, double r_s);

}  // namespace liouville

#endif
