#ifndef LIOUVILLE_QUADRATURE_HPP
#define LIOUVILLE_QUADRATURE_HPP

#include <functional>
#include <vector>

namespace liouville {

// Adaptive Gauss-Kronrod (G7,K15) on [a,b] to absolute tolerance.
// Bisects the worst panel until the summed error estimate is below tol.
// Optional interior seed points force an initial subdivision so that sharp
// kernel peaks cannot hide between quadrature nodes.
double integrate(const std::function<double(double)>& f, double a, double b,
                 double abs_tol = 1e-9, int max_panels = 4000,
                 const std::vector<double>& seeds = {});

// Integral of a unimodal, light- or power-tailed integrand over (lo, hi)
// where either bound may be +/-inf.  The domain is truncated where the
// integrand falls below peak * 1e-15, scanning outward from a finite hint.
double integrate_truncated(const std::function<double(double)>& f, double lo,
                           double hi, double hint, double abs_tol = 1e-9);

// Integral over (a,b) of a function behaving like (x-a)^alpha near a and
// (b-x)^beta near b, with alpha, beta > -1.  The integrand is supplied in
// endpoint-offset form so it can be evaluated accurately arbitrarily close
// to the singular points: from_lower(d) is the value at a + d, and
// from_upper(e) the value at b - e.  Power substitutions flatten the
// singularities before adaptive integration.
double integrate_power_endpoints(const std::function<double(double)>& from_lower,
                                 const std::function<double(double)>& from_upper,
                                 double a, double b, double alpha, double beta,
                                 double abs_tol = 1e-9);

// Piecewise numeric CDF of an (unnormalised) density on [a,b]: panel
// integrals are accumulated once, then cdf() does partial sums plus a local
// quadrature and invert() bisects inside the bracketing panel.
class NumericCdf {
  public:
    NumericCdf(std::function<double(double)> density, double a, double b,
               double abs_tol = 1e-9, const std::vector<double>& seeds = {});

    double total_mass() const { return total_; }
    double lower() const { return a_; }
    double upper() const { return b_; }

    // Normalised CDF value in [0,1].
    double cdf(double x) const;

    // Quantile of the normalised law, bisected to x-tolerance x_tol.
    double invert(double u, double x_tol = 1e-10) const;

  private:
    std::function<double(double)> density_;
    double a_, b_, total_;
    std::vector<double> edges_;   // panel edges, ascending
    std::vector<double> cumul_;   // cumulative mass up to each edge
};

}  // namespace liouville

#endif
