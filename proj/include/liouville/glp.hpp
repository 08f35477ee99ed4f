#ifndef LIOUVILLE_GLP_HPP
#define LIOUVILLE_GLP_HPP

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "liouville/measures.hpp"

namespace liouville {

// Block lengths m_i > 0 of the master-process split, with their partial sums
// u_0 = 0, u_i = u_{i-1} + m_i.
class ActivityVector {
  public:
    explicit ActivityVector(std::vector<double> m);
    std::size_t size() const { return m_.size(); }
    double operator[](std::size_t i) const { return m_[i]; }
    const std::vector<double>& values() const { return m_; }
    double block_start(std::size_t i) const { return partial_[i]; }  // u_{i-1} for coord i
    double total() const { return partial_.back(); }

  private:
    std::vector<double> m_;
    std::vector<double> partial_;
};

// An n-dimensional process on [0,1] built by cutting one master bridge with
// generating law nu into consecutive blocks of lengths m_i and rescaling
// each block to unit time.
struct GlpSpec {
    GlpSpec(DensityFamily family_, GeneratingLaw nu_, ActivityVector activity_,
            double horizon_eps_ = 1e-6);
    DensityFamily family;
    GeneratingLaw nu;
    ActivityVector activity;
    double horizon_eps;

    std::size_t dim() const { return activity.size(); }
    double total_activity() const { return activity.total(); }
};

// Strictly increasing times starting at 0, ending at or before 1.
class PathGrid {
  public:
    PathGrid() : times_{0.0} {}
    explicit PathGrid(std::vector<double> times);
    static PathGrid uniform(std::size_t steps, double t_last = 1.0);
    const std::vector<double>& times() const { return times_; }
    std::size_t size() const { return times_.size(); }
    double operator[](std::size_t k) const { return times_[k]; }
    std::size_t index_of(double t) const;  // exact-match lookup

  private:
    std::vector<double> times_;
};

struct GlpPath {
    PathGrid grid;
    std::vector<std::vector<double>> values;  // values[k][i], coordinate i at time k
    std::vector<double> sums;                 // R at each grid time
};

// Definitional sampler: one master bridge cut into blocks.
GlpPath sample_glp_master(const GlpSpec& spec, const PathGrid& grid, RngStream& rng);

// Markov sampler: sequential draws from the one-step transition law,
// factored as (sum increment) then (conditional split across coordinates).
// Grid times below 1 must not exceed 1 - horizon_eps; a final time equal to
// 1 is drawn from the terminal transition law.
GlpPath sample_glp_markov(const GlpSpec& spec, const PathGrid& grid, RngStream& rng);

// Transition density (Theta_t(sum y) / Theta_s(sum x)) prod_i f_{(t-s)m_i}(y_i - x_i).
double glp_transition_density(const GlpSpec& spec, double s, std::span<const double> x,
                              double t, std::span<const double> y);

// Joint law of the terminal vector given the state x at time s.
class TerminalTransitionLaw {
  public:
    TerminalTransitionLaw(const GlpSpec& spec, double s, std::vector<double> x);

    // tau(s) = 1 - m_n (1 - s) / total_activity.
    double tau() const { return tau_; }
    const GeneratingLaw& sum_posterior() const { return posterior_; }

    // Density in the first n-1 coordinates with a set argument for the last:
    //   theta_tau(B + sum z_head; x_n + sum z_head) / Theta_s(sum x)
    //     * prod_{i<n} f_{(1-s)m_i}(z_i - x_i).
    double partial_density(std::span<const double> z_head, const MeasurableSet& b) const;

    // Joint terminal density when nu has a density p:
    //   p(sum z) / (Theta_s(sum x) f_M(sum z)) * prod_i f_{(1-s)m_i}(z_i - x_i).
    double density(std::span<const double> z) const;

    std::vector<double> mean() const;  // E(xi_1 | xi_s = x)
    std::vector<double> sample(RngStream& rng) const;

  private:
    GlpSpec spec_;
    double s_;
    std::vector<double> x_;
    double sum_x_;
    double tau_;
    double log_norm_;
    GeneratingLaw posterior_;
};

TerminalTransitionLaw terminal_transition_law(const GlpSpec& spec, double s,
                                              std::span<const double> x);

// Coordinate transition given only its own state (weak-Markov law):
//   (Psi^i_t(y) / Psi^i_s(x)) f_{(t-s)m_i}(y - x),
//   Psi^i_t(y) = int f_{M - t m_i}(r - y) / f_M(r) nu(dr).
double marginal_transition_density(const GlpSpec& spec, std::size_t i, double s,
                                   double x_i, double t, double y_i);

// Coordinate transition given the whole state vector:
//   (Theta^i_t(x, y) / Theta_s(sum x)) f_{(t-s)m_i}(y - x_i),
//   Theta^i_t(x, y) = int f_{M(1-s) - (t-s)m_i}(r - sum x - (y - x_i)) / f_M(r) nu(dr).
double fully_conditioned_marginal_density(const GlpSpec& spec, std::size_t i, double s,
                                          std::span<const double> x, double t,
                                          double y_i);

struct RProcessLaws {
    GeneratingLaw terminal;                             // law of R_1 given the state
    std::function<double(double, double)> transition;   // (t, r) -> density of R_t
};
RProcessLaws r_process_laws(const GlpSpec& spec, double s, std::span<const double> x);

// E(R_t | xi_s = x) = (1-t)/(1-s) sum x + (t-s)/(1-s) E(R_1 | xi_s = x).
double conditional_mean_r(const GlpSpec& spec, double s, std::span<const double> x,
                          double t);

// Compensator-removed paths: M_t = R_t - int_0^t (E(R_1|F_s) - R_s)/(1-s) ds,
// the time integral discretised with the left-point rule on the path's grid;
// per-coordinate residuals use the activity split of the drift.
struct ResidualPath {
    std::vector<double> sum;
    std::vector<std::vector<double>> coords;  // [k][i]
};
ResidualPath martingale_residual(const GlpSpec& spec, const GlpPath& path);

// Radon-Nikodym density Theta_t(R_t)^{-1} of the free law relative to the
// GLP law, evaluated at a grid time of the path.
double rn_density(const GlpSpec& spec, const GlpPath& path, double t);

// Conditional-slope statistic: mean of (R_c-R_b)/(c-b) - (R_d-R_a)/(d-a)
// within equal-count bins of (R_a, R_d).
struct HarnessReport {
    double max_abs_z;        // worst bin |mean| / SE
    double worst_estimate;
    double worst_se;
    double pooled_estimate;
    double pooled_se;
    std::size_t bins;
    std::size_t n;
};
HarnessReport harness_statistic(const GlpSpec& spec, std::span<const GlpPath> paths,
                                double a, double b, double c, double d,
                                std::size_t bins_per_axis = 3,
                                std::size_t min_bin_count = 200);

// Z_t = (E(R_1|xi_t) - R_t)/(1-t) int_t^1 phi(u) du + int_0^t phi(u) dR_u,
// with the stochastic integral as a left-point Stieltjes sum on the grid.
std::vector<double> z_martingale(const GlpSpec& spec, const GlpPath& path,
                                 const std::function<double(double)>& phi);

// Weak consistency (PIT uniformity per coordinate against the marginal law)
// and the strong-consistency failure regression of coordinate increments on
// (own state, sum state), plus the reweighted free-measure control.
struct ConsistencyReport {
    std::vector<double> weak_ks_p;      // per coordinate
    std::vector<double> strong_coef;    // R_s coefficient per coordinate
    std::vector<double> strong_se;
    std::vector<double> control_coef;   // same under Theta^{-1} reweighting
    std::vector<double> control_se;
    std::size_t n_paths;
};
ConsistencyReport consistency_experiment(const GlpSpec& spec, double s, double t,
                                         std::size_t n_paths, RngStream& rng);

}  // namespace liouville

#endif
